// Copyright 2026 The progeval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Small helpers shared by the unit and acceptance tests.

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "progeval/corpus.hpp"
#include "progeval/indicators.hpp"
#include "progeval/linkage.hpp"

namespace progeval::testing {

inline std::filesystem::path fixture(const std::string& relative) {
  return std::filesystem::path(PROGEVAL_FIXTURE_DIR) / relative;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    auto pattern = (std::filesystem::temp_directory_path() / "progeval-XXXXXX").string();
    if (!::mkdtemp(pattern.data())) throw std::runtime_error("mkdtemp failed");
    path_ = pattern;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline PublicationRecord make_pub(std::string id, int year, std::vector<std::string> authors,
                                  std::vector<std::string> addresses, std::string journal,
                                  std::vector<std::string> categories, std::int64_t citations = 0) {
  PublicationRecord p;
  p.pub_id = std::move(id);
  p.year = year;
  p.authors = std::move(authors);
  p.addresses = std::move(addresses);
  p.journal_id = std::move(journal);
  p.categories = std::move(categories);
  p.citations = citations;
  return p;
}

inline ResearchGroup make_group(std::string id, std::string centre, std::string institution,
                                InstitutionalCategory category) {
  ResearchGroup g;
  g.group_id = std::move(id);
  g.centre_id = std::move(centre);
  g.institution = std::move(institution);
  g.institutional_category = category;
  g.region = "Madrid";
  return g;
}

/// Corpus, roster, metrics and links that stay at fixed addresses (LinkSet
/// and AnalysisContext hold pointers into them).
struct World {
  Corpus corpus;
  Roster roster;
  JournalMetricsTable metrics;
  LinkSet links;

  World(std::vector<Centre> centres, std::vector<ResearchGroup> groups, std::vector<Researcher> researchers,
        std::vector<PublicationRecord> publications)
      : corpus(std::move(publications)), roster(std::move(centres), std::move(groups), std::move(researchers)) {}
  World(const World&) = delete;
  World& operator=(const World&) = delete;

  /// Replaces the link set with the given (researcher_id, pub_id) pairs.
  void link(const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::vector<Link> out;
    for (const auto& [researcher, pub] : pairs) {
      out.push_back({researcher, pub, Provenance::ManualAdd, std::nullopt, false, false});
    }
    links = LinkSet(std::move(out), corpus, roster);
  }

  AnalysisContext context(std::vector<std::string> national = {}, std::set<std::string> excluded = {}) const {
    return AnalysisContext(corpus, roster, links, metrics, std::move(national), std::move(excluded));
  }
};

/// Loads a fixture directory written by progeval-synth.
inline std::unique_ptr<World> load_world(const std::filesystem::path& dir) {
  std::ifstream pubs(dir / "publications.tsv");
  auto parsed = parse_publications(pubs, "publications.tsv");
  std::ifstream c(dir / "centres.tsv"), g(dir / "groups.tsv"), r(dir / "researchers.tsv");
  auto roster = parse_roster(c, g, r);
  auto world = std::make_unique<World>(
      std::vector<Centre>(roster.centres().begin(), roster.centres().end()),
      std::vector<ResearchGroup>(roster.groups().begin(), roster.groups().end()),
      std::vector<Researcher>(roster.researchers().begin(), roster.researchers().end()),
      filter_period(parsed.records, 2005, 2011));
  std::ifstream m(dir / "journal_metrics.tsv");
  world->metrics = parse_journal_metrics(m);
  world->links = match(world->corpus, world->roster);
  return world;
}

}  // namespace progeval::testing
