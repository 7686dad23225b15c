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

// Synthetic programme data: programme-shaped corpora for end-to-end runs and a
// planted-truth linkage corpus. Deterministic for a given seed.

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "progeval/corpus.hpp"
#include "progeval/linkage.hpp"
#include "progeval/signing.hpp"

namespace progeval::synth {

/// splitmix64; the same seed yields the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, n); n > 0.
  std::size_t below(std::size_t n);
  /// Uniform in [0, 1).
  double unit();
  bool chance(double p) { return unit() < p; }

 private:
  std::uint64_t state_;
};

struct MetricRow {
  std::string journal_id;
  int year = 0;
  CategoryRank entry;
};

struct Dataset {
  std::vector<Centre> centres;
  std::vector<ResearchGroup> groups;
  std::vector<Researcher> researchers;
  std::vector<PublicationRecord> publications;  // may include out-of-window years
  std::vector<std::string> skipped_lines;       // raw lines with non-admitted doc types
  std::vector<MetricRow> metrics;
  std::vector<PatternEntry> patterns;
  std::vector<OverrideRow> overrides;
  std::vector<std::pair<std::string, std::string>> truth;  // (researcher_id, pub_id)
  std::vector<std::string> national_categories;
};

struct ProgrammeCorpusOptions {
  std::uint64_t seed = 2014;
  std::size_t publications = 2000;  // admitted, in-window records
  bool full_roster = false;         // published centre sizes (376 groups, 5010 researchers)
  std::size_t groups_per_centre = 4;
  std::size_t researchers_per_group = 3;
  double programme_share = 0.25;
  double collaboration_rate = 0.12;
  double dormant_group_rate = 0.05;
};

/// Nine centres, programme share near `programme_share`, mostly
/// single-group papers, a few dormant groups (no collaboration, nothing
/// signed) and a signing probability rising by year.
Dataset programme_corpus(const ProgrammeCorpusOptions& options);

/// 50 researchers with unique surnames, institution aliases and adversarial
/// namesakes: same name and institution but a different field, or same field
/// at another institution. `truth` holds every planted link.
Dataset linkage_fixture(std::uint64_t seed = 50);

/// Groups of four with the given (collaborations > 0, signed > 0) pattern,
/// used to exercise the exclusion rule.
Dataset exclusion_fixture();

/// Writes publications.tsv, centres.tsv, groups.tsv, researchers.tsv,
/// journal_metrics.tsv, patterns.tsv, overrides.tsv, config.json and (when
/// non-empty) truth.tsv. config.json points output_dir at "out".
void write_dataset(const Dataset& dataset, const std::filesystem::path& dir);

}  // namespace progeval::synth
