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

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace progeval {

/// Inclusive year interval.
struct YearRange {
  int first = 0;
  int last = 0;

  bool contains(int year) const noexcept { return year >= first && year <= last; }
  bool valid() const noexcept { return first <= last; }
  std::string label() const { return std::to_string(first) + "-" + std::to_string(last); }

  friend bool operator==(const YearRange&, const YearRange&) = default;
};

// ---------------------------------------------------------------------------
// Publications

enum class DocType { Article, Review, Letter, EditorialMaterial };

/// Case-insensitive match against the admitted types ("Article", "Review",
/// "Letter", "Editorial Material"). Anything else yields nullopt.
std::optional<DocType> parse_doc_type(std::string_view text);
std::string_view to_string(DocType type);

struct PublicationRecord {
  std::string pub_id;
  int year = 0;
  DocType doc_type = DocType::Article;
  std::vector<std::string> authors;
  std::vector<std::string> addresses;
  std::string journal_id;
  std::vector<std::string> categories;
  std::int64_t citations = 0;

  friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

struct PublicationParseStats {
  std::size_t input_records = 0;
  std::size_t admitted = 0;
  std::size_t skipped = 0;
  std::map<std::string, std::size_t> skipped_by_type;
};

struct PublicationParseResult {
  std::vector<PublicationRecord> records;
  PublicationParseStats stats;
};

/// Reads the headerless publications stream: eight tab-separated fields per
/// line (pub_id, year, doc_type, authors, addresses, journal_id, categories,
/// citations) with ';' separating list elements. Records whose doc_type is not
/// admitted are skipped and counted. Throws ParseError naming the line on
/// malformed input and DuplicateKeyError on a repeated pub_id.
PublicationParseResult parse_publications(std::istream& in,
                                          std::string_view source_name = "publications");

/// Inverse of parse_publications for admitted records.
void write_publications(std::ostream& out, std::span<const PublicationRecord> records);

/// Records with start_year <= year <= end_year, input order kept.
std::vector<PublicationRecord> filter_period(std::span<const PublicationRecord> records,
                                             int start_year, int end_year);

/// Immutable, id-indexed publication set.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<PublicationRecord> records);

  std::span<const PublicationRecord> records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  const PublicationRecord& operator[](std::size_t index) const { return records_[index]; }
  std::optional<std::size_t> find(std::string_view pub_id) const;

 private:
  std::vector<PublicationRecord> records_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

// ---------------------------------------------------------------------------
// Roster

enum class InstitutionalCategory { University, Hospital, PublicResearchOrg, Foundation, Other };

std::optional<InstitutionalCategory> parse_institutional_category(std::string_view text);
std::string_view to_string(InstitutionalCategory category);

struct Centre {
  std::string centre_id;
  std::string acronym;
  int launch_year = 0;
  std::map<int, double> annual_budget;  // informational only
};

struct ResearchGroup {
  std::string group_id;
  std::string centre_id;
  std::string institution;
  InstitutionalCategory institutional_category = InstitutionalCategory::Other;
  std::string region;
  std::string lead_researcher_id;
  std::vector<std::string> institution_aliases;
};

struct Researcher {
  std::string researcher_id;
  std::string full_name;  // "Surname(s), Given name(s)"
  std::string group_id;
  std::vector<std::string> subject_areas;
};

/// Programme structure: centres, their groups and the groups' researchers,
/// cross-linked by index. Construction validates referential integrity.
class Roster {
 public:
  Roster() = default;
  Roster(std::vector<Centre> centres, std::vector<ResearchGroup> groups,
         std::vector<Researcher> researchers);

  std::span<const Centre> centres() const noexcept { return centres_; }
  std::span<const ResearchGroup> groups() const noexcept { return groups_; }
  std::span<const Researcher> researchers() const noexcept { return researchers_; }

  std::optional<std::size_t> centre_index(std::string_view centre_id) const;
  std::optional<std::size_t> group_index(std::string_view group_id) const;
  std::optional<std::size_t> researcher_index(std::string_view researcher_id) const;

  std::size_t group_of_researcher(std::size_t researcher) const { return researcher_group_[researcher]; }
  std::size_t centre_of_group(std::size_t group) const { return group_centre_[group]; }

  /// Group indices of a centre, ascending.
  const std::vector<std::size_t>& groups_of_centre(std::size_t centre) const {
    return centre_groups_[centre];
  }
  std::size_t researcher_count_of_centre(std::size_t centre) const;

 private:
  std::vector<Centre> centres_;
  std::vector<ResearchGroup> groups_;
  std::vector<Researcher> researchers_;
  std::unordered_map<std::string, std::size_t> centre_by_id_;
  std::unordered_map<std::string, std::size_t> group_by_id_;
  std::unordered_map<std::string, std::size_t> researcher_by_id_;
  std::vector<std::size_t> researcher_group_;
  std::vector<std::size_t> group_centre_;
  std::vector<std::vector<std::size_t>> centre_groups_;
  std::vector<std::size_t> group_researcher_counts_;
};

/// Parses the three headered roster tables.
///
/// centres:     centre_id, acronym, launch_year [, annual_budget as "year:amount;..."]
/// groups:      group_id, centre_id, institution, institutional_category, region,
///              lead_researcher_id [, institution_aliases as "alias;alias"]
/// researchers: researcher_id, full_name, group_id, subject_areas
Roster parse_roster(std::istream& centres, std::istream& groups, std::istream& researchers,
                    std::string_view centres_name = "centres",
                    std::string_view groups_name = "groups",
                    std::string_view researchers_name = "researchers");

void write_roster(std::ostream& centres, std::ostream& groups, std::ostream& researchers,
                  const Roster& roster);

// ---------------------------------------------------------------------------
// Journal metrics

struct CategoryRank {
  std::string category;
  int rank = 0;
  int category_size = 0;
};

/// Rank of each journal inside each of its subject categories, per year.
class JournalMetricsTable {
 public:
  /// Throws ValidationError unless 1 <= rank <= category_size, and on a
  /// repeated (journal, year, category).
  void add(std::string_view journal_id, int year, CategoryRank entry);

  /// All categories of the journal that year; empty when unresolved.
  std::span<const CategoryRank> lookup(std::string_view journal_id, int year) const;
  std::optional<CategoryRank> lookup(std::string_view journal_id, int year,
                                     std::string_view category) const;
  bool contains(std::string_view journal_id, int year) const;

  std::size_t size() const noexcept { return entry_count_; }

 private:
  static std::string key(std::string_view journal_id, int year);

  std::unordered_map<std::string, std::vector<CategoryRank>> entries_;
  std::size_t entry_count_ = 0;
};

/// Headered table: journal_id, year, category, rank, category_size.
JournalMetricsTable parse_journal_metrics(std::istream& in,
                                          std::string_view source_name = "journal_metrics");

struct UnresolvedJournal {
  std::string journal_id;
  int year = 0;
  std::size_t publications = 0;
};

/// Every (journal, year) used by `corpus` without a metrics entry, sorted.
std::vector<UnresolvedJournal> unresolved_journals(const Corpus& corpus,
                                                   const JournalMetricsTable& metrics);

}  // namespace progeval
