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

#include "progeval/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <tuple>
#include <unordered_set>

#include "progeval/delimited.hpp"
#include "progeval/errors.hpp"
#include "progeval/text.hpp"

namespace progeval {
namespace {

constexpr std::size_t kPublicationFields = 8;

// Lower-cases and drops spaces/underscores so "Editorial Material",
// "editorial_material" and "EDITORIALMATERIAL" compare equal.
std::string squash(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == ' ' || c == '_' || c == '-') continue;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string join_list(const std::vector<std::string>& items) {
  for (const auto& item : items) check_field_text(item, /*allow_list_delimiter=*/false);
  return join(items, std::string(1, kListDelimiter));
}

int require_int(const DelimitedRow& row, std::string_view text, std::string_view what,
                const std::string& source) {
  const auto value = parse_integer(text);
  if (!value) {
    throw ParseError(source, row.line,
                     std::string(what) + " is not an integer: '" + std::string(text) + "'");
  }
  return static_cast<int>(*value);
}

}  // namespace

std::optional<DocType> parse_doc_type(std::string_view text) {
  const auto key = squash(text);
  if (key == "article") return DocType::Article;
  if (key == "review") return DocType::Review;
  if (key == "letter") return DocType::Letter;
  if (key == "editorialmaterial") return DocType::EditorialMaterial;
  return std::nullopt;
}

std::string_view to_string(DocType type) {
  switch (type) {
    case DocType::Article: return "Article";
    case DocType::Review: return "Review";
    case DocType::Letter: return "Letter";
    case DocType::EditorialMaterial: return "Editorial Material";
  }
  return "Article";
}

PublicationParseResult parse_publications(std::istream& in, std::string_view source_name) {
  const std::string source(source_name);
  DelimitedReader reader(in, source);
  PublicationParseResult result;
  std::unordered_set<std::string> seen;

  while (auto row = reader.next()) {
    ++result.stats.input_records;
    if (row->fields.size() != kPublicationFields) {
      throw ParseError(source, row->line,
                       "expected " + std::to_string(kPublicationFields) + " fields, got " +
                           std::to_string(row->fields.size()));
    }
    const auto& f = row->fields;
    PublicationRecord record;
    record.pub_id = std::string(trim(f[0]));
    if (record.pub_id.empty()) throw ParseError(source, row->line, "empty pub_id");
    record.year = require_int(*row, f[1], "year", source);
    record.authors = split_list(f[3], kListDelimiter);
    if (record.authors.empty()) throw ParseError(source, row->line, "record has no authors");
    record.addresses = split_list(f[4], kListDelimiter);
    record.journal_id = std::string(trim(f[5]));
    if (record.journal_id.empty()) throw ParseError(source, row->line, "empty journal_id");
    record.categories = split_list(f[6], kListDelimiter);
    const auto citations = parse_integer(f[7]);
    if (!citations || *citations < 0) {
      throw ParseError(source, row->line,
                       "citations must be a non-negative integer: '" + std::string(f[7]) + "'");
    }
    record.citations = *citations;

    if (!seen.insert(record.pub_id).second) {
      throw DuplicateKeyError(source, row->line, record.pub_id);
    }

    const auto type_text = trim(f[2]);
    const auto type = parse_doc_type(type_text);
    if (!type) {
      ++result.stats.skipped;
      ++result.stats.skipped_by_type[std::string(type_text)];
      continue;
    }
    record.doc_type = *type;
    result.records.push_back(std::move(record));
    ++result.stats.admitted;
  }
  return result;
}

void write_publications(std::ostream& out, std::span<const PublicationRecord> records) {
  for (const auto& r : records) {
    check_field_text(r.pub_id, false);
    check_field_text(r.journal_id, false);
    out << r.pub_id << kFieldDelimiter << r.year << kFieldDelimiter << to_string(r.doc_type)
        << kFieldDelimiter << join_list(r.authors) << kFieldDelimiter << join_list(r.addresses)
        << kFieldDelimiter << r.journal_id << kFieldDelimiter << join_list(r.categories)
        << kFieldDelimiter << r.citations << '\n';
  }
}

std::vector<PublicationRecord> filter_period(std::span<const PublicationRecord> records,
                                             int start_year, int end_year) {
  if (start_year > end_year) {
    throw ArgumentError("inverted period " + std::to_string(start_year) + "-" +
                        std::to_string(end_year));
  }
  std::vector<PublicationRecord> out;
  for (const auto& record : records) {
    if (record.year >= start_year && record.year <= end_year) out.push_back(record);
  }
  return out;
}

Corpus::Corpus(std::vector<PublicationRecord> records) : records_(std::move(records)) {
  by_id_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (!by_id_.emplace(records_[i].pub_id, i).second) {
      throw DuplicateKeyError("corpus", i + 1, records_[i].pub_id);
    }
  }
}

std::optional<std::size_t> Corpus::find(std::string_view pub_id) const {
  const auto it = by_id_.find(std::string(pub_id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------

std::optional<InstitutionalCategory> parse_institutional_category(std::string_view text) {
  const auto key = squash(text);
  if (key == "university") return InstitutionalCategory::University;
  if (key == "hospital") return InstitutionalCategory::Hospital;
  if (key == "publicresearchorg" || key == "publicresearchorganization") {
    return InstitutionalCategory::PublicResearchOrg;
  }
  if (key == "foundation") return InstitutionalCategory::Foundation;
  if (key == "other") return InstitutionalCategory::Other;
  return std::nullopt;
}

std::string_view to_string(InstitutionalCategory category) {
  switch (category) {
    case InstitutionalCategory::University: return "University";
    case InstitutionalCategory::Hospital: return "Hospital";
    case InstitutionalCategory::PublicResearchOrg: return "PublicResearchOrg";
    case InstitutionalCategory::Foundation: return "Foundation";
    case InstitutionalCategory::Other: return "Other";
  }
  return "Other";
}

Roster::Roster(std::vector<Centre> centres, std::vector<ResearchGroup> groups,
               std::vector<Researcher> researchers)
    : centres_(std::move(centres)), groups_(std::move(groups)), researchers_(std::move(researchers)) {
  std::unordered_set<std::string> acronyms;
  for (std::size_t i = 0; i < centres_.size(); ++i) {
    const auto& centre = centres_[i];
    if (centre.centre_id.empty()) throw ValidationError("centre with empty id");
    if (!centre_by_id_.emplace(centre.centre_id, i).second) {
      throw ValidationError("duplicate centre id '" + centre.centre_id + "'");
    }
    if (!acronyms.insert(centre.acronym).second) {
      throw ValidationError("duplicate centre acronym '" + centre.acronym + "'");
    }
  }
  centre_groups_.resize(centres_.size());
  group_centre_.reserve(groups_.size());
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    const auto& group = groups_[i];
    if (!group_by_id_.emplace(group.group_id, i).second) {
      throw ValidationError("duplicate group id '" + group.group_id + "'");
    }
    const auto centre = centre_index(group.centre_id);
    if (!centre) throw ReferentialError("centre_id", group.centre_id);
    group_centre_.push_back(*centre);
    centre_groups_[*centre].push_back(i);
  }
  group_researcher_counts_.assign(groups_.size(), 0);
  researcher_group_.reserve(researchers_.size());
  for (std::size_t i = 0; i < researchers_.size(); ++i) {
    const auto& researcher = researchers_[i];
    if (researcher.full_name.empty()) {
      throw ValidationError("researcher '" + researcher.researcher_id + "' has an empty name");
    }
    if (!researcher_by_id_.emplace(researcher.researcher_id, i).second) {
      throw ValidationError("duplicate researcher id '" + researcher.researcher_id + "'");
    }
    const auto group = group_index(researcher.group_id);
    if (!group) throw ReferentialError("group_id", researcher.group_id);
    researcher_group_.push_back(*group);
    ++group_researcher_counts_[*group];
  }
}

std::optional<std::size_t> Roster::centre_index(std::string_view centre_id) const {
  const auto it = centre_by_id_.find(std::string(centre_id));
  return it == centre_by_id_.end() ? std::nullopt : std::optional(it->second);
}

std::optional<std::size_t> Roster::group_index(std::string_view group_id) const {
  const auto it = group_by_id_.find(std::string(group_id));
  return it == group_by_id_.end() ? std::nullopt : std::optional(it->second);
}

std::optional<std::size_t> Roster::researcher_index(std::string_view researcher_id) const {
  const auto it = researcher_by_id_.find(std::string(researcher_id));
  return it == researcher_by_id_.end() ? std::nullopt : std::optional(it->second);
}

std::size_t Roster::researcher_count_of_centre(std::size_t centre) const {
  std::size_t total = 0;
  for (auto group : centre_groups_[centre]) total += group_researcher_counts_[group];
  return total;
}

Roster parse_roster(std::istream& centres_in, std::istream& groups_in,
                    std::istream& researchers_in, std::string_view centres_name,
                    std::string_view groups_name, std::string_view researchers_name) {
  std::vector<Centre> centres;
  std::set<std::string, std::less<>> centre_ids;
  {
    HeaderedTable table(centres_in, std::string(centres_name),
                        {"centre_id", "acronym", "launch_year"});
    while (auto row = table.next()) {
      Centre centre;
      centre.centre_id = std::string(table.field(*row, "centre_id"));
      centre.acronym = std::string(table.field(*row, "acronym"));
      const auto launch = table.field(*row, "launch_year");
      if (launch.empty()) throw ParseError(table.source(), row->line, "missing launch_year");
      centre.launch_year = require_int(*row, launch, "launch_year", table.source());
      for (const auto& item : split_list(table.optional_field(*row, "annual_budget"), kListDelimiter)) {
        const auto colon = item.find(':');
        const auto year = colon == std::string::npos ? std::nullopt : parse_integer(item.substr(0, colon));
        const auto amount = colon == std::string::npos ? std::nullopt : parse_real(item.substr(colon + 1));
        if (!year || !amount) {
          throw ParseError(table.source(), row->line, "bad annual_budget entry '" + item + "'");
        }
        centre.annual_budget[static_cast<int>(*year)] = *amount;
      }
      if (!centre_ids.insert(centre.centre_id).second) {
        throw DuplicateKeyError(table.source(), row->line, centre.centre_id);
      }
      centres.push_back(std::move(centre));
    }
  }

  std::vector<ResearchGroup> groups;
  std::set<std::string, std::less<>> group_ids;
  {
    HeaderedTable table(groups_in, std::string(groups_name),
                        {"group_id", "centre_id", "institution", "institutional_category",
                         "region", "lead_researcher_id"});
    while (auto row = table.next()) {
      ResearchGroup group;
      group.group_id = std::string(table.field(*row, "group_id"));
      group.centre_id = std::string(table.field(*row, "centre_id"));
      if (!centre_ids.count(group.centre_id)) {
        throw ReferentialError(table.source(), row->line, "centre_id", group.centre_id);
      }
      group.institution = std::string(table.field(*row, "institution"));
      const auto category_text = table.field(*row, "institutional_category");
      const auto category = parse_institutional_category(category_text);
      if (!category) {
        throw ParseError(table.source(), row->line,
                         "unknown institutional_category '" + std::string(category_text) + "'");
      }
      group.institutional_category = *category;
      group.region = std::string(table.field(*row, "region"));
      group.lead_researcher_id = std::string(table.field(*row, "lead_researcher_id"));
      group.institution_aliases =
          split_list(table.optional_field(*row, "institution_aliases"), kListDelimiter);
      if (!group_ids.insert(group.group_id).second) {
        throw DuplicateKeyError(table.source(), row->line, group.group_id);
      }
      groups.push_back(std::move(group));
    }
  }

  std::vector<Researcher> researchers;
  std::set<std::string, std::less<>> researcher_ids;
  {
    HeaderedTable table(researchers_in, std::string(researchers_name),
                        {"researcher_id", "full_name", "group_id", "subject_areas"});
    while (auto row = table.next()) {
      Researcher researcher;
      researcher.researcher_id = std::string(table.field(*row, "researcher_id"));
      researcher.full_name = std::string(table.field(*row, "full_name"));
      if (researcher.full_name.empty()) {
        throw ParseError(table.source(), row->line, "empty full_name");
      }
      researcher.group_id = std::string(table.field(*row, "group_id"));
      if (!group_ids.count(researcher.group_id)) {
        throw ReferentialError(table.source(), row->line, "group_id", researcher.group_id);
      }
      researcher.subject_areas =
          split_list(table.optional_field(*row, "subject_areas"), kListDelimiter);
      if (!researcher_ids.insert(researcher.researcher_id).second) {
        throw DuplicateKeyError(table.source(), row->line, researcher.researcher_id);
      }
      researchers.push_back(std::move(researcher));
    }
  }

  return Roster(std::move(centres), std::move(groups), std::move(researchers));
}

void write_roster(std::ostream& centres_out, std::ostream& groups_out,
                  std::ostream& researchers_out, const Roster& roster) {
  DelimitedWriter centres(centres_out, {"centre_id", "acronym", "launch_year", "annual_budget"});
  for (const auto& centre : roster.centres()) {
    std::vector<std::string> budget;
    for (const auto& [year, amount] : centre.annual_budget) {
      char buffer[64];
      const auto end = std::to_chars(buffer, buffer + sizeof(buffer), amount, std::chars_format::fixed).ptr;
      budget.push_back(std::to_string(year) + ":" + std::string(buffer, end));
    }
    centres.row({centre.centre_id, centre.acronym, std::to_string(centre.launch_year),
                 join_list(budget)});
  }
  DelimitedWriter groups(groups_out, {"group_id", "centre_id", "institution",
                                      "institutional_category", "region", "lead_researcher_id",
                                      "institution_aliases"});
  for (const auto& group : roster.groups()) {
    groups.row({group.group_id, group.centre_id, group.institution,
                std::string(to_string(group.institutional_category)), group.region,
                group.lead_researcher_id, join_list(group.institution_aliases)});
  }
  DelimitedWriter researchers(researchers_out,
                              {"researcher_id", "full_name", "group_id", "subject_areas"});
  for (const auto& researcher : roster.researchers()) {
    researchers.row({researcher.researcher_id, researcher.full_name, researcher.group_id,
                     join_list(researcher.subject_areas)});
  }
}

// ---------------------------------------------------------------------------

std::string JournalMetricsTable::key(std::string_view journal_id, int year) {
  std::string out(journal_id);
  out += '\x1f';
  out += std::to_string(year);
  return out;
}

void JournalMetricsTable::add(std::string_view journal_id, int year, CategoryRank entry) {
  if (entry.category_size < 1 || entry.rank < 1 || entry.rank > entry.category_size) {
    throw ValidationError("journal '" + std::string(journal_id) + "' " + std::to_string(year) +
                          " category '" + entry.category + "': rank " +
                          std::to_string(entry.rank) + " outside 1.." +
                          std::to_string(entry.category_size));
  }
  auto& slot = entries_[key(journal_id, year)];
  for (const auto& existing : slot) {
    if (existing.category == entry.category) {
      throw ValidationError("duplicate metrics entry for journal '" + std::string(journal_id) +
                            "' " + std::to_string(year) + " category '" + entry.category + "'");
    }
  }
  slot.push_back(std::move(entry));
  ++entry_count_;
}

std::span<const CategoryRank> JournalMetricsTable::lookup(std::string_view journal_id,
                                                          int year) const {
  const auto it = entries_.find(key(journal_id, year));
  if (it == entries_.end()) return {};
  return it->second;
}

std::optional<CategoryRank> JournalMetricsTable::lookup(std::string_view journal_id, int year,
                                                        std::string_view category) const {
  for (const auto& entry : lookup(journal_id, year)) {
    if (entry.category == category) return entry;
  }
  return std::nullopt;
}

bool JournalMetricsTable::contains(std::string_view journal_id, int year) const {
  return !lookup(journal_id, year).empty();
}

JournalMetricsTable parse_journal_metrics(std::istream& in, std::string_view source_name) {
  HeaderedTable table(in, std::string(source_name),
                      {"journal_id", "year", "category", "rank", "category_size"});
  JournalMetricsTable metrics;
  while (auto row = table.next()) {
    const auto journal = table.field(*row, "journal_id");
    const int year = require_int(*row, table.field(*row, "year"), "year", table.source());
    CategoryRank entry;
    entry.category = std::string(table.field(*row, "category"));
    entry.rank = require_int(*row, table.field(*row, "rank"), "rank", table.source());
    entry.category_size =
        require_int(*row, table.field(*row, "category_size"), "category_size", table.source());
    try {
      metrics.add(journal, year, std::move(entry));
    } catch (const ValidationError& e) {
      throw ValidationError(table.source() + ":" + std::to_string(row->line) + ": " + e.what());
    }
  }
  return metrics;
}

std::vector<UnresolvedJournal> unresolved_journals(const Corpus& corpus,
                                                   const JournalMetricsTable& metrics) {
  std::map<std::pair<std::string, int>, std::size_t> missing;
  for (const auto& record : corpus.records()) {
    if (!metrics.contains(record.journal_id, record.year)) {
      ++missing[{record.journal_id, record.year}];
    }
  }
  std::vector<UnresolvedJournal> out;
  out.reserve(missing.size());
  for (const auto& [key, count] : missing) out.push_back({key.first, key.second, count});
  return out;
}

}  // namespace progeval
