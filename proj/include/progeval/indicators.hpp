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
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "progeval/corpus.hpp"
#include "progeval/linkage.hpp"

namespace progeval {

/// Aggregation level. NationExcludingProgramme is the national set minus
/// every programme-linked publication.
enum class ScopeKind {
  Nation,
  ProgrammeAll,
  Centre,
  InstitutionalCategory,
  Group,
  NationExcludingProgramme
};

struct Scope {
  ScopeKind kind = ScopeKind::ProgrammeAll;
  std::string key;  // centre_id, institutional category name or group_id
  YearRange period;

  static Scope nation(YearRange period) { return {ScopeKind::Nation, {}, period}; }
  static Scope programme(YearRange period) { return {ScopeKind::ProgrammeAll, {}, period}; }
  static Scope non_programme(YearRange period) {
    return {ScopeKind::NationExcludingProgramme, {}, period};
  }
  static Scope centre(std::string id, YearRange period) {
    return {ScopeKind::Centre, std::move(id), period};
  }
  static Scope institutional_category(InstitutionalCategory category, YearRange period) {
    return {ScopeKind::InstitutionalCategory, std::string(to_string(category)), period};
  }
  static Scope group(std::string id, YearRange period) {
    return {ScopeKind::Group, std::move(id), period};
  }
};

// ---------------------------------------------------------------------------

struct JournalPosition {
  bool is_q1 = false;
  bool is_d1 = false;
  double best_rank_fraction = 1.0;  // min over categories of rank / category_size
  std::string best_category;
};

/// Best position of a journal across its categories in `year`. Q1 and D1 are
/// inclusive (fraction <= 0.25, <= 0.10) and both come from the single best
/// category. Returns nullopt when the journal has no metrics entry that year.
std::optional<JournalPosition> journal_position(std::string_view journal_id, int year,
                                                const JournalMetricsTable& metrics);

// ---------------------------------------------------------------------------

/// Read-only view over one analysis run: corpus, roster, validated links and
/// journal metrics, plus the national category filter and the groups removed
/// by the inactive-group rule. Every indicator below is a pure function of it.
class AnalysisContext {
 public:
  /// `national_categories` empty means every record belongs to the national set.
  AnalysisContext(const Corpus& corpus, const Roster& roster, const LinkSet& links,
                  const JournalMetricsTable& metrics,
                  std::vector<std::string> national_categories = {},
                  std::set<std::string> excluded_groups = {});

  const Corpus& corpus() const noexcept { return *corpus_; }
  const Roster& roster() const noexcept { return *roster_; }
  const LinkSet& links() const noexcept { return *links_; }
  const JournalMetricsTable& metrics() const noexcept { return *metrics_; }

  bool is_national(std::size_t pub) const { return national_[pub]; }
  bool is_active_group(std::size_t group) const { return active_group_[group]; }
  const std::optional<JournalPosition>& position(std::size_t pub) const { return positions_[pub]; }

  /// Active groups linked to the publication, ascending.
  std::span<const std::size_t> groups_of_publication(std::size_t pub) const {
    return pub_groups_[pub];
  }

  /// Active group indices that make up a scope, ascending. Empty for the
  /// national scopes. Throws ArgumentError on an unknown key.
  std::vector<std::size_t> groups(const Scope& scope) const;

  /// Publications of a scope, ascending index order.
  std::vector<std::size_t> publications(const Scope& scope) const;

  /// In-scope active groups linked to `pub`, ascending.
  std::vector<std::size_t> scope_groups_of_publication(std::size_t pub,
                                                       std::span<const std::size_t> scope_groups) const;

  std::string scope_label(const Scope& scope) const;

 private:
  const Corpus* corpus_;
  const Roster* roster_;
  const LinkSet* links_;
  const JournalMetricsTable* metrics_;
  std::vector<bool> national_;
  std::vector<bool> active_group_;
  std::vector<std::optional<JournalPosition>> positions_;
  std::vector<std::vector<std::size_t>> pub_groups_;
};

// ---------------------------------------------------------------------------

struct OutputIndicators {
  std::size_t P = 0;
  std::int64_t C = 0;
  std::optional<double> CPP;     // absent when P == 0
  std::size_t resolved = 0;      // papers with a journal position (%Q1/%D1 denominator)
  std::size_t q1 = 0;
  std::size_t d1 = 0;
  std::optional<double> pct_Q1;  // absent when resolved == 0
  std::optional<double> pct_D1;
};

/// Citations per paper; nullopt when papers == 0.
std::optional<double> citations_per_paper(std::int64_t citations, std::size_t papers);

/// 100 * part / whole; nullopt when whole == 0.
std::optional<double> percentage(std::size_t part, std::size_t whole);

OutputIndicators output_indicators(std::span<const std::size_t> publications,
                                   const AnalysisContext& context);
OutputIndicators output_indicators(const Scope& scope, const AnalysisContext& context);

/// Publication counts per year of `period` (every year present, zero-filled).
std::map<int, double> yearly_counts(std::span<const std::size_t> publications,
                                    const Corpus& corpus, YearRange period);

/// 100 * (last - first) / first over the first and last years of the series.
/// Throws ArgumentError for fewer than two years or a zero first value.
double relative_growth(const std::map<int, double>& series);

struct ShareSeries {
  std::size_t scope_total = 0;
  std::size_t national_total = 0;
  std::optional<double> overall;
  std::map<int, std::size_t> scope_by_year;
  std::map<int, std::size_t> national_by_year;
  std::map<int, std::optional<double>> share_by_year;
};

/// Share of the national scope taken by `scope`, overall and per year of the
/// national scope's period. The numerator only counts publications that are
/// also in the national set.
ShareSeries national_share(const Scope& scope, const Scope& national_scope,
                           const AnalysisContext& context);

struct CategoryComparison {
  std::string centre_id;
  std::string category;
  std::size_t centre_P = 0;
  std::size_t national_P = 0;
  double share = 0.0;  // 100 * centre_P / national_P
  OutputIndicators centre;
  OutputIndicators nation;
};

/// Centre output in one subject category against all output in that
/// category. Throws ArgumentError when the category has no publications in
/// the period.
CategoryComparison category_comparison(std::string_view centre_id, std::string_view category,
                                       YearRange period, const AnalysisContext& context);

/// The centre's highest-output category in the period (ties: smallest code).
std::optional<std::string> top_category(std::string_view centre_id, YearRange period,
                                        const AnalysisContext& context);

}  // namespace progeval
