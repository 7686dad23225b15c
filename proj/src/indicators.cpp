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

#include "progeval/indicators.hpp"

#include <algorithm>
#include <unordered_set>

#include "progeval/errors.hpp"

namespace progeval {
namespace {

bool has_category(const PublicationRecord& record, std::string_view category) {
  return std::find(record.categories.begin(), record.categories.end(), category) !=
         record.categories.end();
}

}  // namespace

std::optional<JournalPosition> journal_position(std::string_view journal_id, int year,
                                                const JournalMetricsTable& metrics) {
  const auto entries = metrics.lookup(journal_id, year);
  if (entries.empty()) return std::nullopt;
  const CategoryRank* best = nullptr;
  for (const auto& entry : entries) {
    if (best == nullptr) {
      best = &entry;
      continue;
    }
    // Exact fraction comparison: a.rank/a.size < b.rank/b.size.
    const auto lhs = static_cast<std::int64_t>(entry.rank) * best->category_size;
    const auto rhs = static_cast<std::int64_t>(best->rank) * entry.category_size;
    if (lhs < rhs || (lhs == rhs && entry.category < best->category)) best = &entry;
  }
  JournalPosition position;
  position.best_category = best->category;
  position.best_rank_fraction = static_cast<double>(best->rank) / best->category_size;
  position.is_q1 = static_cast<std::int64_t>(best->rank) * 4 <= best->category_size;
  position.is_d1 = static_cast<std::int64_t>(best->rank) * 10 <= best->category_size;
  return position;
}

// ---------------------------------------------------------------------------

AnalysisContext::AnalysisContext(const Corpus& corpus, const Roster& roster, const LinkSet& links,
                                 const JournalMetricsTable& metrics,
                                 std::vector<std::string> national_categories,
                                 std::set<std::string> excluded_groups)
    : corpus_(&corpus), roster_(&roster), links_(&links), metrics_(&metrics) {
  const std::unordered_set<std::string> national(national_categories.begin(),
                                                 national_categories.end());
  national_.resize(corpus.size());
  positions_.resize(corpus.size());
  for (std::size_t pub = 0; pub < corpus.size(); ++pub) {
    const auto& record = corpus[pub];
    bool in_nation = national.empty();
    for (const auto& category : record.categories) {
      if (in_nation) break;
      in_nation = national.count(category) > 0;
    }
    national_[pub] = in_nation;
    positions_[pub] = journal_position(record.journal_id, record.year, metrics);
  }

  active_group_.assign(roster.groups().size(), true);
  for (const auto& id : excluded_groups) {
    const auto group = roster.group_index(id);
    if (!group) throw ReferentialError("group_id", id);
    active_group_[*group] = false;
  }

  pub_groups_.resize(corpus.size());
  for (auto pub : links.linked_publications()) {
    for (auto group : links.groups_of_publication(pub)) {
      if (active_group_[group]) pub_groups_[pub].push_back(group);
    }
  }
}

std::vector<std::size_t> AnalysisContext::groups(const Scope& scope) const {
  std::vector<std::size_t> out;
  const auto all = roster_->groups();
  switch (scope.kind) {
    case ScopeKind::Nation:
    case ScopeKind::NationExcludingProgramme:
      return out;
    case ScopeKind::ProgrammeAll:
      for (std::size_t g = 0; g < all.size(); ++g) {
        if (active_group_[g]) out.push_back(g);
      }
      return out;
    case ScopeKind::Centre: {
      const auto centre = roster_->centre_index(scope.key);
      if (!centre) throw ArgumentError("unknown centre '" + scope.key + "'");
      for (auto g : roster_->groups_of_centre(*centre)) {
        if (active_group_[g]) out.push_back(g);
      }
      return out;
    }
    case ScopeKind::InstitutionalCategory: {
      const auto category = parse_institutional_category(scope.key);
      if (!category) throw ArgumentError("unknown institutional category '" + scope.key + "'");
      for (std::size_t g = 0; g < all.size(); ++g) {
        if (active_group_[g] && all[g].institutional_category == *category) out.push_back(g);
      }
      return out;
    }
    case ScopeKind::Group: {
      const auto group = roster_->group_index(scope.key);
      if (!group) throw ArgumentError("unknown group '" + scope.key + "'");
      if (active_group_[*group]) out.push_back(*group);
      return out;
    }
  }
  return out;
}

std::vector<std::size_t> AnalysisContext::publications(const Scope& scope) const {
  if (!scope.period.valid()) throw ArgumentError("inverted period " + scope.period.label());
  std::vector<std::size_t> out;
  const auto in_period = [&](std::size_t pub) { return scope.period.contains((*corpus_)[pub].year); };

  if (scope.kind == ScopeKind::Nation || scope.kind == ScopeKind::NationExcludingProgramme) {
    const bool exclude_programme = scope.kind == ScopeKind::NationExcludingProgramme;
    for (std::size_t pub = 0; pub < corpus_->size(); ++pub) {
      if (!national_[pub] || !in_period(pub)) continue;
      if (exclude_programme && !pub_groups_[pub].empty()) continue;
      out.push_back(pub);
    }
    return out;
  }

  std::vector<bool> in_scope(roster_->groups().size(), false);
  for (auto g : groups(scope)) in_scope[g] = true;
  for (auto pub : links_->linked_publications()) {
    if (!in_period(pub)) continue;
    const auto& linked = pub_groups_[pub];
    if (std::any_of(linked.begin(), linked.end(), [&](std::size_t g) { return in_scope[g]; })) {
      out.push_back(pub);
    }
  }
  return out;
}

std::vector<std::size_t> AnalysisContext::scope_groups_of_publication(
    std::size_t pub, std::span<const std::size_t> scope_groups) const {
  std::vector<std::size_t> out;
  std::set_intersection(pub_groups_[pub].begin(), pub_groups_[pub].end(), scope_groups.begin(),
                        scope_groups.end(), std::back_inserter(out));
  return out;
}

std::string AnalysisContext::scope_label(const Scope& scope) const {
  switch (scope.kind) {
    case ScopeKind::Nation: return "NATION";
    case ScopeKind::ProgrammeAll: return "PROGRAMME";
    case ScopeKind::NationExcludingProgramme: return "NON-PROGRAMME";
    case ScopeKind::Centre: {
      const auto centre = roster_->centre_index(scope.key);
      return centre ? roster_->centres()[*centre].acronym : scope.key;
    }
    case ScopeKind::InstitutionalCategory: return "category:" + scope.key;
    case ScopeKind::Group: return "group:" + scope.key;
  }
  return scope.key;
}

// ---------------------------------------------------------------------------

std::optional<double> citations_per_paper(std::int64_t citations, std::size_t papers) {
  if (papers == 0) return std::nullopt;
  return static_cast<double>(citations) / static_cast<double>(papers);
}

std::optional<double> percentage(std::size_t part, std::size_t whole) {
  if (whole == 0) return std::nullopt;
  return 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

OutputIndicators output_indicators(std::span<const std::size_t> publications,
                                   const AnalysisContext& context) {
  OutputIndicators out;
  out.P = publications.size();
  for (auto pub : publications) {
    out.C += context.corpus()[pub].citations;
    const auto& position = context.position(pub);
    if (!position) continue;
    ++out.resolved;
    if (position->is_q1) ++out.q1;
    if (position->is_d1) ++out.d1;
  }
  out.CPP = citations_per_paper(out.C, out.P);
  out.pct_Q1 = percentage(out.q1, out.resolved);
  out.pct_D1 = percentage(out.d1, out.resolved);
  return out;
}

OutputIndicators output_indicators(const Scope& scope, const AnalysisContext& context) {
  return output_indicators(context.publications(scope), context);
}

std::map<int, double> yearly_counts(std::span<const std::size_t> publications,
                                    const Corpus& corpus, YearRange period) {
  std::map<int, double> series;
  for (int year = period.first; year <= period.last; ++year) series[year] = 0.0;
  for (auto pub : publications) {
    const int year = corpus[pub].year;
    if (period.contains(year)) series[year] += 1.0;
  }
  return series;
}

double relative_growth(const std::map<int, double>& series) {
  if (series.size() < 2) throw ArgumentError("growth needs a series of at least two years");
  const double first = series.begin()->second;
  const double last = series.rbegin()->second;
  if (first == 0.0) {
    throw ArgumentError("growth undefined: zero value in first year " +
                        std::to_string(series.begin()->first));
  }
  return 100.0 * (last - first) / first;
}

ShareSeries national_share(const Scope& scope, const Scope& national_scope,
                           const AnalysisContext& context) {
  ShareSeries out;
  const auto national = context.publications(national_scope);
  std::vector<bool> in_nation(context.corpus().size(), false);
  for (auto pub : national) in_nation[pub] = true;

  const auto& period = national_scope.period;
  for (int year = period.first; year <= period.last; ++year) {
    out.scope_by_year[year] = 0;
    out.national_by_year[year] = 0;
  }
  for (auto pub : national) ++out.national_by_year[context.corpus()[pub].year];
  for (auto pub : context.publications(scope)) {
    if (!in_nation[pub]) continue;
    ++out.scope_by_year[context.corpus()[pub].year];
    ++out.scope_total;
  }
  out.national_total = national.size();
  out.overall = percentage(out.scope_total, out.national_total);
  for (const auto& [year, count] : out.national_by_year) {
    out.share_by_year[year] = percentage(out.scope_by_year[year], count);
  }
  return out;
}

CategoryComparison category_comparison(std::string_view centre_id, std::string_view category,
                                       YearRange period, const AnalysisContext& context) {
  const auto& corpus = context.corpus();
  std::vector<std::size_t> national;
  for (std::size_t pub = 0; pub < corpus.size(); ++pub) {
    if (period.contains(corpus[pub].year) && has_category(corpus[pub], category)) {
      national.push_back(pub);
    }
  }
  if (national.empty()) {
    throw ArgumentError("unknown category '" + std::string(category) + "' (no publications in " +
                        period.label() + ")");
  }
  std::vector<std::size_t> centre;
  for (auto pub : context.publications(Scope::centre(std::string(centre_id), period))) {
    if (has_category(corpus[pub], category)) centre.push_back(pub);
  }

  CategoryComparison row;
  row.centre_id = std::string(centre_id);
  row.category = std::string(category);
  row.centre_P = centre.size();
  row.national_P = national.size();
  row.share = *percentage(row.centre_P, row.national_P);
  row.centre = output_indicators(centre, context);
  row.nation = output_indicators(national, context);
  return row;
}

std::optional<std::string> top_category(std::string_view centre_id, YearRange period,
                                        const AnalysisContext& context) {
  std::map<std::string, std::size_t> counts;
  for (auto pub : context.publications(Scope::centre(std::string(centre_id), period))) {
    for (const auto& category : context.corpus()[pub].categories) ++counts[category];
  }
  std::optional<std::string> best;
  std::size_t best_count = 0;
  for (const auto& [category, count] : counts) {
    if (count > best_count) {
      best = category;
      best_count = count;
    }
  }
  return best;
}

}  // namespace progeval
