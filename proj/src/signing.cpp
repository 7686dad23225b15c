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

#include "progeval/signing.hpp"

#include <algorithm>
#include <cmath>

#include "progeval/delimited.hpp"
#include "progeval/errors.hpp"
#include "progeval/text.hpp"

namespace progeval {

std::vector<PatternEntry> parse_patterns(std::istream& in, std::string_view source_name) {
  HeaderedTable table(in, std::string(source_name), {"centre_id", "pattern"});
  std::vector<PatternEntry> entries;
  while (auto row = table.next()) {
    PatternEntry entry;
    entry.centre_id = std::string(table.field(*row, "centre_id"));
    entry.pattern = normalize_text(table.field(*row, "pattern"));
    if (entry.pattern.empty()) throw ParseError(table.source(), row->line, "empty pattern");
    entries.push_back(std::move(entry));
  }
  return entries;
}

SigningPattern::SigningPattern(const std::vector<std::string>& patterns) {
  for (const auto& raw : patterns) {
    auto pattern = normalize_text(raw);
    if (!pattern.empty()) patterns_.push_back(std::move(pattern));
  }
  std::sort(patterns_.begin(), patterns_.end());
  patterns_.erase(std::unique(patterns_.begin(), patterns_.end()), patterns_.end());
  if (patterns_.empty()) throw ArgumentError("signing pattern list is empty");
}

SigningPattern::SigningPattern(const std::vector<PatternEntry>& entries)
    : SigningPattern([&] {
        std::vector<std::string> raw;
        for (const auto& entry : entries) raw.push_back(entry.pattern);
        return raw;
      }()) {}

bool SigningPattern::matches(std::string_view normalized_address) const {
  return std::any_of(patterns_.begin(), patterns_.end(), [&](const std::string& p) {
    return normalized_address.find(p) != std::string_view::npos;
  });
}

bool detect_signed(const PublicationRecord& record, const SigningPattern& pattern) {
  return std::any_of(record.addresses.begin(), record.addresses.end(),
                     [&](const std::string& address) { return pattern.matches(normalize_text(address)); });
}

std::vector<bool> signed_flags(const Corpus& corpus, const SigningPattern& pattern) {
  std::vector<bool> flags(corpus.size());
  for (std::size_t pub = 0; pub < corpus.size(); ++pub) flags[pub] = detect_signed(corpus[pub], pattern);
  return flags;
}

std::optional<double> SigningCounts::share_signed() const { return percentage(P_signed, P); }
std::optional<double> SigningCounts::q1_share_among_signed() const { return percentage(Q1_signed, P_signed); }
std::optional<double> SigningCounts::d1_share_among_signed() const { return percentage(D1_signed, P_signed); }
std::optional<double> SigningCounts::signed_share_among_q1() const { return percentage(Q1_signed, Q1); }
std::optional<double> SigningCounts::signed_share_among_d1() const { return percentage(D1_signed, D1); }

std::map<int, double> SigningReport::share_series() const {
  std::map<int, double> series;
  for (const auto& [year, counts] : by_year) {
    if (const auto share = counts.share_signed()) series[year] = *share;
  }
  return series;
}

SigningReport signing_report(const Scope& scope, const AnalysisContext& context,
                             const std::vector<bool>& signed_by_pub) {
  if (signed_by_pub.size() != context.corpus().size()) {
    throw ArgumentError("signed flags do not cover the corpus");
  }
  SigningReport report;
  report.scope = context.scope_label(scope);
  for (int year = scope.period.first; year <= scope.period.last; ++year) report.by_year[year] = {};

  const auto add = [](SigningCounts& counts, bool is_signed, const std::optional<JournalPosition>& pos) {
    const bool q1 = pos && pos->is_q1;
    const bool d1 = pos && pos->is_d1;
    ++counts.P;
    counts.Q1 += q1;
    counts.D1 += d1;
    if (!is_signed) return;
    ++counts.P_signed;
    counts.Q1_signed += q1;
    counts.D1_signed += d1;
  };
  for (auto pub : context.publications(scope)) {
    const bool is_signed = signed_by_pub[pub];
    const auto& position = context.position(pub);
    add(report.total, is_signed, position);
    add(report.by_year[context.corpus()[pub].year], is_signed, position);
  }
  return report;
}

std::optional<int> stabilization_year(const std::map<int, double>& series, double epsilon,
                                      int window) {
  if (window < 2) throw ArgumentError("stabilization window must be at least 2 years");
  if (!(epsilon > 0.0)) throw ArgumentError("stabilization epsilon must be positive");
  std::vector<std::pair<int, double>> points(series.begin(), series.end());
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].first != points[i - 1].first + 1) {
      throw ArgumentError("series has a gap before " + std::to_string(points[i].first));
    }
  }
  const auto span = static_cast<std::size_t>(window);
  for (std::size_t start = 0; start + span <= points.size(); ++start) {
    bool stable = true;
    for (std::size_t t = start + 1; t < start + span && stable; ++t) {
      stable = std::fabs(points[t].second - points[t - 1].second) <= epsilon;
    }
    if (stable) return points[start].first;
  }
  return std::nullopt;
}

std::vector<std::string> audit_published_row(const SigningCounts& counts, double printed_q1_pct,
                                             double printed_d1_pct, double tolerance) {
  std::vector<std::string> notes;
  const auto check = [&](std::string_view label, std::size_t part, double printed) {
    const auto computed = percentage(part, counts.P_signed);
    if (!computed || std::fabs(*computed - printed) <= tolerance) return;
    std::string note = std::string(label) + " printed " + format_fixed(printed, 1) +
                       " but " + std::to_string(part) + "/" + std::to_string(counts.P_signed) +
                       " = " + format_fixed(*computed, 1) + " among signed papers";
    const auto overall = counts.share_signed();
    if (overall && std::fabs(*overall - printed) <= tolerance) {
      note += "; printed figure equals the overall signed share " +
              std::to_string(counts.P_signed) + "/" + std::to_string(counts.P) + " = " +
              format_fixed(*overall, 1);
    }
    notes.push_back(std::move(note));
  };
  check("Q1_signed share", counts.Q1_signed, printed_q1_pct);
  check("D1_signed share", counts.D1_signed, printed_d1_pct);
  return notes;
}

}  // namespace progeval
