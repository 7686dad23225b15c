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
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "progeval/corpus.hpp"
#include "progeval/indicators.hpp"

namespace progeval {

struct PatternEntry {
  std::string centre_id;  // "*" for programme-wide patterns
  std::string pattern;    // normalized
};

/// Headered table: centre_id, pattern. Patterns are normalized on load; an
/// entry that normalizes to nothing is a ParseError.
std::vector<PatternEntry> parse_patterns(std::istream& in, std::string_view source_name = "patterns");

/// Normalized substrings that identify the programme in an address line.
class SigningPattern {
 public:
  /// Normalizes and de-duplicates. Throws ArgumentError when empty.
  explicit SigningPattern(const std::vector<std::string>& patterns);
  explicit SigningPattern(const std::vector<PatternEntry>& entries);

  const std::vector<std::string>& patterns() const noexcept { return patterns_; }
  bool matches(std::string_view normalized_address) const;

 private:
  std::vector<std::string> patterns_;
};

/// True iff any address of the record contains any pattern after normalization.
bool detect_signed(const PublicationRecord& record, const SigningPattern& pattern);

/// detect_signed() for every record of the corpus, by index.
std::vector<bool> signed_flags(const Corpus& corpus, const SigningPattern& pattern);

struct SigningCounts {
  std::size_t P = 0;
  std::size_t P_signed = 0;
  std::size_t Q1 = 0;         // Q1 papers, signed or not
  std::size_t Q1_signed = 0;
  std::size_t D1 = 0;
  std::size_t D1_signed = 0;

  std::optional<double> share_signed() const;            // P_signed / P
  std::optional<double> q1_share_among_signed() const;   // Q1_signed / P_signed
  std::optional<double> d1_share_among_signed() const;   // D1_signed / P_signed
  std::optional<double> signed_share_among_q1() const;   // Q1_signed / Q1
  std::optional<double> signed_share_among_d1() const;   // D1_signed / D1
};

struct SigningReport {
  std::string scope;
  SigningCounts total;
  std::map<int, SigningCounts> by_year;  // every year of the scope period

  /// share_signed per year, skipping years without publications.
  std::map<int, double> share_series() const;
};

SigningReport signing_report(const Scope& scope, const AnalysisContext& context,
                             const std::vector<bool>& signed_by_pub);

/// Earliest year y of the series such that every step inside
/// [y, y + window - 1] changes the share by at most `epsilon` points. The
/// series must cover consecutive years. Throws ArgumentError when
/// window < 2, epsilon <= 0 or the years have gaps.
std::optional<int> stabilization_year(const std::map<int, double>& series, double epsilon,
                                      int window);

inline constexpr double kDefaultStabilizationEpsilon = 2.0;
inline constexpr int kDefaultStabilizationWindow = 3;

/// Reconciles percentages printed in a published signing table with the
/// counts they were derived from. Returns one note per printed figure that is
/// more than `tolerance` points from the value recomputed with the
/// among-signed denominator; the note says which quantity the printed figure
/// matches instead, when one does.
std::vector<std::string> audit_published_row(const SigningCounts& counts, double printed_q1_pct,
                                             double printed_d1_pct, double tolerance = 0.1);

}  // namespace progeval
