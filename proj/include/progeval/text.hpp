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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace progeval {

/// Canonical form used for author strings, address lines, institution names
/// and signing patterns.
///
///  - Latin letters with diacritics fold to their ASCII base (García -> garcia,
///    Ñ -> n, ß -> ss); ASCII letters are lower-cased.
///  - '.' and apostrophes are deleted, so "J.M." becomes "jm".
///  - Every other punctuation character except '-' becomes a space; unicode
///    dashes become '-'.
///  - Whitespace runs collapse to one space, spaces around '-' are removed and
///    the result is trimmed.
///
/// Code points outside the folding table are kept verbatim. The function is
/// idempotent: normalize_text(normalize_text(s)) == normalize_text(s).
std::string normalize_text(std::string_view text);

std::string_view trim(std::string_view text);

/// Splits on a single-character delimiter. Keeps empty fields.
std::vector<std::string_view> split(std::string_view text, char delimiter);

/// Splits on `delimiter`, trims each piece and drops empty pieces.
std::vector<std::string> split_list(std::string_view text, char delimiter);

std::string join(const std::vector<std::string>& parts, std::string_view separator);

std::string to_lower_ascii(std::string_view text);

std::optional<long long> parse_integer(std::string_view text);
std::optional<double> parse_real(std::string_view text);

/// Fixed-point rendering with `decimals` digits; absent values render as "NA".
std::string format_fixed(double value, int decimals);
std::string format_fixed(const std::optional<double>& value, int decimals);

}  // namespace progeval
