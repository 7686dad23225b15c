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

#include "progeval/text.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace progeval {
namespace {

// Sentinels returned by fold() for non-letter code points.
constexpr std::string_view kSpace = " ";
constexpr std::string_view kDelete = "";
constexpr std::string_view kHyphen = "-";

// U+00C0 .. U+00FF
constexpr std::array<std::string_view, 64> kLatin1 = {
    "a", "a", "a", "a", "a",  "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    "d", "n", "o", "o", "o",  "o", "o",  " ", "o", "u", "u", "u", "u", "y", "th", "ss",
    "a", "a", "a", "a", "a",  "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    "d", "n", "o", "o", "o",  "o", "o",  " ", "o", "u", "u", "u", "u", "y", "th", "y"};

// U+0100 .. U+017F
std::string_view fold_latin_extended_a(char32_t cp) {
  struct Range {
    char32_t last;
    std::string_view base;
  };
  static constexpr Range kRanges[] = {
      {0x0105, "a"}, {0x010D, "c"}, {0x0111, "d"}, {0x011B, "e"}, {0x0123, "g"},
      {0x0127, "h"}, {0x0131, "i"}, {0x0133, "ij"}, {0x0135, "j"}, {0x0138, "k"},
      {0x0142, "l"}, {0x014B, "n"}, {0x0151, "o"}, {0x0153, "oe"}, {0x0159, "r"},
      {0x0161, "s"}, {0x0167, "t"}, {0x0173, "u"}, {0x0175, "w"}, {0x0178, "y"},
      {0x017E, "z"}, {0x017F, "s"}};
  for (const auto& range : kRanges) {
    if (cp <= range.last) return range.base;
  }
  return kSpace;
}

// Returns the replacement for a non-ASCII code point, or nullopt to keep the
// original bytes.
std::optional<std::string_view> fold(char32_t cp) {
  if (cp >= 0x00C0 && cp <= 0x00FF) return kLatin1[cp - 0x00C0];
  if (cp >= 0x0100 && cp <= 0x017F) return fold_latin_extended_a(cp);
  if (cp == 0x00B4 || cp == 0x2018 || cp == 0x2019 || cp == 0x201B || cp == 0x02BC) return kDelete;
  if (cp >= 0x0300 && cp <= 0x036F) return kDelete;  // combining marks
  if (cp >= 0x00A0 && cp <= 0x00BF) return kSpace;
  if (cp >= 0x2010 && cp <= 0x2015) return kHyphen;
  if (cp >= 0x2000 && cp <= 0x206F) return kSpace;
  if (cp == 0x3000 || cp == 0xFEFF) return kSpace;
  return std::nullopt;
}

// Decodes one UTF-8 sequence starting at text[i]. Returns the code point and
// its byte length; invalid sequences decode as a single byte with length 1
// and cp = 0xFFFFFFFF.
std::pair<char32_t, std::size_t> decode(std::string_view text, std::size_t i) {
  const auto lead = static_cast<unsigned char>(text[i]);
  std::size_t length = 0;
  char32_t cp = 0;
  if (lead < 0x80) return {lead, 1};
  if ((lead & 0xE0) == 0xC0) {
    length = 2;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    length = 3;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    length = 4;
    cp = lead & 0x07;
  } else {
    return {0xFFFFFFFF, 1};
  }
  if (i + length > text.size()) return {0xFFFFFFFF, 1};
  for (std::size_t k = 1; k < length; ++k) {
    const auto next = static_cast<unsigned char>(text[i + k]);
    if ((next & 0xC0) != 0x80) return {0xFFFFFFFF, 1};
    cp = (cp << 6) | (next & 0x3F);
  }
  return {cp, length};
}

class CanonicalWriter {
 public:
  void push(char c) {
    if (c == ' ') {
      pending_space_ = true;
      return;
    }
    if (c == '-') {
      pending_space_ = false;
      if (!out_.empty() && out_.back() != '-') out_ += '-';
      return;
    }
    if (pending_space_ && !out_.empty() && out_.back() != '-') out_ += ' ';
    pending_space_ = false;
    out_ += c;
  }

  void push(std::string_view s) {
    for (char c : s) push(c);
  }

  std::string finish() && {
    while (!out_.empty() && out_.back() == '-') out_.pop_back();
    return std::move(out_);
  }

 private:
  std::string out_;
  bool pending_space_ = false;
};

}  // namespace

std::string normalize_text(std::string_view text) {
  CanonicalWriter writer;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto [cp, length] = decode(text, i);
    if (cp < 0x80) {
      const auto c = static_cast<char>(cp);
      if (std::isalnum(static_cast<unsigned char>(c))) {
        writer.push(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      } else if (c == '.' || c == '\'' || c == '`') {
        // deleted
      } else if (c == '-') {
        writer.push('-');
      } else {
        writer.push(' ');
      }
    } else if (auto folded = (cp == 0xFFFFFFFF) ? std::nullopt : fold(cp)) {
      writer.push(*folded);
    } else {
      // Unfolded code point: copy its bytes through untouched.
      for (std::size_t k = 0; k < length; ++k) {
        // Raw bytes >= 0x80 never equal ' ' or '-', so push() appends them.
        writer.push(text[i + k]);
      }
    }
    i += length;
  }
  return std::move(writer).finish();
}

std::string_view trim(std::string_view text) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  return text;
}

std::vector<std::string_view> split(std::string_view text, char delimiter) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(delimiter, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> split_list(std::string_view text, char delimiter) {
  std::vector<std::string> out;
  for (auto part : split(text, delimiter)) {
    part = trim(part);
    if (!part.empty()) out.emplace_back(part);
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += separator;
    out += parts[i];
  }
  return out;
}

std::string to_lower_ascii(std::string_view text) {
  std::string out(text);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::optional<long long> parse_integer(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::optional<double> parse_real(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  std::string buffer(text);
  char* end = nullptr;
  const double value = std::strtod(buffer.c_str(), &end);
  if (end != buffer.c_str() + buffer.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::string format_fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
  std::string out(buffer);
  // "-0.0" is not a useful rendering of a tiny negative rounding residue.
  if (out.size() > 1 && out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) {
    out.erase(0, 1);
  }
  return out;
}

std::string format_fixed(const std::optional<double>& value, int decimals) {
  return value ? format_fixed(*value, decimals) : std::string("NA");
}

}  // namespace progeval
