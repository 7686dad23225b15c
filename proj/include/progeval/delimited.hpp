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
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace progeval {

inline constexpr char kFieldDelimiter = '\t';
inline constexpr char kListDelimiter = ';';

/// One data line of a delimited table.
struct DelimitedRow {
  std::size_t line = 0;  // 1-based physical line number in the source
  std::vector<std::string> fields;
};

/// Line reader for the tab-delimited inputs. Blank lines and lines starting
/// with '#' are skipped but still counted, so reported line numbers match
/// what an editor shows. A trailing '\r' is stripped.
class DelimitedReader {
 public:
  DelimitedReader(std::istream& in, std::string source_name);

  std::optional<DelimitedRow> next();

  const std::string& source() const noexcept { return source_; }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_ = 0;
};

/// A delimited table whose first data line is a header. Columns are looked up
/// by name so their order in the file is free. A stream with no lines at all
/// reads as an empty table.
class HeaderedTable {
 public:
  HeaderedTable(std::istream& in, std::string source_name,
                const std::vector<std::string>& required_columns);

  std::optional<DelimitedRow> next();

  /// Field of `row` in column `name`; throws ParseError on short rows.
  std::string_view field(const DelimitedRow& row, std::string_view name) const;

  /// Same as field() but returns empty for columns absent from the header.
  std::string_view optional_field(const DelimitedRow& row, std::string_view name) const;

  bool has_column(std::string_view name) const;
  const std::string& source() const noexcept { return reader_.source(); }

 private:
  DelimitedReader reader_;
  std::map<std::string, std::size_t, std::less<>> columns_;
  std::size_t width_ = 0;
};

/// Writes one header line followed by data lines. Fields must not contain the
/// field delimiter or line breaks; violations throw ValidationError.
class DelimitedWriter {
 public:
  DelimitedWriter(std::ostream& out, const std::vector<std::string>& header);

  void row(const std::vector<std::string>& fields);

  std::size_t rows() const noexcept { return rows_; }

 private:
  void write_line(const std::vector<std::string>& fields);

  std::ostream& out_;
  std::size_t width_;
  std::size_t rows_ = 0;
};

/// Throws ValidationError if `value` cannot be stored in a delimited field
/// (or, with `allow_list_delimiter` false, in a list element).
void check_field_text(std::string_view value, bool allow_list_delimiter = true);

}  // namespace progeval
