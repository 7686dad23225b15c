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

#include "progeval/delimited.hpp"

#include "progeval/errors.hpp"
#include "progeval/text.hpp"

namespace progeval {

DelimitedReader::DelimitedReader(std::istream& in, std::string source_name)
    : in_(in), source_(std::move(source_name)) {}

std::optional<DelimitedRow> DelimitedReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    DelimitedRow row;
    row.line = line_;
    for (auto field : split(line, kFieldDelimiter)) row.fields.emplace_back(field);
    return row;
  }
  return std::nullopt;
}

HeaderedTable::HeaderedTable(std::istream& in, std::string source_name,
                             const std::vector<std::string>& required_columns)
    : reader_(in, std::move(source_name)) {
  auto header = reader_.next();
  if (!header) return;  // an empty stream is an empty table
  width_ = header->fields.size();
  for (std::size_t i = 0; i < header->fields.size(); ++i) {
    const std::string name(trim(header->fields[i]));
    if (!columns_.emplace(name, i).second) {
      throw ParseError(reader_.source(), header->line, "duplicate column '" + name + "'");
    }
  }
  for (const auto& name : required_columns) {
    if (!columns_.count(name)) {
      throw ParseError(reader_.source(), header->line, "missing column '" + name + "'");
    }
  }
}

std::optional<DelimitedRow> HeaderedTable::next() {
  auto row = reader_.next();
  if (row && row->fields.size() > width_) {
    throw ParseError(source(), row->line,
                     "expected at most " + std::to_string(width_) + " fields, got " +
                         std::to_string(row->fields.size()));
  }
  return row;
}

std::string_view HeaderedTable::field(const DelimitedRow& row, std::string_view name) const {
  const auto it = columns_.find(name);
  if (it == columns_.end() || it->second >= row.fields.size()) {
    throw ParseError(source(), row.line, "missing field '" + std::string(name) + "'");
  }
  return trim(row.fields[it->second]);
}

std::string_view HeaderedTable::optional_field(const DelimitedRow& row,
                                               std::string_view name) const {
  const auto it = columns_.find(name);
  if (it == columns_.end() || it->second >= row.fields.size()) return {};
  return trim(row.fields[it->second]);
}

bool HeaderedTable::has_column(std::string_view name) const {
  return columns_.find(name) != columns_.end();
}

void check_field_text(std::string_view value, bool allow_list_delimiter) {
  for (char c : value) {
    if (c == kFieldDelimiter || c == '\n' || c == '\r' ||
        (!allow_list_delimiter && c == kListDelimiter)) {
      throw ValidationError("value '" + std::string(value) +
                            "' contains a reserved delimiter character");
    }
  }
}

DelimitedWriter::DelimitedWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), width_(header.size()) {
  write_line(header);
}

void DelimitedWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != width_) {
    throw ValidationError("row has " + std::to_string(fields.size()) + " fields, header has " +
                          std::to_string(width_));
  }
  write_line(fields);
  ++rows_;
}

void DelimitedWriter::write_line(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    check_field_text(fields[i]);
    if (i > 0) out_ << kFieldDelimiter;
    out_ << fields[i];
  }
  out_ << '\n';
}

}  // namespace progeval
