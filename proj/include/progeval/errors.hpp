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
#include <stdexcept>
#include <string>

namespace progeval {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A malformed line in one of the delimited inputs. Carries the source name
/// and the 1-based physical line number.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

class DuplicateKeyError : public ParseError {
 public:
  DuplicateKeyError(std::string source, std::size_t line, const std::string& key)
      : ParseError(std::move(source), line, "duplicate key '" + key + "'"), key_(key) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// A reference to an id that does not resolve (group -> centre, link -> researcher, ...).
class ReferentialError : public Error {
 public:
  ReferentialError(const std::string& kind, const std::string& key)
      : Error("unresolved " + kind + " '" + key + "'"), key_(key) {}
  ReferentialError(const std::string& source, std::size_t line, const std::string& kind,
                   const std::string& key)
      : Error(source + ":" + std::to_string(line) + ": unresolved " + kind + " '" + key + "'"),
        key_(key) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Data that parses but violates a domain invariant (rank > category size, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Caller passed arguments outside an operation's domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace progeval
