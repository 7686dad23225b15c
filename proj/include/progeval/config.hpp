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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "progeval/corpus.hpp"
#include "progeval/errors.hpp"

namespace progeval {

struct InputPaths {
  std::filesystem::path publications;
  std::filesystem::path centres;
  std::filesystem::path groups;
  std::filesystem::path researchers;
  std::filesystem::path journal_metrics;
  std::filesystem::path overrides;  // optional
  std::filesystem::path patterns;
};

enum class FirstPeriodDefault { LaunchYear, None };

struct RunConfig {
  InputPaths inputs;
  YearRange study_window{2005, 2011};
  std::vector<std::string> national_categories;  // empty: whole corpus is national

  /// Explicit first comparison period per centre id.
  std::map<std::string, YearRange> first_periods;
  /// Centres without an explicit entry use (launch - 1 .. launch) under
  /// LaunchYear; under None they are a validation finding.
  FirstPeriodDefault first_period_default = FirstPeriodDefault::LaunchYear;
  YearRange second_period{2010, 2011};

  double stabilization_epsilon = 2.0;
  int stabilization_window = 3;

  std::filesystem::path output_dir;
  int percent_decimals = 1;
  int cpp_decimals = 2;
};

/// Loads a JSON run configuration. Relative paths resolve against the
/// directory holding the file. Throws Error on unreadable or ill-typed JSON.
RunConfig load_config(const std::filesystem::path& path);

/// Same, from JSON text; relative paths resolve against `base_dir`.
RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir);

struct Finding {
  std::string field;
  std::string message;

  friend bool operator==(const Finding&, const Finding&) = default;
};

/// Empty iff the configuration is runnable. Reads the centres file (when it
/// exists) to check that every centre has a first comparison period.
std::vector<Finding> validate_config(const RunConfig& config);

class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<Finding> findings);
  const std::vector<Finding>& findings() const noexcept { return findings_; }

 private:
  std::vector<Finding> findings_;
};

/// First comparison period for a centre under `config`.
std::optional<YearRange> first_period_for(const RunConfig& config, const Centre& centre);

/// 64-bit FNV-1a over the settings and the bytes of every input file, as
/// 16 hex digits. Output locations do not contribute.
std::string config_fingerprint(const RunConfig& config);

}  // namespace progeval
