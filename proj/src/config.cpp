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

#include "progeval/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "progeval/delimited.hpp"

namespace progeval {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

YearRange year_range(const json& value, std::string_view field) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number_integer() ||
      !value[1].is_number_integer()) {
    throw Error("config field '" + std::string(field) + "' must be [first_year, last_year]");
  }
  return {value[0].get<int>(), value[1].get<int>()};
}

fs::path resolve(const fs::path& base, const json& value, std::string_view field) {
  if (!value.is_string()) throw Error("config field '" + std::string(field) + "' must be a path string");
  fs::path path = value.get<std::string>();
  if (path.empty()) return path;
  return path.is_absolute() ? path : base / path;
}

class Fnv1a {
 public:
  void update(std::string_view bytes) {
    for (unsigned char c : bytes) {
      hash_ ^= c;
      hash_ *= 0x100000001b3ULL;
    }
  }

  std::string hex() const {
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash_));
    return buffer;
  }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

RunConfig parse_config(std::string_view json_text, const fs::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw Error("config root must be an object");

  RunConfig config;
  if (root.contains("inputs")) {
    const auto& inputs = root.at("inputs");
    const auto path_of = [&](const char* key) -> fs::path {
      return inputs.contains(key) ? resolve(base_dir, inputs.at(key), std::string("inputs.") + key)
                                  : fs::path();
    };
    config.inputs.publications = path_of("publications");
    config.inputs.centres = path_of("centres");
    config.inputs.groups = path_of("groups");
    config.inputs.researchers = path_of("researchers");
    config.inputs.journal_metrics = path_of("journal_metrics");
    config.inputs.overrides = path_of("overrides");
    config.inputs.patterns = path_of("patterns");
  }
  if (root.contains("study_window")) config.study_window = year_range(root.at("study_window"), "study_window");
  if (root.contains("national_categories")) {
    config.national_categories = root.at("national_categories").get<std::vector<std::string>>();
  }
  if (root.contains("periods")) {
    const auto& periods = root.at("periods");
    if (periods.contains("second")) config.second_period = year_range(periods.at("second"), "periods.second");
    if (periods.contains("first_default")) {
      const auto mode = periods.at("first_default").get<std::string>();
      if (mode == "launch") {
        config.first_period_default = FirstPeriodDefault::LaunchYear;
      } else if (mode == "none") {
        config.first_period_default = FirstPeriodDefault::None;
      } else {
        throw Error("config field 'periods.first_default' must be \"launch\" or \"none\"");
      }
    }
    if (periods.contains("first")) {
      for (const auto& [centre, range] : periods.at("first").items()) {
        config.first_periods[centre] = year_range(range, "periods.first." + centre);
      }
    }
  }
  if (root.contains("stabilization")) {
    const auto& s = root.at("stabilization");
    if (s.contains("epsilon")) config.stabilization_epsilon = s.at("epsilon").get<double>();
    if (s.contains("window")) config.stabilization_window = s.at("window").get<int>();
  }
  if (root.contains("output_dir")) config.output_dir = resolve(base_dir, root.at("output_dir"), "output_dir");
  if (root.contains("rounding")) {
    const auto& r = root.at("rounding");
    if (r.contains("percent_decimals")) config.percent_decimals = r.at("percent_decimals").get<int>();
    if (r.contains("cpp_decimals")) config.cpp_decimals = r.at("cpp_decimals").get<int>();
  }
  return config;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str(), path.parent_path());
  } catch (const json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::vector<Finding> validate_config(const RunConfig& config) {
  std::vector<Finding> findings;
  const auto add = [&](std::string field, std::string message) {
    findings.push_back({std::move(field), std::move(message)});
  };

  const std::vector<std::pair<std::string, const fs::path*>> inputs = {
      {"inputs.publications", &config.inputs.publications},
      {"inputs.centres", &config.inputs.centres},
      {"inputs.groups", &config.inputs.groups},
      {"inputs.researchers", &config.inputs.researchers},
      {"inputs.journal_metrics", &config.inputs.journal_metrics},
      {"inputs.overrides", &config.inputs.overrides},
      {"inputs.patterns", &config.inputs.patterns},
  };
  std::map<std::string, std::string> seen;  // normalized path -> field
  for (const auto& [field, path] : inputs) {
    if (path->empty()) {
      if (field != "inputs.overrides") add(field, "path is required");
      continue;
    }
    std::error_code ec;
    if (!fs::is_regular_file(*path, ec)) {
      add(field, "file not found: " + path->string());
    }
    const auto key = fs::weakly_canonical(*path, ec).string();
    const auto [it, inserted] = seen.emplace(key, field);
    if (!inserted) add(field, "same path as " + it->second);
  }
  if (config.output_dir.empty()) {
    add("output_dir", "path is required");
  } else {
    std::error_code ec;
    const auto key = fs::weakly_canonical(config.output_dir, ec).string();
    if (seen.count(key)) add("output_dir", "same path as " + seen[key]);
  }

  if (!config.study_window.valid()) {
    add("study_window", "end year " + std::to_string(config.study_window.last) +
                            " precedes start year " + std::to_string(config.study_window.first));
  }
  if (!config.second_period.valid()) add("periods.second", "inverted period");
  for (const auto& [centre, range] : config.first_periods) {
    if (!range.valid()) add("periods.first." + centre, "inverted period");
  }
  if (!(config.stabilization_epsilon > 0.0)) add("stabilization.epsilon", "must be positive");
  if (config.stabilization_window < 2) add("stabilization.window", "must be at least 2");
  if (config.percent_decimals < 0 || config.percent_decimals > 6) {
    add("rounding.percent_decimals", "must be within 0..6");
  }
  if (config.cpp_decimals < 0 || config.cpp_decimals > 6) add("rounding.cpp_decimals", "must be within 0..6");

  // Centre coverage needs the centre list; skip quietly when the file is
  // already reported missing above.
  std::error_code ec;
  if (!config.inputs.centres.empty() && fs::is_regular_file(config.inputs.centres, ec)) {
    std::ifstream in(config.inputs.centres);
    std::set<std::string> centre_ids;
    try {
      HeaderedTable table(in, config.inputs.centres.string(), {"centre_id"});
      while (auto row = table.next()) centre_ids.emplace(table.field(*row, "centre_id"));
    } catch (const Error& e) {
      add("inputs.centres", e.what());
    }
    for (const auto& [centre, range] : config.first_periods) {
      if (!centre_ids.count(centre)) add("periods.first." + centre, "unknown centre");
    }
    if (config.first_period_default == FirstPeriodDefault::None) {
      for (const auto& centre : centre_ids) {
        if (!config.first_periods.count(centre)) {
          add("periods.first", "centre '" + centre + "' has no first-period definition");
        }
      }
    }
  }
  return findings;
}

ConfigError::ConfigError(std::vector<Finding> findings)
    : Error([&] {
        std::string message = "invalid configuration:";
        for (const auto& f : findings) message += "\n  " + f.field + ": " + f.message;
        return message;
      }()),
      findings_(std::move(findings)) {}

std::optional<YearRange> first_period_for(const RunConfig& config, const Centre& centre) {
  const auto it = config.first_periods.find(centre.centre_id);
  if (it != config.first_periods.end()) return it->second;
  if (config.first_period_default == FirstPeriodDefault::LaunchYear) {
    return YearRange{centre.launch_year - 1, centre.launch_year};
  }
  return std::nullopt;
}

std::string config_fingerprint(const RunConfig& config) {
  json settings;
  settings["study_window"] = {config.study_window.first, config.study_window.last};
  settings["national_categories"] = config.national_categories;
  json first = json::object();
  for (const auto& [centre, range] : config.first_periods) first[centre] = {range.first, range.last};
  settings["first_periods"] = first;
  settings["first_default"] =
      config.first_period_default == FirstPeriodDefault::LaunchYear ? "launch" : "none";
  settings["second_period"] = {config.second_period.first, config.second_period.last};
  settings["epsilon"] = config.stabilization_epsilon;
  settings["window"] = config.stabilization_window;
  settings["percent_decimals"] = config.percent_decimals;
  settings["cpp_decimals"] = config.cpp_decimals;

  Fnv1a hash;
  hash.update(settings.dump());
  for (const auto* path : {&config.inputs.publications, &config.inputs.centres, &config.inputs.groups,
                           &config.inputs.researchers, &config.inputs.journal_metrics,
                           &config.inputs.overrides, &config.inputs.patterns}) {
    hash.update("\x1e");
    if (path->empty()) continue;
    std::ifstream in(*path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    hash.update(buffer.str());
  }
  return hash.hex();
}

}  // namespace progeval
