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

// Command-line front end: runs one pipeline stage (or the full report) from a
// JSON run configuration.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "progeval/config.hpp"
#include "progeval/pipeline.hpp"

namespace {

constexpr int kExitStageError = 1;
constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"progeval: bibliometric evaluation of research programmes"};
  app.option_defaults()->always_capture_default();

  std::string config_path;
  std::string stage_name = "report";
  std::string positional_stage;
  std::string out_dir;
  std::optional<double> epsilon;
  std::optional<int> window;
  bool seedless = false;

  app.add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
  app.add_option("--stage", stage_name,
                 "ingest, link, exclude, indicators, network, signing or report (full run)");
  app.add_option("subcommand", positional_stage, "Stage to run; same as --stage");
  app.add_option("--out", out_dir, "Output directory (overrides the configuration)");
  app.add_option("--epsilon", epsilon, "Stabilization tolerance in percentage points");
  app.add_option("--window", window, "Stabilization window in years");
  app.add_flag("--seedless", seedless, "Fail if the pipeline would draw random numbers");

  CLI11_PARSE(app, argc, argv);

  if (!positional_stage.empty()) stage_name = positional_stage;
  const auto stage = progeval::parse_stage(stage_name);
  if (!stage) {
    std::cerr << "progeval: unknown stage '" << stage_name << "'\n";
    return kExitUsage;
  }

  try {
    auto config = progeval::load_config(config_path);
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (epsilon) config.stabilization_epsilon = *epsilon;
    if (window) config.stabilization_window = *window;

    const auto bundle = progeval::run(config, {*stage, seedless});
    std::cout << "stage " << progeval::to_string(bundle.stage) << ": " << bundle.files.size() << " files ("
              << bundle.report_count() << " reports), fingerprint " << bundle.fingerprint << '\n';
    for (const auto& warning : bundle.warnings) std::cerr << "warning: " << warning << '\n';
    return 0;
  } catch (const progeval::ConfigError& e) {
    std::cerr << "progeval: " << e.what() << '\n';
    return kExitUsage;
  } catch (const progeval::StageError& e) {
    std::cerr << "progeval: " << e.what() << '\n';
    return kExitStageError;
  } catch (const std::exception& e) {
    std::cerr << "progeval: " << e.what() << '\n';
    return kExitUsage;
  }
}
