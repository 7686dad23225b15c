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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "progeval/config.hpp"
#include "progeval/errors.hpp"

namespace progeval {

/// Pipeline stages in execution order. Report runs every stage.
enum class Stage { Ingest, Link, Exclude, Indicators, Network, Signing, Report };

std::optional<Stage> parse_stage(std::string_view name);
std::string_view to_string(Stage stage);

/// The pipeline never draws random numbers; --seedless asserts this.
inline constexpr bool kPipelineUsesRandomness = false;

struct EmittedFile {
  std::string name;  // relative to the output directory
  std::string kind;  // "report" or "artifact"
  std::size_t rows = 0;
};

struct ReportBundle {
  Stage stage = Stage::Report;
  std::string fingerprint;
  std::vector<EmittedFile> files;
  std::vector<std::string> warnings;

  std::size_t report_count() const;
};

/// Error raised inside a stage; the message is prefixed with the stage name
/// and keeps the source file and line of the underlying error.
class StageError : public Error {
 public:
  StageError(Stage stage, const std::string& what)
      : Error("stage '" + std::string(to_string(stage)) + "': " + what), stage_(stage) {}
  Stage stage() const noexcept { return stage_; }

 private:
  Stage stage_;
};

struct RunOptions {
  Stage stage = Stage::Report;
  bool seedless = false;
};

/// Runs the pipeline described by `config` and writes its tables plus
/// manifest.json into config.output_dir.
///
/// Stages after Link reuse links.tsv (and Exclude's group_partition.tsv) from
/// the output directory when present, so linkage can run once. The Report
/// stage always recomputes everything. Throws ConfigError before any
/// processing when the configuration does not validate, and StageError when
/// a stage fails.
ReportBundle run(const RunConfig& config, const RunOptions& options = {});

}  // namespace progeval
