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

// Writes a synthetic dataset plus config.json into a directory.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "synth.hpp"

int main(int argc, char** argv) {
  CLI::App app{"progeval-synth: synthetic programme datasets"};
  std::string kind = "programme";
  std::string out;
  std::uint64_t seed = 2014;
  std::size_t publications = 2000;
  bool full_roster = false;

  app.add_option("--kind", kind, "programme, linkage or exclusion")
      ->check(CLI::IsMember({"programme", "linkage", "exclusion"}));
  app.add_option("--out", out, "Output directory")->required();
  app.add_option("--seed", seed, "Generator seed");
  app.add_option("--publications", publications, "Admitted in-window records (programme kind)");
  app.add_flag("--full-roster", full_roster, "Use the full published centre sizes (programme kind)");
  CLI11_PARSE(app, argc, argv);

  try {
    progeval::synth::Dataset data;
    if (kind == "programme") {
      progeval::synth::ProgrammeCorpusOptions options;
      options.seed = seed;
      options.publications = publications;
      options.full_roster = full_roster;
      data = progeval::synth::programme_corpus(options);
    } else if (kind == "linkage") {
      data = progeval::synth::linkage_fixture(seed);
    } else {
      data = progeval::synth::exclusion_fixture();
    }
    progeval::synth::write_dataset(data, out);
    std::cout << "wrote " << data.publications.size() << " records, " << data.researchers.size()
              << " researchers to " << out << '\n';
  } catch (const std::exception& e) {
    std::cerr << "progeval-synth: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
