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

#include <sstream>

#include "doctest.h"
#include "progeval/exclusion.hpp"
#include "progeval/signing.hpp"
#include "support.hpp"

using namespace progeval;
using progeval::testing::fixture;

namespace {

constexpr YearRange kWindow{2005, 2011};

struct Run {
  GroupPartition partition;
  std::vector<bool> flags;
};

Run run_exclusion(const testing::World& world, const LinkSet& links) {
  std::ifstream in(fixture("programme/patterns.tsv"));
  Run out;
  out.flags = signed_flags(world.corpus, SigningPattern(parse_patterns(in)));
  const AnalysisContext ctx(world.corpus, world.roster, links, world.metrics);
  const auto network = build_group_graph(Scope::programme(kWindow), kWindow, ctx);
  out.partition = exclude_inactive_groups(world.roster, links, network, out.flags);
  return out;
}

}  // namespace

TEST_CASE("only the group with neither collaboration nor signed papers is excluded") {
  auto world = testing::load_world(fixture("exclusion"));
  REQUIRE(world->links.size() == 5);
  const auto run = run_exclusion(*world, world->links);
  CHECK(run.partition.excluded == std::vector<std::string>{"NONE"});
  CHECK(run.partition.retained == std::vector<std::string>{"BOTH", "COLLAB", "SIGNED"});

  REQUIRE(run.partition.activity.size() == 4);
  const auto& both = run.partition.activity[3];
  CHECK(both.group_id == "BOTH");
  CHECK(both.collaborations == 1);
  CHECK(both.signed_papers == 1);
  CHECK(run.partition.activity[1].signed_papers == 1);
  CHECK(run.partition.activity[1].collaborations == 0);
}

TEST_CASE("dropping excluded groups removes their links and nothing else") {
  auto world = testing::load_world(fixture("exclusion"));
  const auto run = run_exclusion(*world, world->links);
  const std::set<std::string> excluded(run.partition.excluded.begin(), run.partition.excluded.end());
  const auto kept = drop_groups(world->links, excluded, world->corpus, world->roster);
  CHECK(kept.size() == 4);
  CHECK(kept.by_group("NONE").empty());
  CHECK(kept.by_group("BOTH").size() == 2);

  const auto ctx = world->context({}, excluded);
  CHECK(output_indicators(Scope::centre("C1", kWindow), ctx).P == 3);
  CHECK(ctx.groups(Scope::group("NONE", kWindow)).empty());
  CHECK(ctx.publications(Scope::group("NONE", kWindow)).empty());
}

TEST_CASE("exclusion is idempotent on the synthetic corpus") {
  auto world = testing::load_world(fixture("programme"));
  const auto first = run_exclusion(*world, world->links);
  CHECK_FALSE(first.partition.excluded.empty());
  CHECK(first.partition.retained.size() + first.partition.excluded.size() == world->roster.groups().size());

  const std::set<std::string> excluded(first.partition.excluded.begin(), first.partition.excluded.end());
  const auto kept = drop_groups(world->links, excluded, world->corpus, world->roster);
  const auto second = run_exclusion(*world, kept);
  CHECK(second.partition.retained == first.partition.retained);
  CHECK(second.partition.excluded == first.partition.excluded);
}

TEST_CASE("group partition round trip") {
  auto world = testing::load_world(fixture("exclusion"));
  const auto run = run_exclusion(*world, world->links);
  std::stringstream buffer;
  write_group_partition(buffer, run.partition, world->roster);
  CHECK(read_excluded_groups(buffer) == std::set<std::string>{"NONE"});

  std::istringstream bad("group_id\tstatus\nG1\tmaybe\n");
  CHECK_THROWS_AS(read_excluded_groups(bad), ParseError);
}
