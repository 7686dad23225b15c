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
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "progeval/corpus.hpp"
#include "progeval/linkage.hpp"
#include "progeval/network.hpp"

namespace progeval {

struct GroupActivity {
  std::string group_id;
  std::size_t collaborations = 0;  // co-authored papers with other programme groups
  std::size_t signed_papers = 0;
  bool excluded = false;
};

struct GroupPartition {
  std::vector<std::string> retained;   // sorted
  std::vector<std::string> excluded;   // sorted
  std::vector<GroupActivity> activity; // roster order
};

/// Inactive-group rule: a roster group is excluded iff it has no co-authored
/// paper with another group in `network` and none of its linked papers is
/// signed. `network` and `signed_by_pub` should cover the whole study window.
/// Roster groups missing from the network count as having no collaborations.
GroupPartition exclude_inactive_groups(const Roster& roster, const LinkSet& links,
                                       const CollaborationNetwork& network,
                                       const std::vector<bool>& signed_by_pub);

/// Links whose researcher belongs to none of `excluded_groups`.
LinkSet drop_groups(const LinkSet& links, const std::set<std::string>& excluded_groups,
                    const Corpus& corpus, const Roster& roster);

void write_group_partition(std::ostream& out, const GroupPartition& partition, const Roster& roster);
std::set<std::string> read_excluded_groups(std::istream& in, std::string_view source_name = "groups");

}  // namespace progeval
