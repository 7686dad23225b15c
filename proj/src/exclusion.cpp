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

#include "progeval/exclusion.hpp"

#include <algorithm>
#include <map>

#include "progeval/delimited.hpp"
#include "progeval/errors.hpp"

namespace progeval {

GroupPartition exclude_inactive_groups(const Roster& roster, const LinkSet& links,
                                       const CollaborationNetwork& network,
                                       const std::vector<bool>& signed_by_pub) {
  // Collaboration = total weight of the group's edges.
  std::map<std::size_t, std::size_t> collaborations;
  for (const auto& [edge, weight] : network.edges()) {
    collaborations[edge.first] += static_cast<std::size_t>(weight);
    collaborations[edge.second] += static_cast<std::size_t>(weight);
  }

  GroupPartition partition;
  const auto groups = roster.groups();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    GroupActivity activity;
    activity.group_id = groups[g].group_id;
    if (const auto node = network.node_index(activity.group_id)) {
      const auto it = collaborations.find(*node);
      if (it != collaborations.end()) activity.collaborations = it->second;
    }
    for (auto pub : links.publications_of_group(g)) {
      if (pub < signed_by_pub.size() && signed_by_pub[pub]) ++activity.signed_papers;
    }
    activity.excluded = activity.collaborations == 0 && activity.signed_papers == 0;
    (activity.excluded ? partition.excluded : partition.retained).push_back(activity.group_id);
    partition.activity.push_back(std::move(activity));
  }
  std::sort(partition.retained.begin(), partition.retained.end());
  std::sort(partition.excluded.begin(), partition.excluded.end());
  return partition;
}

LinkSet drop_groups(const LinkSet& links, const std::set<std::string>& excluded_groups,
                    const Corpus& corpus, const Roster& roster) {
  std::vector<Link> kept;
  kept.reserve(links.size());
  for (const auto& link : links.links()) {
    const auto researcher = roster.researcher_index(link.researcher_id);
    if (!researcher) throw ReferentialError("researcher_id", link.researcher_id);
    const auto& group = roster.groups()[roster.group_of_researcher(*researcher)].group_id;
    if (!excluded_groups.count(group)) kept.push_back(link);
  }
  std::vector<Ambiguity> ambiguities(links.ambiguities().begin(), links.ambiguities().end());
  return LinkSet(std::move(kept), corpus, roster, std::move(ambiguities));
}

void write_group_partition(std::ostream& out, const GroupPartition& partition, const Roster& roster) {
  DelimitedWriter writer(out, {"group_id", "centre_id", "collaborations", "signed_papers", "status"});
  for (const auto& activity : partition.activity) {
    const auto group = roster.group_index(activity.group_id);
    const std::string centre = group ? roster.groups()[*group].centre_id : std::string();
    writer.row({activity.group_id, centre, std::to_string(activity.collaborations),
                std::to_string(activity.signed_papers), activity.excluded ? "excluded" : "retained"});
  }
}

std::set<std::string> read_excluded_groups(std::istream& in, std::string_view source_name) {
  HeaderedTable table(in, std::string(source_name), {"group_id", "status"});
  std::set<std::string> excluded;
  while (auto row = table.next()) {
    const auto status = table.field(*row, "status");
    if (status == "excluded") {
      excluded.emplace(table.field(*row, "group_id"));
    } else if (status != "retained") {
      throw ParseError(table.source(), row->line, "unknown status '" + std::string(status) + "'");
    }
  }
  return excluded;
}

}  // namespace progeval
