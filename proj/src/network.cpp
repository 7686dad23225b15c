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

#include "progeval/network.hpp"

#include <algorithm>

#include "progeval/delimited.hpp"
#include "progeval/errors.hpp"
#include "progeval/union_find.hpp"

namespace progeval {
namespace {

Scope with_period(const Scope& scope, YearRange period) {
  Scope out = scope;
  out.period = period;
  return out;
}

bool spans_categories(std::span<const std::size_t> groups, const Roster& roster) {
  if (groups.size() < 2) return false;
  const auto first = roster.groups()[groups.front()].institutional_category;
  return std::any_of(groups.begin() + 1, groups.end(), [&](std::size_t g) {
    return roster.groups()[g].institutional_category != first;
  });
}

void accumulate(Q1Cell& cell, const std::optional<JournalPosition>& position) {
  ++cell.papers;
  if (!position) return;
  ++cell.resolved;
  if (position->is_q1) ++cell.q1;
}

void finish(Q1Cell& cell) { cell.pct_Q1 = percentage(cell.q1, cell.resolved); }

}  // namespace

CollaborationNetwork::CollaborationNetwork(std::vector<std::string> nodes, YearRange period)
    : nodes_(std::move(nodes)), period_(period) {
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
    throw ArgumentError("duplicate node in collaboration network");
  }
}

std::optional<std::size_t> CollaborationNetwork::node_index(std::string_view group_id) const {
  const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), group_id);
  if (it == nodes_.end() || *it != group_id) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

void CollaborationNetwork::add_collaboration(std::string_view a, std::string_view b, int weight) {
  const auto ia = node_index(a);
  const auto ib = node_index(b);
  if (!ia) throw ArgumentError("unknown node '" + std::string(a) + "'");
  if (!ib) throw ArgumentError("unknown node '" + std::string(b) + "'");
  add_collaboration(*ia, *ib, weight);
}

void CollaborationNetwork::add_collaboration(std::size_t a, std::size_t b, int weight) {
  if (a >= nodes_.size() || b >= nodes_.size()) throw ArgumentError("node index out of range");
  if (a == b) throw ArgumentError("self-loop on '" + nodes_[a] + "'");
  if (weight < 1) throw ArgumentError("edge weight must be positive");
  edges_[{std::min(a, b), std::max(a, b)}] += weight;
}

std::size_t CollaborationNetwork::degree(std::size_t node) const {
  std::size_t d = 0;
  for (const auto& [edge, weight] : edges_) {
    if (edge.first == node || edge.second == node) ++d;
  }
  return d;
}

CollaborationNetwork build_group_graph(const Scope& scope, YearRange period,
                                       const AnalysisContext& context) {
  const auto& roster = context.roster();
  const auto scope_groups = context.groups(scope);
  std::vector<std::string> ids;
  ids.reserve(scope_groups.size());
  for (auto g : scope_groups) ids.push_back(roster.groups()[g].group_id);
  CollaborationNetwork network(ids, period);

  // Group index -> node position.
  std::map<std::size_t, std::size_t> position;
  for (auto g : scope_groups) position[g] = *network.node_index(roster.groups()[g].group_id);

  for (auto pub : context.publications(with_period(scope, period))) {
    const auto groups = context.scope_groups_of_publication(pub, scope_groups);
    for (std::size_t i = 0; i < groups.size(); ++i) {
      for (std::size_t j = i + 1; j < groups.size(); ++j) {
        network.add_collaboration(position[groups[i]], position[groups[j]]);
      }
    }
  }
  return network;
}

double density(const CollaborationNetwork& network) {
  const auto n = network.node_count();
  if (n < 2) throw ArgumentError("density undefined for fewer than two nodes");
  const double possible = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return static_cast<double>(network.edge_count()) / possible;
}

double main_component(const CollaborationNetwork& network) {
  const auto n = network.node_count();
  if (n == 0) throw ArgumentError("main component undefined for an empty network");
  UnionFind components(n);
  for (const auto& [edge, weight] : network.edges()) components.unite(edge.first, edge.second);
  return 100.0 * static_cast<double>(components.largest()) / static_cast<double>(n);
}

std::optional<double> ic_share(const Scope& scope, YearRange period, const AnalysisContext& context) {
  const auto scope_groups = context.groups(scope);
  const auto pubs = context.publications(with_period(scope, period));
  std::size_t ic = 0;
  for (auto pub : pubs) {
    if (spans_categories(context.scope_groups_of_publication(pub, scope_groups), context.roster())) {
      ++ic;
    }
  }
  return percentage(ic, pubs.size());
}

NetworkMetrics network_metrics(const Scope& scope, YearRange period, const AnalysisContext& context) {
  const auto network = build_group_graph(scope, period, context);
  NetworkMetrics metrics;
  if (network.node_count() >= 2) metrics.D = density(network);
  if (network.node_count() >= 1) metrics.Co = main_component(network);
  metrics.IC = ic_share(scope, period, context);
  return metrics;
}

MultiplicityDistribution multiplicity_distribution(const Scope& scope, YearRange period,
                                                   const AnalysisContext& context) {
  const auto scope_groups = context.groups(scope);
  MultiplicityDistribution out;
  for (auto pub : context.publications(with_period(scope, period))) {
    const auto groups = context.scope_groups_of_publication(pub, scope_groups).size();
    ++out.counts[std::min<std::size_t>(groups, 3) - 1];
    ++out.total;
  }
  for (std::size_t bin = 0; bin < 3; ++bin) out.shares[bin] = percentage(out.counts[bin], out.total);
  return out;
}

std::string_view to_string(CollabClass value) {
  switch (value) {
    case CollabClass::NoCollabNoIC: return "NoCollab/NoIC";
    case CollabClass::NoCollabIC: return "NoCollab/IC";
    case CollabClass::CollabNoIC: return "Collab/NoIC";
    case CollabClass::CollabIC: return "Collab/IC";
  }
  return "NoCollab/NoIC";
}

CollabClass classify_publication(std::span<const std::size_t> scope_groups, const Roster& roster) {
  const bool collab = scope_groups.size() >= 2;
  const bool ic = spans_categories(scope_groups, roster);
  if (collab) return ic ? CollabClass::CollabIC : CollabClass::CollabNoIC;
  return ic ? CollabClass::NoCollabIC : CollabClass::NoCollabNoIC;
}

std::vector<Q1CrossTab> q1_by_collab_class(const Scope& scope, std::span<const YearRange> periods,
                                           const AnalysisContext& context) {
  const auto scope_groups = context.groups(scope);
  std::vector<Q1CrossTab> out;
  for (const auto& period : periods) {
    Q1CrossTab tab;
    tab.period = period;
    for (auto pub : context.publications(with_period(scope, period))) {
      const auto groups = context.scope_groups_of_publication(pub, scope_groups);
      const auto cls = classify_publication(groups, context.roster());
      const auto& position = context.position(pub);
      accumulate(tab.cells[static_cast<std::size_t>(cls)], position);
      const bool ic = cls == CollabClass::CollabIC || cls == CollabClass::NoCollabIC;
      const bool collab = cls == CollabClass::CollabIC || cls == CollabClass::CollabNoIC;
      accumulate(ic ? tab.ic : tab.no_ic, position);
      accumulate(collab ? tab.collab : tab.no_collab, position);
    }
    for (auto& cell : tab.cells) finish(cell);
    finish(tab.ic);
    finish(tab.no_ic);
    finish(tab.collab);
    finish(tab.no_collab);
    out.push_back(tab);
  }
  return out;
}

std::pair<YearRange, YearRange> default_periods(const Centre& centre, YearRange second) {
  return {YearRange{centre.launch_year - 1, centre.launch_year}, second};
}

void write_network_edges(std::ostream& out, const CollaborationNetwork& network) {
  DelimitedWriter writer(out, {"group_a", "group_b", "weight"});
  for (const auto& [edge, weight] : network.edges()) {
    writer.row({network.nodes()[edge.first], network.nodes()[edge.second], std::to_string(weight)});
  }
}

void write_network_nodes(std::ostream& out, const CollaborationNetwork& network,
                         const Roster& roster) {
  DelimitedWriter writer(out, {"group", "centre", "institutional_category"});
  for (const auto& id : network.nodes()) {
    const auto group = roster.group_index(id);
    if (!group) throw ReferentialError("group_id", id);
    const auto& g = roster.groups()[*group];
    writer.row({g.group_id, g.centre_id, std::string(to_string(g.institutional_category))});
  }
}

}  // namespace progeval
