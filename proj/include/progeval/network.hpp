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

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "progeval/corpus.hpp"
#include "progeval/indicators.hpp"

namespace progeval {

/// Undirected, weighted group co-authorship graph. Nodes are group ids kept in
/// ascending order; isolated groups are nodes too. Edge weight counts the
/// publications the two groups share.
class CollaborationNetwork {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;  // node positions, first < second

  CollaborationNetwork() = default;
  CollaborationNetwork(std::vector<std::string> nodes, YearRange period);

  /// Adds `weight` to the edge between two nodes. Throws ArgumentError on a
  /// self-loop, an unknown node or a non-positive weight.
  void add_collaboration(std::string_view a, std::string_view b, int weight = 1);
  void add_collaboration(std::size_t a, std::size_t b, int weight = 1);

  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  const std::map<Edge, int>& edges() const noexcept { return edges_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const YearRange& period() const noexcept { return period_; }

  std::optional<std::size_t> node_index(std::string_view group_id) const;
  std::size_t degree(std::size_t node) const;

 private:
  std::vector<std::string> nodes_;
  std::map<Edge, int> edges_;
  YearRange period_;
};

/// Graph of the scope's active groups over publications dated in `period`.
CollaborationNetwork build_group_graph(const Scope& scope, YearRange period,
                                       const AnalysisContext& context);

/// |edges| / (n(n-1)/2), weights ignored. Throws ArgumentError when n < 2.
double density(const CollaborationNetwork& network);

/// 100 * |largest connected component| / n; isolated nodes are singleton
/// components. Throws ArgumentError when n == 0.
double main_component(const CollaborationNetwork& network);

struct NetworkMetrics {
  std::optional<double> D;
  std::optional<double> Co;
  std::optional<double> IC;
};

/// Share of the scope's publications in `period` whose in-scope groups span
/// at least two institutional categories. Absent when there are none.
std::optional<double> ic_share(const Scope& scope, YearRange period, const AnalysisContext& context);

NetworkMetrics network_metrics(const Scope& scope, YearRange period, const AnalysisContext& context);

struct MultiplicityDistribution {
  std::array<std::size_t, 3> counts{};             // 1 group, 2 groups, 3+ groups
  std::array<std::optional<double>, 3> shares{};   // percent of total, absent if total == 0
  std::size_t total = 0;
};

MultiplicityDistribution multiplicity_distribution(const Scope& scope, YearRange period,
                                                   const AnalysisContext& context);

enum class CollabClass { NoCollabNoIC, NoCollabIC, CollabNoIC, CollabIC };

std::string_view to_string(CollabClass value);

/// Collaboration = at least two distinct in-scope groups; IC = those groups
/// span at least two institutional categories.
CollabClass classify_publication(std::span<const std::size_t> scope_groups, const Roster& roster);

struct Q1Cell {
  std::size_t papers = 0;     // publications in the class
  std::size_t resolved = 0;   // with a journal position
  std::size_t q1 = 0;
  std::optional<double> pct_Q1;  // absent for an empty class
};

struct Q1CrossTab {
  YearRange period;
  std::array<Q1Cell, 4> cells;  // indexed by CollabClass
  Q1Cell ic;                    // CollabIC + NoCollabIC
  Q1Cell no_ic;
  Q1Cell collab;                // CollabIC + CollabNoIC
  Q1Cell no_collab;
};

/// %Q1 by collaboration class for each requested period.
std::vector<Q1CrossTab> q1_by_collab_class(const Scope& scope, std::span<const YearRange> periods,
                                           const AnalysisContext& context);

/// Default comparison periods for a centre: (launch - 1 .. launch) and `second`.
std::pair<YearRange, YearRange> default_periods(const Centre& centre, YearRange second = {2010, 2011});

/// Edge list (group_a, group_b, weight) and node table (group, centre,
/// institutional_category).
void write_network_edges(std::ostream& out, const CollaborationNetwork& network);
void write_network_nodes(std::ostream& out, const CollaborationNetwork& network,
                         const Roster& roster);

}  // namespace progeval
