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

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "progeval/network.hpp"
#include "support.hpp"

using namespace progeval;
using progeval::testing::fixture;
using progeval::testing::make_group;
using progeval::testing::make_pub;

namespace {

constexpr YearRange kWindow{2005, 2011};

std::vector<std::string> node_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("G" + std::to_string(100 + i));
  return out;
}

// Reference component search by repeated relaxation over an adjacency matrix.
std::size_t brute_largest_component(std::size_t n, const std::vector<std::vector<bool>>& adj) {
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (adj[a][b] && label[b] < label[a]) {
          label[a] = label[b];
          changed = true;
        }
      }
    }
  }
  std::map<std::size_t, std::size_t> sizes;
  for (auto l : label) ++sizes[l];
  std::size_t best = 0;
  for (const auto& [l, s] : sizes) best = std::max(best, s);
  return best;
}

struct RandomGraph {
  std::size_t n;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

RandomGraph random_graph(std::mt19937& rng) {
  RandomGraph g{2 + rng() % 11, {}};
  const double p = (rng() % 101) / 100.0;
  for (std::size_t a = 0; a < g.n; ++a) {
    for (std::size_t b = a + 1; b < g.n; ++b) {
      if ((rng() % 1000) / 1000.0 < p) g.pairs.emplace_back(a, b);
    }
  }
  return g;
}

CollaborationNetwork build(const std::vector<std::string>& names, const RandomGraph& g) {
  CollaborationNetwork net(names, kWindow);
  for (auto [a, b] : g.pairs) net.add_collaboration(names[a], names[b]);
  return net;
}

}  // namespace

TEST_CASE("density and main component on known graphs") {
  const auto names = node_names(5);

  CollaborationNetwork complete(names, kWindow);
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = a + 1; b < 5; ++b) complete.add_collaboration(a, b);
  CHECK(density(complete) == doctest::Approx(1.0));
  CHECK(main_component(complete) == doctest::Approx(100.0));

  CollaborationNetwork path(node_names(3), kWindow);
  path.add_collaboration(0, 1);
  path.add_collaboration(1, 2);
  CHECK(density(path) == doctest::Approx(2.0 / 3.0));
  CHECK(main_component(path) == doctest::Approx(100.0));

  CollaborationNetwork empty(names, kWindow);
  CHECK(density(empty) == doctest::Approx(0.0));
  CHECK(main_component(empty) == doctest::Approx(20.0));

  CHECK_THROWS_AS(density(CollaborationNetwork(node_names(1), kWindow)), ArgumentError);
  CHECK_THROWS_AS(main_component(CollaborationNetwork({}, kWindow)), ArgumentError);
}

TEST_CASE("collaboration network rejects bad edges and accumulates weight") {
  CollaborationNetwork net(node_names(3), kWindow);
  CHECK_THROWS_AS(net.add_collaboration(1, 1), ArgumentError);
  CHECK_THROWS_AS(net.add_collaboration("G100", "nope"), ArgumentError);
  CHECK_THROWS_AS(net.add_collaboration(0, 1, 0), ArgumentError);
  net.add_collaboration(2, 0);
  net.add_collaboration(0, 2, 3);
  REQUIRE(net.edge_count() == 1);
  CHECK(net.edges().begin()->first == CollaborationNetwork::Edge{0, 2});
  CHECK(net.edges().begin()->second == 4);
  CHECK(net.degree(0) == 1);
  CHECK(net.degree(1) == 0);
}

TEST_CASE("density and main component match brute force on random graphs") {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = random_graph(rng);
    const auto names = node_names(g.n);
    const auto net = build(names, g);
    std::vector<std::vector<bool>> adj(g.n, std::vector<bool>(g.n));
    for (auto [a, b] : g.pairs) adj[a][b] = adj[b][a] = true;

    const double d = static_cast<double>(g.pairs.size()) / (g.n * (g.n - 1) / 2.0);
    CHECK(density(net) == doctest::Approx(d));
    CHECK(main_component(net) == doctest::Approx(100.0 * brute_largest_component(g.n, adj) / g.n));
    CHECK(density(net) >= 0.0);
    CHECK(density(net) <= 1.0);
    CHECK(main_component(net) >= 100.0 / g.n - 1e-9);
    CHECK(main_component(net) <= 100.0);
  }
}

TEST_CASE("network metrics ignore node labels and edge insertion order") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = random_graph(rng);
    const auto names = node_names(g.n);
    const auto base = build(names, g);

    std::vector<std::size_t> perm(g.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    RandomGraph relabelled{g.n, {}};
    for (auto [a, b] : g.pairs) relabelled.pairs.emplace_back(perm[a], perm[b]);
    std::shuffle(relabelled.pairs.begin(), relabelled.pairs.end(), rng);
    const auto other = build(names, relabelled);

    CHECK(density(other) == doctest::Approx(density(base)));
    CHECK(main_component(other) == doctest::Approx(main_component(base)));
  }
}

TEST_CASE("adding an edge never lowers density or the main component") {
  std::mt19937 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = random_graph(rng);
    const auto names = node_names(g.n);
    auto net = build(names, g);
    const double d0 = density(net), co0 = main_component(net);
    const std::size_t a = rng() % g.n;
    std::size_t b = rng() % g.n;
    if (a == b) b = (b + 1) % g.n;
    net.add_collaboration(a, b);
    CHECK(density(net) >= d0 - 1e-12);
    CHECK(main_component(net) >= co0 - 1e-9);
  }
}

TEST_CASE("group graph equals a pairwise scan of the publications") {
  auto world = testing::load_world(fixture("programme"));
  const auto ctx = world->context();
  std::vector<Scope> scopes = {Scope::programme(kWindow)};
  for (const auto& c : world->roster.centres()) scopes.push_back(Scope::centre(c.centre_id, kWindow));

  for (const auto& scope : scopes) {
    for (YearRange period : {kWindow, YearRange{2010, 2011}}) {
      const auto net = build_group_graph(scope, period, ctx);
      std::set<std::string> members;
      for (auto g : ctx.groups(scope)) members.insert(world->roster.groups()[g].group_id);
      CHECK(std::set<std::string>(net.nodes().begin(), net.nodes().end()) == members);

      std::map<std::pair<std::string, std::string>, int> brute;
      for (std::size_t p = 0; p < world->corpus.size(); ++p) {
        if (!period.contains(world->corpus[p].year)) continue;
        std::set<std::string> gs;
        for (const auto* link : world->links.by_publication(world->corpus[p].pub_id)) {
          const auto r = *world->roster.researcher_index(link->researcher_id);
          const auto& gid = world->roster.researchers()[r].group_id;
          if (members.count(gid)) gs.insert(gid);
        }
        for (auto a = gs.begin(); a != gs.end(); ++a)
          for (auto b = std::next(a); b != gs.end(); ++b) ++brute[{*a, *b}];
      }
      std::map<std::pair<std::string, std::string>, int> got;
      for (const auto& [edge, w] : net.edges()) got[{net.nodes()[edge.first], net.nodes()[edge.second]}] = w;
      INFO(ctx.scope_label(scope) << " " << period.label());
      CHECK(got == brute);
    }
  }
}

TEST_CASE("collaboration classes and the intercategory share") {
  using IC = InstitutionalCategory;
  testing::World w({{"C1", "CIBER 1", 2008, {}}},
                   {make_group("GH", "C1", "Hospital A", IC::Hospital), make_group("GU", "C1", "Universidad B", IC::University),
                    make_group("GU2", "C1", "Universidad C", IC::University)},
                   {{"RH", "Uno, A", "GH", {"X"}}, {"RU", "Dos, B", "GU", {"X"}}, {"RU2", "Tres, C", "GU2", {"X"}}},
                   {make_pub("P1", 2008, {"a"}, {}, "J1", {"X"}), make_pub("P2", 2008, {"a"}, {}, "J1", {"X"}),
                    make_pub("P3", 2008, {"a"}, {}, "J2", {"X"}), make_pub("P4", 2011, {"a"}, {}, "J2", {"X"})});
  w.metrics.add("J1", 2008, {"X", 1, 10});
  w.metrics.add("J2", 2008, {"X", 9, 10});
  w.link({{"RH", "P1"}, {"RU", "P1"}, {"RU", "P2"}, {"RU2", "P2"}, {"RU", "P3"}, {"RH", "P4"}});
  const auto ctx = w.context();
  const auto scope = Scope::centre("C1", kWindow);

  CHECK(*ic_share(scope, kWindow, ctx) == doctest::Approx(25.0));
  CHECK_FALSE(ic_share(scope, {2005, 2006}, ctx));

  const auto m = network_metrics(scope, kWindow, ctx);
  CHECK(*m.D == doctest::Approx(2.0 / 3.0));
  CHECK(*m.Co == doctest::Approx(100.0));
  CHECK(*m.IC == doctest::Approx(25.0));

  const auto dist = multiplicity_distribution(scope, kWindow, ctx);
  CHECK(dist.total == 4);
  CHECK(dist.counts == std::array<std::size_t, 3>{2, 2, 0});
  CHECK(*dist.shares[0] == doctest::Approx(50.0));

  const std::vector<YearRange> periods = {{2007, 2008}, {2010, 2011}};
  const auto tabs = q1_by_collab_class(scope, periods, ctx);
  REQUIRE(tabs.size() == 2);
  const auto& first = tabs[0];
  CHECK(first.cells[static_cast<int>(CollabClass::CollabIC)].papers == 1);
  CHECK(*first.cells[static_cast<int>(CollabClass::CollabIC)].pct_Q1 == doctest::Approx(100.0));
  CHECK(first.cells[static_cast<int>(CollabClass::CollabNoIC)].papers == 1);
  CHECK(first.cells[static_cast<int>(CollabClass::NoCollabNoIC)].papers == 1);
  CHECK(*first.cells[static_cast<int>(CollabClass::NoCollabNoIC)].pct_Q1 == doctest::Approx(0.0));
  CHECK_FALSE(first.cells[static_cast<int>(CollabClass::NoCollabIC)].pct_Q1);
  CHECK(first.collab.papers == 2);
  CHECK(*first.collab.pct_Q1 == doctest::Approx(100.0));
  CHECK(first.no_ic.papers == 2);
  // P4's journal has no 2011 metrics: counted as a paper, not in the Q1 base.
  CHECK(tabs[1].cells[static_cast<int>(CollabClass::NoCollabNoIC)].papers == 1);
  CHECK_FALSE(tabs[1].cells[static_cast<int>(CollabClass::NoCollabNoIC)].pct_Q1);
}

TEST_CASE("collaboration classes partition the scope on the synthetic corpus") {
  auto world = testing::load_world(fixture("programme"));
  const auto ctx = world->context();
  for (const auto& c : world->roster.centres()) {
    const auto scope = Scope::centre(c.centre_id, kWindow);
    const std::vector<YearRange> periods = {kWindow};
    const auto tab = q1_by_collab_class(scope, periods, ctx).at(0);
    std::size_t papers = 0, q1 = 0;
    for (const auto& cell : tab.cells) {
      papers += cell.papers;
      q1 += cell.q1;
    }
    const auto out = output_indicators(scope, ctx);
    CHECK(papers == out.P);
    CHECK(q1 == out.q1);
    CHECK(tab.collab.papers + tab.no_collab.papers == out.P);
    CHECK(tab.ic.papers + tab.no_ic.papers == out.P);

    const auto dist = multiplicity_distribution(scope, kWindow, ctx);
    CHECK(dist.total == out.P);
    CHECK(dist.counts[0] + dist.counts[1] + dist.counts[2] == dist.total);
    CHECK(dist.counts[1] + dist.counts[2] == tab.collab.papers);
  }

  const auto programme = multiplicity_distribution(Scope::programme(kWindow), kWindow, ctx);
  CHECK(*programme.shares[1] + *programme.shares[2] < 20.0);
}

TEST_CASE("default periods") {
  const Centre c{"C1", "CIBER 1", 2008, {}};
  const auto [first, second] = default_periods(c);
  CHECK(first == YearRange{2007, 2008});
  CHECK(second == YearRange{2010, 2011});
  CHECK(default_periods(c, {2009, 2011}).second == YearRange{2009, 2011});
}

TEST_CASE("network edge and node tables") {
  testing::World w({{"C1", "CIBER 1", 2008, {}}},
                   {make_group("GA", "C1", "Hospital A", InstitutionalCategory::Hospital),
                    make_group("GB", "C1", "Universidad B", InstitutionalCategory::University)},
                   {}, {});
  CollaborationNetwork net({"GA", "GB"}, kWindow);
  net.add_collaboration("GB", "GA", 2);
  std::ostringstream edges, nodes;
  write_network_edges(edges, net);
  write_network_nodes(nodes, net, w.roster);
  CHECK(edges.str() == "group_a\tgroup_b\tweight\nGA\tGB\t2\n");
  CHECK(nodes.str() == "group\tcentre\tinstitutional_category\nGA\tC1\tHospital\nGB\tC1\tUniversity\n");
}
