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

// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "progeval/delimited.hpp"
#include "progeval/exclusion.hpp"
#include "progeval/network.hpp"
#include "progeval/pipeline.hpp"
#include "progeval/signing.hpp"
#include "progeval/text.hpp"
#include "support.hpp"
#include "synth.hpp"

using namespace progeval;
using progeval::testing::fixture;
using progeval::testing::make_group;
using progeval::testing::make_pub;
using progeval::testing::TempDir;

namespace {

constexpr YearRange kWindow{2005, 2011};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Collects failures for one criterion.
struct Check {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string fmt(double v, int decimals = 4) { return format_fixed(v, decimals); }

// ---------------------------------------------------------------------------

struct CitationRow {
  const char* label;
  std::size_t P;
  std::int64_t C;
  double cpp;
};

constexpr CitationRow kCitationRows[] = {
    {"CIBER 1", 4411, 43666, 9.90},   {"CIBER 2", 4508, 56035, 12.43}, {"CIBER 3", 2880, 31907, 11.08},
    {"CIBER 4", 4356, 58176, 13.36},  {"CIBER 5", 3630, 45261, 12.47}, {"CIBER 6", 3104, 36822, 11.86},
    {"CIBER 7", 4171, 49436, 11.85},  {"CIBER 8", 1710, 19044, 11.14}, {"CIBER 9", 2284, 21753, 9.52},
    {"SPAIN", 111583, 998548, 8.95},  {"CIBER", 28251, 330131, 11.69}, {"non-CIBER", 86452, 707764, 8.19},
};

Check criterion_cpp() {
  Check check;
  const auto start = Clock::now();

  // Centres go through linked records; the national aggregates through the
  // same ratio function.
  std::vector<Centre> centres;
  std::vector<ResearchGroup> groups;
  std::vector<Researcher> researchers;
  std::vector<PublicationRecord> pubs;
  std::vector<std::pair<std::string, std::string>> links;
  for (int k = 0; k < 9; ++k) {
    const auto& row = kCitationRows[k];
    const auto c = "C" + std::to_string(k + 1);
    centres.push_back({c, row.label, 2006, {}});
    groups.push_back(make_group("G" + c, c, "Hospital " + c, InstitutionalCategory::Hospital));
    researchers.push_back({"R" + c, "Autor" + c + ", A", "G" + c, {"X"}});
    const std::int64_t base = row.C / static_cast<std::int64_t>(row.P);
    const std::int64_t extra = row.C % static_cast<std::int64_t>(row.P);
    for (std::size_t i = 0; i < row.P; ++i) {
      const auto id = c + "-" + std::to_string(i);
      pubs.push_back(make_pub(id, 2005 + static_cast<int>(i % 7), {"a"}, {}, "J", {"X"},
                              base + (static_cast<std::int64_t>(i) < extra ? 1 : 0)));
      links.emplace_back("R" + c, id);
    }
  }
  testing::World world(centres, groups, researchers, pubs);
  world.link(links);
  const auto ctx = world.context();

  for (int k = 0; k < 12; ++k) {
    const auto& row = kCitationRows[k];
    std::optional<double> cpp;
    if (k < 9) {
      const auto out = output_indicators(Scope::centre("C" + std::to_string(k + 1), kWindow), ctx);
      check.expect(out.P == row.P && out.C == row.C, std::string(row.label) + " aggregate mismatch");
      cpp = out.CPP;
    } else {
      cpp = citations_per_paper(row.C, row.P);
    }
    check.expect(cpp && std::fabs(*cpp - row.cpp) <= 0.005,
                 std::string(row.label) + " CPP " + (cpp ? fmt(*cpp) : "NA") + " vs " + fmt(row.cpp, 2));
  }
  const double elapsed = seconds_since(start);
  check.expect(elapsed < 1.0, "runtime " + fmt(elapsed, 3) + " s");
  check.notes.push_back("12 rows in " + fmt(elapsed, 3) + " s");
  return check;
}

// ---------------------------------------------------------------------------

struct SigningRow {
  const char* label;
  std::size_t P, P_signed, Q1_signed, D1_signed;
  double q1_pct, d1_pct;
};

constexpr SigningRow kSigningRows[] = {
    {"CIBER 1", 4411, 1850, 1131, 516, 61.1, 27.9}, {"CIBER 2", 4508, 2312, 1337, 588, 57.8, 25.4},
    {"CIBER 3", 2880, 1427, 806, 272, 56.9, 19.1},  {"CIBER 4", 4356, 2107, 1370, 647, 65.0, 30.7},
    {"CIBER 5", 3630, 1668, 1008, 399, 60.4, 23.9}, {"CIBER 6", 3104, 1394, 824, 396, 59.1, 28.4},
    {"CIBER 7", 4171, 2248, 1296, 523, 57.7, 23.3}, {"CIBER 8", 1710, 658, 439, 174, 66.7, 26.4},
    {"CIBER 9", 2284, 1718, 1087, 481, 63.3, 28.0}, {"TOTAL", 28251, 15382, 9298, 3996, 54.5, 26.0},
};

Check criterion_signing() {
  Check check;
  for (const auto& row : kSigningRows) {
    const SigningCounts counts{row.P, row.P_signed, 0, row.Q1_signed, 0, row.D1_signed};
    const double q1 = *counts.q1_share_among_signed();
    const double d1 = *counts.d1_share_among_signed();
    const std::string label = row.label;
    check.expect(std::fabs(d1 - row.d1_pct) <= 0.1, label + " D1 " + fmt(d1) + " vs printed " + fmt(row.d1_pct, 1));
    if (label == "TOTAL") {
      const auto shown = format_fixed(q1, 1);
      check.expect(shown == "60.4", "TOTAL Q1 outputs " + shown + ", expected 60.4");
      const auto notes = audit_published_row(counts, row.q1_pct, row.d1_pct);
      check.expect(notes.size() == 1, "TOTAL audit should yield one note");
      for (const auto& n : notes) check.notes.push_back("TOTAL: " + n);
    } else {
      check.expect(std::fabs(q1 - row.q1_pct) <= 0.1,
                   label + " Q1 " + fmt(q1) + " vs printed " + fmt(row.q1_pct, 1));
    }
  }
  const SigningCounts total{28251, 15382, 0, 9298, 0, 3996};
  const double overall = *total.share_signed();
  check.expect(std::fabs(overall - 54.5) <= 0.05,
               "overall share 15382/28251 = " + fmt(overall) + " vs 54.5 +/- 0.05");
  return check;
}

// ---------------------------------------------------------------------------

struct CategoryRow {
  std::size_t P;
  double share;
  std::size_t national;  // back-solved
  double cpp, cpp_national;
};

constexpr CategoryRow kCategoryRows[] = {
    {467, 34.09, 1370, 8.04, 6.57},   {913, 32.44, 2814, 8.49, 6.13},  {690, 20.25, 3407, 13.52, 11.20},
    {1588, 43.18, 3678, 14.67, 9.63}, {1452, 19.78, 7341, 12.90, 9.80}, {704, 29.72, 2369, 13.15, 9.34},
    {846, 17.88, 4732, 11.87, 12.83}, {468, 13.73, 3409, 12.68, 11.20}, {1292, 40.92, 3157, 10.03, 8.53},
};

Check criterion_category_share() {
  Check check;
  std::vector<Centre> centres;
  std::vector<ResearchGroup> groups;
  std::vector<Researcher> researchers;
  std::vector<PublicationRecord> pubs;
  std::vector<std::pair<std::string, std::string>> links;
  for (int k = 0; k < 9; ++k) {
    const auto& row = kCategoryRows[k];
    const auto backsolved = static_cast<std::size_t>(std::llround(100.0 * row.P / row.share));
    check.expect(backsolved == row.national, "row " + std::to_string(k + 1) + " back-solves to " +
                                                 std::to_string(backsolved));
    const auto c = "C" + std::to_string(k + 1);
    const auto category = "Category " + std::to_string(k + 1);
    centres.push_back({c, "CIBER " + std::to_string(k + 1), 2006, {}});
    groups.push_back(make_group("G" + c, c, "Hospital " + c, InstitutionalCategory::Hospital));
    researchers.push_back({"R" + c, "Autor" + c + ", A", "G" + c, {category}});
    for (std::size_t i = 0; i < row.national; ++i) {
      const auto id = c + "-" + std::to_string(i);
      pubs.push_back(make_pub(id, 2008, {"a"}, {}, "J", {category}, 1));
      if (i < row.P) links.emplace_back("R" + c, id);
    }
  }
  testing::World world(centres, groups, researchers, pubs);
  world.link(links);
  const auto ctx = world.context();
  for (int k = 0; k < 9; ++k) {
    const auto& row = kCategoryRows[k];
    const auto cmp = category_comparison("C" + std::to_string(k + 1), "Category " + std::to_string(k + 1),
                                         kWindow, ctx);
    check.expect(cmp.centre_P == row.P && cmp.national_P == row.national,
                 "row " + std::to_string(k + 1) + " counts");
    check.expect(std::fabs(cmp.share - row.share) <= 0.01,
                 "row " + std::to_string(k + 1) + " share " + fmt(cmp.share) + " vs " + fmt(row.share, 2));
  }
  return check;
}

// ---------------------------------------------------------------------------

Check criterion_graph_oracle() {
  Check check;
  const auto start = Clock::now();
  std::mt19937 rng(1000);
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng() % 11;
    const double p = (rng() % 101) / 100.0;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("N" + std::to_string(10 + i));
    CollaborationNetwork net(names, kWindow);
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if ((rng() % 1000) / 1000.0 < p) {
          net.add_collaboration(names[a], names[b], 1 + static_cast<int>(rng() % 3));
          adj[a][b] = adj[b][a] = true;
        }
      }
    }
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) pairs += adj[a][b];
    std::size_t largest = 0;
    std::vector<bool> seen(n);
    for (std::size_t s = 0; s < n; ++s) {
      if (seen[s]) continue;
      std::vector<std::size_t> stack = {s};
      seen[s] = true;
      std::size_t size = 0;
      while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        ++size;
        for (std::size_t w = 0; w < n; ++w) {
          if (adj[v][w] && !seen[w]) {
            seen[w] = true;
            stack.push_back(w);
          }
        }
      }
      largest = std::max(largest, size);
    }
    const double d = static_cast<double>(pairs) / (static_cast<double>(n * (n - 1)) / 2.0);
    const double co = 100.0 * static_cast<double>(largest) / static_cast<double>(n);
    if (density(net) != d || main_component(net) != co) ++mismatches;
  }
  check.expect(mismatches == 0, std::to_string(mismatches) + " of 1000 graphs differ");

  std::vector<std::string> names = {"A", "B", "C", "D", "E"};
  CollaborationNetwork complete(names, kWindow);
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = a + 1; b < 5; ++b) complete.add_collaboration(a, b);
  check.expect(density(complete) == 1.0 && main_component(complete) == 100.0, "complete graph");
  CollaborationNetwork path({"A", "B", "C"}, kWindow);
  path.add_collaboration("A", "B");
  path.add_collaboration("B", "C");
  check.expect(std::fabs(density(path) - 2.0 / 3.0) < 1e-15, "3-node path density");

  const double elapsed = seconds_since(start);
  check.expect(elapsed < 5.0, "runtime " + fmt(elapsed, 3) + " s");
  check.notes.push_back("1000 graphs in " + fmt(elapsed, 3) + " s");
  return check;
}

// ---------------------------------------------------------------------------

Check criterion_quartile_oracle() {
  Check check;
  constexpr int kJournals = 200, kCategories = 5, kPerCategory = 40;
  std::mt19937 rng(200);
  std::uniform_real_distribution<double> impact(0.1, 30.0);

  JournalMetricsTable metrics;
  std::vector<std::vector<int>> positions(kJournals);  // 1-based sorted positions, one per membership
  for (int cat = 0; cat < kCategories; ++cat) {
    std::vector<int> members(kJournals);
    std::iota(members.begin(), members.end(), 0);
    std::shuffle(members.begin(), members.end(), rng);
    members.resize(kPerCategory);
    std::vector<std::pair<double, int>> scored;
    for (int j : members) scored.emplace_back(impact(rng), j);
    std::sort(scored.begin(), scored.end(), std::greater<>());
    for (int pos = 0; pos < kPerCategory; ++pos) {
      const int j = scored[pos].second;
      positions[j].push_back(pos + 1);
      metrics.add("J" + std::to_string(j), 2009, {"Cat" + std::to_string(cat), pos + 1, kPerCategory});
    }
  }

  int agree = 0, q1_boundary = 0, d1_boundary = 0;
  for (int j = 0; j < kJournals; ++j) {
    const auto got = journal_position("J" + std::to_string(j), 2009, metrics);
    // Percentile of the journal's place in the IF-sorted list of each category.
    bool q1 = false, d1 = false;
    for (int pos : positions[j]) {
      const double percentile = static_cast<double>(pos) / kPerCategory;
      q1 |= percentile <= 0.25;
      d1 |= percentile <= 0.10;
    }
    const int best = positions[j].empty() ? 0 : *std::min_element(positions[j].begin(), positions[j].end());
    q1_boundary += best * 4 == kPerCategory;
    d1_boundary += best * 10 == kPerCategory;
    const bool same = positions[j].empty() ? !got : (got && got->is_q1 == q1 && got->is_d1 == d1);
    agree += same;
  }
  check.expect(agree == kJournals, std::to_string(agree) + "/200 journals agree");
  check.expect(q1_boundary > 0 && d1_boundary > 0, "boundary ranks not exercised");
  check.notes.push_back("boundary journals: " + std::to_string(q1_boundary) + " at 0.25, " +
                        std::to_string(d1_boundary) + " at 0.10");
  return check;
}

// ---------------------------------------------------------------------------

Check criterion_linkage() {
  Check check;
  auto world = testing::load_world(fixture("linkage50"));
  std::set<std::pair<std::string, std::string>> truth;
  {
    std::ifstream in(fixture("linkage50/truth.tsv"));
    HeaderedTable table(in, "truth", {"researcher_id", "pub_id"});
    while (auto row = table.next()) {
      truth.emplace(table.field(*row, "researcher_id"), table.field(*row, "pub_id"));
    }
  }
  const auto score = [&](const LinkSet& links, std::size_t& tp, std::size_t& fp) {
    tp = fp = 0;
    for (const auto& l : links.links()) (truth.count({l.researcher_id, l.pub_id}) ? tp : fp) += 1;
  };
  std::size_t tp = 0, fp = 0;
  score(world->links, tp, fp);
  const double precision = tp + fp ? static_cast<double>(tp) / (tp + fp) : 0.0;
  const double recall = truth.empty() ? 0.0 : static_cast<double>(tp) / truth.size();
  check.expect(precision == 1.0, "precision " + fmt(precision));
  check.expect(recall == 1.0, "recall " + fmt(recall));

  std::size_t tp_loose = 0, fp_loose = 0;
  score(match(world->corpus, world->roster, {true, false}), tp_loose, fp_loose);
  check.expect(fp_loose > fp, "false positives without the subject filter: " + std::to_string(fp_loose));
  check.notes.push_back(std::to_string(truth.size()) + " planted links; " + std::to_string(fp_loose) +
                        " false positives without the subject filter");
  return check;
}

// ---------------------------------------------------------------------------

Check criterion_exclusion() {
  Check check;
  auto world = testing::load_world(fixture("exclusion"));
  std::ifstream in(fixture("exclusion/patterns.tsv"));
  const auto flags = signed_flags(world->corpus, SigningPattern(parse_patterns(in)));
  const auto ctx = world->context();
  const auto network = build_group_graph(Scope::programme(kWindow), kWindow, ctx);
  const auto partition = exclude_inactive_groups(world->roster, world->links, network, flags);
  check.expect(partition.excluded == std::vector<std::string>{"NONE"},
               "excluded: " + [&] {
                 std::string s;
                 for (const auto& g : partition.excluded) s += g + " ";
                 return s;
               }());
  return check;
}

// ---------------------------------------------------------------------------

Check criterion_stabilization() {
  Check check;
  // Rising like the signed-share curve, still climbing in the last year.
  const std::map<int, double> rising = {{2005, 28.0}, {2006, 36.0}, {2007, 43.0}, {2008, 49.0},
                                        {2009, 55.0}, {2010, 60.0}, {2011, 64.0}};
  const std::map<int, double> plateau = {{1, 10.0}, {2, 20.0}, {3, 30.0}, {4, 40.0},
                                         {5, 40.5}, {6, 41.0}, {7, 41.2}};
  std::map<int, double> constant;
  for (int y = 2005; y <= 2011; ++y) constant[y] = 45.0;

  const auto r = stabilization_year(rising, kDefaultStabilizationEpsilon, kDefaultStabilizationWindow);
  const auto p = stabilization_year(plateau, kDefaultStabilizationEpsilon, kDefaultStabilizationWindow);
  const auto c = stabilization_year(constant, kDefaultStabilizationEpsilon, kDefaultStabilizationWindow);
  check.expect(!r, "rising series gave " + (r ? std::to_string(*r) : std::string("NA")));
  check.expect(p == 4, "plateau series gave " + (p ? std::to_string(*p) : std::string("NA")));
  check.expect(c == 2005, "constant series gave " + (c ? std::to_string(*c) : std::string("NA")));
  return check;
}

// ---------------------------------------------------------------------------

Check criterion_throughput() {
  Check check;
  TempDir tmp;
  synth::ProgrammeCorpusOptions options;
  options.publications = 30000;
  options.full_roster = true;
  synth::write_dataset(synth::programme_corpus(options), tmp / "data");

  auto config = load_config(tmp / "data" / "config.json");
  std::vector<double> times;
  for (const char* out : {"run1", "run2"}) {
    config.output_dir = tmp / out;
    const auto start = Clock::now();
    run(config, {Stage::Report, true});
    times.push_back(seconds_since(start));
  }
  for (double t : times) check.expect(t < 10.0, "run took " + fmt(t, 2) + " s");

  std::size_t compared = 0;
  for (const auto& entry : std::filesystem::directory_iterator(tmp / "run1")) {
    const auto name = entry.path().filename().string();
    const auto other = tmp / "run2" / name;
    check.expect(std::filesystem::exists(other) && testing::slurp(entry.path()) == testing::slurp(other),
                 name + " differs between runs");
    ++compared;
  }
  check.expect(compared > 0, "no outputs");
  check.notes.push_back(std::to_string(compared) + " files identical; runs took " + fmt(times[0], 2) + " s and " +
                        fmt(times[1], 2) + " s");
  return check;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria = {
      {"1 CPP reproduction", criterion_cpp},
      {"2 signing arithmetic", criterion_signing},
      {"3 category share round trip", criterion_category_share},
      {"4 graph metric oracle", criterion_graph_oracle},
      {"5 quartile oracle", criterion_quartile_oracle},
      {"6 linkage fixture", criterion_linkage},
      {"7 exclusion rule", criterion_exclusion},
      {"8 stabilization detector", criterion_stabilization},
      {"9 determinism and throughput", criterion_throughput},
  };
  int failed = 0;
  for (const auto& [name, body] : criteria) {
    Check check;
    try {
      check = body();
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = check.failures.empty();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name << '\n';
    for (const auto& f : check.failures) std::cout << "      fail: " << f << '\n';
    for (const auto& n : check.notes) std::cout << "      note: " << n << '\n';
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
