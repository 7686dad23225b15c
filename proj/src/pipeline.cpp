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

#include "progeval/pipeline.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "progeval/corpus.hpp"
#include "progeval/delimited.hpp"
#include "progeval/exclusion.hpp"
#include "progeval/indicators.hpp"
#include "progeval/linkage.hpp"
#include "progeval/network.hpp"
#include "progeval/signing.hpp"
#include "progeval/text.hpp"

namespace progeval {
namespace {

namespace fs = std::filesystem;

constexpr std::string_view kLinksFile = "links.tsv";
constexpr std::string_view kPartitionFile = "group_partition.tsv";

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return in;
}

template <typename F>
auto in_stage(Stage stage, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

struct Inputs {
  PublicationParseStats parse_stats;
  std::size_t out_of_window = 0;
  Corpus corpus;
  Roster roster;
  JournalMetricsTable metrics;
  std::vector<OverrideRow> overrides;
  std::vector<PatternEntry> patterns;
};

class Pipeline {
 public:
  Pipeline(const RunConfig& config, const RunOptions& options, ReportBundle& bundle)
      : config_(config), options_(options), bundle_(bundle) {}

  void run() {
    const auto stage = options_.stage;
    const bool all = stage == Stage::Report;
    if (all || stage == Stage::Ingest) emit_ingest();
    if (all || stage == Stage::Link) emit_links();
    if (all || stage == Stage::Exclude) emit_partition();
    if (all || stage == Stage::Indicators) emit_indicators();
    if (all || stage == Stage::Network) emit_network();
    if (all || stage == Stage::Signing) emit_signing();
    write_manifest();
  }

 private:
  // -- inputs and intermediate artifacts ------------------------------------

  const Inputs& inputs() {
    if (inputs_) return *inputs_;
    in_stage(Stage::Ingest, [&] {
      Inputs in;
      const auto& paths = config_.inputs;
      {
        auto stream = open_input(paths.publications);
        auto parsed = parse_publications(stream, paths.publications.string());
        in.parse_stats = parsed.stats;
        auto kept = filter_period(parsed.records, config_.study_window.first, config_.study_window.last);
        in.out_of_window = parsed.records.size() - kept.size();
        in.corpus = Corpus(std::move(kept));
      }
      {
        auto centres = open_input(paths.centres);
        auto groups = open_input(paths.groups);
        auto researchers = open_input(paths.researchers);
        in.roster = parse_roster(centres, groups, researchers, paths.centres.string(),
                                 paths.groups.string(), paths.researchers.string());
      }
      {
        auto stream = open_input(paths.journal_metrics);
        in.metrics = parse_journal_metrics(stream, paths.journal_metrics.string());
      }
      if (!paths.overrides.empty()) {
        auto stream = open_input(paths.overrides);
        in.overrides = parse_overrides(stream, paths.overrides.string());
      }
      {
        auto stream = open_input(paths.patterns);
        in.patterns = parse_patterns(stream, paths.patterns.string());
      }
      inputs_.emplace(std::move(in));
    });
    return *inputs_;
  }

  bool reuse_artifacts() const { return options_.stage != Stage::Report; }

  const LinkSet& links() {
    if (links_) return *links_;
    const auto& in = inputs();
    const auto cached = config_.output_dir / kLinksFile;
    if (reuse_artifacts() && options_.stage != Stage::Link && fs::exists(cached)) {
      in_stage(Stage::Link, [&] {
        auto stream = open_input(cached);
        links_.emplace(read_links(stream, in.corpus, in.roster, cached.string()));
      });
      return *links_;
    }
    in_stage(Stage::Link, [&] {
      auto automatic = match(in.corpus, in.roster);
      auto outcome = apply_overrides(automatic, in.overrides, in.corpus, in.roster);
      for (auto& warning : outcome.warnings) bundle_.warnings.push_back(std::move(warning));
      if (!outcome.links.ambiguities().empty()) {
        bundle_.warnings.push_back(std::to_string(outcome.links.ambiguities().size()) +
                                   " ambiguous author matches flagged for review");
      }
      links_.emplace(std::move(outcome.links));
    });
    return *links_;
  }

  const std::vector<bool>& signed_by_pub() {
    if (!signed_) {
      in_stage(Stage::Signing, [&] {
        signed_.emplace(signed_flags(inputs().corpus, SigningPattern(inputs().patterns)));
      });
    }
    return *signed_;
  }

  const std::set<std::string>& excluded_groups() {
    if (excluded_) return *excluded_;
    const auto cached = config_.output_dir / kPartitionFile;
    if (reuse_artifacts() && options_.stage != Stage::Exclude && fs::exists(cached)) {
      in_stage(Stage::Exclude, [&] {
        auto stream = open_input(cached);
        excluded_.emplace(read_excluded_groups(stream, cached.string()));
      });
      return *excluded_;
    }
    const auto& partition = group_partition();
    excluded_.emplace(partition.excluded.begin(), partition.excluded.end());
    return *excluded_;
  }

  const GroupPartition& group_partition() {
    if (partition_) return *partition_;
    const auto& in = inputs();
    const auto& linked = links();
    const auto& flags = signed_by_pub();
    in_stage(Stage::Exclude, [&] {
      const AnalysisContext full(in.corpus, in.roster, linked, in.metrics);
      const auto network =
          build_group_graph(Scope::programme(config_.study_window), config_.study_window, full);
      partition_.emplace(exclude_inactive_groups(in.roster, linked, network, flags));
    });
    return *partition_;
  }

  const AnalysisContext& context() {
    if (context_) return *context_;
    const auto& in = inputs();
    const auto& excluded = excluded_groups();
    const auto& linked = links();
    in_stage(Stage::Exclude, [&] {
      active_links_.emplace(drop_groups(linked, excluded, in.corpus, in.roster));
      context_.emplace(in.corpus, in.roster, *active_links_, in.metrics, config_.national_categories,
                       excluded);
    });
    return *context_;
  }

  // -- emission -------------------------------------------------------------

  void emit(Stage stage, std::string_view name, std::string_view kind,
            const std::function<std::size_t(std::ostream&)>& write) {
    in_stage(stage, [&] {
      std::ostringstream buffer;
      const auto rows = write(buffer);
      const auto path = config_.output_dir / name;
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (!out) throw Error("cannot write '" + path.string() + "'");
      out << buffer.str();
      if (!out) throw Error("write failed for '" + path.string() + "'");
      bundle_.files.push_back({std::string(name), std::string(kind), rows});
    });
  }

  std::string pct(const std::optional<double>& value) const {
    return format_fixed(value, config_.percent_decimals);
  }
  std::string ratio(const std::optional<double>& value) const {
    return format_fixed(value, config_.cpp_decimals);
  }

  std::vector<Scope> centre_scopes(YearRange period) {
    std::vector<Scope> scopes;
    for (const auto& centre : inputs().roster.centres()) scopes.push_back(Scope::centre(centre.centre_id, period));
    return scopes;
  }

  void emit_ingest() {
    const auto& in = inputs();
    emit(Stage::Ingest, "ingest_summary.tsv", "artifact", [&](std::ostream& out) {
      DelimitedWriter writer(out, {"metric", "value"});
      const auto put = [&](std::string key, std::size_t value) { writer.row({std::move(key), std::to_string(value)}); };
      put("input_records", in.parse_stats.input_records);
      put("admitted", in.parse_stats.admitted);
      put("skipped_doc_type", in.parse_stats.skipped);
      for (const auto& [type, count] : in.parse_stats.skipped_by_type) put("skipped:" + type, count);
      put("outside_study_window", in.out_of_window);
      put("corpus_records", in.corpus.size());
      put("centres", in.roster.centres().size());
      put("groups", in.roster.groups().size());
      put("researchers", in.roster.researchers().size());
      put("journal_metric_entries", in.metrics.size());
      return writer.rows();
    });
    if (in.parse_stats.skipped > 0) {
      bundle_.warnings.push_back(std::to_string(in.parse_stats.skipped) +
                                 " records skipped for non-admitted document type");
    }
    const auto unresolved = unresolved_journals(in.corpus, in.metrics);
    emit(Stage::Ingest, "unresolved_journals.tsv", "artifact", [&](std::ostream& out) {
      DelimitedWriter writer(out, {"journal_id", "year", "publications"});
      for (const auto& u : unresolved) {
        writer.row({u.journal_id, std::to_string(u.year), std::to_string(u.publications)});
      }
      return writer.rows();
    });
    if (!unresolved.empty()) {
      bundle_.warnings.push_back(std::to_string(unresolved.size()) +
                                 " journal-years without metrics (listed in unresolved_journals.tsv)");
    }
  }

  void emit_links() {
    const auto& linked = links();
    emit(Stage::Link, kLinksFile, "artifact", [&](std::ostream& out) {
      write_links(out, linked);
      return linked.size();
    });
    emit(Stage::Link, "ambiguities.tsv", "artifact", [&](std::ostream& out) {
      write_ambiguities(out, linked.ambiguities());
      return linked.ambiguities().size();
    });
  }

  void emit_partition() {
    const auto& partition = group_partition();
    emit(Stage::Exclude, kPartitionFile, "artifact", [&](std::ostream& out) {
      write_group_partition(out, partition, inputs().roster);
      return partition.activity.size();
    });
  }

  void emit_indicators() {
    const auto& ctx = context();
    const auto& roster = inputs().roster;
    const auto window = config_.study_window;

    emit(Stage::Indicators, "roster_summary.tsv", "report", [&](std::ostream& out) {
      DelimitedWriter writer(out, {"centre_id", "acronym", "researchers", "groups", "retained_groups",
                                   "launch_year"});
      for (std::size_t c = 0; c < roster.centres().size(); ++c) {
        const auto& centre = roster.centres()[c];
        std::size_t retained = 0;
        for (auto g : roster.groups_of_centre(c)) retained += ctx.is_active_group(g);
        writer.row({centre.centre_id, centre.acronym, std::to_string(roster.researcher_count_of_centre(c)),
                    std::to_string(roster.groups_of_centre(c).size()), std::to_string(retained),
                    std::to_string(centre.launch_year)});
      }
      return writer.rows();
    });

    emit(Stage::Indicators, "indicators.tsv", "report", [&](std::ostream& out) {
      DelimitedWriter writer(out, {"scope", "P", "C", "CPP", "pct_Q1", "pct_D1", "growth_pct"});
      std::vector<Scope> scopes = {Scope::nation(window), Scope::programme(window),
                                   Scope::non_programme(window)};
      for (auto& scope : centre_scopes(window)) scopes.push_back(std::move(scope));
      for (auto category : {InstitutionalCategory::University, InstitutionalCategory::Hospital,
                            InstitutionalCategory::PublicResearchOrg, InstitutionalCategory::Foundation,
                            InstitutionalCategory::Other}) {
        scopes.push_back(Scope::institutional_category(category, window));
      }
      for (std::size_t g = 0; g < roster.groups().size(); ++g) {
        if (ctx.is_active_group(g)) scopes.push_back(Scope::group(roster.groups()[g].group_id, window));
      }
      for (const auto& scope : scopes) {
        const auto pubs = ctx.publications(scope);
        const auto ind = output_indicators(pubs, ctx);
        std::optional<double> growth;
        try {
          growth = relative_growth(yearly_counts(pubs, ctx.corpus(), window));
        } catch (const ArgumentError&) {
        }
        writer.row({ctx.scope_label(scope), std::to_string(ind.P), std::to_string(ind.C), ratio(ind.CPP),
                    pct(ind.pct_Q1), pct(ind.pct_D1), pct(growth)});
      }
      return writer.rows();
    });

    emit(Stage::Indicators, "top_categories.tsv", "report", [&](std::ostream& out) {
      DelimitedWriter writer(out, {"scope", "category", "P", "pct_national", "pct_Q1", "pct_Q1_national",
                                   "pct_D1", "pct_D1_national", "CPP", "CPP_national"});
      for (const auto& centre : roster.centres()) {
        const auto category = top_category(centre.centre_id, window, ctx);
        if (!category) continue;
        const auto row = category_comparison(centre.centre_id, *category, window, ctx);
        writer.row({centre.acronym, row.category, std::to_string(row.centre_P), pct(row.share),
                    pct(row.centre.pct_Q1), pct(row.nation.pct_Q1), pct(row.centre.pct_D1),
                    pct(row.nation.pct_D1), ratio(row.centre.CPP), ratio(row.nation.CPP)});
      }
      return writer.rows();
    });

    emit(Stage::Indicators, "national_share.tsv", "report", [&](std::ostream& out) {
      DelimitedWriter writer(out, {"year", "P_programme", "P_national", "pct_share"});
      const auto share = national_share(Scope::programme(window), Scope::nation(window), ctx);
      for (const auto& [year, national] : share.national_by_year) {
        writer.row({std::to_string(year), std::to_string(share.scope_by_year.at(year)),
                    std::to_string(national), pct(share.share_by_year.at(year))});
      }
      writer.row({"ALL", std::to_string(share.scope_total), std::to_string(share.national_total),
                  pct(share.overall)});
      return writer.rows();
    });
  }

  std::vector<YearRange> comparison_periods(const Centre& centre) const {
    const auto first = first_period_for(config_, centre);
    if (!first) throw Error("centre '" + centre.centre_id + "' has no first comparison period");
    return {*first, config_.second_period};
  }

  void emit_network() {
    const auto& ctx = context();
    const auto& roster = inputs().roster;
    const auto window = config_.study_window;

    emit(Stage::Network, "network_metrics.tsv", "report", [&](std::ostream& out) {
      DelimitedWriter writer(out, {"scope", "period", "Co", "D", "IC", "nodes", "edges"});
      for (const auto& centre : roster.centres()) {
        const auto scope = Scope::centre(centre.centre_id, window);
        for (const auto& period : comparison_periods(centre)) {
          const auto network = build_group_graph(scope, period, ctx);
          const auto metrics = network_metrics(scope, period, ctx);
          writer.row({centre.acronym, period.label(), pct(metrics.Co), ratio(metrics.D), pct(metrics.IC),
                      std::to_string(network.node_count()), std::to_string(network.edge_count())});
        }
      }
      return writer.rows();
    });

    emit(Stage::Network, "group_multiplicity.tsv", "report", [&](std::ostream& out) {
      DelimitedWriter writer(out, {"scope", "period", "papers", "pct_1_group", "pct_2_groups",
                                   "pct_3plus_groups"});
      std::vector<Scope> scopes = {Scope::programme(window)};
      for (auto& scope : centre_scopes(window)) scopes.push_back(std::move(scope));
      for (const auto& scope : scopes) {
        const auto dist = multiplicity_distribution(scope, window, ctx);
        writer.row({ctx.scope_label(scope), window.label(), std::to_string(dist.total), pct(dist.shares[0]),
                    pct(dist.shares[1]), pct(dist.shares[2])});
      }
      return writer.rows();
    });

    emit(Stage::Network, "q1_by_collaboration.tsv", "report", [&](std::ostream& out) {
      DelimitedWriter writer(out, {"scope", "period", "class", "papers", "resolved", "Q1", "pct_Q1"});
      for (const auto& centre : roster.centres()) {
        const auto scope = Scope::centre(centre.centre_id, window);
        const auto periods = comparison_periods(centre);
        for (const auto& tab : q1_by_collab_class(scope, periods, ctx)) {
          const auto put = [&](std::string_view label, const Q1Cell& cell) {
            writer.row({centre.acronym, tab.period.label(), std::string(label), std::to_string(cell.papers),
                        std::to_string(cell.resolved), std::to_string(cell.q1), pct(cell.pct_Q1)});
          };
          for (auto cls : {CollabClass::CollabIC, CollabClass::CollabNoIC, CollabClass::NoCollabIC,
                           CollabClass::NoCollabNoIC}) {
            put(to_string(cls), tab.cells[static_cast<std::size_t>(cls)]);
          }
          put("IC", tab.ic);
          put("NoIC", tab.no_ic);
          put("Collab", tab.collab);
          put("NoCollab", tab.no_collab);
        }
      }
      return writer.rows();
    });

    const auto network = build_group_graph(Scope::programme(window), window, ctx);
    emit(Stage::Network, "network_edges.tsv", "artifact", [&](std::ostream& out) {
      write_network_edges(out, network);
      return network.edge_count();
    });
    emit(Stage::Network, "network_nodes.tsv", "artifact", [&](std::ostream& out) {
      write_network_nodes(out, network, roster);
      return network.node_count();
    });
  }

  void emit_signing() {
    const auto& ctx = context();
    const auto& flags = signed_by_pub();
    const auto window = config_.study_window;

    std::vector<SigningReport> reports;
    in_stage(Stage::Signing, [&] {
      for (const auto& scope : centre_scopes(window)) reports.push_back(signing_report(scope, ctx, flags));
      reports.push_back(signing_report(Scope::programme(window), ctx, flags));
      reports.back().scope = "TOTAL";
    });

    emit(Stage::Signing, "signing.tsv", "report", [&](std::ostream& out) {
      DelimitedWriter writer(out, {"scope", "P", "P_signed", "pct_signed", "Q1_signed",
                                   "pct_Q1_among_signed", "D1_signed", "pct_D1_among_signed",
                                   "stabilization_year"});
      for (const auto& report : reports) {
        const auto& t = report.total;
        std::string stable = "NA";
        try {
          if (const auto year = stabilization_year(report.share_series(), config_.stabilization_epsilon,
                                                   config_.stabilization_window)) {
            stable = std::to_string(*year);
          }
        } catch (const ArgumentError&) {
          // Gappy series (years without output) have no defined stabilization year.
        }
        writer.row({report.scope, std::to_string(t.P), std::to_string(t.P_signed), pct(t.share_signed()),
                    std::to_string(t.Q1_signed), pct(t.q1_share_among_signed()), std::to_string(t.D1_signed),
                    pct(t.d1_share_among_signed()), stable});
      }
      return writer.rows();
    });

    emit(Stage::Signing, "signing_series.tsv", "report", [&](std::ostream& out) {
      DelimitedWriter writer(out, {"scope", "year", "P", "P_signed", "pct_signed", "Q1", "Q1_signed",
                                   "pct_signed_among_Q1", "pct_Q1_among_signed", "D1", "D1_signed",
                                   "pct_signed_among_D1", "pct_D1_among_signed"});
      for (const auto& report : reports) {
        for (const auto& [year, c] : report.by_year) {
          writer.row({report.scope, std::to_string(year), std::to_string(c.P), std::to_string(c.P_signed),
                      pct(c.share_signed()), std::to_string(c.Q1), std::to_string(c.Q1_signed),
                      pct(c.signed_share_among_q1()), pct(c.q1_share_among_signed()), std::to_string(c.D1),
                      std::to_string(c.D1_signed), pct(c.signed_share_among_d1()),
                      pct(c.d1_share_among_signed())});
        }
      }
      return writer.rows();
    });
  }

  void write_manifest() {
    nlohmann::json manifest;
    manifest["stage"] = std::string(to_string(bundle_.stage));
    manifest["fingerprint"] = bundle_.fingerprint;
    manifest["seedless"] = options_.seedless;
    auto files = nlohmann::json::array();
    for (const auto& file : bundle_.files) {
      files.push_back({{"name", file.name}, {"kind", file.kind}, {"rows", file.rows}});
    }
    manifest["files"] = files;
    manifest["warnings"] = bundle_.warnings;
    const auto path = config_.output_dir / "manifest.json";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw StageError(bundle_.stage, "cannot write '" + path.string() + "'");
    out << manifest.dump(2) << '\n';
  }

  const RunConfig& config_;
  const RunOptions& options_;
  ReportBundle& bundle_;

  std::optional<Inputs> inputs_;
  std::optional<LinkSet> links_;
  std::optional<std::vector<bool>> signed_;
  std::optional<GroupPartition> partition_;
  std::optional<std::set<std::string>> excluded_;
  std::optional<LinkSet> active_links_;
  std::optional<AnalysisContext> context_;
};

}  // namespace

std::optional<Stage> parse_stage(std::string_view name) {
  for (auto stage : {Stage::Ingest, Stage::Link, Stage::Exclude, Stage::Indicators, Stage::Network,
                     Stage::Signing, Stage::Report}) {
    if (to_string(stage) == name) return stage;
  }
  return std::nullopt;
}

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Ingest: return "ingest";
    case Stage::Link: return "link";
    case Stage::Exclude: return "exclude";
    case Stage::Indicators: return "indicators";
    case Stage::Network: return "network";
    case Stage::Signing: return "signing";
    case Stage::Report: return "report";
  }
  return "report";
}

std::size_t ReportBundle::report_count() const {
  std::size_t n = 0;
  for (const auto& file : files) n += file.kind == "report";
  return n;
}

ReportBundle run(const RunConfig& config, const RunOptions& options) {
  if (options.seedless && kPipelineUsesRandomness) {
    throw StageError(options.stage, "--seedless requested but the pipeline draws random numbers");
  }
  if (auto findings = validate_config(config); !findings.empty()) throw ConfigError(std::move(findings));

  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) throw Error("cannot create output directory '" + config.output_dir.string() + "': " + ec.message());

  ReportBundle bundle;
  bundle.stage = options.stage;
  bundle.fingerprint = config_fingerprint(config);
  Pipeline(config, options, bundle).run();
  return bundle;
}

}  // namespace progeval
