// pxtctl: command-line front end for topologies, traffic, routing, plan
// validation, failure audits and the benchmark table.
//
// Exit codes: 0 success, 1 validation/audit/routing failure, 2 usage or
// input error, 3 search resource limit exceeded.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pxt/pxt.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kResourceLimit = 3;

struct Options {
  std::string graph = "icosahedron";
  std::string murakami_kim;
  std::string pattern = "uniform";
  std::string scheme = "pxt";
  std::string mode = "node";
  std::string path_sharing = "link";
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::uint32_t runs = 1;
  std::string out;
  std::size_t max_partial_paths = pxt::cdijkstra::SearchLimits{}.max_partial_paths;
  std::size_t max_work = pxt::cdijkstra::SearchLimits{}.max_work;
  bool verbose = false;
  bool timing = false;
  bool no_prefix_checks = false;
  std::vector<std::string> large;
  std::string plan;
  std::string traffic;
  bool info = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

pxt::Pattern pattern_of(const Options& o) {
  if (auto p = pxt::parse_pattern(o.pattern)) return *p;
  throw UsageError("unknown pattern '" + o.pattern + "'");
}

pxt::Scheme scheme_of(const Options& o) {
  if (auto s = pxt::parse_scheme(o.scheme)) return *s;
  throw UsageError("unknown scheme '" + o.scheme + "'");
}

pxt::Disjointness disjointness_of(const std::string& s) {
  auto m = pxt::parse_disjointness(s);
  if (!m || *m == pxt::Disjointness::edge) throw UsageError("mode must be node or link, got '" + s + "'");
  return *m;
}

pxt::cdijkstra::SearchLimits limits_of(const Options& o) {
  if (o.max_partial_paths == 0 || o.max_work == 0) throw UsageError("search limits must be positive");
  return {o.max_partial_paths, o.max_work};
}

/// Writes to `path`, or to stdout when empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pxt::IoError("cannot write '" + path + "'");
  out << text;
}

void add_graph_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--graph", o.graph, "standard topology name or graph file");
  cmd->add_option("--murakami-kim", o.murakami_kim, "graph file for the murakami_kim topology");
}

void add_traffic_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--pattern", o.pattern, "uniform | neighbor | unbalanced");
  cmd->add_option("--large", o.large, "large nodes for unbalanced traffic")->delimiter(',');
  cmd->add_option("--seed", o.seed, "shuffle seed");
}

void add_search_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--mode", o.mode, "node | link");
  cmd->add_option("--max-partial-paths", o.max_partial_paths, "constrained search partial-path budget");
  cmd->add_option("--max-work", o.max_work, "constrained search work budget");
  cmd->add_flag("--verbose", o.verbose, "per-demand routing trace on stderr");
}

std::vector<pxt::Demand> demands_for(const Options& o, const pxt::LoadedGraph& g) {
  if (!o.traffic.empty()) return pxt::parse_traffic(*g.graph, pxt::read_file(o.traffic));
  auto spec = pxt::traffic_spec(g, pattern_of(o), o.large);
  spec.seed = o.seed;
  return pxt::generate(*g.graph, spec);
}

int cmd_topo(const Options& o) {
  auto g = pxt::load_experiment_graph(o.graph, o.murakami_kim);
  if (o.info) {
    std::ostringstream s;
    s << "graph " << g.label << "\nnodes " << g.graph->node_count() << "\nlinks " << g.graph->link_count()
      << "\ndistance-sum " << pxt::distance_sum(*g.graph) << '\n';
    emit(o.out, s.str());
  } else {
    emit(o.out, pxt::format_graph(*g.graph));
  }
  return kOk;
}

int cmd_traffic(const Options& o) {
  auto g = pxt::load_experiment_graph(o.graph, o.murakami_kim);
  auto spec = pxt::traffic_spec(g, pattern_of(o), o.large);
  if (o.seed_given) spec.seed = o.seed;
  emit(o.out, pxt::format_traffic(*g.graph, pxt::generate(*g.graph, spec)));
  return kOk;
}

int cmd_route(const Options& o) {
  auto g = pxt::load_experiment_graph(o.graph, o.murakami_kim);
  pxt::ExperimentConfig cfg;
  cfg.mode = disjointness_of(o.mode);
  cfg.path_sharing = disjointness_of(o.path_sharing);
  cfg.limits = limits_of(o);
  cfg.check_prefixes = !o.no_prefix_checks;
  cfg.audit = false;
  cfg.verbose = o.verbose ? &std::cerr : nullptr;
  auto r = pxt::route_instance(g.graph, demands_for(o, g), scheme_of(o), cfg);
  emit(o.out, pxt::serialize(r.plan));
  std::cerr << "working " << r.bandwidth.working << " protection " << r.bandwidth.protection << " total "
            << r.bandwidth.total << '\n';
  for (const auto& v : r.violations) std::cerr << pxt::describe(*g.graph, v) << '\n';
  return r.violations.empty() ? kOk : kFailed;
}

pxt::AllocationPlan load_plan(const Options& o, const pxt::LoadedGraph& g) {
  if (o.plan.empty()) throw UsageError("--plan is required");
  return pxt::parse_plan(g.graph, pxt::read_file(o.plan));
}

int cmd_validate(const Options& o) {
  auto g = pxt::load_experiment_graph(o.graph, o.murakami_kim);
  std::optional<pxt::AllocationPlan> plan;
  try {
    plan.emplace(load_plan(o, g));
  } catch (const pxt::ParseError& e) {
    std::cout << "invalid: " << e.what() << '\n';
    return kFailed;
  }
  const bool branches = plan->policy() == pxt::BranchPolicy::forbid;
  auto violations = pxt::validate(*plan, {0, branches});
  auto bw = pxt::bandwidth(*plan);
  std::ostringstream s;
  s << (violations.empty() ? "valid" : "invalid") << "\nentries " << plan->entries().size() << "\nworking "
    << bw.working << "\nprotection " << bw.protection << "\ntotal " << bw.total << '\n';
  if (branches) {
    auto pxts = pxt::extract_pxts(*plan);
    auto closed = std::count_if(pxts.begin(), pxts.end(), [](const pxt::Pxt& t) { return t.closed; });
    s << "pxts " << pxts.size() << " (closed " << closed << ")\n";
  }
  for (const auto& v : violations) s << pxt::describe(*g.graph, v) << '\n';
  std::cout << s.str();
  return violations.empty() ? kOk : kFailed;
}

int cmd_simulate(const Options& o) {
  auto g = pxt::load_experiment_graph(o.graph, o.murakami_kim);
  auto plan = load_plan(o, g);
  auto report = pxt::audit(plan);
  std::cout << report.text();
  if (!o.out.empty()) emit(o.out, report.csv());
  return report.ok() ? kOk : kFailed;
}

std::string summary_text(const pxt::ExperimentReport& report) {
  auto s = report.protection_summary();
  std::ostringstream out;
  const auto& first = report.rows.front();
  out << first.graph << ' ' << pxt::to_string(first.pattern) << ' ' << pxt::to_string(first.scheme) << " runs "
      << report.rows.size() << " working " << first.bandwidth.working << " protection min " << s.min << " median "
      << s.median << " max " << s.max;
  if (const auto* ref = pxt::reference_row(first.graph, first.pattern)) {
    const auto target = first.scheme == pxt::Scheme::pxt            ? ref->pxt
                        : first.scheme == pxt::Scheme::shared_path ? ref->path
                                                                    : ref->one_plus_one;
    out << " (reference " << ref->working << ' ' << target << ')';
  }
  out << '\n';
  return out.str();
}

int cmd_run(const Options& o) {
  pxt::ExperimentConfig cfg;
  cfg.graph = o.graph;
  cfg.murakami_kim = o.murakami_kim;
  cfg.pattern = pattern_of(o);
  cfg.scheme = scheme_of(o);
  cfg.mode = disjointness_of(o.mode);
  cfg.path_sharing = disjointness_of(o.path_sharing);
  cfg.seed = o.seed;
  if (o.runs == 0) throw UsageError("--runs must be at least 1");
  cfg.runs = o.runs;
  cfg.large = o.large;
  cfg.limits = limits_of(o);
  cfg.check_prefixes = !o.no_prefix_checks;
  cfg.timing = o.timing;
  cfg.verbose = o.verbose ? &std::cerr : nullptr;
  auto report = pxt::run(cfg);
  if (o.out.empty()) {
    std::cout << report.csv();
  } else {
    fs::create_directories(o.out);
    emit((fs::path(o.out) / "results.csv").string(), report.csv());
  }
  std::cerr << summary_text(report);
  if (!report.clean()) {
    std::cerr << "validation or audit violations found\n";
    return kFailed;
  }
  return kOk;
}

struct TableFlags {
  std::string pattern = "all";
  std::string graph;
  std::uint32_t runs = 10;
};

int cmd_table1(const Options& o, const TableFlags& t) {
  pxt::Table1Options opt;
  opt.murakami_kim = o.murakami_kim;
  if (t.pattern != "all") {
    auto p = pxt::parse_pattern(t.pattern);
    if (!p) throw UsageError("unknown pattern '" + t.pattern + "'");
    opt.pattern = *p;
  }
  if (!t.graph.empty()) {
    if (!pxt::is_standard_topology(t.graph)) throw UsageError("unknown topology '" + t.graph + "'");
    opt.graph = t.graph;
  }
  if (t.runs == 0) throw UsageError("--runs must be at least 1");
  opt.runs = t.runs;
  opt.mode = disjointness_of(o.mode);
  opt.path_sharing = disjointness_of(o.path_sharing);
  opt.limits = limits_of(o);
  opt.check_prefixes = !o.no_prefix_checks;
  auto rows = pxt::table1(opt);
  std::cout << pxt::format_table1(rows);
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    emit((fs::path(o.out) / "table1.csv").string(), pxt::table1_csv(rows));
    pxt::ExperimentReport all;
    for (const auto& r : rows) all.rows.insert(all.rows.end(), r.runs.rows.begin(), r.runs.rows.end());
    emit((fs::path(o.out) / "runs.csv").string(), all.csv());
  }
  for (const auto& r : rows)
    if (r.violations) return kFailed;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pre-cross-connected trail protection toolkit"};
  app.require_subcommand(1);
  Options o;
  TableFlags table_flags;

  auto* topo = app.add_subcommand("topo", "emit or inspect a topology");
  add_graph_flags(topo, o);
  topo->add_flag("--info", o.info, "print size and distance sum instead of the graph file");
  topo->add_option("--out", o.out, "output file");

  auto* traffic = app.add_subcommand("traffic", "emit a demand file");
  add_graph_flags(traffic, o);
  add_traffic_flags(traffic, o);
  traffic->add_option("--out", o.out, "output file");

  auto* route = app.add_subcommand("route", "route one instance and write the plan");
  add_graph_flags(route, o);
  add_traffic_flags(route, o);
  add_search_flags(route, o);
  route->add_option("--scheme", o.scheme, "pxt | one-plus-one | shared-path");
  route->add_option("--path-sharing", o.path_sharing, "shared-path sharing rule: node | link");
  route->add_option("--traffic", o.traffic, "demand file instead of a generated pattern");
  route->add_option("--out", o.out, "plan file");
  route->add_flag("--no-prefix-checks", o.no_prefix_checks, "skip validation after every demand");

  auto* validate = app.add_subcommand("validate", "check a plan file against conditions a-d");
  add_graph_flags(validate, o);
  validate->add_option("--plan", o.plan, "plan file")->required();

  auto* simulate = app.add_subcommand("simulate", "audit a plan under every single failure");
  add_graph_flags(simulate, o);
  simulate->add_option("--plan", o.plan, "plan file")->required();
  simulate->add_option("--out", o.out, "per-failure CSV file");

  auto* run = app.add_subcommand("run", "route one instance over several seeds");
  add_graph_flags(run, o);
  add_traffic_flags(run, o);
  add_search_flags(run, o);
  run->add_option("--scheme", o.scheme, "pxt | one-plus-one | shared-path");
  run->add_option("--path-sharing", o.path_sharing, "shared-path sharing rule: node | link");
  run->add_option("--runs", o.runs, "number of consecutive seeds");
  run->add_option("--out", o.out, "output directory (results.csv)");
  run->add_flag("--timing", o.timing, "fill the runtime_ms column");
  run->add_flag("--no-prefix-checks", o.no_prefix_checks, "skip validation after every demand");

  auto* table = app.add_subcommand("table1", "reproduce the benchmark table");
  table->add_option("--murakami-kim", o.murakami_kim, "graph file for the murakami_kim topology");
  table->add_option("--pattern", table_flags.pattern, "uniform | neighbor | unbalanced | all");
  table->add_option("--graph", table_flags.graph, "restrict to one topology");
  table->add_option("--runs", table_flags.runs, "seeds per instance");
  table->add_option("--mode", o.mode, "node | link");
  table->add_option("--path-sharing", o.path_sharing, "shared-path sharing rule: node | link");
  table->add_option("--max-partial-paths", o.max_partial_paths, "constrained search partial-path budget");
  table->add_option("--max-work", o.max_work, "constrained search work budget");
  table->add_option("--out", o.out, "output directory (table1.csv, runs.csv)");
  table->add_flag("--no-prefix-checks", o.no_prefix_checks, "skip validation after every demand");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  for (auto* cmd : {traffic, route, run})
    if (cmd->parsed() && cmd->count("--seed")) o.seed_given = true;

  try {
    if (topo->parsed()) return cmd_topo(o);
    if (traffic->parsed()) return cmd_traffic(o);
    if (route->parsed()) return cmd_route(o);
    if (validate->parsed()) return cmd_validate(o);
    if (simulate->parsed()) return cmd_simulate(o);
    if (run->parsed()) return cmd_run(o);
    if (table->parsed()) return cmd_table1(o, table_flags);
  } catch (const pxt::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kResourceLimit;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const pxt::ParseError& e) {
    std::cerr << "input: " << e.what() << '\n';
    return kUsage;
  } catch (const pxt::IoError& e) {
    std::cerr << "input: " << e.what() << '\n';
    return kUsage;
  } catch (const pxt::GraphError& e) {
    std::cerr << "input: " << e.what() << '\n';
    return kUsage;
  } catch (const pxt::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
