#pragma once

// Experiment driver: generate traffic, route it with one scheme, check the
// plan, and report bandwidths as CSV rows and a reference-table comparison.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pxt/baselines.hpp"
#include "pxt/cdijkstra.hpp"
#include "pxt/errors.hpp"
#include "pxt/failsim.hpp"
#include "pxt/graph.hpp"
#include "pxt/plan.hpp"
#include "pxt/router.hpp"
#include "pxt/topologies.hpp"
#include "pxt/traffic.hpp"

namespace pxt {

enum class Scheme { pxt, one_plus_one, shared_path };

inline const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::pxt: return "pxt";
    case Scheme::one_plus_one: return "one-plus-one";
    case Scheme::shared_path: return "shared-path";
  }
  return "?";
}

inline std::optional<Scheme> parse_scheme(std::string_view s) {
  if (s == "pxt") return Scheme::pxt;
  if (s == "one-plus-one") return Scheme::one_plus_one;
  if (s == "shared-path") return Scheme::shared_path;
  return std::nullopt;
}

struct ReferenceRow {
  std::string_view graph;
  Pattern pattern;
  std::uint32_t working;
  std::uint32_t one_plus_one;
  std::uint32_t path;
  std::uint32_t pxt;
};

/// Published bandwidth totals (working, 1+1 protection, shared-path
/// protection, PXT protection) for the 18 benchmark instances.
inline constexpr std::array<ReferenceRow, 18> kReferenceTable = {{
    {"cycle12plus3", Pattern::uniform, 840, 1440, 905, 894},
    {"grid3x4", Pattern::uniform, 770, 1070, 495, 587},
    {"tietze", Pattern::uniform, 645, 1125, 340, 362},
    {"murakami_kim", Pattern::uniform, 600, 820, 560, 533},
    {"icosahedron", Pattern::uniform, 540, 690, 280, 178},
    {"k66", Pattern::uniform, 480, 840, 365, 139},
    {"cycle12plus3", Pattern::neighbor, 150, 510, 150, 189},
    {"grid3x4", Pattern::neighbor, 170, 510, 170, 236},
    {"tietze", Pattern::neighbor, 180, 690, 170, 206},
    {"murakami_kim", Pattern::neighbor, 240, 500, 220, 233},
    {"icosahedron", Pattern::neighbor, 300, 600, 290, 205},
    {"k66", Pattern::neighbor, 360, 1080, 200, 188},
    {"cycle12plus3", Pattern::unbalanced, 768, 1368, 824, 794},
    {"grid3x4", Pattern::unbalanced, 704, 1004, 594, 476},
    {"tietze", Pattern::unbalanced, 636, 1152, 436, 395},
    {"murakami_kim", Pattern::unbalanced, 516, 742, 450, 399},
    {"icosahedron", Pattern::unbalanced, 540, 690, 356, 210},
    {"k66", Pattern::unbalanced, 480, 840, 378, 154},
}};

inline const ReferenceRow* reference_row(std::string_view graph, Pattern p) {
  for (const auto& r : kReferenceTable)
    if (r.graph == graph && r.pattern == p) return &r;
  return nullptr;
}

struct ExperimentConfig {
  std::string graph = "icosahedron";  // standard topology name or graph file
  std::string murakami_kim;           // data file for the murakami_kim topology
  Pattern pattern = Pattern::uniform;
  Scheme scheme = Scheme::pxt;
  Disjointness mode = Disjointness::node;
  Disjointness path_sharing = Disjointness::link;  // condition c for the shared-path scheme
  std::uint64_t seed = 1;
  std::uint32_t runs = 1;             // seeds seed, seed+1, ...
  std::vector<std::string> large;     // overrides the default large-node set
  cdijkstra::SearchLimits limits;
  bool check_prefixes = true;         // validate after every routed demand
  bool audit = true;
  bool timing = false;                // runtime_ms column is 0 unless set
  std::ostream* verbose = nullptr;
};

struct LoadedGraph {
  std::string label;
  std::shared_ptr<const Graph> graph;
};

inline LoadedGraph load_experiment_graph(const std::string& graph, const std::string& murakami_kim = {}) {
  if (is_standard_topology(graph))
    return {graph, std::make_shared<const Graph>(standard_topology(graph, murakami_kim))};
  std::string label = graph;
  if (auto slash = label.find_last_of('/'); slash != std::string::npos) label = label.substr(slash + 1);
  if (auto dot = label.find_last_of('.'); dot != std::string::npos && dot > 0) label = label.substr(0, dot);
  try {
    return {label, std::make_shared<const Graph>(load_graph(read_file(graph)))};
  } catch (const ParseError& e) {
    throw ParseError(e.line(), graph + ": " + e.what());
  }
}

/// Traffic spec for an instance, resolving the large-node set for
/// unbalanced traffic (explicit list, pinned default, or searched).
inline TrafficSpec traffic_spec(const LoadedGraph& g, Pattern p, const std::vector<std::string>& large = {}) {
  switch (p) {
    case Pattern::uniform: return TrafficSpec::uniform();
    case Pattern::neighbor: return TrafficSpec::neighbor();
    case Pattern::unbalanced: break;
  }
  if (!large.empty()) return TrafficSpec::unbalanced(large);
  auto pinned = default_large_nodes(g.label);
  if (!pinned.empty()) return TrafficSpec::unbalanced(pinned);
  if (const auto* ref = reference_row(g.label, Pattern::unbalanced)) {
    if (auto found = find_large_nodes(*g.graph, ref->working)) return TrafficSpec::unbalanced(*found);
    throw Error("no node triple reproduces the reference unbalanced working bandwidth for " + g.label);
  }
  throw Error("unbalanced traffic on '" + g.label + "' needs --large");
}

struct InstanceResult {
  AllocationPlan plan;
  Bandwidth bandwidth;
  double runtime_ms = 0;
  std::vector<Violation> violations;  // from per-step and final validation
  std::optional<AuditReport> audit;
};

/// Routes `demands` with `scheme`. For PXT routing with `check_prefixes`,
/// the plan is validated after every demand.
inline InstanceResult route_instance(std::shared_ptr<const Graph> graph, const std::vector<Demand>& demands,
                                     Scheme scheme, const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<Violation> violations;
  auto plan = [&]() -> AllocationPlan {
    switch (scheme) {
      case Scheme::one_plus_one: return route_1plus1(graph, demands, cfg.mode);
      case Scheme::shared_path: return route_shared_path(graph, demands, cfg.path_sharing);
      case Scheme::pxt: break;
    }
    Router router(graph, cfg.mode, cfg.limits);
    router.set_trace(cfg.verbose);
    for (std::size_t k = 0; k < demands.size(); ++k) {
      router.route_demand(demands[k]);
      if (cfg.check_prefixes) {
        auto v = validate(router.plan(), {k, true});
        violations.insert(violations.end(), v.begin(), v.end());
      }
    }
    return router.plan();
  }();
  const auto stop = std::chrono::steady_clock::now();

  // Shared-path plans may contain branch points by design.
  auto final_check = validate(plan, {0, scheme != Scheme::shared_path});
  violations.insert(violations.end(), final_check.begin(), final_check.end());
  InstanceResult r{std::move(plan), {}, 0, std::move(violations), std::nullopt};
  r.bandwidth = bandwidth(r.plan);
  r.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  if (cfg.audit && scheme != Scheme::shared_path) r.audit = audit(r.plan);
  return r;
}

struct ExperimentRow {
  std::string graph;
  Pattern pattern = Pattern::uniform;
  Scheme scheme = Scheme::pxt;
  std::uint64_t seed = 0;
  Bandwidth bandwidth;
  double runtime_ms = 0;
  std::size_t violations = 0;
  std::size_t audit_violations = 0;
};

struct Summary {
  double min = 0;
  double median = 0;
  double max = 0;
};

inline Summary summarize(std::vector<double> values) {
  if (values.empty()) return {};
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  const double median = n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2;
  return {values.front(), median, values.back()};
}

struct ExperimentReport {
  std::vector<ExperimentRow> rows;
  bool timing = false;

  static constexpr std::string_view kCsvHeader = "graph,pattern,scheme,seed,working,protection,total,runtime_ms";

  std::string csv() const {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
      out << r.graph << ',' << to_string(r.pattern) << ',' << to_string(r.scheme) << ',' << r.seed << ','
          << r.bandwidth.working << ',' << r.bandwidth.protection << ',' << r.bandwidth.total << ','
          << std::fixed << std::setprecision(3) << (timing ? r.runtime_ms : 0.0) << '\n';
    }
    return out.str();
  }

  Summary protection_summary() const {
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(double(r.bandwidth.protection));
    return summarize(v);
  }

  bool clean() const {
    return std::all_of(rows.begin(), rows.end(),
                       [](const ExperimentRow& r) { return r.violations == 0 && r.audit_violations == 0; });
  }
};

/// One instance over `runs` consecutive seeds.
inline ExperimentReport run(const ExperimentConfig& cfg) {
  if (cfg.runs == 0) throw Error("run count must be at least 1");
  auto g = load_experiment_graph(cfg.graph, cfg.murakami_kim);
  auto spec = traffic_spec(g, cfg.pattern, cfg.large);
  ExperimentReport report;
  report.timing = cfg.timing;
  for (std::uint32_t i = 0; i < cfg.runs; ++i) {
    spec.seed = cfg.seed + i;
    auto demands = generate(*g.graph, spec);
    auto r = route_instance(g.graph, demands, cfg.scheme, cfg);
    report.rows.push_back({g.label, cfg.pattern, cfg.scheme, *spec.seed, r.bandwidth, r.runtime_ms,
                           r.violations.size(), r.audit ? r.audit->violations.size() : 0});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Reference-table comparison

enum class CellStatus { exact, in_band, out_of_band, skipped };

inline const char* to_string(CellStatus s) {
  switch (s) {
    case CellStatus::exact: return "exact";
    case CellStatus::in_band: return "in-band";
    case CellStatus::out_of_band: return "out-of-band";
    case CellStatus::skipped: return "skipped";
  }
  return "?";
}

struct Cell {
  double value = 0;
  std::uint32_t reference = 0;
  CellStatus status = CellStatus::skipped;
};

/// Exact when equal; in-band when within `tolerance` relative error.
inline Cell compare(double value, std::uint32_t reference, double tolerance) {
  Cell c{value, reference, CellStatus::out_of_band};
  if (value == double(reference)) c.status = CellStatus::exact;
  else if (std::abs(value - reference) <= tolerance * reference) c.status = CellStatus::in_band;
  return c;
}

struct Table1Options {
  std::string murakami_kim;                // data file; row skipped when empty
  std::optional<Pattern> pattern;          // restrict to one pattern
  std::optional<std::string> graph;        // restrict to one topology
  std::uint32_t runs = 10;                 // seeds 1..runs for order-dependent schemes
  Disjointness mode = Disjointness::node;
  Disjointness path_sharing = Disjointness::link;
  cdijkstra::SearchLimits limits;
  bool check_prefixes = true;
  bool audit = true;
};

struct Table1Row {
  std::string graph;
  Pattern pattern = Pattern::uniform;
  bool skipped = false;
  std::string notice;
  Cell working;
  Cell one_plus_one;
  Cell path;      // median over seeds
  Cell pxt;       // median over seeds
  Summary path_summary;
  Summary pxt_summary;
  bool path_le_one_plus_one = true;  // for every seed
  std::size_t violations = 0;        // validation and audit, all seeds
  ExperimentReport runs;             // every routed run
};

inline constexpr double kOnePlusOneBand = 0.02;
inline constexpr double kPathBand = 0.10;
inline constexpr double kPxtBand = 0.20;

inline std::vector<Table1Row> table1(const Table1Options& opt) {
  std::vector<Table1Row> out;
  for (const auto& ref : kReferenceTable) {
    if (opt.pattern && *opt.pattern != ref.pattern) continue;
    if (opt.graph && *opt.graph != ref.graph) continue;
    Table1Row row;
    row.graph = std::string(ref.graph);
    row.pattern = ref.pattern;
    if (ref.graph == "murakami_kim" && opt.murakami_kim.empty()) {
      row.skipped = true;
      row.notice = "murakami_kim needs a data file (--murakami-kim)";
      out.push_back(std::move(row));
      continue;
    }
    try {
      auto g = load_experiment_graph(row.graph, opt.murakami_kim);
      auto spec = traffic_spec(g, ref.pattern);
      ExperimentConfig cfg;
      cfg.mode = opt.mode;
      cfg.path_sharing = opt.path_sharing;
      cfg.limits = opt.limits;
      cfg.check_prefixes = opt.check_prefixes;
      cfg.audit = opt.audit;

      auto base = generate(*g.graph, spec);
      row.working = compare(double(working_bandwidth(*g.graph, base)), ref.working, 0);
      auto dedicated = route_instance(g.graph, base, Scheme::one_plus_one, cfg);
      row.one_plus_one = compare(double(dedicated.bandwidth.protection), ref.one_plus_one, kOnePlusOneBand);
      row.violations += dedicated.violations.size() + (dedicated.audit ? dedicated.audit->violations.size() : 0);

      std::vector<double> path;
      std::vector<double> pxt;
      for (std::uint32_t seed = 1; seed <= opt.runs; ++seed) {
        spec.seed = seed;
        auto demands = generate(*g.graph, spec);
        for (Scheme s : {Scheme::shared_path, Scheme::pxt}) {
          auto r = route_instance(g.graph, demands, s, cfg);
          const std::size_t bad = r.violations.size() + (r.audit ? r.audit->violations.size() : 0);
          row.violations += bad;
          (s == Scheme::pxt ? pxt : path).push_back(double(r.bandwidth.protection));
          if (s == Scheme::shared_path && r.bandwidth.protection > dedicated.bandwidth.protection)
            row.path_le_one_plus_one = false;
          row.runs.rows.push_back({g.label, ref.pattern, s, seed, r.bandwidth, r.runtime_ms, r.violations.size(),
                                   r.audit ? r.audit->violations.size() : 0});
        }
      }
      row.path_summary = summarize(path);
      row.pxt_summary = summarize(pxt);
      row.path = compare(row.path_summary.median, ref.path, kPathBand);
      row.pxt = compare(row.pxt_summary.median, ref.pxt, kPxtBand);
    } catch (const Error& e) {
      row.skipped = true;
      row.notice = e.what();
    }
    out.push_back(std::move(row));
  }
  return out;
}

inline std::string format_table1(const std::vector<Table1Row>& rows) {
  std::ostringstream out;
  auto cell = [](const Cell& c) {
    std::ostringstream s;
    if (c.status == CellStatus::skipped) return std::string("-");
    s << std::fixed << std::setprecision(c.value == std::floor(c.value) ? 0 : 1) << c.value << '/' << c.reference
      << ' ' << to_string(c.status);
    return s.str();
  };
  out << std::left << std::setw(11) << "pattern" << std::setw(14) << "graph" << std::setw(20) << "working"
      << std::setw(22) << "1+1" << std::setw(22) << "path(median)" << std::setw(22) << "pxt(median)"
      << "violations\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(11) << to_string(r.pattern) << std::setw(14) << r.graph;
    if (r.skipped) {
      out << "skipped: " << r.notice << '\n';
      continue;
    }
    out << std::setw(20) << cell(r.working) << std::setw(22) << cell(r.one_plus_one) << std::setw(22)
        << cell(r.path) << std::setw(22) << cell(r.pxt) << r.violations << '\n';
  }
  return out.str();
}

inline std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::ostringstream out;
  out << "graph,pattern,column,value,reference,status\n";
  for (const auto& r : rows) {
    const std::pair<const char*, const Cell*> cells[] = {
        {"working", &r.working}, {"one-plus-one", &r.one_plus_one}, {"path", &r.path}, {"pxt", &r.pxt}};
    for (auto [name, c] : cells) {
      out << r.graph << ',' << to_string(r.pattern) << ',' << name << ',';
      if (r.skipped) out << ",," << to_string(CellStatus::skipped) << '\n';
      else out << c->value << ',' << c->reference << ',' << to_string(c->status) << '\n';
    }
  }
  return out.str();
}

}  // namespace pxt
