#pragma once

// Plan file format (one record per line, '#' starts a comment line):
//
//   mode <node|link>
//   branch-points <forbid|allow>
//   entry <demand-id> <u> <v> | working <node list> | protection <n0> #<k1> <n1> ... #<km> <nm>
//   pxt <open|closed> <n0> #<k1> <n1> ...
//   xc <node> <edge-id> <edge-id>
//
// Working edges are always fresh, so only their nodes are written; replaying
// entries in order re-materializes the same ordinals. Edge ids are written as
// `<a>~<b>#<ordinal>` with a < b. `pxt` and `xc` records are derived data; the
// parser recomputes them and rejects a file whose records disagree.

#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pxt/graph.hpp"
#include "pxt/plan.hpp"

namespace pxt {

inline std::string serialize_entry(const Graph& g, const PlanEntry& e) {
  std::ostringstream out;
  out << "entry " << e.demand.id << ' ' << g.name(e.demand.u) << ' ' << g.name(e.demand.v) << " | working "
      << format_node_path(g, e.working.nodes) << " | protection " << format_walk(g, e.protection);
  return out.str();
}

inline std::string serialize(const AllocationPlan& plan) {
  const Graph& g = plan.graph();
  std::ostringstream out;
  out << "# pxt allocation plan\n";
  out << "mode " << to_string(plan.mode()) << '\n';
  out << "branch-points " << (plan.policy() == BranchPolicy::forbid ? "forbid" : "allow") << '\n';
  for (const auto& e : plan.entries()) out << serialize_entry(g, e) << '\n';
  for (const auto& t : plan.pxts())
    out << "pxt " << (t.closed ? "closed " : "open ") << format_walk(g, t.trail) << '\n';
  for (const auto& xc : plan.crossconnects())
    out << "xc " << g.name(xc.node) << ' ' << edge_name(g, xc.first) << ' ' << edge_name(g, xc.second) << '\n';
  return out.str();
}

namespace detail {

inline NodeId node_or_throw(const Graph& g, const std::string& name, std::size_t line) {
  auto n = g.find(name);
  if (!n) throw ParseError(line, "unknown node '" + name + "'");
  return *n;
}

inline LinkId link_or_throw(const Graph& g, NodeId a, NodeId b, std::size_t line) {
  auto l = g.link_between(a, b);
  if (!l) throw ParseError(line, "no link between '" + g.name(a) + "' and '" + g.name(b) + "'");
  return *l;
}

inline std::uint32_t ordinal_or_throw(const std::string& tok, std::size_t line) {
  if (tok.size() < 2 || tok[0] != '#') throw ParseError(line, "expected '#<ordinal>', got '" + tok + "'");
  try {
    std::size_t used = 0;
    unsigned long v = std::stoul(tok.substr(1), &used);
    if (used != tok.size() - 1) throw std::invalid_argument("ordinal");
    return static_cast<std::uint32_t>(v);
  } catch (const std::logic_error&) {
    throw ParseError(line, "bad ordinal '" + tok + "'");
  }
}

inline Walk parse_walk_tokens(const Graph& g, const std::vector<std::string>& toks, std::size_t line) {
  if (toks.empty() || toks.size() % 2 == 0) throw ParseError(line, "walk must alternate nodes and '#<ordinal>'");
  Walk w;
  w.nodes.push_back(node_or_throw(g, toks[0], line));
  for (std::size_t i = 1; i < toks.size(); i += 2) {
    auto k = ordinal_or_throw(toks[i], line);
    NodeId n = node_or_throw(g, toks[i + 1], line);
    w.edges.push_back({link_or_throw(g, w.nodes.back(), n, line), k});
    w.nodes.push_back(n);
  }
  return w;
}

inline std::vector<std::vector<std::string>> split_bars(const std::string& line) {
  std::vector<std::vector<std::string>> parts(1);
  for (auto& w : split_words(line)) {
    if (w == "|") parts.emplace_back();
    else parts.back().push_back(w);
  }
  return parts;
}

}  // namespace detail

/// Rebuilds a plan by replaying its entries through add_entry, so every
/// condition is re-checked on load.
inline AllocationPlan parse_plan(std::shared_ptr<const Graph> graph, std::string_view text) {
  const Graph& g = *graph;
  Disjointness mode = Disjointness::node;
  BranchPolicy policy = BranchPolicy::forbid;
  std::optional<AllocationPlan> plan;
  std::vector<std::pair<std::size_t, std::string>> derived;  // pxt / xc lines, checked at the end
  auto ensure_plan = [&]() -> AllocationPlan& {
    if (!plan) plan.emplace(graph, mode, policy);
    return *plan;
  };

  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    auto words = split_words(line);
    if (words.empty() || words[0][0] == '#') continue;
    const auto& kind = words[0];
    if (kind == "mode") {
      if (plan) throw ParseError(lineno, "'mode' must precede entries");
      auto m = words.size() == 2 ? parse_disjointness(words[1]) : std::nullopt;
      if (!m || *m == Disjointness::edge) throw ParseError(lineno, "expected 'mode <node|link>'");
      mode = *m;
    } else if (kind == "branch-points") {
      if (plan) throw ParseError(lineno, "'branch-points' must precede entries");
      if (words.size() != 2 || (words[1] != "forbid" && words[1] != "allow"))
        throw ParseError(lineno, "expected 'branch-points <forbid|allow>'");
      policy = words[1] == "forbid" ? BranchPolicy::forbid : BranchPolicy::allow;
    } else if (kind == "entry") {
      auto parts = detail::split_bars(line);
      if (parts.size() != 3 || parts[0].size() != 4 || parts[1].empty() || parts[1][0] != "working" ||
          parts[2].empty() || parts[2][0] != "protection")
        throw ParseError(lineno, "expected 'entry <id> <u> <v> | working ... | protection ...'");
      AllocationPlan& p = ensure_plan();
      PlanEntry e;
      try {
        e.demand.id = static_cast<std::uint32_t>(std::stoul(parts[0][1]));
      } catch (const std::logic_error&) {
        throw ParseError(lineno, "bad demand id '" + parts[0][1] + "'");
      }
      e.demand.u = detail::node_or_throw(g, parts[0][2], lineno);
      e.demand.v = detail::node_or_throw(g, parts[0][3], lineno);
      for (std::size_t i = 1; i < parts[1].size(); ++i) e.working.nodes.push_back(detail::node_or_throw(g, parts[1][i], lineno));
      if (e.working.nodes.empty()) throw ParseError(lineno, "empty working path");
      for (std::size_t i = 0; i + 1 < e.working.nodes.size(); ++i)
        e.working.edges.push_back(
            p.next_fresh(detail::link_or_throw(g, e.working.nodes[i], e.working.nodes[i + 1], lineno)));
      e.protection = detail::parse_walk_tokens(g, {parts[2].begin() + 1, parts[2].end()}, lineno);
      try {
        p.add_entry(e);
      } catch (const PlanError& err) {
        throw ParseError(lineno, err.what());
      }
    } else if (kind == "pxt" || kind == "xc") {
      derived.emplace_back(lineno, line);
    } else {
      throw ParseError(lineno, "unknown record '" + kind + "'");
    }
  }
  AllocationPlan& p = ensure_plan();

  std::vector<Pxt> pxts;
  std::set<CrossConnect> xcs;
  for (const auto& [ln, line] : derived) {
    auto words = split_words(line);
    if (words[0] == "pxt") {
      if (words.size() < 3 || (words[1] != "open" && words[1] != "closed"))
        throw ParseError(ln, "expected 'pxt <open|closed> <trail>'");
      pxts.push_back({detail::parse_walk_tokens(g, {words.begin() + 2, words.end()}, ln), words[1] == "closed"});
    } else {
      if (words.size() != 4) throw ParseError(ln, "expected 'xc <node> <edge> <edge>'");
      auto e1 = parse_edge_name(g, words[2]);
      auto e2 = parse_edge_name(g, words[3]);
      if (!e1 || !e2) throw ParseError(ln, "bad edge id");
      auto [lo, hi] = std::minmax(*e1, *e2);
      xcs.insert({detail::node_or_throw(g, words[1], ln), lo, hi});
    }
  }
  if (!derived.empty()) {
    if (canonical_sorted(pxts) != p.pxts()) throw ParseError(0, "pxt records do not match the entries");
    if (xcs != p.crossconnects()) throw ParseError(0, "xc records do not match the entries");
  }
  return std::move(*plan);
}

}  // namespace pxt
