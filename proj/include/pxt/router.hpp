#pragma once

// Online PXT routing. Each demand gets a minimum-hop working path over links
// with spare capacity, then a protection path found by constrained Dijkstra
// on an auxiliary graph H whose arcs are either one fresh edge ("unused"
// arcs) or a whole reusable piece of an existing PXT ("shortcut" arcs).
// Rival arcs are those whose expansions would make the protection route
// revisit a node, so every admissible path in H expands to a path in G.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pxt/cdijkstra.hpp"
#include "pxt/errors.hpp"
#include "pxt/graph.hpp"
#include "pxt/plan.hpp"

namespace pxt {

enum class Boundary { terminal, trail_end };

inline const char* to_string(Boundary b) { return b == Boundary::terminal ? "terminal" : "trail-end"; }

/// A contiguous piece of a PXT between two entry boundaries.
struct Subtrail {
  Walk segment;
  Boundary front_kind = Boundary::terminal;
  Boundary back_kind = Boundary::terminal;
  std::size_t pxt = 0;  // index into the PXT list it was cut from
  bool is_path = false;
};

/// Cuts `t` at every occurrence of u and v and, when open, at its two ends.
/// Non-path pieces are returned too, flagged by `is_path`.
inline std::vector<Subtrail> cut_into_subtrails(const Pxt& t, NodeId u, NodeId v, std::size_t index = 0) {
  const auto& nodes = t.trail.nodes;
  const std::size_t m = t.trail.edges.size();
  auto is_terminal = [&](NodeId n) { return n == u || n == v; };
  std::vector<std::size_t> cuts;
  if (!t.closed) cuts.push_back(0);
  for (std::size_t i = 0; i < (t.closed ? m : m + 1); ++i)
    if (is_terminal(nodes[i])) cuts.push_back(i);
  if (!t.closed) cuts.push_back(m);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  if (cuts.empty() || m == 0) return {};
  if (t.closed) cuts.push_back(cuts.front() + m);

  std::vector<Subtrail> out;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    Subtrail s;
    s.pxt = index;
    s.segment.nodes.push_back(nodes[t.closed ? cuts[k] % m : cuts[k]]);
    for (std::size_t i = cuts[k]; i < cuts[k + 1]; ++i) {
      const std::size_t j = t.closed ? i % m : i;
      s.segment.edges.push_back(t.trail.edges[j]);
      s.segment.nodes.push_back(nodes[j + 1]);
    }
    s.front_kind = is_terminal(s.segment.front()) ? Boundary::terminal : Boundary::trail_end;
    s.back_kind = is_terminal(s.segment.back()) ? Boundary::terminal : Boundary::trail_end;
    s.is_path = is_path(classify(s.segment));
    out.push_back(std::move(s));
  }
  return out;
}

/// Path-shaped subtrails of every PXT in the plan that could serve demand d.
inline std::vector<Subtrail> collect_subtrails(const AllocationPlan& plan, const Demand& d) {
  std::vector<Subtrail> out;
  const auto pxts = plan.pxts();
  for (std::size_t i = 0; i < pxts.size(); ++i) {
    const auto& t = pxts[i];
    if (t.closed) {
      const auto& n = t.trail.nodes;
      if (std::find(n.begin(), n.end(), d.u) == n.end() || std::find(n.begin(), n.end(), d.v) == n.end()) continue;
    }
    for (auto& s : cut_into_subtrails(t, d.u, d.v, i))
      if (s.is_path) out.push_back(std::move(s));
  }
  return out;
}

/// Edges the protection path of a demand with working path `w` may not use.
class ProhibitedEdges {
 public:
  ProhibitedEdges(const AllocationPlan& plan, const Walk& w) : mode_(plan.mode()) {
    const Graph& g = plan.graph();
    interior_.assign(g.node_count(), false);
    if (mode_ == Disjointness::node)
      for (NodeId n : w.interior()) interior_[n] = true;
    for (const auto& e : w.edges) working_links_.insert(e.link);
    for (const auto& entry : plan.entries())
      if (!disjoint(entry.working, w, mode_))
        protection_.insert(entry.protection.edges.begin(), entry.protection.edges.end());
    graph_ = &g;
  }

  /// True for interior nodes of the working path (node mode only).
  bool node_blocked(NodeId n) const { return interior_.at(n); }

  bool link_blocked(LinkId l) const {
    const Link& link = graph_->link(l);
    return working_links_.count(l) || node_blocked(link.a) || node_blocked(link.b);
  }

  bool operator()(EdgeId e) const { return link_blocked(e.link) || protection_.count(e); }

 private:
  Disjointness mode_;
  const Graph* graph_ = nullptr;
  std::vector<bool> interior_;
  std::set<LinkId> working_links_;
  std::set<EdgeId> protection_;
};

struct AuxArc {
  enum class Kind { unused, shortcut };
  Kind kind = Kind::unused;
  NodeId tail = 0;
  NodeId head = 0;
  LinkId link = 0;           // unused arcs
  std::size_t subtrail = 0;  // shortcut arcs
  bool reversed = false;     // shortcut traversed back to front
  std::vector<NodeId> nodes; // expansion, tail to head
};

struct AuxGraph {
  std::vector<AuxArc> arcs;
  std::vector<Subtrail> subtrails;
  cdijkstra::RivalGraph<std::int64_t> search;
  std::int64_t unused_cost = 1;
  std::size_t rival_pairs = 0;
};

/// Builds H for demand d. Arc costs make the search minimize new edges
/// first and the number of shortcuts second: a shortcut costs 1 and an
/// unused arc costs node_count + 1, which exceeds any shortcut count.
inline AuxGraph build_aux(const AllocationPlan& plan, const Demand& d, const std::vector<Subtrail>& subtrails,
                          const ProhibitedEdges& prohibited) {
  const Graph& g = plan.graph();
  AuxGraph h;
  h.unused_cost = static_cast<std::int64_t>(g.node_count()) + 1;
  h.search = cdijkstra::RivalGraph<std::int64_t>(g.node_count(), d.u);
  for (NodeId n = 0; n < g.node_count(); ++n) h.search.set_node_name(n, g.name(n));

  for (LinkId l = 0; l < g.link_count(); ++l) {
    if (prohibited.link_blocked(l) || !plan.edges().has_free_capacity(l)) continue;
    const Link& link = g.link(l);
    for (auto [a, b] : {std::pair{link.a, link.b}, std::pair{link.b, link.a}}) {
      AuxArc arc;
      arc.kind = AuxArc::Kind::unused;
      arc.tail = a;
      arc.head = b;
      arc.link = l;
      arc.nodes = {a, b};
      h.search.add_arc(a, b, h.unused_cost, "new:" + g.name(a) + "-" + g.name(b));
      h.arcs.push_back(std::move(arc));
    }
  }

  for (const auto& s : subtrails) {
    if (!s.is_path || s.segment.front() == s.segment.back()) continue;
    if (std::any_of(s.segment.edges.begin(), s.segment.edges.end(), [&](EdgeId e) { return prohibited(e); }))
      continue;
    const std::size_t index = h.subtrails.size();
    h.subtrails.push_back(s);
    for (bool rev : {false, true}) {
      AuxArc arc;
      arc.kind = AuxArc::Kind::shortcut;
      arc.subtrail = index;
      arc.reversed = rev;
      arc.nodes = s.segment.nodes;
      if (rev) std::reverse(arc.nodes.begin(), arc.nodes.end());
      arc.tail = arc.nodes.front();
      arc.head = arc.nodes.back();
      h.search.add_arc(arc.tail, arc.head, 1,
                       "sc" + std::to_string(index) + (rev ? "r:" : ":") + g.name(arc.tail) + "-" + g.name(arc.head));
      h.arcs.push_back(std::move(arc));
    }
  }

  // Rivals: expansions share a node that is not an endpoint of both arcs.
  std::vector<std::vector<std::pair<cdijkstra::ArcId, bool>>> at(g.node_count());
  for (cdijkstra::ArcId a = 0; a < h.arcs.size(); ++a) {
    const auto& arc = h.arcs[a];
    for (NodeId n : arc.nodes) at[n].push_back({a, n == arc.tail || n == arc.head});
  }
  std::set<std::pair<cdijkstra::ArcId, cdijkstra::ArcId>> rivals;
  for (const auto& list : at)
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = i + 1; j < list.size(); ++j)
        if (!(list[i].second && list[j].second)) rivals.insert(std::minmax(list[i].first, list[j].first));
  for (auto [a, b] : rivals) {
    h.search.add_rival(a, b);
    h.search.add_rival(b, a);
  }
  h.search = cdijkstra::symmetrize(std::move(h.search));
  h.rival_pairs = rivals.size();
  return h;
}

struct RouteOutcome {
  PlanEntry entry;
  std::size_t new_edges = 0;
  std::size_t shortcuts = 0;
  std::size_t subtrails = 0;  // path-shaped subtrails before prohibited-edge filtering
  std::size_t aux_arcs = 0;
  std::size_t search_work = 0;
};

class Router {
 public:
  explicit Router(std::shared_ptr<const Graph> graph, Disjointness mode = Disjointness::node,
                  cdijkstra::SearchLimits limits = {})
      : plan_(std::move(graph), mode, BranchPolicy::forbid), limits_(limits), working_load_(plan_.graph().link_count()) {}

  const AllocationPlan& plan() const { return plan_; }
  const Graph& graph() const { return plan_.graph(); }

  /// Per-demand decision log; nullptr disables it.
  void set_trace(std::ostream* out) { trace_ = out; }

  /// Minimum-hop working path over links with a free edge, on fresh edges.
  /// Among minimum-hop candidates, only those leaving room for a disjoint
  /// protection path are considered; ties go to the fewest working edges
  /// already on the candidate's links, then to lexicographic node order.
  Walk find_working(const Demand& d) const {
    const Graph& g = graph();
    auto free = [&](LinkId l) { return plan_.edges().has_free_capacity(l); };
    auto candidates = all_shortest_paths(g, d.u, d.v, free);
    if (candidates.empty())
      throw RoutingError(d.id, "no working route between " + g.name(d.u) + " and " + g.name(d.v));
    const NodePath* best = nullptr;
    std::size_t best_load = 0;
    for (const auto& path : candidates) {
      const auto links = links_along(g, path);
      std::size_t load = 0;
      for (LinkId l : links) load += working_load_[l];
      if (best && load >= best_load) continue;
      if (!has_disjoint_route(path, links)) continue;
      best = &path;
      best_load = load;
    }
    if (!best) best = &candidates.front();
    Walk w{*best, {}};
    for (LinkId l : links_along(g, *best)) w.edges.push_back(plan_.next_fresh(l));
    return w;
  }

  RouteOutcome route_demand(const Demand& d) {
    const Graph& g = graph();
    if (d.u >= g.node_count() || d.v >= g.node_count() || d.u == d.v)
      throw RoutingError(d.id, "demand terminals must be two distinct graph nodes");

    RouteOutcome out;
    out.entry.demand = d;
    out.entry.working = find_working(d);
    const Walk& w = out.entry.working;

    auto subtrails = collect_subtrails(plan_, d);
    out.subtrails = subtrails.size();
    ProhibitedEdges prohibited(plan_, w);
    AuxGraph h = build_aux(plan_, d, subtrails, prohibited);
    out.aux_arcs = h.arcs.size();

    cdijkstra::SolveOptions options;
    options.target = d.v;
    auto result = cdijkstra::solve(h.search, limits_, options);
    out.search_work = result.work;
    const auto& target = result.nodes[d.v];
    if (target.outcome != cdijkstra::Outcome::reached) {
      if (!result.ok()) throw ResourceLimitError(d.id, std::string("protection search: ") + to_string(result.status));
      throw RoutingError(d.id, "no admissible protection path");
    }

    Walk& p = out.entry.protection;
    p.nodes.push_back(d.u);
    for (auto a : target.arcs) {
      const AuxArc& arc = h.arcs[a];
      if (arc.kind == AuxArc::Kind::unused) {
        p.edges.push_back(plan_.next_fresh(arc.link));
        p.nodes.push_back(arc.head);
        ++out.new_edges;
      } else {
        Walk seg = h.subtrails[arc.subtrail].segment;
        if (arc.reversed) seg = seg.reversed();
        p.edges.insert(p.edges.end(), seg.edges.begin(), seg.edges.end());
        p.nodes.insert(p.nodes.end(), seg.nodes.begin() + 1, seg.nodes.end());
        ++out.shortcuts;
      }
    }

    try {
      plan_.add_entry(out.entry);
    } catch (const PlanError& e) {
      throw Error("internal: routed entry for demand " + std::to_string(d.id) + " rejected: " + e.what());
    }
    for (EdgeId e : w.edges) ++working_load_[e.link];

    if (trace_) {
      *trace_ << "demand " << d.id << ' ' << g.name(d.u) << ' ' << g.name(d.v) << '\n'
              << "  working " << format_walk(g, w) << '\n'
              << "  subtrails " << out.subtrails << " usable " << h.subtrails.size() << '\n';
      for (const auto& s : h.subtrails)
        *trace_ << "    " << format_walk(g, s.segment) << " [" << to_string(s.front_kind) << ' '
                << to_string(s.back_kind) << "]\n";
      *trace_ << "  aux arcs " << h.arcs.size() << " rival pairs " << h.rival_pairs << " work " << result.work << '\n'
              << "  protection " << format_walk(g, p) << " new " << out.new_edges << " shortcuts " << out.shortcuts
              << '\n';
    }
    return out;
  }

 private:
  // Whether some protection route could exist at all next to `path`.
  bool has_disjoint_route(const NodePath& path, const std::vector<LinkId>& links) const {
    const Graph& g = graph();
    std::vector<bool> blocked(g.node_count(), false);
    if (plan_.mode() == Disjointness::node)
      for (std::size_t i = 1; i + 1 < path.size(); ++i) blocked[path[i]] = true;
    std::set<LinkId> used(links.begin(), links.end());
    return shortest_path(g, path.front(), path.back(), [&](LinkId l) {
             const Link& link = g.link(l);
             return plan_.edges().has_free_capacity(l) && !used.count(l) && !blocked[link.a] && !blocked[link.b];
           }).has_value();
  }

  AllocationPlan plan_;
  cdijkstra::SearchLimits limits_;
  std::vector<std::size_t> working_load_;
  std::ostream* trace_ = nullptr;
};

}  // namespace pxt
