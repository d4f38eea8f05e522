#pragma once

// Comparison schemes: dedicated 1+1 protection and shared path protection
// that reuses protection edges whenever conditions b and c allow.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pxt/errors.hpp"
#include "pxt/graph.hpp"
#include "pxt/plan.hpp"

namespace pxt {

struct DisjointPair {
  NodePath working;
  NodePath protection;
  Disjointness mode = Disjointness::node;
};

/// Shortest working path, then the shortest protection path disjoint from
/// it, minimized over every shortest working path. Ties go to the
/// lexicographically first working path.
inline DisjointPair disjoint_pair(const Graph& g, NodeId u, NodeId v, Disjointness mode = Disjointness::node) {
  if (u == v) throw GraphError("disjoint pair needs two distinct terminals");
  std::optional<DisjointPair> best;
  for (const auto& w : all_shortest_paths(g, u, v)) {
    std::vector<bool> blocked_node(g.node_count(), false);
    if (mode == Disjointness::node)
      for (std::size_t i = 1; i + 1 < w.size(); ++i) blocked_node[w[i]] = true;
    auto used = links_along(g, w);
    std::set<LinkId> blocked_link(used.begin(), used.end());
    auto p = shortest_path(g, u, v, [&](LinkId l) {
      const Link& link = g.link(l);
      return !blocked_link.count(l) && !blocked_node[link.a] && !blocked_node[link.b];
    });
    if (p && (!best || p->size() < best->protection.size())) best = DisjointPair{w, *p, mode};
  }
  if (!best)
    throw GraphError(std::string("no ") + to_string(mode) + "-disjoint pair between " + g.name(u) + " and " +
                     g.name(v));
  return *best;
}

namespace detail {

class PairCache {
 public:
  PairCache(const Graph& g, Disjointness mode) : g_(g), mode_(mode) {}

  const DisjointPair& get(const Demand& d) {
    auto key = std::minmax(d.u, d.v);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    try {
      return cache_.emplace(key, disjoint_pair(g_, key.first, key.second, mode_)).first->second;
    } catch (const GraphError& e) {
      throw RoutingError(d.id, e.what());
    }
  }

 private:
  const Graph& g_;
  Disjointness mode_;
  std::map<std::pair<NodeId, NodeId>, DisjointPair> cache_;
};

inline Walk fresh_walk(const AllocationPlan& plan, const NodePath& p, std::uint32_t demand) {
  Walk w{p, {}};
  for (LinkId l : links_along(plan.graph(), p)) {
    if (!plan.edges().has_free_capacity(l)) throw RoutingError(demand, "link capacity exhausted");
    w.edges.push_back(plan.next_fresh(l));
  }
  return w;
}

inline void add_or_throw(AllocationPlan& plan, const PlanEntry& e) {
  try {
    plan.add_entry(e);
  } catch (const PlanError& err) {
    throw RoutingError(e.demand.id, err.what());
  }
}

}  // namespace detail

/// Dedicated protection: every demand gets its disjoint pair on fresh edges.
inline AllocationPlan route_1plus1(std::shared_ptr<const Graph> graph, const std::vector<Demand>& demands,
                                   Disjointness mode = Disjointness::node) {
  AllocationPlan plan(graph, mode, BranchPolicy::forbid);
  detail::PairCache pairs(*graph, mode);
  for (const auto& d : demands) {
    const auto& pair = pairs.get(d);
    PlanEntry e{d, detail::fresh_walk(plan, pair.working, d.id), {}};
    e.protection = detail::fresh_walk(plan, pair.protection, d.id);
    detail::add_or_throw(plan, e);
  }
  return plan;
}

/// Shared path protection without regard to branch points. Routes are the
/// node-disjoint pairs from disjoint_pair. Each hop of the protection path
/// takes the lowest-ordinal protection edge on its link that conditions b
/// and c permit, or a fresh edge when none does. `sharing` is the
/// disjointness that condition c uses and the mode of the returned plan;
/// link sharing reproduces the reference shared-path totals.
inline AllocationPlan route_shared_path(std::shared_ptr<const Graph> graph, const std::vector<Demand>& demands,
                                        Disjointness sharing = Disjointness::link) {
  const Disjointness mode = sharing;
  AllocationPlan plan(graph, mode, BranchPolicy::allow);
  detail::PairCache pairs(*graph, Disjointness::node);
  for (const auto& d : demands) {
    const auto& pair = pairs.get(d);
    PlanEntry e{d, detail::fresh_walk(plan, pair.working, d.id), {pair.protection, {}}};
    for (LinkId l : links_along(*graph, pair.protection)) {
      std::optional<EdgeId> pick;
      for (std::uint32_t k = 0; k < plan.edges().materialized(l) && !pick; ++k) {
        EdgeId cand{l, k};
        if (plan.edges().role(cand) != EdgeRole::protection) continue;
        bool ok = true;
        for (auto j : plan.protection_users(cand))
          if (!disjoint(plan.entries()[j].working, e.working, mode)) {
            ok = false;
            break;
          }
        if (ok) pick = cand;
      }
      if (!pick) {
        if (!plan.edges().has_free_capacity(l)) throw RoutingError(d.id, "link capacity exhausted");
        pick = plan.next_fresh(l);
      }
      e.protection.edges.push_back(*pick);
    }
    detail::add_or_throw(plan, e);
  }
  return plan;
}

}  // namespace pxt
