#pragma once

// Allocation plans: per-demand working/protection paths, the
// pre-cross-connections implied by consecutive protection edges, and the
// pre-cross-connected trails (PXTs) they form.
//
// Conditions checked for a plan:
//   a  working and protection are paths between the terminals and are
//      node-disjoint (link-disjoint in link mode);
//   b  an edge on some working path is on no other demand's working or
//      protection path;
//   c  demands whose working paths are not disjoint have edge-disjoint
//      protection paths;
//   d  no branch points: at every node, a protection edge is
//      cross-connected to at most one partner.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pxt/errors.hpp"
#include "pxt/graph.hpp"

namespace pxt {

/// Unordered terminal pair; `u` is where routing starts.
struct Demand {
  std::uint32_t id = 0;
  NodeId u = 0;
  NodeId v = 0;

  bool same_terminals(const Demand& o) const {
    return std::minmax(u, v) == std::minmax(o.u, o.v);
  }
  bool operator==(const Demand&) const = default;
};

struct PlanEntry {
  Demand demand;
  Walk working;
  Walk protection;
};

/// Two protection edges joined at `node`; `first < second`.
struct CrossConnect {
  NodeId node = 0;
  EdgeId first;
  EdgeId second;
  auto operator<=>(const CrossConnect&) const = default;
};

struct Pxt {
  Walk trail;
  bool closed = false;
  bool operator==(const Pxt&) const = default;
};

struct Bandwidth {
  std::size_t working = 0;
  std::size_t protection = 0;
  std::size_t total = 0;
  bool operator==(const Bandwidth&) const = default;
};

enum class Condition { a, b, c, d, capacity, structure };

inline const char* to_string(Condition c) {
  switch (c) {
    case Condition::a: return "a";
    case Condition::b: return "b";
    case Condition::c: return "c";
    case Condition::d: return "d";
    case Condition::capacity: return "capacity";
    case Condition::structure: return "structure";
  }
  return "?";
}

struct Violation {
  Condition condition = Condition::structure;
  std::vector<std::uint32_t> demands;
  std::vector<NodeId> nodes;
  std::vector<EdgeId> edges;
  std::string detail;
};

inline std::string describe(const Graph& g, const Violation& v) {
  std::ostringstream out;
  out << "condition " << to_string(v.condition) << ": " << v.detail;
  if (!v.demands.empty()) {
    out << "; demands";
    for (auto d : v.demands) out << ' ' << d;
  }
  if (!v.nodes.empty()) {
    out << "; nodes";
    for (auto n : v.nodes) out << ' ' << g.name(n);
  }
  if (!v.edges.empty()) {
    out << "; edges";
    for (auto e : v.edges) out << ' ' << edge_name(g, e);
  }
  return out.str();
}

class PlanError : public Error {
 public:
  PlanError(const Graph& g, std::vector<Violation> violations)
      : Error(summary(g, violations)), violations_(std::move(violations)) {}
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string summary(const Graph& g, const std::vector<Violation>& v) {
    if (v.empty()) return "invalid plan";
    std::string s = describe(g, v.front());
    if (v.size() > 1) s += " (+" + std::to_string(v.size() - 1) + " more)";
    return s;
  }
  std::vector<Violation> violations_;
};

/// `forbid` enforces condition d on every insertion; `allow` is for the
/// shared-path baseline, which ignores branch points.
enum class BranchPolicy { forbid, allow };

namespace detail {

/// Consecutive protection-edge pairs at interior nodes of `w`.
inline std::vector<CrossConnect> crossconnects_of(const Walk& w) {
  std::vector<CrossConnect> out;
  for (std::size_t i = 1; i < w.edges.size(); ++i) {
    auto [lo, hi] = std::minmax(w.edges[i - 1], w.edges[i]);
    out.push_back({w.nodes[i], lo, hi});
  }
  return out;
}

inline bool connects(const Walk& w, const Demand& d) {
  return std::minmax(w.front(), w.back()) == std::minmax(d.u, d.v);
}

/// Checks that a single entry is made of two paths joining its terminals
/// and that they are disjoint under `mode`.
inline void check_entry_shape(const Graph& g, const PlanEntry& e, Disjointness mode, std::vector<Violation>& out) {
  const auto id = e.demand.id;
  if (e.demand.u == e.demand.v || e.demand.u >= g.node_count() || e.demand.v >= g.node_count()) {
    out.push_back({Condition::structure, {id}, {}, {}, "demand terminals must be two distinct graph nodes"});
    return;
  }
  for (const Walk* w : {&e.working, &e.protection}) {
    const char* which = w == &e.working ? "working" : "protection";
    if (!is_valid_walk(g, *w)) {
      out.push_back({Condition::structure, {id}, {}, {}, std::string(which) + " route is not a walk in the graph"});
      return;
    }
    if (!is_path(classify(*w)) || !connects(*w, e.demand)) {
      out.push_back({Condition::a, {id}, {}, {}, std::string(which) + " route is not a path between the terminals"});
      return;
    }
  }
  if (!disjoint(e.working, e.protection, mode)) {
    std::vector<NodeId> shared;
    for (NodeId n : e.protection.interior())
      if (std::find(e.working.nodes.begin(), e.working.nodes.end(), n) != e.working.nodes.end()) shared.push_back(n);
    for (NodeId n : e.working.interior())
      if (std::find(e.protection.nodes.begin(), e.protection.nodes.end(), n) != e.protection.nodes.end())
        shared.push_back(n);
    out.push_back({Condition::a, {id}, shared, {},
                   std::string("working and protection are not ") + to_string(mode) + "-disjoint"});
  }
}

inline Pxt canonical_open(Pxt t) {
  Walk rev = t.trail.reversed();
  if (std::tie(rev.edges, rev.nodes) < std::tie(t.trail.edges, t.trail.nodes)) t.trail = std::move(rev);
  return t;
}

inline Pxt canonical_closed(const Pxt& t) {
  const std::size_t n = t.trail.edges.size();
  Walk best;
  for (const Walk& base : {t.trail, t.trail.reversed()}) {
    for (std::size_t r = 0; r < n; ++r) {
      Walk rot;
      for (std::size_t i = 0; i < n; ++i) {
        rot.nodes.push_back(base.nodes[(r + i) % n]);
        rot.edges.push_back(base.edges[(r + i) % n]);
      }
      rot.nodes.push_back(rot.nodes.front());
      if (best.nodes.empty() || rot.edges < best.edges) best = std::move(rot);
    }
  }
  return {best, true};
}

}  // namespace detail

/// Rotation/orientation-independent form used for comparing PXT sets.
inline Pxt canonical(const Pxt& t) {
  return t.closed ? detail::canonical_closed(t) : detail::canonical_open(t);
}

inline std::vector<Pxt> canonical_sorted(std::vector<Pxt> pxts) {
  for (auto& t : pxts) t = canonical(t);
  std::sort(pxts.begin(), pxts.end(),
            [](const Pxt& x, const Pxt& y) { return x.trail.edges < y.trail.edges; });
  return pxts;
}

class AllocationPlan {
 public:
  explicit AllocationPlan(std::shared_ptr<const Graph> graph, Disjointness mode = Disjointness::node,
                          BranchPolicy policy = BranchPolicy::forbid)
      : graph_(std::move(graph)), mode_(mode), policy_(policy), registry_(*graph_) {
    if (mode_ == Disjointness::edge) throw Error("plan disjointness mode must be node or link");
  }

  const Graph& graph() const { return *graph_; }
  const std::shared_ptr<const Graph>& graph_ptr() const { return graph_; }
  Disjointness mode() const { return mode_; }
  BranchPolicy policy() const { return policy_; }
  const std::vector<PlanEntry>& entries() const { return entries_; }
  const EdgeRegistry& edges() const { return registry_; }
  EdgeId next_fresh(LinkId l) const { return registry_.next_fresh(l); }

  const std::set<CrossConnect>& crossconnects() const { return crossconnects_; }

  /// Partners of protection edge `e` at node `n` (at most one under `forbid`).
  std::vector<EdgeId> partners(NodeId n, EdgeId e) const {
    auto it = partners_.find({n, e});
    return it == partners_.end() ? std::vector<EdgeId>{} : it->second;
  }

  /// Indices of entries whose protection path uses `e`.
  const std::vector<std::uint32_t>& protection_users(EdgeId e) const {
    static const std::vector<std::uint32_t> none;
    auto it = protection_users_.find(e);
    return it == protection_users_.end() ? none : it->second;
  }

  /// Violations that adding `entry` would introduce, checked against the
  /// current plan only.
  std::vector<Violation> check_entry(const PlanEntry& entry) const {
    std::vector<Violation> out;
    const Graph& g = *graph_;
    detail::check_entry_shape(g, entry, mode_, out);
    if (!out.empty() && out.back().condition == Condition::structure) return out;
    const auto id = entry.demand.id;

    std::map<LinkId, std::uint32_t> fresh_on_link;
    auto check_fresh = [&](EdgeId e) {
      if (e.ordinal != registry_.materialized(e.link)) {
        out.push_back({Condition::structure, {id}, {}, {e}, "edge is neither existing nor the next fresh ordinal"});
        return;
      }
      if (!registry_.has_free_capacity(e.link) || ++fresh_on_link[e.link] > 1)
        out.push_back({Condition::capacity, {id}, {}, {e}, "link capacity exceeded"});
    };

    for (EdgeId e : entry.working.edges) {
      if (registry_.exists(e)) {
        auto owner = working_owner_.find(e);
        std::vector<std::uint32_t> who{id};
        if (owner != working_owner_.end()) who.push_back(entries_[owner->second].demand.id);
        for (auto j : protection_users(e)) who.push_back(entries_[j].demand.id);
        out.push_back({Condition::b, who, {}, {e}, "working edge already in use"});
      } else {
        check_fresh(e);
      }
    }
    for (EdgeId e : entry.protection.edges) {
      if (!registry_.exists(e)) {
        check_fresh(e);
        continue;
      }
      if (registry_.role(e) == EdgeRole::working) {
        auto owner = working_owner_.find(e);
        out.push_back({Condition::b,
                       {id, owner == working_owner_.end() ? id : entries_[owner->second].demand.id},
                       {},
                       {e},
                       "protection uses another demand's working edge"});
        continue;
      }
      for (auto j : protection_users(e)) {
        if (!disjoint(entries_[j].working, entry.working, mode_))
          out.push_back({Condition::c, {entries_[j].demand.id, id}, {}, {e},
                         "protection edge shared by demands with intersecting working paths"});
      }
    }
    if (policy_ == BranchPolicy::forbid) {
      for (const auto& xc : detail::crossconnects_of(entry.protection)) {
        for (auto [mine, other] : {std::pair{xc.first, xc.second}, std::pair{xc.second, xc.first}}) {
          for (EdgeId p : partners(xc.node, mine)) {
            if (p == other) continue;
            out.push_back({Condition::d, {id}, {xc.node}, {mine, other, p}, "branch point"});
          }
        }
      }
    }
    return out;
  }

  /// Appends `entry` or throws PlanError naming the violated conditions.
  /// Existing entries are never modified.
  void add_entry(const PlanEntry& entry) {
    auto violations = check_entry(entry);
    if (!violations.empty()) throw PlanError(*graph_, std::move(violations));

    const auto index = static_cast<std::uint32_t>(entries_.size());
    for (EdgeId e : entry.working.edges) {
      registry_.materialize(e.link, EdgeRole::working);
      working_owner_[e] = index;
    }
    std::vector<EdgeId> fresh_protection;
    for (EdgeId e : entry.protection.edges) {
      if (!registry_.exists(e)) {
        registry_.materialize(e.link, EdgeRole::protection);
        fresh_protection.push_back(e);
      }
      protection_users_[e].push_back(index);
    }
    entries_.push_back(entry);

    if (policy_ == BranchPolicy::forbid) {
      for (EdgeId e : fresh_protection) start_trail(e);
    }
    for (const auto& xc : detail::crossconnects_of(entry.protection)) {
      if (!crossconnects_.insert(xc).second) continue;
      add_partner(xc.node, xc.first, xc.second);
      add_partner(xc.node, xc.second, xc.first);
      if (policy_ == BranchPolicy::forbid) join_trails(xc);
    }
  }

  /// PXTs maintained incrementally as entries are added, in canonical form.
  /// Empty under BranchPolicy::allow.
  std::vector<Pxt> pxts() const {
    std::vector<Pxt> out;
    out.reserve(trails_.size());
    for (const auto& [id, t] : trails_) out.push_back(t);
    return canonical_sorted(std::move(out));
  }

 private:
  void add_partner(NodeId n, EdgeId e, EdgeId p) {
    auto& list = partners_[{n, e}];
    if (std::find(list.begin(), list.end(), p) == list.end()) {
      list.push_back(p);
      std::sort(list.begin(), list.end());
    }
  }

  void start_trail(EdgeId e) {
    const Link& l = graph_->link(e.link);
    const auto id = next_trail_id_++;
    trails_[id] = Pxt{Walk{{l.a, l.b}, {e}}, false};
    trail_of_[e] = id;
  }

  // Joins the trail ends carrying xc.first and xc.second at xc.node. Both
  // edges are free at that node (condition d), so they sit at trail ends.
  void join_trails(const CrossConnect& xc) {
    const auto ta = trail_of_.at(xc.first);
    const auto tb = trail_of_.at(xc.second);
    if (ta == tb) {
      trails_[ta].closed = true;
      return;
    }
    Walk a = trails_[ta].trail;
    Walk b = trails_[tb].trail;
    if (!(a.edges.back() == xc.first && a.nodes.back() == xc.node)) a = a.reversed();
    if (!(b.edges.front() == xc.second && b.nodes.front() == xc.node)) b = b.reversed();
    a.nodes.insert(a.nodes.end(), b.nodes.begin() + 1, b.nodes.end());
    a.edges.insert(a.edges.end(), b.edges.begin(), b.edges.end());
    for (EdgeId e : b.edges) trail_of_[e] = ta;
    trails_[ta].trail = std::move(a);
    trails_.erase(tb);
  }

  std::shared_ptr<const Graph> graph_;
  Disjointness mode_;
  BranchPolicy policy_;
  EdgeRegistry registry_;
  std::vector<PlanEntry> entries_;
  std::map<EdgeId, std::uint32_t> working_owner_;
  std::map<EdgeId, std::vector<std::uint32_t>> protection_users_;
  std::set<CrossConnect> crossconnects_;
  std::map<std::pair<NodeId, EdgeId>, std::vector<EdgeId>> partners_;
  std::map<std::uint32_t, Pxt> trails_;
  std::map<EdgeId, std::uint32_t> trail_of_;
  std::uint32_t next_trail_id_ = 0;
};

// ---------------------------------------------------------------------------
// Whole-plan checks. These recompute everything from the entry list and do
// not trust the plan's incremental indexes.

struct ValidateOptions {
  /// Only report violations involving at least one entry at or after this
  /// index. Validating entry k against a valid prefix [0, k) this way is
  /// equivalent to validating the prefix [0, k].
  std::size_t from_entry = 0;
  bool check_branch_points = true;
};

namespace detail {

struct PartnerUse {
  EdgeId partner;
  std::uint32_t entry;
};

inline std::map<std::pair<NodeId, EdgeId>, std::vector<PartnerUse>> partner_map(const AllocationPlan& plan) {
  std::map<std::pair<NodeId, EdgeId>, std::vector<PartnerUse>> out;
  const auto& entries = plan.entries();
  for (std::uint32_t k = 0; k < entries.size(); ++k) {
    for (const auto& xc : crossconnects_of(entries[k].protection)) {
      out[{xc.node, xc.first}].push_back({xc.second, k});
      out[{xc.node, xc.second}].push_back({xc.first, k});
    }
  }
  return out;
}

inline std::vector<EdgeId> distinct_partners(const std::vector<PartnerUse>& uses) {
  std::vector<EdgeId> out;
  for (const auto& u : uses) out.push_back(u.partner);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

inline std::vector<Violation> validate(const AllocationPlan& plan, const ValidateOptions& options = {}) {
  std::vector<Violation> out;
  const Graph& g = plan.graph();
  const auto& entries = plan.entries();
  const std::size_t from = options.from_entry;
  auto id = [&](std::uint32_t k) { return entries[k].demand.id; };

  for (std::size_t k = from; k < entries.size(); ++k) detail::check_entry_shape(g, entries[k], plan.mode(), out);

  std::map<EdgeId, std::vector<std::uint32_t>> working_users;
  std::map<EdgeId, std::vector<std::uint32_t>> protection_users;
  for (std::uint32_t k = 0; k < entries.size(); ++k) {
    for (EdgeId e : entries[k].working.edges) working_users[e].push_back(k);
    for (EdgeId e : entries[k].protection.edges) protection_users[e].push_back(k);
  }

  for (const auto& [e, ws] : working_users) {
    for (std::size_t i = 0; i < ws.size(); ++i)
      for (std::size_t j = i + 1; j < ws.size(); ++j)
        if (std::max(ws[i], ws[j]) >= from)
          out.push_back({Condition::b, {id(ws[i]), id(ws[j])}, {}, {e}, "working edge on two working paths"});
    auto ps = protection_users.find(e);
    if (ps == protection_users.end()) continue;
    for (auto w : ws)
      for (auto p : ps->second)
        if (p != w && std::max(w, p) >= from)
          out.push_back({Condition::b, {id(w), id(p)}, {}, {e}, "working edge on another demand's protection path"});
  }

  for (const auto& [e, ps] : protection_users) {
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j) {
        if (ps[j] < from) continue;
        if (!disjoint(entries[ps[i]].working, entries[ps[j]].working, plan.mode()))
          out.push_back({Condition::c, {id(ps[i]), id(ps[j])}, {}, {e},
                         "protection edge shared by demands with intersecting working paths"});
      }
  }

  if (options.check_branch_points) {
    for (const auto& [key, uses] : detail::partner_map(plan)) {
      auto partners = detail::distinct_partners(uses);
      if (partners.size() < 2) continue;
      bool involved = false;
      std::vector<std::uint32_t> demands;
      for (const auto& u : uses) {
        involved = involved || u.entry >= from;
        demands.push_back(id(u.entry));
      }
      if (!involved) continue;
      std::sort(demands.begin(), demands.end());
      demands.erase(std::unique(demands.begin(), demands.end()), demands.end());
      std::vector<EdgeId> witness{key.second};
      witness.insert(witness.end(), partners.begin(), partners.end());
      out.push_back({Condition::d, demands, {key.first}, witness, "branch point"});
    }
  }
  return out;
}

/// Nodes where some protection edge is consecutive with two different
/// protection edges on different protection paths.
inline std::set<NodeId> branch_points(const AllocationPlan& plan) {
  std::set<NodeId> out;
  for (const auto& [key, uses] : detail::partner_map(plan))
    if (detail::distinct_partners(uses).size() > 1) out.insert(key.first);
  return out;
}

/// Full recomputation of the PXT decomposition, in canonical form.
inline std::vector<Pxt> extract_pxts(const AllocationPlan& plan) {
  const Graph& g = plan.graph();
  auto pm = detail::partner_map(plan);
  std::map<std::pair<NodeId, EdgeId>, EdgeId> partner;
  std::vector<Violation> bad;
  for (const auto& [key, uses] : pm) {
    auto ps = detail::distinct_partners(uses);
    if (ps.size() > 1) bad.push_back({Condition::d, {}, {key.first}, {key.second}, "branch point"});
    partner[key] = ps.front();
  }
  if (!bad.empty()) throw PlanError(g, std::move(bad));

  std::set<EdgeId> protection;
  for (const auto& e : plan.entries()) protection.insert(e.protection.edges.begin(), e.protection.edges.end());

  auto next = [&](NodeId at, EdgeId e) -> std::optional<EdgeId> {
    auto it = partner.find({at, e});
    if (it == partner.end()) return std::nullopt;
    return it->second;
  };

  std::set<EdgeId> seen;
  std::vector<Pxt> out;
  for (EdgeId start : protection) {
    if (seen.count(start)) continue;
    const Link& l = g.link(start.link);
    Walk trail{{l.a, l.b}, {start}};
    seen.insert(start);
    bool closed = false;
    // Forward from the b end.
    for (;;) {
      auto nx = next(trail.nodes.back(), trail.edges.back());
      if (!nx) break;
      if (*nx == start) {
        closed = true;
        break;
      }
      trail.nodes.push_back(g.link(nx->link).other(trail.nodes.back()));
      trail.edges.push_back(*nx);
      seen.insert(*nx);
    }
    if (!closed) {
      // Backward from the a end.
      Walk back{{l.a}, {}};
      EdgeId cur = start;
      for (;;) {
        auto nx = next(back.nodes.back(), cur);
        if (!nx) break;
        back.nodes.push_back(g.link(nx->link).other(back.nodes.back()));
        back.edges.push_back(*nx);
        seen.insert(*nx);
        cur = *nx;
      }
      Walk full = back.reversed();
      full.nodes.insert(full.nodes.end(), trail.nodes.begin() + 1, trail.nodes.end());
      full.edges.insert(full.edges.end(), trail.edges.begin(), trail.edges.end());
      trail = std::move(full);
    }
    out.push_back({std::move(trail), closed});
  }
  return canonical_sorted(std::move(out));
}

inline Bandwidth bandwidth(const AllocationPlan& plan) {
  std::set<EdgeId> working;
  std::set<EdgeId> protection;
  for (const auto& e : plan.entries()) {
    working.insert(e.working.edges.begin(), e.working.edges.end());
    protection.insert(e.protection.edges.begin(), e.protection.edges.end());
  }
  return {working.size(), protection.size(), working.size() + protection.size()};
}

}  // namespace pxt
