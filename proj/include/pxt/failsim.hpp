#pragma once

// Single-failure restoration. Affected demands switch to their protection
// paths; only the demand's endnodes act (bridging, and breaking a
// cross-connect that continues past the endnode). Every intermediate node
// must already be cross-connected to exactly the right partner.

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pxt/errors.hpp"
#include "pxt/graph.hpp"
#include "pxt/plan.hpp"

namespace pxt {

struct Failure {
  enum class Kind { link, node };
  Kind kind = Kind::link;
  LinkId link = 0;
  NodeId node = 0;

  bool hits(const Walk& w) const {
    if (kind == Kind::node) return std::find(w.nodes.begin(), w.nodes.end(), node) != w.nodes.end();
    return std::any_of(w.edges.begin(), w.edges.end(), [&](EdgeId e) { return e.link == link; });
  }
};

inline std::string describe(const Graph& g, const Failure& f) {
  if (f.kind == Failure::Kind::node) return "node:" + g.name(f.node);
  const Link& l = g.link(f.link);
  return "link:" + g.name(l.a) + "-" + g.name(l.b);
}

/// All links, then all nodes when `mode` is node.
inline std::vector<Failure> enumerate_failures(const Graph& g, Disjointness mode) {
  std::vector<Failure> out;
  for (LinkId l = 0; l < g.link_count(); ++l) out.push_back({Failure::Kind::link, l, 0});
  if (mode == Disjointness::node)
    for (NodeId n = 0; n < g.node_count(); ++n) out.push_back({Failure::Kind::node, 0, n});
  return out;
}

enum class SwitchAction { bridge, break_crossconnect };

inline const char* to_string(SwitchAction a) {
  return a == SwitchAction::bridge ? "bridge" : "break-crossconnect";
}

struct SwitchEvent {
  std::uint32_t demand = 0;
  NodeId node = 0;
  SwitchAction action = SwitchAction::bridge;
};

struct Activation {
  std::uint32_t demand = 0;
  Walk protection;
  bool pre_cross_connected = true;           // every interior hop already joined
  std::vector<NodeId> ambiguous;             // interior nodes with more than one partner
};

struct RestorationResult {
  std::vector<std::uint32_t> affected;       // demand ids, restorable or not
  std::vector<std::uint32_t> unrestorable;   // a terminal failed
  std::vector<Activation> activated;
  std::vector<SwitchEvent> switches;
  std::size_t pass_through = 0;              // interior nodes of activated paths
};

/// Read-only: computes what a failure activates without touching the plan.
inline RestorationResult restore(const AllocationPlan& plan, const Failure& f) {
  const Graph& g = plan.graph();
  RestorationResult r;
  for (const auto& e : plan.entries()) {
    if (!f.hits(e.working)) continue;
    const auto id = e.demand.id;
    r.affected.push_back(id);
    if (f.kind == Failure::Kind::node && (f.node == e.demand.u || f.node == e.demand.v)) {
      r.unrestorable.push_back(id);
      continue;
    }
    if (f.hits(e.protection))
      throw Error("demand " + std::to_string(id) + ": protection path is also hit by " + describe(g, f));

    Activation a{id, e.protection, true, {}};
    const Walk& p = e.protection;
    for (std::size_t i = 1; i < p.edges.size(); ++i) {
      auto partners = plan.partners(p.nodes[i], p.edges[i - 1]);
      if (std::find(partners.begin(), partners.end(), p.edges[i]) == partners.end()) a.pre_cross_connected = false;
      if (partners.size() > 1) a.ambiguous.push_back(p.nodes[i]);
    }
    r.pass_through += p.interior().size();

    // Endnode actions: bridge onto the protection path, and cut any
    // cross-connect that would carry the signal beyond the endnode.
    for (auto [node, edge] : {std::pair{p.front(), p.edges.front()}, std::pair{p.back(), p.edges.back()}}) {
      r.switches.push_back({id, node, SwitchAction::bridge});
      for (std::size_t k = 0; k < plan.partners(node, edge).size(); ++k)
        r.switches.push_back({id, node, SwitchAction::break_crossconnect});
    }
    r.activated.push_back(std::move(a));
  }
  return r;
}

struct FailureRow {
  std::string failure;
  std::size_t affected = 0;
  std::size_t switch_events = 0;
  std::size_t pass_through = 0;
};

struct AuditReport {
  std::size_t failures = 0;
  std::size_t affected = 0;
  std::size_t unrestorable = 0;
  std::size_t switch_events = 0;
  std::size_t pass_through = 0;
  std::size_t max_load = 0;  // most activated paths on one protection edge
  std::vector<FailureRow> rows;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }

  std::string text() const {
    std::ostringstream out;
    out << "failures " << failures << "\naffected " << affected << "\nunrestorable " << unrestorable
        << "\nswitch-events " << switch_events << "\npass-through " << pass_through << "\nmax-load " << max_load
        << "\nviolations " << violations.size() << '\n';
    for (const auto& v : violations) out << "  " << v << '\n';
    return out.str();
  }

  std::string csv() const {
    std::ostringstream out;
    out << "failure,affected,switch_events,pass_through\n";
    for (const auto& r : rows) out << r.failure << ',' << r.affected << ',' << r.switch_events << ',' << r.pass_through << '\n';
    return out.str();
  }
};

/// Every single link failure, plus node failures in node mode. Checks edge
/// contention, pre-cross-connection and switch locality for each.
inline AuditReport audit(const AllocationPlan& plan) {
  const Graph& g = plan.graph();
  AuditReport report;
  std::map<std::uint32_t, const PlanEntry*> by_id;
  for (const auto& e : plan.entries()) by_id[e.demand.id] = &e;

  for (const auto& f : enumerate_failures(g, plan.mode())) {
    const auto name = describe(g, f);
    RestorationResult r;
    try {
      r = restore(plan, f);
    } catch (const Error& e) {
      report.violations.push_back(name + ": " + e.what());
      continue;
    }
    ++report.failures;
    report.affected += r.affected.size();
    report.unrestorable += r.unrestorable.size();
    report.switch_events += r.switches.size();
    report.pass_through += r.pass_through;
    report.rows.push_back({name, r.affected.size(), r.switches.size(), r.pass_through});

    std::map<EdgeId, std::vector<std::uint32_t>> load;
    for (const auto& a : r.activated) {
      for (EdgeId e : a.protection.edges) load[e].push_back(a.demand);
      if (!a.pre_cross_connected)
        report.violations.push_back(name + ": demand " + std::to_string(a.demand) + " is not fully pre-cross-connected");
      for (NodeId n : a.ambiguous)
        report.violations.push_back(name + ": demand " + std::to_string(a.demand) + " needs a switch decision at " +
                                    g.name(n));
    }
    for (const auto& [e, users] : load) {
      report.max_load = std::max(report.max_load, users.size());
      if (users.size() > 1) {
        std::string who;
        for (auto u : users) who += ' ' + std::to_string(u);
        report.violations.push_back(name + ": edge " + edge_name(g, e) + " contended by demands" + who);
      }
    }
    for (const auto& s : r.switches) {
      const auto* e = by_id.at(s.demand);
      if (s.node != e->demand.u && s.node != e->demand.v)
        report.violations.push_back(name + ": switch at non-terminal " + g.name(s.node));
    }
  }
  return report;
}

}  // namespace pxt
