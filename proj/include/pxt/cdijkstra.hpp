#pragma once

// Constrained Dijkstra: single-source shortest *admissible* paths in a
// directed graph where every arc carries a list of rival arcs, and a path is
// admissible when it never contains an arc together with one of its rivals.
//
// Each node keeps a list of partial paths (path, length, forbidden arcs,
// penciled/inked). A partial path P1 dominates P2 when l(P1) <= l(P2) and
// F(P1) is a subset of F(P2); dominated candidates are never stored, and a
// new candidate erases the penciled entries it dominates. The first partial
// path extracted at a node is inked and is that node's answer. Paths are
// kept node-simple. The worst case is exponential, so the search stops
// cleanly when it exceeds a partial-path or work budget.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "pxt/errors.hpp"

namespace pxt::cdijkstra {

using Node = std::uint32_t;
using ArcId = std::uint32_t;

template <typename Length>
struct Arc {
  Node tail = 0;
  Node head = 0;
  Length length{};
  std::vector<ArcId> rivals;
  std::string name;
};

template <typename Length = std::int64_t>
class RivalGraph {
 public:
  using length_type = Length;

  RivalGraph() = default;
  RivalGraph(std::size_t node_count, Node source) : out_(node_count), names_(node_count), source_(source) {
    if (source >= node_count) throw Error("source node out of range");
  }

  std::size_t node_count() const { return out_.size(); }
  Node source() const { return source_; }
  void set_source(Node s) {
    if (s >= node_count()) throw Error("source node out of range");
    source_ = s;
  }

  ArcId add_arc(Node tail, Node head, Length length, std::string name = {}) {
    if (tail >= node_count() || head >= node_count()) throw Error("arc endpoint out of range");
    if (length < Length{}) throw Error("arc lengths must be nonnegative");
    const auto id = static_cast<ArcId>(arcs_.size());
    arcs_.push_back({tail, head, length, {}, std::move(name)});
    out_[tail].push_back(id);
    return id;
  }

  /// Records `rival` as a rival of `arc` (one direction only).
  void add_rival(ArcId arc, ArcId rival) { arcs_.at(arc).rivals.push_back(rival); }

  const std::vector<Arc<Length>>& arcs() const { return arcs_; }
  const Arc<Length>& arc(ArcId a) const { return arcs_.at(a); }
  Arc<Length>& arc(ArcId a) { return arcs_.at(a); }
  const std::vector<ArcId>& out_arcs(Node n) const { return out_.at(n); }

  void set_node_name(Node n, std::string name) { names_.at(n) = std::move(name); }
  std::string node_name(Node n) const { return names_.at(n).empty() ? "v" + std::to_string(n) : names_[n]; }
  std::string arc_name(ArcId a) const { return arcs_.at(a).name.empty() ? "e" + std::to_string(a) : arcs_[a].name; }

  bool is_symmetric() const {
    for (ArcId a = 0; a < arcs_.size(); ++a)
      for (ArcId r : arcs_[a].rivals) {
        if (r >= arcs_.size()) return false;
        const auto& back = arcs_[r].rivals;
        if (std::find(back.begin(), back.end(), a) == back.end()) return false;
      }
    return true;
  }

 private:
  std::vector<Arc<Length>> arcs_;
  std::vector<std::vector<ArcId>> out_;
  std::vector<std::string> names_;
  Node source_ = 0;
};

/// Makes the rival relation symmetric (sorted, duplicate-free rival lists).
/// Path lengths and admissibility are unchanged.
template <typename Length>
RivalGraph<Length> symmetrize(RivalGraph<Length> g) {
  const auto n = static_cast<ArcId>(g.arcs().size());
  for (ArcId a = 0; a < n; ++a)
    for (ArcId r : g.arc(a).rivals)
      if (r >= n) throw Error("rival " + std::to_string(r) + " of arc " + std::to_string(a) + " does not exist");
  std::vector<std::vector<ArcId>> rivals(n);
  for (ArcId a = 0; a < n; ++a)
    for (ArcId r : g.arc(a).rivals) {
      rivals[a].push_back(r);
      rivals[r].push_back(a);
    }
  for (ArcId a = 0; a < n; ++a) {
    auto& list = rivals[a];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    g.arc(a).rivals = std::move(list);
  }
  return g;
}

enum class PathState { penciled, inked };

template <typename Length>
struct PartialPath {
  std::vector<Node> nodes;
  std::vector<ArcId> arcs;
  Length length{};
  std::vector<ArcId> forbidden;  // sorted
  PathState state = PathState::penciled;
};

/// Non-strict on both coordinates: identical partial paths dominate each
/// other. Both paths must end at the same node.
template <typename Length>
bool dominates(const PartialPath<Length>& p1, const PartialPath<Length>& p2) {
  return p1.length <= p2.length &&
         std::includes(p2.forbidden.begin(), p2.forbidden.end(), p1.forbidden.begin(), p1.forbidden.end());
}

struct SearchLimits {
  std::size_t max_partial_paths = 1'000'000;
  std::size_t max_work = 10'000'000;  // arc examinations while probing forward
};

struct SolveOptions {
  bool prune = true;                  // domination pruning; off only for cross-checks
  std::optional<Node> target;         // stop once this node is inked
  std::ostream* trace = nullptr;      // per-step log
  bool record_extractions = false;    // keep the length of every active partial path
};

enum class SolveStatus { complete, partial_path_limit, work_limit };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::complete: return "complete";
    case SolveStatus::partial_path_limit: return "partial-path limit exceeded";
    case SolveStatus::work_limit: return "work limit exceeded";
  }
  return "?";
}

enum class Outcome { reached, unreachable, undecided };

template <typename Length>
struct NodeResult {
  Outcome outcome = Outcome::undecided;
  std::vector<Node> nodes;  // source ... node
  std::vector<ArcId> arcs;
  Length length{};
};

template <typename Length>
struct SolveResult {
  SolveStatus status = SolveStatus::complete;
  std::vector<NodeResult<Length>> nodes;
  std::size_t work = 0;
  std::size_t peak_partial_paths = 0;
  std::vector<Length> extractions;

  bool ok() const { return status == SolveStatus::complete; }
};

namespace detail {

inline std::uint64_t hash_arcs(const std::vector<ArcId>& arcs) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (ArcId a : arcs) {
    h ^= a + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0x100000001b3ULL;
  }
  return h ^ arcs.size();
}

template <typename Length>
class Search {
 public:
  Search(const RivalGraph<Length>& g, const SearchLimits& limits, const SolveOptions& options)
      : g_(g), limits_(limits), options_(options), lists_(g.node_count()), inked_(g.node_count()) {}

  SolveResult<Length> run() {
    SolveResult<Length> result;
    const Node source = g_.source();
    const auto root = store({-1, 0, source, Length{}, {}, 0, PathState::inked});
    inked_[source] = root;
    std::size_t black = 1;
    std::uint32_t active = root;
    trace_active(active);
    bool target_done = options_.target && *options_.target == source;

    while (!target_done && black < g_.node_count()) {
      if (!probe(active, result)) break;
      std::optional<std::uint32_t> next;
      while (!heap_.empty()) {
        auto key = heap_.top();
        heap_.pop();
        if (records_[key.id].alive) {
          next = key.id;
          break;
        }
      }
      if (!next) {
        heap_exhausted_ = true;
        break;
      }
      active = *next;
      Record& q = records_[active];
      if (options_.record_extractions) result.extractions.push_back(q.length);
      if (!inked_[q.node]) {
        q.state = PathState::inked;
        inked_[q.node] = active;
        ++black;
        if (options_.target && *options_.target == q.node) target_done = true;
      }
      trace_active(active);
    }

    result.work = work_;
    result.peak_partial_paths = peak_;
    result.nodes.resize(g_.node_count());
    for (Node n = 0; n < g_.node_count(); ++n) {
      auto& out = result.nodes[n];
      if (inked_[n]) {
        auto p = materialize(*inked_[n]);
        out = {Outcome::reached, std::move(p.nodes), std::move(p.arcs), p.length};
      } else {
        // A white node is proven unreachable only when the search ran dry.
        out.outcome = (result.status == SolveStatus::complete && heap_exhausted_) ? Outcome::unreachable
                                                                                  : Outcome::undecided;
      }
    }
    return result;
  }

  PartialPath<Length> materialize(std::uint32_t id) const {
    PartialPath<Length> p;
    const Record& r = records_[id];
    p.length = r.length;
    p.forbidden = r.forbidden;
    p.state = r.state;
    for (std::int64_t cur = id; cur >= 0; cur = records_[cur].parent) {
      p.nodes.push_back(records_[cur].node);
      if (records_[cur].parent >= 0) p.arcs.push_back(records_[cur].arc);
    }
    std::reverse(p.nodes.begin(), p.nodes.end());
    std::reverse(p.arcs.begin(), p.arcs.end());
    return p;
  }

 private:
  struct Record {
    std::int64_t parent;
    ArcId arc;
    Node node;
    Length length;
    std::vector<ArcId> forbidden;
    std::uint64_t hash;
    PathState state;
    bool alive = true;
    std::uint64_t seq = 0;
  };

  struct NodeList {
    std::map<std::size_t, std::vector<std::uint32_t>> by_size;
    std::unordered_multimap<std::uint64_t, std::uint32_t> by_hash;
  };

  struct HeapKey {
    Length length;
    std::size_t forbidden;
    Node node;
    std::uint64_t seq;
    std::uint32_t id;
    bool operator>(const HeapKey& o) const {
      return std::tie(length, forbidden, node, seq) > std::tie(o.length, o.forbidden, o.node, o.seq);
    }
  };

  std::uint32_t store(Record r) {
    r.hash = hash_arcs(r.forbidden);
    r.seq = seq_++;
    const auto id = static_cast<std::uint32_t>(records_.size());
    auto& list = lists_[r.node];
    list.by_size[r.forbidden.size()].push_back(id);
    list.by_hash.emplace(r.hash, id);
    records_.push_back(std::move(r));
    ++stored_;
    peak_ = std::max(peak_, stored_);
    return id;
  }

  void kill(std::uint32_t id) {
    Record& r = records_[id];
    r.alive = false;
    --stored_;
    auto& by_hash = lists_[r.node].by_hash;
    auto [lo, hi] = by_hash.equal_range(r.hash);
    for (auto it = lo; it != hi; ++it)
      if (it->second == id) {
        by_hash.erase(it);
        break;
      }
    trace_entry("erase", id);
    // Keep parent/arc for path reconstruction of descendants; drop the set.
    std::vector<ArcId>().swap(r.forbidden);
  }

  bool on_path(std::uint32_t id, Node n) const {
    for (std::int64_t cur = id; cur >= 0; cur = records_[cur].parent)
      if (records_[cur].node == n) return true;
    return false;
  }

  // Scans ids, dropping dead ones in place.
  template <typename F>
  void scan(std::vector<std::uint32_t>& ids, F&& f) {
    std::size_t keep = 0;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (!records_[ids[i]].alive) continue;
      ids[keep++] = ids[i];
      f(ids[i]);
    }
    ids.resize(keep);
  }

  bool dominated(Node w, Length l, const std::vector<ArcId>& f, std::uint64_t h) {
    auto& list = lists_[w];
    auto [lo, hi] = list.by_hash.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
      const Record& r = records_[it->second];
      if (r.length <= l && r.forbidden == f) return true;
    }
    bool found = false;
    for (auto& [size, ids] : list.by_size) {
      if (size >= f.size()) break;
      scan(ids, [&](std::uint32_t id) {
        const Record& r = records_[id];
        if (!found && r.length <= l && std::includes(f.begin(), f.end(), r.forbidden.begin(), r.forbidden.end()))
          found = true;
      });
      if (found) return true;
    }
    return false;
  }

  void erase_dominated_by(std::uint32_t fresh) {
    const Record& p = records_[fresh];
    auto& list = lists_[p.node];
    std::vector<std::uint32_t> doomed;
    auto [lo, hi] = list.by_hash.equal_range(p.hash);
    for (auto it = lo; it != hi; ++it) {
      const Record& r = records_[it->second];
      if (it->second != fresh && r.state == PathState::penciled && r.length >= p.length && r.forbidden == p.forbidden)
        doomed.push_back(it->second);
    }
    for (auto it = list.by_size.upper_bound(p.forbidden.size()); it != list.by_size.end(); ++it) {
      scan(it->second, [&](std::uint32_t id) {
        const Record& r = records_[id];
        if (r.state == PathState::penciled && r.length >= p.length &&
            std::includes(r.forbidden.begin(), r.forbidden.end(), p.forbidden.begin(), p.forbidden.end()))
          doomed.push_back(id);
      });
    }
    for (auto id : doomed) kill(id);
  }

  // Returns false when a limit stops the search.
  bool probe(std::uint32_t active, SolveResult<Length>& result) {
    for (ArcId a : g_.out_arcs(records_[active].node)) {
      if (++work_ > limits_.max_work) {
        result.status = SolveStatus::work_limit;
        return false;
      }
      const Record& p = records_[active];
      const auto& arc = g_.arc(a);
      if (std::binary_search(p.forbidden.begin(), p.forbidden.end(), a)) {
        trace_line("  forbidden " + g_.arc_name(a));
        continue;
      }
      if (on_path(active, arc.head)) {
        trace_line("  revisit " + g_.arc_name(a));
        continue;
      }
      std::vector<ArcId> f;
      f.reserve(p.forbidden.size() + arc.rivals.size());
      std::set_union(p.forbidden.begin(), p.forbidden.end(), arc.rivals.begin(), arc.rivals.end(),
                     std::back_inserter(f));
      const Length l = p.length + arc.length;
      const auto h = hash_arcs(f);
      if (options_.prune && dominated(arc.head, l, f, h)) {
        if (options_.trace)
          trace_line("  dominated " + g_.node_name(arc.head) + " " + describe_candidate(active, a, l, f));
        continue;
      }
      const auto id = store({static_cast<std::int64_t>(active), a, arc.head, l, std::move(f), 0, PathState::penciled});
      heap_.push({l, records_[id].forbidden.size(), arc.head, records_[id].seq, id});
      trace_entry("pencil", id);
      if (options_.prune) erase_dominated_by(id);
      if (stored_ > limits_.max_partial_paths) {
        result.status = SolveStatus::partial_path_limit;
        return false;
      }
    }
    return true;
  }

  // --- tracing -------------------------------------------------------------

  std::string format_path(const PartialPath<Length>& p) const {
    std::string s = "(" + g_.node_name(p.nodes[0]);
    for (std::size_t i = 0; i < p.arcs.size(); ++i) s += "," + g_.arc_name(p.arcs[i]) + "," + g_.node_name(p.nodes[i + 1]);
    return s + ")";
  }

  std::string format_set(const std::vector<ArcId>& f) const {
    std::string s = "{";
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + g_.arc_name(f[i]);
    return s + "}";
  }

  std::string describe(const PartialPath<Length>& p) const {
    std::ostringstream out;
    out << format_path(p) << " l=" << p.length << " F=" << format_set(p.forbidden);
    return out.str();
  }

  std::string describe_candidate(std::uint32_t parent, ArcId a, Length l, const std::vector<ArcId>& f) const {
    auto p = materialize(parent);
    p.nodes.push_back(g_.arc(a).head);
    p.arcs.push_back(a);
    p.length = l;
    p.forbidden = f;
    return describe(p);
  }

  void trace_line(const std::string& s) {
    if (options_.trace) *options_.trace << s << '\n';
  }

  void trace_entry(const char* what, std::uint32_t id) {
    if (!options_.trace) return;
    trace_line(std::string("  ") + what + " " + g_.node_name(records_[id].node) + " " + describe(materialize(id)));
  }

  void trace_active(std::uint32_t id) {
    if (!options_.trace) return;
    const Record& r = records_[id];
    trace_line("active " + g_.node_name(r.node) + " " + describe(materialize(id)) +
               (r.state == PathState::inked ? " inked" : " penciled"));
  }

  const RivalGraph<Length>& g_;
  SearchLimits limits_;
  SolveOptions options_;
  std::vector<Record> records_;
  std::vector<NodeList> lists_;
  std::vector<std::optional<std::uint32_t>> inked_;
  std::priority_queue<HeapKey, std::vector<HeapKey>, std::greater<HeapKey>> heap_;
  std::size_t stored_ = 0;
  std::size_t peak_ = 0;
  std::size_t work_ = 0;
  std::uint64_t seq_ = 0;
  bool heap_exhausted_ = false;
};

}  // namespace detail

/// Shortest admissible paths from g.source(). The rival relation is
/// symmetrized first if needed. When a limit is hit, `status` says which one
/// and nodes without an inked path are marked undecided.
template <typename Length>
SolveResult<Length> solve(const RivalGraph<Length>& g, const SearchLimits& limits = {},
                          const SolveOptions& options = {}) {
  if (limits.max_partial_paths == 0 || limits.max_work == 0) throw Error("search limits must be positive");
  if (g.node_count() == 0) return {};
  if (!g.is_symmetric()) {
    auto sym = symmetrize(g);
    return detail::Search<Length>(sym, limits, options).run();
  }
  return detail::Search<Length>(g, limits, options).run();
}

}  // namespace pxt::cdijkstra
