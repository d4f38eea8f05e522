#pragma once

// Undirected multigraph model. A link joins two distinct nodes and carries a
// pool of unit edges ("link connections"); edges are materialized on demand
// by whoever owns the allocation state (see EdgeRegistry).

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pxt/errors.hpp"

namespace pxt {

/// Index into Graph::names(). Node indices follow lexicographic name order,
/// so comparing ids compares names.
using NodeId = std::uint32_t;
using LinkId = std::uint32_t;
using NodePath = std::vector<NodeId>;

struct LinkSpec {
  std::string u;
  std::string v;
  std::optional<std::uint32_t> capacity;  // nullopt: unbounded
};

struct Link {
  NodeId a = 0;  // a < b
  NodeId b = 0;
  std::optional<std::uint32_t> capacity;

  bool unbounded() const { return !capacity.has_value(); }
  bool touches(NodeId n) const { return n == a || n == b; }
  NodeId other(NodeId n) const { return n == a ? b : a; }
};

struct EdgeId {
  LinkId link = 0;
  std::uint32_t ordinal = 0;
  auto operator<=>(const EdgeId&) const = default;
};

struct Adjacent {
  NodeId node;
  LinkId link;
};

class Graph {
 public:
  Graph() = default;

  Graph(std::vector<std::string> names, const std::vector<LinkSpec>& links) {
    std::sort(names.begin(), names.end());
    if (auto dup = std::adjacent_find(names.begin(), names.end()); dup != names.end())
      throw GraphError("duplicate node '" + *dup + "'");
    for (const auto& n : names) check_name(n);
    names_ = std::move(names);
    adjacency_.resize(names_.size());
    for (const auto& spec : links) {
      auto u = find(spec.u);
      auto v = find(spec.v);
      if (!u) throw GraphError("unknown node '" + spec.u + "' in link");
      if (!v) throw GraphError("unknown node '" + spec.v + "' in link");
      if (*u == *v) throw GraphError("self-loop link at '" + spec.u + "'");
      if (spec.capacity && *spec.capacity == 0) throw GraphError("link capacity must be positive");
      Link link{std::min(*u, *v), std::max(*u, *v), spec.capacity};
      if (!link_index_.emplace(std::pair{link.a, link.b}, 0).second)
        throw GraphError("duplicate link " + spec.u + " " + spec.v);
      links_.push_back(link);
    }
    // Link ids follow (a, b) order so iteration is name-deterministic.
    std::sort(links_.begin(), links_.end(),
              [](const Link& x, const Link& y) { return std::pair{x.a, x.b} < std::pair{y.a, y.b}; });
    for (LinkId id = 0; id < links_.size(); ++id) {
      const auto& l = links_[id];
      link_index_[{l.a, l.b}] = id;
      adjacency_[l.a].push_back({l.b, id});
      adjacency_[l.b].push_back({l.a, id});
    }
    for (auto& adj : adjacency_)
      std::sort(adj.begin(), adj.end(), [](const Adjacent& x, const Adjacent& y) { return x.node < y.node; });
  }

  std::size_t node_count() const { return names_.size(); }
  std::size_t link_count() const { return links_.size(); }

  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(NodeId n) const { return names_.at(n); }

  std::optional<NodeId> find(std::string_view name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) return std::nullopt;
    return static_cast<NodeId>(it - names_.begin());
  }

  NodeId id(std::string_view name) const {
    if (auto n = find(name)) return *n;
    throw GraphError("unknown node '" + std::string(name) + "'");
  }

  const std::vector<Link>& links() const { return links_; }
  const Link& link(LinkId id) const { return links_.at(id); }

  std::optional<LinkId> link_between(NodeId u, NodeId v) const {
    auto it = link_index_.find({std::min(u, v), std::max(u, v)});
    if (it == link_index_.end()) return std::nullopt;
    return it->second;
  }

  /// Neighbors of `n` in increasing node order.
  std::span<const Adjacent> neighbors(NodeId n) const { return adjacency_.at(n); }

  static void check_name(std::string_view n) {
    if (n.empty()) throw GraphError("empty node id");
    for (char c : n)
      if (std::isspace(static_cast<unsigned char>(c)) || c == '#' || c == '|' || c == '~')
        throw GraphError("node id '" + std::string(n) + "' contains a reserved character");
  }

 private:
  std::vector<std::string> names_;
  std::vector<Link> links_;
  std::map<std::pair<NodeId, NodeId>, LinkId> link_index_;
  std::vector<std::vector<Adjacent>> adjacency_;
};

// ---------------------------------------------------------------------------
// Edge materialization

enum class EdgeRole : std::uint8_t { free, working, protection };

/// Per-link pools of materialized edges. Ordinals are dense: a link with k
/// materialized edges holds ordinals 0..k-1.
class EdgeRegistry {
 public:
  EdgeRegistry() = default;
  explicit EdgeRegistry(const Graph& g) : roles_(g.link_count()) {
    for (LinkId l = 0; l < g.link_count(); ++l) capacity_.push_back(g.link(l).capacity);
  }

  std::uint32_t materialized(LinkId l) const { return static_cast<std::uint32_t>(roles_.at(l).size()); }

  bool has_free_capacity(LinkId l) const {
    return !capacity_.at(l) || materialized(l) < *capacity_[l];
  }

  /// The edge that the next materialization on `l` would create.
  EdgeId next_fresh(LinkId l) const { return {l, materialized(l)}; }

  bool exists(EdgeId e) const { return e.link < roles_.size() && e.ordinal < roles_[e.link].size(); }

  EdgeRole role(EdgeId e) const { return exists(e) ? roles_[e.link][e.ordinal] : EdgeRole::free; }

  EdgeId materialize(LinkId l, EdgeRole role) {
    if (!has_free_capacity(l)) throw GraphError("capacity exceeded on link " + std::to_string(l));
    roles_.at(l).push_back(role);
    return {l, materialized(l) - 1};
  }

  /// free -> working | protection; any other transition is rejected.
  void assign(EdgeId e, EdgeRole role) {
    auto& slot = roles_.at(e.link).at(e.ordinal);
    if (slot != EdgeRole::free && slot != role) throw GraphError("illegal edge role transition");
    slot = role;
  }

  std::size_t count(EdgeRole role) const {
    std::size_t n = 0;
    for (const auto& pool : roles_) n += static_cast<std::size_t>(std::count(pool.begin(), pool.end(), role));
    return n;
  }

 private:
  std::vector<std::vector<EdgeRole>> roles_;
  std::vector<std::optional<std::uint32_t>> capacity_;
};

// ---------------------------------------------------------------------------
// Walks

/// (v0, e1, v1, ..., en, vn). `nodes.size() == edges.size() + 1` for any
/// well-formed walk.
struct Walk {
  std::vector<NodeId> nodes;
  std::vector<EdgeId> edges;

  std::size_t length() const { return edges.size(); }
  NodeId front() const { return nodes.front(); }
  NodeId back() const { return nodes.back(); }

  Walk reversed() const {
    return {{nodes.rbegin(), nodes.rend()}, {edges.rbegin(), edges.rend()}};
  }

  /// Interior nodes v1..v(n-1).
  std::span<const NodeId> interior() const {
    if (nodes.size() < 2) return {};
    return std::span<const NodeId>(nodes).subspan(1, nodes.size() - 2);
  }

  bool operator==(const Walk&) const = default;
};

enum class WalkKind { walk, closed_walk, trail, closed_trail, path };

inline bool is_trail(WalkKind k) { return k == WalkKind::trail || k == WalkKind::closed_trail || k == WalkKind::path; }
inline bool is_path(WalkKind k) { return k == WalkKind::path; }

inline const char* to_string(WalkKind k) {
  switch (k) {
    case WalkKind::walk: return "walk";
    case WalkKind::closed_walk: return "closed-walk";
    case WalkKind::trail: return "trail";
    case WalkKind::closed_trail: return "closed-trail";
    case WalkKind::path: return "path";
  }
  return "?";
}

inline bool is_valid_walk(const Graph& g, const Walk& w) {
  if (w.nodes.empty() || w.nodes.size() != w.edges.size() + 1) return false;
  for (NodeId n : w.nodes)
    if (n >= g.node_count()) return false;
  for (std::size_t i = 0; i < w.edges.size(); ++i) {
    if (w.edges[i].link >= g.link_count()) return false;
    const Link& l = g.link(w.edges[i].link);
    if (!(l.touches(w.nodes[i]) && l.other(w.nodes[i]) == w.nodes[i + 1])) return false;
  }
  return true;
}

template <typename T>
bool all_distinct(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

/// Most specific kind. A path is also a trail and a walk; a single node is a
/// path of length 0.
inline WalkKind classify(const Walk& w) {
  if (all_distinct(w.nodes)) return WalkKind::path;
  const bool closed = w.nodes.front() == w.nodes.back();
  if (all_distinct(w.edges)) return closed ? WalkKind::closed_trail : WalkKind::trail;
  return closed ? WalkKind::closed_walk : WalkKind::walk;
}

enum class Disjointness { edge, link, node };

inline const char* to_string(Disjointness m) {
  switch (m) {
    case Disjointness::edge: return "edge";
    case Disjointness::link: return "link";
    case Disjointness::node: return "node";
  }
  return "?";
}

inline std::optional<Disjointness> parse_disjointness(std::string_view s) {
  if (s == "edge") return Disjointness::edge;
  if (s == "link") return Disjointness::link;
  if (s == "node") return Disjointness::node;
  return std::nullopt;
}

namespace detail {
template <typename T>
bool intersects(std::vector<T> a, std::vector<T> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else return true;
  }
  return false;
}

inline std::vector<LinkId> links_of(const Walk& w) {
  std::vector<LinkId> out;
  out.reserve(w.edges.size());
  for (const auto& e : w.edges) out.push_back(e.link);
  return out;
}
}  // namespace detail

/// Node-disjoint means link-disjoint and no interior node of either walk
/// appears anywhere on the other one.
inline bool disjoint(const Walk& w1, const Walk& w2, Disjointness mode) {
  if (mode == Disjointness::edge) return !detail::intersects(w1.edges, w2.edges);
  if (detail::intersects(detail::links_of(w1), detail::links_of(w2))) return false;
  if (mode == Disjointness::link) return true;
  auto in1 = w1.interior();
  auto in2 = w2.interior();
  return !detail::intersects(std::vector<NodeId>(in1.begin(), in1.end()), w2.nodes) &&
         !detail::intersects(std::vector<NodeId>(in2.begin(), in2.end()), w1.nodes);
}

// ---------------------------------------------------------------------------
// Shortest paths (unit cost per hop)

using LinkFilter = std::function<bool(LinkId)>;

inline bool any_link(LinkId) { return true; }

/// Hop distances from `src`; unreachable nodes get nullopt.
inline std::vector<std::optional<std::uint32_t>> bfs_distances(const Graph& g, NodeId src,
                                                               const LinkFilter& usable = any_link) {
  std::vector<std::optional<std::uint32_t>> dist(g.node_count());
  std::deque<NodeId> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    NodeId n = queue.front();
    queue.pop_front();
    for (const auto& adj : g.neighbors(n)) {
      if (dist[adj.node] || !usable(adj.link)) continue;
      dist[adj.node] = *dist[n] + 1;
      queue.push_back(adj.node);
    }
  }
  return dist;
}

/// Minimum-hop u-v path over usable links. Ties go to the neighbor that is
/// discovered first when scanning in node order.
inline std::optional<NodePath> shortest_path(const Graph& g, NodeId u, NodeId v,
                                             const LinkFilter& usable = any_link) {
  if (u == v) return NodePath{u};
  constexpr NodeId kNone = std::numeric_limits<NodeId>::max();
  std::vector<NodeId> parent(g.node_count(), kNone);
  std::deque<NodeId> queue{u};
  parent[u] = u;
  while (!queue.empty() && parent[v] == kNone) {
    NodeId n = queue.front();
    queue.pop_front();
    for (const auto& adj : g.neighbors(n)) {
      if (parent[adj.node] != kNone || !usable(adj.link)) continue;
      parent[adj.node] = n;
      queue.push_back(adj.node);
    }
  }
  if (parent[v] == kNone) return std::nullopt;
  NodePath path{v};
  while (path.back() != u) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

/// Every minimum-hop u-v path, in lexicographic node-sequence order.
inline std::vector<NodePath> all_shortest_paths(const Graph& g, NodeId u, NodeId v,
                                                const LinkFilter& usable = any_link) {
  auto to_v = bfs_distances(g, v, usable);
  std::vector<NodePath> out;
  if (!to_v[u]) return out;
  NodePath current{u};
  std::function<void(NodeId)> extend = [&](NodeId n) {
    if (n == v) {
      out.push_back(current);
      return;
    }
    for (const auto& adj : g.neighbors(n)) {
      if (!usable(adj.link) || !to_v[adj.node] || *to_v[adj.node] + 1 != *to_v[n]) continue;
      current.push_back(adj.node);
      extend(adj.node);
      current.pop_back();
    }
  };
  extend(u);
  return out;
}

/// Sum of hop distances over unordered node pairs.
inline std::uint64_t distance_sum(const Graph& g) {
  std::uint64_t total = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    auto dist = bfs_distances(g, s);
    for (NodeId t = s + 1; t < g.node_count(); ++t) {
      if (!dist[t]) throw GraphError("graph is disconnected");
      total += *dist[t];
    }
  }
  return total;
}

inline std::vector<LinkId> links_along(const Graph& g, const NodePath& p) {
  std::vector<LinkId> out;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    auto l = g.link_between(p[i], p[i + 1]);
    if (!l) throw GraphError("nodes " + g.name(p[i]) + " and " + g.name(p[i + 1]) + " are not adjacent");
    out.push_back(*l);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text formats

/// `u~v#k`, endpoints in node order.
inline std::string edge_name(const Graph& g, EdgeId e) {
  const Link& l = g.link(e.link);
  return g.name(l.a) + "~" + g.name(l.b) + "#" + std::to_string(e.ordinal);
}

inline std::optional<EdgeId> parse_edge_name(const Graph& g, std::string_view s) {
  auto tilde = s.find('~');
  auto hash = s.find('#');
  if (tilde == std::string_view::npos || hash == std::string_view::npos || hash < tilde) return std::nullopt;
  auto a = g.find(s.substr(0, tilde));
  auto b = g.find(s.substr(tilde + 1, hash - tilde - 1));
  if (!a || !b) return std::nullopt;
  auto link = g.link_between(*a, *b);
  if (!link) return std::nullopt;
  std::uint32_t ordinal = 0;
  auto digits = s.substr(hash + 1);
  if (digits.empty()) return std::nullopt;
  for (char c : digits) {
    if (c < '0' || c > '9') return std::nullopt;
    ordinal = ordinal * 10 + static_cast<std::uint32_t>(c - '0');
  }
  return EdgeId{*link, ordinal};
}

/// Nodes with per-hop ordinals: `A #0 E #1 B`.
inline std::string format_walk(const Graph& g, const Walk& w) {
  std::string out = g.name(w.nodes.front());
  for (std::size_t i = 0; i < w.edges.size(); ++i)
    out += " #" + std::to_string(w.edges[i].ordinal) + " " + g.name(w.nodes[i + 1]);
  return out;
}

inline std::string format_node_path(const Graph& g, const NodePath& p) {
  std::string out;
  for (NodeId n : p) {
    if (!out.empty()) out += ' ';
    out += g.name(n);
  }
  return out;
}

inline std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

/// Graph file: `# comment`, `node <id>`, `link <u> <v> [<capacity>|unbounded]`.
/// Lines may appear in any order.
inline Graph load_graph(std::string_view text) {
  std::vector<std::string> names;
  std::set<std::string> seen;
  std::vector<LinkSpec> links;
  std::vector<std::size_t> link_lines;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos && line.find_first_not_of(" \t") == hash) continue;
    auto words = split_words(line);
    if (words.empty()) continue;
    if (words[0] == "node") {
      if (words.size() != 2) throw ParseError(lineno, "expected 'node <id>'");
      try {
        Graph::check_name(words[1]);
      } catch (const GraphError& e) {
        throw ParseError(lineno, e.what());
      }
      if (!seen.insert(words[1]).second) throw ParseError(lineno, "duplicate node '" + words[1] + "'");
      names.push_back(words[1]);
    } else if (words[0] == "link") {
      if (words.size() != 3 && words.size() != 4)
        throw ParseError(lineno, "expected 'link <u> <v> [<capacity>|unbounded]'");
      LinkSpec spec{words[1], words[2], std::nullopt};
      if (words.size() == 4 && words[3] != "unbounded") {
        try {
          std::size_t used = 0;
          long long cap = std::stoll(words[3], &used);
          if (used != words[3].size() || cap <= 0 || cap > std::numeric_limits<std::uint32_t>::max())
            throw std::invalid_argument("capacity");
          spec.capacity = static_cast<std::uint32_t>(cap);
        } catch (const std::logic_error&) {
          throw ParseError(lineno, "bad capacity '" + words[3] + "'");
        }
      }
      if (spec.u == spec.v) throw ParseError(lineno, "self-loop link at '" + spec.u + "'");
      links.push_back(spec);
      link_lines.push_back(lineno);
    } else {
      throw ParseError(lineno, "unknown directive '" + words[0] + "'");
    }
  }
  // Per-line diagnostics for link errors, which need the full node set.
  std::set<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < links.size(); ++i) {
    const auto& l = links[i];
    if (!seen.count(l.u)) throw ParseError(link_lines[i], "unknown node '" + l.u + "'");
    if (!seen.count(l.v)) throw ParseError(link_lines[i], "unknown node '" + l.v + "'");
    if (!pairs.insert(std::minmax(l.u, l.v)).second)
      throw ParseError(link_lines[i], "duplicate link " + l.u + " " + l.v);
  }
  return Graph(std::move(names), links);
}

inline std::string format_graph(const Graph& g) {
  std::ostringstream out;
  for (const auto& n : g.names()) out << "node " << n << '\n';
  for (const auto& l : g.links()) {
    out << "link " << g.name(l.a) << ' ' << g.name(l.b);
    if (l.capacity) out << ' ' << *l.capacity;
    out << '\n';
  }
  return out.str();
}

}  // namespace pxt
