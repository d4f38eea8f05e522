#pragma once

// Shared constrained-search fixtures: a brute-force oracle, random instance
// generators, the worked example network and the reflection grid family.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "pxt/cdijkstra.hpp"

namespace pxt::testing {

using cdijkstra::ArcId;
using cdijkstra::Node;
using Rg = cdijkstra::RivalGraph<std::int64_t>;

/// Minimum length of an admissible node-simple path from the source to
/// every node, by exhaustive depth-first enumeration.
inline std::vector<std::optional<std::int64_t>> brute_force(const Rg& g) {
  const Rg s = cdijkstra::symmetrize(g);
  std::vector<std::optional<std::int64_t>> best(s.node_count());
  std::vector<bool> on_path(s.node_count(), false);
  std::vector<int> forbidden(s.arcs().size(), 0);
  std::function<void(Node, std::int64_t)> dfs = [&](Node n, std::int64_t len) {
    if (!best[n] || len < *best[n]) best[n] = len;
    on_path[n] = true;
    for (ArcId a : s.out_arcs(n)) {
      const auto& arc = s.arc(a);
      if (on_path[arc.head] || forbidden[a]) continue;
      for (ArcId r : arc.rivals) ++forbidden[r];
      // An arc that is its own rival can never be used.
      if (!forbidden[a]) dfs(arc.head, len + arc.length);
      for (ArcId r : arc.rivals) --forbidden[r];
    }
    on_path[n] = false;
  };
  dfs(s.source(), 0);
  return best;
}

/// Classic Dijkstra, ignoring rivals.
inline std::vector<std::optional<std::int64_t>> plain_dijkstra(const Rg& g) {
  std::vector<std::optional<std::int64_t>> dist(g.node_count());
  using Item = std::pair<std::int64_t, Node>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  heap.push({0, g.source()});
  while (!heap.empty()) {
    auto [d, n] = heap.top();
    heap.pop();
    if (dist[n]) continue;
    dist[n] = d;
    for (ArcId a : g.out_arcs(n))
      if (!dist[g.arc(a).head]) heap.push({d + g.arc(a).length, g.arc(a).head});
  }
  return dist;
}

/// Random instance: up to `max_nodes` nodes, `max_arcs` arcs, `max_rivals`
/// rival pairs, lengths in [0, 9]. Most rival pairs join arcs that lie on
/// unconstrained shortest paths, so the rivalry usually matters.
inline Rg random_instance(std::mt19937_64& rng, std::size_t max_nodes, std::size_t max_arcs, std::size_t max_rivals) {
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  const std::size_t n = pick(2, max_nodes);
  Rg g(n, static_cast<Node>(pick(0, n - 1)));
  const std::size_t m = pick(std::min(max_arcs, 2 * n), max_arcs);
  for (std::size_t i = 0; i < m; ++i) {
    Node a = static_cast<Node>(pick(0, n - 1));
    Node b = static_cast<Node>(pick(0, n - 1));
    if (a == b) b = static_cast<Node>((b + 1) % n);
    g.add_arc(a, b, static_cast<std::int64_t>(pick(0, 9)));
  }
  const auto dist = plain_dijkstra(g);
  std::vector<ArcId> tight;
  for (ArcId a = 0; a < m; ++a) {
    const auto& arc = g.arc(a);
    if (dist[arc.tail] && dist[arc.head] && *dist[arc.tail] + arc.length == *dist[arc.head]) tight.push_back(a);
  }
  const std::size_t r = pick(max_rivals / 2, max_rivals);
  for (std::size_t i = 0; i < r; ++i) {
    const bool focused = tight.size() >= 2 && pick(0, 9) < 7;
    ArcId x = focused ? tight[pick(0, tight.size() - 1)] : static_cast<ArcId>(pick(0, m - 1));
    ArcId y = focused ? tight[pick(0, tight.size() - 1)] : static_cast<ArcId>(pick(0, m - 1));
    if (x != y) g.add_rival(x, y);
  }
  return g;
}

/// Worked example network v1..v6 with arcs e1..e11; e4/e6 and e11/{e1,e5}
/// are rivals (given one way; solve symmetrizes).
inline Rg figure5() {
  Rg g(6, 0);
  for (Node i = 0; i < 6; ++i) g.set_node_name(i, "v" + std::to_string(i + 1));
  const std::vector<std::tuple<int, int, int>> arcs = {
      {1, 2, 5}, {2, 3, 1}, {1, 4, 1}, {1, 5, 0}, {6, 3, 3}, {5, 2, 1},
      {2, 6, 4}, {5, 4, 1}, {4, 5, 0}, {3, 4, 1}, {5, 6, 2}};
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    auto [t, h, l] = arcs[i];
    g.add_arc(static_cast<Node>(t - 1), static_cast<Node>(h - 1), l, "e" + std::to_string(i + 1));
  }
  g.add_rival(3, 5);   // e4 - e6
  g.add_rival(10, 0);  // e11 - e1
  g.add_rival(10, 4);  // e11 - e5
  return g;
}

/// Reflection grid G_n: nodes (x, y) with |x|, |y| <= n, unit arcs going
/// south and west, source (n, n). Each arc's rival is its mirror image under
/// (x, y) -> (-y, -x), oriented south or west.
struct RivalGrid {
  std::int64_t n;
  Rg graph;

  Node node(std::int64_t x, std::int64_t y) const {
    const std::int64_t side = 2 * n + 1;
    return static_cast<Node>((x + n) * side + (y + n));
  }
};

inline RivalGrid rival_grid(std::int64_t n) {
  const std::int64_t side = 2 * n + 1;
  RivalGrid grid{n, Rg(static_cast<std::size_t>(side * side), 0)};
  grid.graph.set_source(grid.node(n, n));
  auto in = [&](std::int64_t v) { return v >= -n && v <= n; };
  // south[(x,y)] / west[(x,y)]: arc leaving (x,y).
  std::vector<std::optional<ArcId>> south(side * side), west(side * side);
  for (std::int64_t x = -n; x <= n; ++x)
    for (std::int64_t y = -n; y <= n; ++y) {
      const Node from = grid.node(x, y);
      grid.graph.set_node_name(from, "(" + std::to_string(x) + "," + std::to_string(y) + ")");
      if (in(y - 1)) south[from] = grid.graph.add_arc(from, grid.node(x, y - 1), 1);
      if (in(x - 1)) west[from] = grid.graph.add_arc(from, grid.node(x - 1, y), 1);
    }
  for (std::int64_t x = -n; x <= n; ++x)
    for (std::int64_t y = -n; y <= n; ++y) {
      const Node from = grid.node(x, y);
      // South (x,y)->(x,y-1) mirrors to (-y,-x)->(-y+1,-x), i.e. the west
      // arc leaving (-y+1,-x).
      if (south[from] && in(-y + 1)) grid.graph.add_rival(*south[from], *west[grid.node(-y + 1, -x)]);
      // West (x,y)->(x-1,y) mirrors to (-y,-x)->(-y,-x+1), i.e. the south
      // arc leaving (-y,-x+1).
      if (west[from] && in(-x + 1)) grid.graph.add_rival(*west[from], *south[grid.node(-y, -x + 1)]);
    }
  return grid;
}

/// True when no two arcs of the path are rivals and no node repeats.
inline bool admissible(const Rg& g, const std::vector<Node>& nodes, const std::vector<ArcId>& arcs) {
  std::vector<Node> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (ArcId a : arcs)
    for (ArcId r : g.arc(a).rivals)
      if (std::find(arcs.begin(), arcs.end(), r) != arcs.end()) return false;
  for (std::size_t i = 0; i < arcs.size(); ++i)
    if (g.arc(arcs[i]).tail != nodes[i] || g.arc(arcs[i]).head != nodes[i + 1]) return false;
  return true;
}

}  // namespace pxt::testing
