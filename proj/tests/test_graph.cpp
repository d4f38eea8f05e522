#include <gtest/gtest.h>

#include <cstdint>
#include <deque>
#include <map>
#include <random>
#include <set>

#include "pxt/graph.hpp"
#include "pxt/topologies.hpp"
#include "test_util.hpp"

using namespace pxt;
using pxt::testing::walk;

namespace {

Graph walks_graph() { return load_graph(read_file(pxt::testing::data_path("walks.graph"))); }

// "C d D f E" -> walk tokens, mapping the fixture's edge letters to ordinals.
std::vector<std::string> tokens(const std::string& spec) {
  static const std::map<std::string, std::string> ordinal = {
      {"a", "0"}, {"b", "0"}, {"c", "0"}, {"d", "0"}, {"e", "0"}, {"f", "1"}};
  std::vector<std::string> out;
  for (const auto& w : split_words(spec)) out.push_back(ordinal.count(w) ? ordinal.at(w) : w);
  return out;
}

std::size_t girth(const Graph& g) {
  std::size_t best = SIZE_MAX;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    std::vector<int> dist(g.node_count(), -1);
    std::vector<NodeId> parent(g.node_count(), s);
    std::deque<NodeId> q{s};
    dist[s] = 0;
    while (!q.empty()) {
      NodeId n = q.front();
      q.pop_front();
      for (const auto& adj : g.neighbors(n)) {
        if (dist[adj.node] < 0) {
          dist[adj.node] = dist[n] + 1;
          parent[adj.node] = n;
          q.push_back(adj.node);
        } else if (parent[n] != adj.node) {
          best = std::min<std::size_t>(best, dist[n] + dist[adj.node] + 1);
        }
      }
    }
  }
  return best;
}

}  // namespace

TEST(LoadGraph, MinimalFileHasOneUnboundedLink) {
  Graph g = load_graph("node A\nnode B\nlink A B\n");
  EXPECT_EQ(g.node_count(), 2u);
  ASSERT_EQ(g.link_count(), 1u);
  EXPECT_TRUE(g.link(0).unbounded());
}

TEST(LoadGraph, CommentsCapacityAndOrderInsensitivity) {
  Graph g = load_graph("# header\nlink B A 3\n\nnode B\n  # indented comment\nnode A\nlink A C unbounded\nnode C\n");
  EXPECT_EQ(g.names(), (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(g.link(*g.link_between(g.id("A"), g.id("B"))).capacity, 3u);
  EXPECT_TRUE(g.link(*g.link_between(g.id("A"), g.id("C"))).unbounded());
}

TEST(LoadGraph, Errors) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      load_graph(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("node A\nlink A A\n"), 2u);           // self-loop
  EXPECT_EQ(line_of("node A\nnode B\nlink A B\nlink B A\n"), 4u);  // duplicate link
  EXPECT_EQ(line_of("node A\nlink A Z\n"), 2u);           // unknown node
  EXPECT_EQ(line_of("node A\nnode A\n"), 2u);             // duplicate node
  EXPECT_EQ(line_of("node A\nnode B\nlink A B 0\n"), 3u); // capacity must be positive
  EXPECT_EQ(line_of("edge A B\n"), 1u);
  EXPECT_EQ(line_of("node A~B\n"), 1u);
}

TEST(LoadGraph, FormatRoundTrip) {
  Graph g = load_graph("node X\nnode Y\nnode Z\nlink X Y 2\nlink Y Z\n");
  Graph h = load_graph(format_graph(g));
  EXPECT_EQ(format_graph(h), format_graph(g));
}

TEST(StandardTopology, LinkCounts) {
  const std::map<std::string, std::size_t> expected = {
      {"cycle12plus3", 15}, {"grid3x4", 17}, {"tietze", 18}, {"icosahedron", 30}, {"k66", 36}};
  for (const auto& [name, links] : expected) {
    Graph g = standard_topology(name);
    EXPECT_EQ(g.node_count(), 12u) << name;
    EXPECT_EQ(g.link_count(), links) << name;
    for (const auto& l : g.links()) EXPECT_TRUE(l.unbounded());
  }
}

TEST(StandardTopology, DistanceSums) {
  // Values from an independent breadth-first oracle.
  EXPECT_EQ(distance_sum(standard_topology("cycle12plus3")), 168u);
  EXPECT_EQ(distance_sum(standard_topology("grid3x4")), 154u);
  EXPECT_EQ(distance_sum(standard_topology("tietze")), 129u);
  EXPECT_EQ(distance_sum(standard_topology("icosahedron")), 108u);
  EXPECT_EQ(distance_sum(standard_topology("k66")), 96u);
}

TEST(StandardTopology, K66IsBipartiteWithGirthFour) {
  Graph g = standard_topology("k66");
  for (const auto& l : g.links()) EXPECT_NE(g.name(l.a)[0], g.name(l.b)[0]);
  EXPECT_EQ(girth(g), 4u);
}

TEST(StandardTopology, IcosahedronIsFiveRegular) {
  Graph g = standard_topology("icosahedron");
  for (NodeId n = 0; n < g.node_count(); ++n) EXPECT_EQ(g.neighbors(n).size(), 5u);
  EXPECT_EQ(girth(g), 3u);
}

TEST(StandardTopology, TietzeIsCubic) {
  Graph g = standard_topology("tietze");
  for (NodeId n = 0; n < g.node_count(); ++n) EXPECT_EQ(g.neighbors(n).size(), 3u);
}

TEST(StandardTopology, ShippedFixturesMatchBuiltIns) {
  for (auto name : {"cycle12plus3", "grid3x4", "tietze", "icosahedron", "k66"}) {
    Graph file = load_graph(read_file(pxt::testing::data_path(std::string(name) + ".graph")));
    EXPECT_EQ(format_graph(file), format_graph(standard_topology(name))) << name;
  }
}

TEST(StandardTopology, Errors) {
  EXPECT_THROW(standard_topology("petersen"), GraphError);
  EXPECT_THROW(standard_topology("murakami_kim"), GraphError);
  EXPECT_THROW(standard_topology("murakami_kim", "/nonexistent/mk.graph"), IoError);
  // The grid has 17 links, so it fails the 24-link check.
  EXPECT_THROW(standard_topology("murakami_kim", pxt::testing::data_path("grid3x4.graph")), GraphError);
}

TEST(Classify, Examples) {
  Graph g = walks_graph();
  EXPECT_EQ(classify(walk(g, tokens("C d D f E e D d C"))), WalkKind::closed_walk);
  EXPECT_EQ(classify(walk(g, tokens("C d D f E e D c B b C"))), WalkKind::closed_trail);
  EXPECT_EQ(classify(walk(g, tokens("A"))), WalkKind::path);
  EXPECT_EQ(classify(walk(g, tokens("A a B b C"))), WalkKind::path);
  EXPECT_EQ(classify(walk(g, tokens("A a B c D f E e D"))), WalkKind::trail);
}

TEST(Disjoint, Examples) {
  Graph g = walks_graph();
  auto de = walk(g, tokens("D e E"));
  auto df = walk(g, tokens("D f E"));
  EXPECT_TRUE(disjoint(de, df, Disjointness::edge));
  EXPECT_FALSE(disjoint(de, df, Disjointness::link));
  EXPECT_TRUE(disjoint(walk(g, tokens("A a B b C")), walk(g, tokens("E e D d C")), Disjointness::node));
  EXPECT_FALSE(disjoint(walk(g, tokens("A a B c D")), walk(g, tokens("C b B")), Disjointness::node));
  EXPECT_TRUE(disjoint(walk(g, tokens("A a B c D")), walk(g, tokens("C b B")), Disjointness::link));
}

TEST(Disjoint, HierarchyAndSymmetryOnRandomWalks) {
  Graph g = walks_graph();
  std::mt19937_64 rng(7);
  auto random_walk = [&]() {
    Walk w;
    w.nodes.push_back(static_cast<NodeId>(rng() % g.node_count()));
    const std::size_t len = rng() % 5;
    for (std::size_t i = 0; i < len; ++i) {
      auto adj = g.neighbors(w.nodes.back());
      const auto& pick = adj[rng() % adj.size()];
      const Link& l = g.link(pick.link);
      const std::uint32_t ord = l.capacity ? static_cast<std::uint32_t>(rng() % *l.capacity) : 0;
      w.edges.push_back({pick.link, ord});
      w.nodes.push_back(pick.node);
    }
    return w;
  };
  for (int i = 0; i < 2000; ++i) {
    Walk a = random_walk();
    Walk b = random_walk();
    ASSERT_TRUE(is_valid_walk(g, a));
    const auto k = classify(a);
    EXPECT_TRUE(!is_path(k) || is_trail(k));
    for (auto m : {Disjointness::edge, Disjointness::link, Disjointness::node})
      EXPECT_EQ(disjoint(a, b, m), disjoint(b, a, m));
    EXPECT_TRUE(!disjoint(a, b, Disjointness::node) || disjoint(a, b, Disjointness::link));
    EXPECT_TRUE(!disjoint(a, b, Disjointness::link) || disjoint(a, b, Disjointness::edge));
  }
}

TEST(ShortestPath, Examples) {
  Graph ico = standard_topology("icosahedron");
  auto p = shortest_path(ico, ico.id("i00"), ico.id("i11"));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->size(), 4u);
  Graph k = standard_topology("k66");
  EXPECT_EQ(shortest_path(k, k.id("a1"), k.id("a2"))->size(), 3u);
  EXPECT_EQ(shortest_path(k, k.id("a1"), k.id("a1"))->size(), 1u);
}

TEST(ShortestPath, MatchesBfsDistanceOnAllTopologies) {
  for (auto name : {"cycle12plus3", "grid3x4", "tietze", "icosahedron", "k66"}) {
    Graph g = standard_topology(name);
    for (NodeId u = 0; u < g.node_count(); ++u) {
      auto dist = bfs_distances(g, u);
      for (NodeId v = 0; v < g.node_count(); ++v) {
        auto p = shortest_path(g, u, v);
        ASSERT_TRUE(p);
        EXPECT_EQ(p->size() - 1, *dist[v]) << name;
        EXPECT_EQ(p->front(), u);
        EXPECT_EQ(p->back(), v);
        EXPECT_NO_THROW(links_along(g, *p));
      }
    }
  }
}

TEST(ShortestPath, FilterAndDisconnection) {
  Graph g = load_graph("node A\nnode B\nnode C\nlink A B\nlink B C\nlink A C\n");
  const LinkId ac = *g.link_between(g.id("A"), g.id("C"));
  auto p = shortest_path(g, g.id("A"), g.id("C"), [&](LinkId l) { return l != ac; });
  ASSERT_TRUE(p);
  EXPECT_EQ(format_node_path(g, *p), "A B C");
  EXPECT_FALSE(shortest_path(g, g.id("A"), g.id("C"), [](LinkId) { return false; }));
  Graph split = load_graph("node A\nnode B\nnode C\nlink A B\n");
  EXPECT_THROW(distance_sum(split), GraphError);
}

TEST(ShortestPath, AllShortestPathsAreLexicographic) {
  Graph g = standard_topology("grid3x4");
  auto all = all_shortest_paths(g, g.id("r0c0"), g.id("r2c3"));
  EXPECT_EQ(all.size(), 10u);  // C(5, 2) monotone lattice paths
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  EXPECT_EQ(*shortest_path(g, g.id("r0c0"), g.id("r2c3")), all.front());
}

TEST(EdgeText, NameRoundTrip) {
  Graph g = pxt::testing::figure2_graph();
  for (LinkId l = 0; l < g.link_count(); ++l) {
    EdgeId e{l, 3};
    EXPECT_EQ(parse_edge_name(g, edge_name(g, e)), e);
  }
  EXPECT_FALSE(parse_edge_name(g, "A~C"));
  EXPECT_FALSE(parse_edge_name(g, "B~C#0"));
  EXPECT_EQ(format_walk(g, walk(g, {"A", "0", "E", "2", "B"})), "A #0 E #2 B");
}

TEST(EdgeRegistry, CapacityAndRoles) {
  Graph g = load_graph("node A\nnode B\nlink A B 2\n");
  EdgeRegistry r(g);
  EXPECT_TRUE(r.has_free_capacity(0));
  EXPECT_EQ(r.materialize(0, EdgeRole::working), (EdgeId{0, 0}));
  EXPECT_EQ(r.next_fresh(0), (EdgeId{0, 1}));
  r.materialize(0, EdgeRole::protection);
  EXPECT_FALSE(r.has_free_capacity(0));
  EXPECT_THROW(r.materialize(0, EdgeRole::working), GraphError);
  EXPECT_THROW(r.assign({0, 0}, EdgeRole::protection), GraphError);
  EXPECT_EQ(r.count(EdgeRole::working), 1u);
  EXPECT_EQ(r.count(EdgeRole::protection), 1u);
}
