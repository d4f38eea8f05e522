#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <map>
#include <random>

#include "pxt/experiment.hpp"
#include "pxt/traffic.hpp"
#include "test_util.hpp"

using namespace pxt;
using namespace pxt::testing;

namespace {

const char* const kGraphs[] = {"cycle12plus3", "grid3x4", "tietze", "icosahedron", "k66"};

std::vector<std::pair<NodeId, NodeId>> pairs_of(const std::vector<Demand>& ds) {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (const auto& d : ds) out.emplace_back(d.u, d.v);
  return out;
}

}  // namespace

TEST(Generate, DemandCounts) {
  for (const char* name : kGraphs) {
    auto g = topology(name);
    EXPECT_EQ(generate(*g, TrafficSpec::uniform()).size(), 330u) << name;
    EXPECT_EQ(generate(*g, TrafficSpec::neighbor()).size(), 10 * g->link_count()) << name;
    EXPECT_EQ(generate(*g, TrafficSpec::unbalanced(default_large_nodes(name))).size(), 330u) << name;
  }
}

TEST(Generate, WorkingBandwidthMatchesReference) {
  for (const char* name : kGraphs) {
    auto g = topology(name);
    for (Pattern p : {Pattern::uniform, Pattern::neighbor, Pattern::unbalanced}) {
      auto spec = p == Pattern::uniform    ? TrafficSpec::uniform()
                  : p == Pattern::neighbor ? TrafficSpec::neighbor()
                                           : TrafficSpec::unbalanced(default_large_nodes(name));
      EXPECT_EQ(working_bandwidth(*g, generate(*g, spec)), reference_row(name, p)->working)
          << name << ' ' << to_string(p);
    }
  }
}

TEST(Generate, LexicographicWithConsecutiveCopies) {
  auto g = topology("tietze");
  auto ds = generate(*g, TrafficSpec::uniform(3));
  for (std::size_t i = 0; i < ds.size(); ++i) {
    EXPECT_EQ(ds[i].id, i);
    EXPECT_LT(ds[i].u, ds[i].v);
  }
  EXPECT_TRUE(std::is_sorted(ds.begin(), ds.end(), [](const Demand& a, const Demand& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  }));
}

TEST(Generate, UnbalancedMultiplicities) {
  auto g = topology("grid3x4");
  auto ds = generate(*g, TrafficSpec::unbalanced({"r1c0", "r1c1", "r1c2"}));
  std::map<std::pair<NodeId, NodeId>, int> count;
  for (const auto& d : ds) ++count[{d.u, d.v}];
  EXPECT_EQ((count[{g->id("r1c0"), g->id("r1c1")}]), 14);
  EXPECT_EQ((count[{g->id("r0c0"), g->id("r1c1")}]), 8);
  EXPECT_EQ((count[{g->id("r0c0"), g->id("r2c3")}]), 2);
}

TEST(Generate, Errors) {
  auto g = topology("k66");
  EXPECT_THROW(generate(*g, TrafficSpec::uniform(0)), Error);
  TrafficSpec spec;
  spec.pattern = Pattern::unbalanced;
  EXPECT_THROW(generate(*g, spec), Error);
  EXPECT_THROW(generate(*g, TrafficSpec::unbalanced({"zz"})), GraphError);
}

TEST(Shuffle, IsAPermutation) {
  auto g = topology("icosahedron");
  auto base = generate(*g, TrafficSpec::uniform());
  auto spec = TrafficSpec::uniform();
  spec.seed = 17;
  auto shuffled = generate(*g, spec);
  ASSERT_EQ(shuffled.size(), base.size());
  EXPECT_NE(shuffled, base);
  auto a = pairs_of(base), b = pairs_of(shuffled);
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
  std::vector<std::uint32_t> ids;
  for (const auto& d : shuffled) ids.push_back(d.id);
  std::sort(ids.begin(), ids.end());
  for (std::size_t i = 0; i < ids.size(); ++i) EXPECT_EQ(ids[i], i);
}

TEST(Shuffle, DeterministicPerSeed) {
  auto g = topology("cycle12plus3");
  auto spec = TrafficSpec::neighbor();
  spec.seed = 3;
  EXPECT_EQ(generate(*g, spec), generate(*g, spec));
  auto other = spec;
  other.seed = 4;
  EXPECT_NE(generate(*g, spec), generate(*g, other));
}

TEST(Shuffle, MatchesTextbookFisherYates) {
  std::vector<Demand> ds;
  for (std::uint32_t i = 0; i < 50; ++i) ds.push_back({i, i, i + 1});
  auto expected = ds;
  std::mt19937_64 eng(99);
  for (std::size_t i = expected.size() - 1; i > 0; --i) {
    // Rejection sampling for an unbiased index in [0, i].
    const std::uint64_t n = i + 1;
    constexpr std::uint64_t top = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = top - top % n;
    std::uint64_t x;
    do x = eng();
    while (x >= limit);
    std::swap(expected[i], expected[x % n]);
  }
  shuffle(ds, 99);
  // The two samplers reject different bands of fewer than n values, which
  // never come up for n <= 50.
  EXPECT_EQ(ds, expected);
}

TEST(Shuffle, BoundedIsRoughlyUniform) {
  std::mt19937_64 eng(1);
  std::vector<int> hist(6, 0);
  for (int i = 0; i < 60000; ++i) ++hist[bounded(eng, 6)];
  for (int h : hist) EXPECT_NEAR(h, 10000, 500);
  EXPECT_EQ(bounded(eng, 1), 0u);
}

TEST(TrafficFile, RoundTrip) {
  auto g = topology("tietze");
  auto spec = TrafficSpec::unbalanced(default_large_nodes("tietze"));
  auto ds = generate(*g, spec);
  const std::string text = format_traffic(*g, ds);
  EXPECT_EQ(text.substr(0, text.find('\n')), "demand p1 p2 8");
  EXPECT_EQ(parse_traffic(*g, text), ds);
  spec.seed = 5;
  auto shuffled = generate(*g, spec);
  auto back = parse_traffic(*g, format_traffic(*g, shuffled));
  EXPECT_EQ(pairs_of(back), pairs_of(shuffled));
}

TEST(TrafficFile, ErrorsCarryLineNumbers) {
  auto g = topology("k66");
  auto line_of = [&](const std::string& text) -> std::size_t {
    try {
      parse_traffic(*g, text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("# comment\n\ndemand a1 zz 1\n"), 3u);
  EXPECT_EQ(line_of("demand a1 b1 1\ndemand a1 a1 1\n"), 2u);
  EXPECT_EQ(line_of("demand a1 b1 0\n"), 1u);
  EXPECT_EQ(line_of("demand a1 b1 x\n"), 1u);
  EXPECT_EQ(line_of("demand a1 b1\n"), 1u);
  EXPECT_EQ(line_of("need a1 b1 2\n"), 1u);
  EXPECT_EQ(parse_traffic(*g, "demand b1 a1 2\n").size(), 2u);
}

TEST(LargeNodes, DefaultsReproduceReferenceWorking) {
  for (const char* name : kGraphs) {
    auto g = topology(name);
    auto found = find_large_nodes(*g, reference_row(name, Pattern::unbalanced)->working);
    ASSERT_TRUE(found) << name;
    auto ds = generate(*g, TrafficSpec::unbalanced(*found));
    EXPECT_EQ(working_bandwidth(*g, ds), reference_row(name, Pattern::unbalanced)->working);
  }
  EXPECT_FALSE(find_large_nodes(*topology("k66"), 1));
}

TEST(LargeNodes, SpecResolution) {
  LoadedGraph g{"grid3x4", topology("grid3x4")};
  EXPECT_EQ(traffic_spec(g, Pattern::unbalanced).large, default_large_nodes("grid3x4"));
  EXPECT_EQ(traffic_spec(g, Pattern::unbalanced, {"r0c0", "r0c1", "r0c2"}).large,
            (std::vector<std::string>{"r0c0", "r0c1", "r0c2"}));
  LoadedGraph custom{"mine", topology("grid3x4")};
  EXPECT_THROW(traffic_spec(custom, Pattern::unbalanced), Error);
  EXPECT_EQ(traffic_spec(custom, Pattern::neighbor).k, 10u);
}
