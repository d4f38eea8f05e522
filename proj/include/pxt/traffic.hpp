#pragma once

// Demand lists for the three traffic patterns, plus a reproducible shuffle.
//
// Shuffle algorithm (fixed so runs are reproducible across platforms):
//   engine  std::mt19937_64 seeded with the 64-bit seed (its output sequence
//           is fully specified by the C++ standard);
//   bounded draw of r in [0, n): draw x until x >= (2^64 - n) mod n, then
//           r = x mod n;
//   Fisher-Yates from the back: for i = size-1 down to 1, swap element i
//           with element r drawn in [0, i].

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pxt/errors.hpp"
#include "pxt/graph.hpp"
#include "pxt/plan.hpp"

namespace pxt {

enum class Pattern { uniform, neighbor, unbalanced };

inline const char* to_string(Pattern p) {
  switch (p) {
    case Pattern::uniform: return "uniform";
    case Pattern::neighbor: return "neighbor";
    case Pattern::unbalanced: return "unbalanced";
  }
  return "?";
}

inline std::optional<Pattern> parse_pattern(std::string_view s) {
  if (s == "uniform") return Pattern::uniform;
  if (s == "neighbor") return Pattern::neighbor;
  if (s == "unbalanced") return Pattern::unbalanced;
  return std::nullopt;
}

struct TrafficSpec {
  Pattern pattern = Pattern::uniform;
  std::uint32_t k = 5;  // uniform and neighbor multiplicity
  std::vector<std::string> large;
  std::uint32_t small_small = 2;
  std::uint32_t small_large = 8;
  std::uint32_t large_large = 14;
  std::optional<std::uint64_t> seed;

  static TrafficSpec uniform(std::uint32_t k = 5) { return {Pattern::uniform, k, {}, 2, 8, 14, std::nullopt}; }
  static TrafficSpec neighbor(std::uint32_t k = 10) { return {Pattern::neighbor, k, {}, 2, 8, 14, std::nullopt}; }
  static TrafficSpec unbalanced(std::vector<std::string> large, std::uint32_t ss = 2, std::uint32_t sl = 8,
                                std::uint32_t ll = 14) {
    return {Pattern::unbalanced, 0, std::move(large), ss, sl, ll, std::nullopt};
  }
};

/// Uniform integer in [0, n) from `eng`, without modulo bias.
inline std::uint64_t bounded(std::mt19937_64& eng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    std::uint64_t x = eng();
    if (x >= threshold) return x % n;
  }
}

inline void shuffle(std::vector<Demand>& demands, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  for (std::size_t i = demands.size(); i > 1; --i) {
    auto j = static_cast<std::size_t>(bounded(eng, i));
    std::swap(demands[i - 1], demands[j]);
  }
}

/// Multiplicity of the pair {u, v} under `spec`; 0 means no demand.
inline std::uint32_t multiplicity(const Graph& g, const TrafficSpec& spec, NodeId u, NodeId v,
                                  const std::vector<bool>& large) {
  switch (spec.pattern) {
    case Pattern::uniform: return spec.k;
    case Pattern::neighbor: return g.link_between(u, v) ? spec.k : 0;
    case Pattern::unbalanced: {
      const int n = int(large[u]) + int(large[v]);
      return n == 0 ? spec.small_small : n == 1 ? spec.small_large : spec.large_large;
    }
  }
  return 0;
}

/// Pairs in lexicographic order with copies consecutive; ids follow that
/// order. Shuffled afterwards when `spec.seed` is set.
inline std::vector<Demand> generate(const Graph& g, const TrafficSpec& spec) {
  std::vector<bool> large(g.node_count(), false);
  if (spec.pattern == Pattern::unbalanced) {
    if (spec.large.empty()) throw Error("unbalanced traffic needs a set of large nodes");
    for (const auto& name : spec.large) large[g.id(name)] = true;
  } else if (spec.k == 0) {
    throw Error("demand multiplicity must be positive");
  }
  std::vector<Demand> out;
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (NodeId v = u + 1; v < g.node_count(); ++v) {
      const auto copies = multiplicity(g, spec, u, v, large);
      for (std::uint32_t c = 0; c < copies; ++c) out.push_back({static_cast<std::uint32_t>(out.size()), u, v});
    }
  if (spec.seed) shuffle(out, *spec.seed);
  return out;
}

/// Sum of hop distances over all demands.
inline std::uint64_t working_bandwidth(const Graph& g, const std::vector<Demand>& demands) {
  std::vector<std::vector<std::optional<std::uint32_t>>> dist(g.node_count());
  std::uint64_t total = 0;
  for (const auto& d : demands) {
    if (dist[d.u].empty()) dist[d.u] = bfs_distances(g, d.u);
    if (!dist[d.u][d.v]) throw GraphError("demand terminals are disconnected");
    total += *dist[d.u][d.v];
  }
  return total;
}

/// First node triple (in name order) whose unbalanced traffic has the given
/// working bandwidth.
inline std::optional<std::vector<std::string>> find_large_nodes(const Graph& g, std::uint64_t target,
                                                                std::uint32_t ss = 2, std::uint32_t sl = 8,
                                                                std::uint32_t ll = 14) {
  const auto n = static_cast<NodeId>(g.node_count());
  std::vector<std::vector<std::uint32_t>> dist(n);
  for (NodeId s = 0; s < n; ++s)
    for (auto d : bfs_distances(g, s)) {
      if (!d) throw GraphError("graph is disconnected");
      dist[s].push_back(*d);
    }
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b)
      for (NodeId c = b + 1; c < n; ++c) {
        std::uint64_t total = 0;
        for (NodeId u = 0; u < n; ++u)
          for (NodeId v = u + 1; v < n; ++v) {
            const int k = int(u == a || u == b || u == c) + int(v == a || v == b || v == c);
            total += std::uint64_t(dist[u][v]) * (k == 0 ? ss : k == 1 ? sl : ll);
          }
        if (total == target) return std::vector<std::string>{g.name(a), g.name(b), g.name(c)};
      }
  return std::nullopt;
}

/// Traffic file: `demand <u> <v> <count>` lines, run-length encoded in list
/// order. Ids are not stored; parsing numbers demands from 0.
inline std::string format_traffic(const Graph& g, const std::vector<Demand>& demands) {
  std::ostringstream out;
  for (std::size_t i = 0; i < demands.size();) {
    std::size_t j = i;
    while (j < demands.size() && demands[j].u == demands[i].u && demands[j].v == demands[i].v) ++j;
    out << "demand " << g.name(demands[i].u) << ' ' << g.name(demands[i].v) << ' ' << (j - i) << '\n';
    i = j;
  }
  return out.str();
}

inline std::vector<Demand> parse_traffic(const Graph& g, std::string_view text) {
  std::vector<Demand> out;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    auto words = split_words(line);
    if (words.empty() || words[0][0] == '#') continue;
    if (words.size() != 4 || words[0] != "demand") throw ParseError(lineno, "expected 'demand <u> <v> <count>'");
    auto u = g.find(words[1]);
    auto v = g.find(words[2]);
    if (!u) throw ParseError(lineno, "unknown node '" + words[1] + "'");
    if (!v) throw ParseError(lineno, "unknown node '" + words[2] + "'");
    if (*u == *v) throw ParseError(lineno, "demand terminals must differ");
    std::uint32_t count = 0;
    try {
      std::size_t used = 0;
      long long c = std::stoll(words[3], &used);
      if (used != words[3].size() || c <= 0 || c > 1'000'000) throw std::invalid_argument("count");
      count = static_cast<std::uint32_t>(c);
    } catch (const std::logic_error&) {
      throw ParseError(lineno, "bad count '" + words[3] + "'");
    }
    for (std::uint32_t c = 0; c < count; ++c) out.push_back({static_cast<std::uint32_t>(out.size()), *u, *v});
  }
  return out;
}

}  // namespace pxt
