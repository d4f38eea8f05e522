#pragma once

// The six 12-node benchmark networks. Five are built in code; the Murakami &
// Kim network has no recoverable layout and must be supplied as a graph file
// (12 nodes, 24 links, distance sum 120).

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pxt/graph.hpp"

namespace pxt {

inline constexpr std::array<std::string_view, 6> kStandardTopologies = {
    "cycle12plus3", "grid3x4", "tietze", "murakami_kim", "icosahedron", "k66"};

inline bool is_standard_topology(std::string_view name) {
  return std::find(kStandardTopologies.begin(), kStandardTopologies.end(), name) != kStandardTopologies.end();
}

namespace detail {

inline std::string two_digit(const char* prefix, int i) {
  std::string s = prefix;
  if (i < 10) s += '0';
  return s + std::to_string(i);
}

inline Graph build(std::vector<std::string> names, const std::vector<std::pair<std::string, std::string>>& links) {
  std::vector<LinkSpec> specs;
  for (const auto& [u, v] : links) specs.push_back({u, v, std::nullopt});
  return Graph(std::move(names), specs);
}

// 12-cycle n00..n11 with chords n00-n03, n04-n07, n08-n11. This chord set has
// distance sum 168; it is the unique set up to rotation whose exact 1+1
// protection totals are 1440 (uniform) and 510 (neighbor).
inline Graph cycle12plus3() {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> links;
  for (int i = 0; i < 12; ++i) {
    names.push_back(two_digit("n", i));
    links.emplace_back(two_digit("n", i), two_digit("n", (i + 1) % 12));
  }
  links.emplace_back("n00", "n03");
  links.emplace_back("n04", "n07");
  links.emplace_back("n08", "n11");
  return build(names, links);
}

// 3 rows x 4 columns, nodes r<row>c<col>.
inline Graph grid3x4() {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> links;
  auto id = [](int r, int c) { return "r" + std::to_string(r) + "c" + std::to_string(c); };
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 4; ++c) {
      names.push_back(id(r, c));
      if (c + 1 < 4) links.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < 3) links.emplace_back(id(r, c), id(r + 1, c));
    }
  return build(names, links);
}

// Petersen graph (outer cycle 0-4, spokes i-(i+5), inner pentagram) with
// node 0 replaced by the triangle t0 t1 t2 attached to p1, p4, p5.
inline Graph tietze() {
  std::vector<std::string> names;
  for (int i = 1; i <= 9; ++i) names.push_back("p" + std::to_string(i));
  for (int i = 0; i < 3; ++i) names.push_back("t" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> links = {
      {"p1", "p2"}, {"p2", "p3"}, {"p3", "p4"},                              // outer cycle minus node 0
      {"p1", "p6"}, {"p2", "p7"}, {"p3", "p8"}, {"p4", "p9"},                // spokes
      {"p5", "p7"}, {"p5", "p8"}, {"p6", "p8"}, {"p6", "p9"}, {"p7", "p9"},  // pentagram
      {"t0", "p1"}, {"t1", "p4"}, {"t2", "p5"},                              // triangle attachments
      {"t0", "t1"}, {"t1", "t2"}, {"t0", "t2"}};
  return build(names, links);
}

// i00 top, i01-i05 upper ring, i06-i10 lower ring, i11 bottom.
inline Graph icosahedron() {
  std::vector<std::string> names;
  for (int i = 0; i < 12; ++i) names.push_back(two_digit("i", i));
  std::vector<std::pair<std::string, std::string>> links;
  for (int i = 1; i <= 5; ++i) {
    int next = i % 5 + 1;
    links.emplace_back("i00", two_digit("i", i));
    links.emplace_back(two_digit("i", i), two_digit("i", next));
    links.emplace_back(two_digit("i", 5 + i), two_digit("i", 5 + next));
    links.emplace_back("i11", two_digit("i", 5 + i));
    links.emplace_back(two_digit("i", i), two_digit("i", 5 + i));
    links.emplace_back(two_digit("i", i), two_digit("i", 5 + next));
  }
  return build(names, links);
}

// Sides a1..a6 and b1..b6.
inline Graph k66() {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> links;
  for (int i = 1; i <= 6; ++i) {
    names.push_back("a" + std::to_string(i));
    names.push_back("b" + std::to_string(i));
  }
  for (int i = 1; i <= 6; ++i)
    for (int j = 1; j <= 6; ++j) links.emplace_back("a" + std::to_string(i), "b" + std::to_string(j));
  return build(names, links);
}

}  // namespace detail

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Loads a Murakami & Kim data file and checks its published invariants.
inline Graph load_murakami_kim(const std::string& path) {
  Graph g = load_graph(read_file(path));
  if (g.node_count() != 12 || g.link_count() != 24)
    throw GraphError("murakami_kim data must have 12 nodes and 24 links");
  if (distance_sum(g) != 120) throw GraphError("murakami_kim data must have distance sum 120");
  return g;
}

/// `data_file` is only consulted for murakami_kim.
inline Graph standard_topology(std::string_view name, const std::string& data_file = {}) {
  if (name == "cycle12plus3") return detail::cycle12plus3();
  if (name == "grid3x4") return detail::grid3x4();
  if (name == "tietze") return detail::tietze();
  if (name == "icosahedron") return detail::icosahedron();
  if (name == "k66") return detail::k66();
  if (name == "murakami_kim") {
    if (data_file.empty()) throw GraphError("murakami_kim requires a data file");
    return load_murakami_kim(data_file);
  }
  throw GraphError("unknown topology '" + std::string(name) + "'");
}

/// Large-node sets for unbalanced traffic. Each reproduces the reference
/// unbalanced working bandwidth under the 2/8/14 weighting. Empty for
/// murakami_kim, whose set has to be searched on the supplied file.
inline std::vector<std::string> default_large_nodes(std::string_view name) {
  if (name == "cycle12plus3") return {"n00", "n03", "n04"};
  if (name == "grid3x4") return {"r1c0", "r1c1", "r1c2"};
  if (name == "tietze") return {"p1", "p4", "p5"};
  if (name == "icosahedron") return {"i00", "i01", "i02"};
  if (name == "k66") return {"a1", "a2", "a3"};
  return {};
}

}  // namespace pxt
