#pragma once

#include <string>
#include <vector>

#include "gcx/graph_core.hpp"
#include "gcx/partitions.hpp"
#include "gcx/raag_algebra.hpp"

namespace gcx::testing {

// The running example: vertices a..f, edges e-a, a-c, a-d, c-b, d-b, b-f.
inline SimplicialGraph figure4() {
  return SimplicialGraph({"a", "b", "c", "d", "e", "f"},
                         {{"e", "a"},
                          {"a", "c"},
                          {"a", "d"},
                          {"c", "b"},
                          {"d", "b"},
                          {"b", "f"}});
}

inline SimplicialGraph free2() {
  return SimplicialGraph({"x", "y"}, {});
}

inline SimplicialGraph free_group(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, 'a' + i));
  return SimplicialGraph(names, {});
}

inline SimplicialGraph complete(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, 'p' + i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({names[i], names[j]});
  return SimplicialGraph(names, edges);
}

// one edge a-b plus an isolated vertex z
inline SimplicialGraph edge_plus_point() {
  return SimplicialGraph({"a", "b", "z"}, {{"a", "b"}});
}

// discrete {x,y} next to an edge a-b (the §5 example graph)
inline SimplicialGraph free2_plus_edge() {
  return SimplicialGraph({"a", "b", "x", "y"}, {{"a", "b"}});
}

inline int S(const SimplicialGraph& g, const std::string& name) {
  bool neg = name.size() > 3 && name.substr(name.size() - 3) == "^-1";
  std::string base = neg ? name.substr(0, name.size() - 3) : name;
  return sv(g.index(base), neg);
}

inline SSet sset(const SimplicialGraph& g,
                 const std::vector<std::string>& names) {
  SSet out = 0;
  for (const auto& n : names) out |= SSet(1) << S(g, n);
  return out;
}

inline VSet vset(const SimplicialGraph& g,
                 const std::vector<std::string>& names) {
  VSet out = 0;
  for (const auto& n : names) out |= VSet(1) << g.index(n);
  return out;
}

inline WhiteheadPartition part(const SimplicialGraph& g,
                               const std::vector<std::string>& link,
                               const std::vector<std::string>& side1,
                               const std::vector<std::string>& side2) {
  WhiteheadPartition p{sset(g, link), sset(g, side1), sset(g, side2)};
  p.canonicalize();
  return p;
}

inline Word W(const SimplicialGraph& g, const std::string& s) {
  return word_from_string(g, s);
}

// All non-isomorphic simplicial graphs on 1..max_n vertices (canonical
// representatives; single-character names starting at 'a').
std::vector<SimplicialGraph> small_graphs(int max_n);

// A fixed deterministic corpus of 50 graphs on <= 6 vertices including the
// figure-4 graph.
std::vector<SimplicialGraph> corpus50();

}  // namespace gcx::testing
