#pragma once

#include <string>
#include <vector>

#include "gcx/common.hpp"

namespace gcx {

// A finite simplicial graph with a fixed total vertex order (lexicographic in
// the vertex names, frozen at construction). All enumerations across the
// library iterate in this order.
class SimplicialGraph {
public:
  SimplicialGraph() = default;
  SimplicialGraph(std::vector<std::string> vertex_names,
                  const std::vector<std::pair<std::string, std::string>>& edges);

  int n() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int v) const { return names_.at(v); }
  int index(const std::string& name) const;  // Error on unknown name

  bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1u; }
  VSet adj_mask(int v) const { return adj_[v]; }
  VSet all_vertices() const {
    return n() == 32 ? ~VSet(0) : ((VSet(1) << n()) - 1);
  }
  SSet all_signed() const { return sset_of_vset(all_vertices()); }

  std::vector<std::pair<int, int>> edge_list() const;

  bool operator==(const SimplicialGraph& o) const {
    return names_ == o.names_ && adj_ == o.adj_;
  }

private:
  std::vector<std::string> names_;
  std::vector<VSet> adj_;
};

// lk(v): neighbors of v, never containing v itself.
VSet link(const SimplicialGraph& g, int v);
// st(v) = lk(v) + v.
VSet star(const SimplicialGraph& g, int v);
// lk(S) = intersection of the links over S; empty S gives all of V.
VSet link_of_set(const SimplicialGraph& g, VSet s);
// N(S) = S plus every vertex adjacent to S.
VSet neighborhood(const SimplicialGraph& g, VSet s);

// Connected components of the induced subgraph on s, in vertex order.
std::vector<VSet> components(const SimplicialGraph& g, VSet s);

// lk±(v) in the double Γ±: both signs of every neighbor.
SSet signed_link(const SimplicialGraph& g, int v);

// Adjacency in Γ±: distinct underlying vertices that are adjacent in Γ.
bool signed_adjacent(const SimplicialGraph& g, int a, int b);

// Connected components of Γ± minus `removed`, in signed-index order.
std::vector<SSet> components_double(const SimplicialGraph& g, SSet removed);

// Fold equivalence: equal links. Classes are ordered by link inclusion.
struct FoldClasses {
  std::vector<VSet> classes;       // partition of V, in vertex order
  std::vector<VSet> class_links;   // the common link of each class
  // leq[i][j]: link(class i) ⊆ link(class j)
  std::vector<std::vector<bool>> leq;
  std::vector<bool> maximal;
};
FoldClasses fold_classes(const SimplicialGraph& g);

// ---- ingestion / emission ----

SimplicialGraph graph_from_json(const std::string& text);
std::string graph_to_json(const SimplicialGraph& g);

// Restricted DOT subset: `graph name { a -- b; c; }`, undirected, no
// attributes.
SimplicialGraph graph_from_dot(const std::string& text);
std::string graph_to_dot(const SimplicialGraph& g);

// Reads either format, deciding by the first non-space character.
SimplicialGraph graph_from_text(const std::string& text);

std::string vset_to_string(const SimplicialGraph& g, VSet s);
std::string sset_to_string(const SimplicialGraph& g, SSet s);
std::string signed_name(const SimplicialGraph& g, int sv);

}  // namespace gcx
