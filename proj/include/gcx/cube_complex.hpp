#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gcx/common.hpp"

namespace gcx {

// Labels carried by edges of a complex. Vertex labels refer to generators of
// the ambient graph, entry labels to positions in a partition multiset.
// Plain edges come from amalgam skeletons before validation.
struct EdgeLabel {
  enum class Kind : std::uint8_t { Plain, Vertex, Entry };
  Kind kind = Kind::Plain;
  int index = -1;

  static EdgeLabel vertex(int v) { return {Kind::Vertex, v}; }
  static EdgeLabel entry(int i) { return {Kind::Entry, i}; }
  static EdgeLabel plain(int i = -1) { return {Kind::Plain, i}; }

  auto key() const { return std::tie(kind, index); }
  bool operator==(const EdgeLabel& o) const { return key() == o.key(); }
  bool operator<(const EdgeLabel& o) const { return key() < o.key(); }
};

// Darts are directed edge traversals: 2e = u->v (positive), 2e+1 = v->u.
inline int dart(int edge, bool back) { return 2 * edge + (back ? 1 : 0); }
inline int dart_edge(int d) { return d / 2; }
inline bool dart_back(int d) { return d & 1; }
inline int dart_reverse(int d) { return d ^ 1; }

// A square, stored at a canonical corner. Sides a,a2 are parallel in the same
// direction, likewise b,b2: a: c->x, b: c->y, a2: y->z, b2: x->z.
struct Square {
  int a, b, a2, b2;

  auto key() const { return std::tie(a, b, a2, b2); }
  bool operator==(const Square& o) const { return key() == o.key(); }
  bool operator<(const Square& o) const { return key() < o.key(); }
};

// The 2-skeleton of a special cube complex; higher cubes are implicit (one
// k-cube per k-clique of pairwise-squared edges at a corner), which is all
// the operations here need.
struct CubeComplex {
  struct Edge {
    int u = -1, v = -1;
    EdgeLabel label;
    bool oriented = false;  // positive dart u->v carries the label direction
  };

  int nv = 0;
  std::vector<Edge> edges;
  std::vector<Square> squares;

  int ne() const { return static_cast<int>(edges.size()); }
  int dart_tail(int d) const {
    return dart_back(d) ? edges[dart_edge(d)].v : edges[dart_edge(d)].u;
  }
  int dart_head(int d) const { return dart_tail(dart_reverse(d)); }
  bool is_loop(int e) const { return edges[e].u == edges[e].v; }

  // Rewrites a square at its minimal corner representation.
  Square canonical_square(Square s) const;
  void canonicalize_squares();

  // Structural sanity: endpoints in range, square incidences close up.
  void validate() const;
};

// Hyperplane structure derived from parallelism across squares.
struct Hyperplanes {
  std::vector<int> edge_class;        // edge -> hyperplane id (0..count-1)
  std::vector<std::vector<int>> duals;  // hyperplane -> dual edges, sorted
  int count = 0;
  // crossing[h1] contains h2 when some square pairs them.
  std::vector<std::vector<int>> crossing;
  bool two_sided = true;  // no dart parallel to its own reverse
  // Orientation classes: side[d] in {0,1} per dart, consistent across squares
  // within each hyperplane; side 0 contains the least dart of the class.
  std::vector<int> dart_side;

  bool crosses(int h1, int h2) const;
};
Hyperplanes hyperplanes(const CubeComplex& x);

// Collapses every hyperplane in `hs` (carrier onto hyperplane) and returns
// the quotient with vertex/dart maps; collapsed darts map to -1.
struct CollapseResult {
  CubeComplex complex;
  std::vector<int> vertex_map;
  std::vector<int> dart_map;
};
CollapseResult collapse(const CubeComplex& x, const std::vector<int>& edge_class,
                        const std::vector<bool>& collapse_class);
CollapseResult collapse_hyperplanes(const CubeComplex& x,
                                    const std::vector<int>& hyperplane_ids);

// A cubical map: vertex bijection plus dart bijection.
struct CubicalMap {
  std::vector<int> vertex_map;
  std::vector<int> dart_map;

  int map_dart(int d) const { return dart_map[d]; }
  bool operator==(const CubicalMap& o) const {
    return vertex_map == o.vertex_map && dart_map == o.dart_map;
  }
  bool operator<(const CubicalMap& o) const {
    return std::tie(vertex_map, dart_map) < std::tie(o.vertex_map, o.dart_map);
  }
};

CubicalMap compose(const CubeComplex& x, const CubicalMap& f,
                   const CubicalMap& g);  // f after g
CubicalMap inverse_map(const CubeComplex& x, const CubicalMap& f);
CubicalMap identity_map(const CubeComplex& x);
bool is_cubical_automorphism(const CubeComplex& x, const CubicalMap& f,
                             std::string* why = nullptr);

// Isomorphism search. With respect_labels, edge labels and orientations must
// match on the nose; otherwise the underlying complex alone is compared.
std::optional<CubicalMap> find_isomorphism(const CubeComplex& a,
                                           const CubeComplex& b,
                                           bool respect_labels);
std::vector<CubicalMap> find_isomorphisms(const CubeComplex& a,
                                          const CubeComplex& b,
                                          bool respect_labels,
                                          std::size_t limit = 0);
std::vector<CubicalMap> automorphism_group(const CubeComplex& x,
                                           bool respect_labels = false);

// Canonical labeling string of the unlabeled complex; equal strings for
// isomorphic complexes. Used to bucket combinatorial types.
std::string canonical_certificate(const CubeComplex& x);

// Separating hyperplanes: removing the open carrier disconnects the complex.
std::vector<int> separating_hyperplanes(const CubeComplex& x);

}  // namespace gcx
