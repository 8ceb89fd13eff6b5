#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcx/cube_complex.hpp"
#include "gcx/partitions.hpp"
#include "gcx/raag_algebra.hpp"

namespace gcx {

// The blowup S_Γ^Π of a compatible multiset Π. Regions are consistent side
// choices (0 = side1, 1 = side2 per entry), monotone within runs of equal
// entries so duplicate entries read as parallel walls. The labeled 2-skeleton
// lives in `complex`; higher cubes are implicit.
struct BlowupComplex {
  SimplicialGraph graph;
  PartitionMultiset pi;
  std::vector<std::vector<std::uint8_t>> regions;  // sorted lexicographically
  CubeComplex complex;
  Hyperplanes hyps;
  std::vector<int> entry_hyperplane;   // entry index -> hyperplane id
  std::vector<int> vertex_hyperplane;  // vertex -> hyperplane id

  int region_index(const std::vector<std::uint8_t>& r) const;
};

BlowupComplex salvetti(const SimplicialGraph& g);
BlowupComplex build_blowup(const SimplicialGraph& g, const PartitionMultiset& pi);

// A blowup structure on an abstract complex: a treelike set plus vertex
// labels and orientations for the remaining hyperplanes.
struct BlowupStructure {
  std::vector<bool> treelike;      // per hyperplane id
  std::vector<int> edge_vertex;    // per edge: generator label, -1 on treelike
  std::vector<bool> edge_forward;  // per edge: positive dart is 2e (u->v)

  std::vector<int> treelike_ids() const;
};

BlowupStructure canonical_structure(const BlowupComplex& x);

// Closed edge path (dart sequence) crossing each hyperplane at most once and
// collapsing to the v-loop; starts and ends at the base vertex 0.
std::vector<int> characteristic_cycle(const CubeComplex& x,
                                      const Hyperplanes& h,
                                      const BlowupStructure& s, int v);

// Cubical-iso test against the Salvetti complex of g.
bool isomorphic_to_salvetti(const CubeComplex& q, const SimplicialGraph& g);

bool is_treelike(const CubeComplex& x, const SimplicialGraph& g,
                 const std::vector<int>& hyperplane_ids);
std::vector<std::vector<int>> treelike_sets(const CubeComplex& x,
                                            const SimplicialGraph& g);

// All structures with the given treelike set: one per (generator assignment,
// orientation vector). `identity_labels_only` keeps only assignments matching
// existing vertex labels on the non-treelike hyperplanes, when present.
std::vector<BlowupStructure> enumerate_structures(
    const CubeComplex& x, const Hyperplanes& h, const SimplicialGraph& g,
    const std::vector<int>& treelike_set, bool identity_labels_only = false,
    std::size_t limit = 0);

// The partition-recovery procedure for a treelike set under a labeling.
struct RecoveredPartitions {
  PartitionMultiset multiset;
  // parallel arrays over the treelike hyperplanes, sorted by hyperplane id
  std::vector<int> hyperplane_ids;
  std::vector<WhiteheadPartition> hyperplane_partition;
};
RecoveredPartitions recover_partitions(const CubeComplex& x,
                                       const Hyperplanes& h,
                                       const SimplicialGraph& g,
                                       const BlowupStructure& s);

// Reads generator images off the pushed characteristic cycles; the result is
// verified invertible (inverse read from the inverse map).
RaagAutomorphism induced_outer_automorphism(const CubeComplex& x,
                                            const Hyperplanes& h,
                                            const SimplicialGraph& g,
                                            const BlowupStructure& s,
                                            const CubicalMap& f);

// Collapsing the hyperplane of one multiset entry; the result is the blowup
// of Π minus that entry, with the quotient maps.
struct PartitionCollapse {
  BlowupComplex result;
  std::vector<int> vertex_map;  // old region -> new region
  std::vector<int> dart_map;    // old dart -> new dart, -1 when erased
};
PartitionCollapse collapse_partition(const BlowupComplex& x, int entry_index);

// Maps an edge path through a collapse, dropping erased darts.
std::vector<int> map_path(const std::vector<int>& dart_map,
                          const std::vector<int>& path);

// Duplicating a hyperplane at the multiset level. For an entry hyperplane the
// multiset gains a duplicate copy; for a vertex hyperplane it gains the
// singleton S_{v^-1} (the terminal segment keeps the v label).
struct Duplication {
  BlowupComplex result;
  std::vector<int> vertex_map;          // old region -> new region
  std::vector<int> entry_map;           // old entry index -> new entry index
  std::map<int, int> midpoint_of_edge;  // old dual edge -> new region
};
Duplication duplicate_entry(const BlowupComplex& x, int entry_index);
Duplication duplicate_vertex_hyperplane(const BlowupComplex& x, int v);

// Enumerates all labeled-cubical automorphism-or-isomorphism data through the
// generic machinery; kept here for discoverability.
std::optional<CubicalMap> blowup_isomorphism(const BlowupComplex& a,
                                             const BlowupComplex& b);

}  // namespace gcx
