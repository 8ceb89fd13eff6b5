#pragma once

#include <string>
#include <vector>

#include "gcx/restriction_extension.hpp"

namespace gcx {

// Γ = Γ₁ * Γ₂ with every cross pair adjacent.
struct JoinDecomposition {
  SimplicialGraph g;
  VSet part1 = 0, part2 = 0;
};
JoinDecomposition make_join(const SimplicialGraph& g, VSet part1);

// Lifts a partition of a join factor to a Γ-partition (the other factor goes
// into the link).
WhiteheadPartition lift_partition(const JoinDecomposition& j, int which_part,
                                  const WhiteheadPartition& p);

// The product blowup of two factor blowups.
BlowupComplex product_blowup(const BlowupComplex& x1, const BlowupComplex& x2,
                             const JoinDecomposition& j);

// Γ-amalgams: Γ = Γ₁ ⊔ ... ⊔ Γ_k ⊔ Λ with Λ discrete, assembled along a
// skeleton graph Z_Λ of rank |Λ|.
struct AttachPoint {
  int region = 0;  // base region of the cube
  // labels with coordinate 1/2 along the dart out of `region` (darts must
  // exist and commute pairwise); vertex labels by graph vertex id, entry
  // labels by multiset index
  std::vector<EdgeLabel> half;
};

struct SkeletonEdge {
  int from = 0, to = 0;  // Z_Λ vertices
  AttachPoint at_from, at_to;  // meaningful when the endpoint is labeled
};

struct AmalgamSpec {
  SimplicialGraph g;
  std::vector<VSet> components;  // Γ₁..Γ_k, pairwise disjoint, nonempty
  VSet lambda = 0;               // discrete remainder
  int skeleton_vertices = 0;
  std::vector<int> labeled;      // skeleton vertex -> component index or -1
  std::vector<SkeletonEdge> skeleton_edges;
};
void validate_amalgam_spec(const AmalgamSpec& spec);

struct AmalgamResult {
  CubeComplex complex;             // X_Γ after collapsing separating edges
  BlowupStructure structure;       // validated blowup structure
  RecoveredPartitions recovered;   // the Γ-partitions of the structure
  BlowupComplex rebuilt;           // build_blowup of the recovered multiset
};
AmalgamResult gamma_amalgam(const AmalgamSpec& spec,
                            const std::vector<BlowupComplex>& components);

std::string amalgam_spec_to_json(const AmalgamSpec& spec);
AmalgamSpec amalgam_spec_from_json(const std::string& text);

}  // namespace gcx
