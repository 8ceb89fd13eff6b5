#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gcx/cube_blowup.hpp"
#include "gcx/invariance.hpp"

namespace gcx {

// The unique side of an outside-based partition that carries Δ.
struct DeltaSide {
  int side;  // 0 or 1
};
DeltaSide delta_side(const SimplicialGraph& g, const WhiteheadPartition& p,
                     VSet d);

// The invariant subcomplex K_Δ of a blowup, its restricted multiset Ω, the
// Δ-blowup Sa_Δ^Ω and the label-respecting isomorphism between them.
struct InvariantSubcomplex {
  std::vector<int> region_ids;  // ambient regions in K_Δ, ascending
  std::vector<int> edge_ids;    // ambient edges in K_Δ, ascending
  CubeComplex subcomplex;       // K_Δ extracted and reindexed
  std::vector<RestrictedPartition> omega;  // per inside-based entry, ambient
                                           // signed coordinates
  SimplicialGraph delta;        // induced subgraph on Δ
  BlowupComplex delta_blowup;   // Sa_Δ^Ω over `delta`
  CubicalMap iso;               // subcomplex -> delta_blowup.complex
};
InvariantSubcomplex invariant_subcomplex(const BlowupComplex& x, VSet d);

// K_Δ through an arbitrary blowup structure, as ambient vertex/edge subsets
// (the Prop. 5.4 comparison data).
struct SubcomplexSelection {
  std::vector<int> vertices;
  std::vector<int> edges;

  bool operator==(const SubcomplexSelection& o) const {
    return vertices == o.vertices && edges == o.edges;
  }
};
SubcomplexSelection invariant_subcomplex_via_structure(
    const CubeComplex& x, const Hyperplanes& h, const SimplicialGraph& g,
    const BlowupStructure& s, VSet d);

// Extendability of a Δ-partition (ambient signed coordinates) to Γ.
struct ExtendabilityReport {
  bool extendable = false;
  int base = -1;  // witness base when extendable
  struct BaseFailure {
    int m;
    int condition;  // 1 or 2
    int v1, v2;     // witnesses; v2 = -1 for condition 1
  };
  std::vector<BaseFailure> failures;
};
ExtendabilityReport is_extendable_partition(const SimplicialGraph& g, VSet d,
                                            const WhiteheadPartition& q);

enum class FreePlacement { WithBase, Opposite };
// Constructive extension; free components default to the side opposite the
// witness base. Errors when inextendable.
WhiteheadPartition extend_partition(const SimplicialGraph& g, VSet d,
                                    const WhiteheadPartition& q,
                                    FreePlacement policy = FreePlacement::Opposite);
// All extensions over all bases and free-component placements, deduplicated.
std::vector<WhiteheadPartition> extend_partition_all(const SimplicialGraph& g,
                                                     VSet d,
                                                     const WhiteheadPartition& q);

std::string extendability_report_to_json(const SimplicialGraph& g,
                                         const ExtendabilityReport& r);

// A finite group acting on a structured complex by cubical automorphisms.
struct ActionOnComplex {
  CubeComplex complex;
  Hyperplanes hyps;
  SimplicialGraph graph;
  BlowupStructure structure;
  std::vector<std::string> generator_names;
  std::vector<CubicalMap> generators;
  std::vector<CubicalMap> closure;  // the generated group, sorted
};
ActionOnComplex make_action(const CubeComplex& complex,
                            const SimplicialGraph& g,
                            const BlowupStructure& structure,
                            const std::vector<std::string>& names,
                            const std::vector<CubicalMap>& generators,
                            std::size_t closure_budget = 100000);

// Orbits of hyperplanes under the closure, each sorted, listed by least
// member.
std::vector<std::vector<int>> hyperplane_orbits(const ActionOnComplex& a);

struct ReducedReport {
  bool reduced = true;
  std::vector<int> witness_orbit;     // an orbit inside a treelike set
  std::vector<int> witness_treelike;  // the treelike set containing it
};
ReducedReport is_reduced_action(const ActionOnComplex& a);

// Repeatedly collapses the least collapsible orbit, switching the structure
// to a treelike set containing it first, until the action is reduced.
struct ReductionStep {
  std::vector<int> collapsed_orbit;
  BlowupStructure structure_before;   // on the pre-collapse complex
  CollapseResult collapse_data;
};
struct ReducedAction {
  ActionOnComplex action;
  std::vector<ReductionStep> steps;
};
ReducedAction reduce_action(const ActionOnComplex& a);

std::vector<int> separating_hyperplane_ids(const CubeComplex& x);
CollapseResult collapse_separating(const CubeComplex& x);

}  // namespace gcx
