#pragma once

#include <string>
#include <vector>

#include "gcx/raag_algebra.hpp"

namespace gcx {

// Report of the two-condition invariance criterion:
//   (i)  x in Δ and lk(x) ⊆ lk(y) force y in Δ;
//   (ii) Δ meeting two components of Γ∖st(y) forces y in Δ.
struct InvariantSubgraphReport {
  VSet subgraph = 0;
  bool invariant = false;
  struct Violation {
    char condition;  // 'i' or 'j' meaning (i) / (ii)
    int x;           // witness inside Δ (a second-component witness for (ii))
    int y;
  };
  std::vector<Violation> violations;
};

InvariantSubgraphReport is_u0_invariant(const SimplicialGraph& g, VSet d);

// The full lattice of U⁰-invariant subgraphs, cached per graph.
struct InvariantPoset {
  std::vector<VSet> subgraphs;      // ascending as masks
  std::vector<int> longest_below;   // longest chain of invariants strictly
                                    // between ∅ and this entry
};
const InvariantPoset& invariant_poset(const SimplicialGraph& g,
                                      int budget = 16);

std::vector<VSet> u0_invariant_subgraphs(const SimplicialGraph& g,
                                         int budget = 16);
std::vector<VSet> minimal_invariant_subgraphs(const SimplicialGraph& g);

// Longest chain ∅ = Γ0 ⊊ Γ1 ⊊ ... ⊊ Γℓ ⊊ d of invariant subgraphs; d itself
// must be invariant.
int chain_length(const SimplicialGraph& g, VSet d);

// Restriction of a tagged U⁰ generator to an invariant subgraph, as an
// automorphism of A_Δ over the induced subgraph.
RaagAutomorphism restrict_generator(const SimplicialGraph& g,
                                    const TaggedGenerator& gen, VSet d);

std::string invariant_report_to_json(const SimplicialGraph& g,
                                     const InvariantSubgraphReport& r);
std::string invariant_poset_to_dot(const SimplicialGraph& g, int budget = 16);

}  // namespace gcx
