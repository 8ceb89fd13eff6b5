#pragma once

#include <optional>
#include <vector>

#include "gcx/graph_core.hpp"

namespace gcx {

// A Γ-Whitehead partition (lk(P) | side1 | side2) of V±, stored in canonical
// form: side1 is the side containing the least split vertex with positive
// sign. Singleton partitions (one side a single element) are representable;
// `proper()` distinguishes them.
struct WhiteheadPartition {
  SSet link = 0;
  SSet side1 = 0;
  SSet side2 = 0;

  SSet side(int i) const { return i == 0 ? side1 : side2; }
  // Vertices split by the partition: v in one side, v^-1 in the other.
  SSet split_set() const;
  // Base vertices as a plain vertex mask: split and link equal to lk±.
  VSet bases(const SimplicialGraph& g) const;
  int first_base(const SimplicialGraph& g) const;
  // Side index (0/1) containing the signed vertex, -1 if it is in the link.
  int side_of(int signed_vertex) const;
  bool proper() const { return popcount(side1) >= 2 && popcount(side2) >= 2; }
  bool is_singleton() const { return !proper(); }

  void canonicalize();

  auto key() const { return std::tie(link, side1, side2); }
  bool operator==(const WhiteheadPartition& o) const { return key() == o.key(); }
  bool operator<(const WhiteheadPartition& o) const { return key() < o.key(); }
};

// Full validity check against the definition. Singleton-type partitions pass
// iff allow_singleton; degenerate triples never pass.
bool is_valid_partition(const SimplicialGraph& g, const WhiteheadPartition& p,
                        bool allow_singleton = false,
                        std::string* why = nullptr);
void validate_partition(const SimplicialGraph& g, const WhiteheadPartition& p,
                        bool allow_singleton = false);

// All Γ-partitions based at x, canonical order. Each appears once.
std::vector<WhiteheadPartition> partitions_based_at(const SimplicialGraph& g,
                                                    int x);
// Union over all vertices, deduplicated, canonical order.
std::vector<WhiteheadPartition> all_partitions(const SimplicialGraph& g);

// S_{v^-1} = (lk±(v) | {v^-1} | rest). Errors when side2 would be empty.
WhiteheadPartition singleton_partition(const SimplicialGraph& g, int v);

bool adjacent(const SimplicialGraph& g, const WhiteheadPartition& p,
              const WhiteheadPartition& q);
bool compatible(const SimplicialGraph& g, const WhiteheadPartition& p,
                const WhiteheadPartition& q);

// An ordered multiset of pairwise compatible partitions; duplicates and
// singletons allowed. Entries are kept canonically sorted.
struct PartitionMultiset {
  std::vector<WhiteheadPartition> entries;

  PartitionMultiset() = default;
  explicit PartitionMultiset(std::vector<WhiteheadPartition> es);

  std::size_t size() const { return entries.size(); }
  bool operator==(const PartitionMultiset& o) const {
    return entries == o.entries;
  }
};

// Validates pairwise compatibility; the error names the offending pair.
void validate_multiset(const SimplicialGraph& g, const PartitionMultiset& pi,
                       bool allow_singletons_and_duplicates = true);

// A compatible collection: distinct proper entries.
PartitionMultiset make_collection(const SimplicialGraph& g,
                                  std::vector<WhiteheadPartition> es);

// All cliques of size <= max_size in the compatibility graph, including the
// empty one, ordered by size then lexicographic entry indices.
std::vector<PartitionMultiset> enumerate_compatible_collections(
    const SimplicialGraph& g, int max_size, int threads = 1);

// Restriction of p to the induced subgraph on d (as signed sets over the same
// ambient index space). `trivial` flags a side reduced to a single element.
struct RestrictedPartition {
  WhiteheadPartition partition;
  bool trivial = false;
};
RestrictedPartition restrict_partition(const SimplicialGraph& g,
                                       const WhiteheadPartition& p, VSet d);

// Reindexes a partition over Γ restricted to Δ into the coordinate space of
// the induced subgraph on Δ (whose vertex order is inherited).
SimplicialGraph induced_subgraph(const SimplicialGraph& g, VSet d);
WhiteheadPartition reindex_to_subgraph(const SimplicialGraph& g, VSet d,
                                       const WhiteheadPartition& p);
WhiteheadPartition reindex_from_subgraph(const SimplicialGraph& g, VSet d,
                                         const WhiteheadPartition& q);

}  // namespace gcx
