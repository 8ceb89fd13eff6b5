#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gcx/constructions.hpp"

namespace gcx {

// A named target: an outer automorphism given by its expression in tagged
// U⁰ generators (applied right to left, compose semantics).
struct RealizationTarget {
  std::string name;
  std::vector<TaggedGenerator> expression;
  RaagAutomorphism automorphism;
};

// Relations are words in the targets: (target index, exponent ±1).
using RelationWord = std::vector<std::pair<int, int>>;

struct SearchBudget {
  int max_entries = -1;        // -1: all partitions
  int radius = -1;             // -1: twice the longest target image
  double time_limit_seconds = 120.0;
  int max_extra_entries = 1;   // duplication entries added during search
  bool all_treelike_structures = false;
  std::size_t max_structures = 4096;
  std::size_t closure_budget = 20000;
  int threads = 1;
};

struct RealizationProblem {
  SimplicialGraph g;
  std::vector<RealizationTarget> targets;
  std::vector<RelationWord> relations;
  SearchBudget budget;
};
// Validates invertibility and that relations hold up to the bounded witness.
void validate_problem(const RealizationProblem& p);

struct TypeCatalogEntry {
  PartitionMultiset representative;  // first collection realizing the type
  BlowupComplex blowup;
  std::string certificate;           // canonical labeling string
  std::size_t automorphism_order = 0;
};
struct TypeCatalog {
  std::vector<TypeCatalogEntry> entries;
  bool complete = true;
};
TypeCatalog enumerate_complex_types(const SimplicialGraph& g, int max_entries,
                                    int threads = 1);

struct RealizationCertificate {
  SimplicialGraph g;
  PartitionMultiset pi;
  BlowupStructure structure;
  std::vector<std::string> target_names;
  std::vector<RaagAutomorphism> targets;
  std::vector<RelationWord> relations;
  std::vector<CubicalMap> assignment;
  std::vector<Word> witnesses;  // per target: ind(f) == inner(w) ∘ target
  int radius = 0;
};

std::optional<RealizationCertificate> realize(const RealizationProblem& p);

struct CheckResult {
  bool ok = true;
  std::string reason;
};
CheckResult check_certificate(const RealizationCertificate& c);

// Applies reduce_action to a certificate's action. When the reduction has to
// switch structures, the recorded targets are transported along the change of
// marking; the result is always a valid certificate of its recorded targets.
RealizationCertificate reduce_certificate(const RealizationCertificate& c);

struct SubgroupClass {
  std::size_t type_index = 0;
  std::vector<std::size_t> element_ids;       // indices into the type's
                                              // automorphism group
  std::vector<RaagAutomorphism> outer_images; // deduplicated outer classes
};
std::vector<SubgroupClass> enumerate_finite_subgroup_classes(
    const SimplicialGraph& g, int max_entries, int radius,
    std::size_t max_group_order = 256);

}  // namespace gcx
