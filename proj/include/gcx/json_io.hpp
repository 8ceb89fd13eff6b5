#pragma once

#include <string>

#include "gcx/realization.hpp"

namespace gcx {

std::string partition_to_json(const SimplicialGraph& g,
                              const WhiteheadPartition& p);
WhiteheadPartition partition_from_json(const SimplicialGraph& g,
                                       const std::string& text);

std::string collection_to_json(const SimplicialGraph& g,
                               const PartitionMultiset& pi);
PartitionMultiset collection_from_json(const SimplicialGraph& g,
                                       const std::string& text);

std::string automorphism_to_json(const RaagAutomorphism& a);

std::string blowup_to_json(const BlowupComplex& x);

std::string catalog_to_json(const SimplicialGraph& g, const TypeCatalog& cat);

std::string problem_to_json(const RealizationProblem& p);
RealizationProblem problem_from_json(const std::string& text);

std::string certificate_to_json(const RealizationCertificate& c);
RealizationCertificate certificate_from_json(const std::string& text);

}  // namespace gcx
