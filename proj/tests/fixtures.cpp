#include "fixtures.hpp"

#include <algorithm>
#include <set>

namespace gcx::testing {

namespace {

SimplicialGraph from_mask(int n, std::uint32_t mask) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, 'a' + i));
  std::vector<std::pair<std::string, std::string>> edges;
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit)
      if ((mask >> bit) & 1) edges.push_back({names[i], names[j]});
  return SimplicialGraph(names, edges);
}

// canonical edge mask under vertex permutations
std::uint32_t canonical_mask(int n, std::uint32_t mask) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  auto bit_of = [&](int i, int j) {
    if (i > j) std::swap(i, j);
    int b = 0;
    for (int p = 0; p < i; ++p) b += n - 1 - p;
    return b + (j - i - 1);
  };
  std::uint32_t best = ~0u;
  do {
    std::uint32_t m = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if ((mask >> bit_of(perm[i], perm[j])) & 1) m |= 1u << bit_of(i, j);
    best = std::min(best, m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::vector<SimplicialGraph> small_graphs(int max_n) {
  std::vector<SimplicialGraph> out;
  for (int n = 1; n <= max_n; ++n) {
    int bits = n * (n - 1) / 2;
    std::set<std::uint32_t> reps;
    for (std::uint32_t mask = 0; mask < (1u << bits); ++mask)
      reps.insert(canonical_mask(n, mask));
    for (std::uint32_t m : reps) out.push_back(from_mask(n, m));
  }
  return out;
}

std::vector<SimplicialGraph> corpus50() {
  std::vector<SimplicialGraph> out;
  std::set<std::string> seen;
  auto add = [&](const SimplicialGraph& g) {
    if (static_cast<int>(out.size()) >= 50) return;
    std::string key = graph_to_json(g);
    if (seen.insert(key).second) out.push_back(g);
  };
  add(figure4());
  // K3 ⊔ K3
  add(SimplicialGraph({"a", "b", "c", "d", "e", "f"},
                      {{"a", "b"}, {"b", "c"}, {"a", "c"},
                       {"d", "e"}, {"e", "f"}, {"d", "f"}}));
  for (int n = 1; n <= 6; ++n) add(free_group(n));
  for (int n = 2; n <= 6; ++n) add(complete(n));
  // paths and cycles
  for (int n = 3; n <= 6; ++n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::string(1, 'a' + i));
    std::vector<std::pair<std::string, std::string>> pe, ce;
    for (int i = 0; i + 1 < n; ++i) pe.push_back({names[i], names[i + 1]});
    ce = pe;
    ce.push_back({names[n - 1], names[0]});
    add(SimplicialGraph(names, pe));
    if (n >= 4) add(SimplicialGraph(names, ce));
  }
  // stars
  for (int n = 4; n <= 6; ++n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::string(1, 'a' + i));
    std::vector<std::pair<std::string, std::string>> se;
    for (int i = 1; i < n; ++i) se.push_back({names[0], names[i]});
    add(SimplicialGraph(names, se));
  }
  add(edge_plus_point());
  add(free2_plus_edge());
  // deterministic pseudo-random 6-vertex graphs (LCG)
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  auto next = [&]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<std::uint32_t>(state >> 33);
  };
  while (static_cast<int>(out.size()) < 50) {
    std::uint32_t mask = next() & ((1u << 15) - 1);
    add(from_mask(6, mask));
  }
  return out;
}

}  // namespace gcx::testing
