#include "gcx/partitions.hpp"

#include <algorithm>
#include <map>

namespace gcx {

SSet WhiteheadPartition::split_set() const {
  return side1 & sset_inverse(side2);
}

VSet WhiteheadPartition::bases(const SimplicialGraph& g) const {
  VSet out = 0;
  SSet split = split_set() | sset_inverse(split_set());
  for_each_bit(split, [&](int s) {
    if (!sv_negative(s) && signed_link(g, sv_vertex(s)) == link)
      out |= (VSet(1) << sv_vertex(s));
  });
  return out;
}

int WhiteheadPartition::first_base(const SimplicialGraph& g) const {
  VSet b = bases(g);
  require(b != 0, "partition has no base");
  return lowest_bit(b);
}

int WhiteheadPartition::side_of(int s) const {
  if ((side1 >> s) & 1) return 0;
  if ((side2 >> s) & 1) return 1;
  return -1;
}

void WhiteheadPartition::canonicalize() {
  SSet split = side1 & sset_inverse(side2);
  split |= sset_inverse(split);
  if (!split) {
    if (side2 < side1) std::swap(side1, side2);
    return;
  }
  int least = lowest_bit(split & 0x5555555555555555ull);
  if ((side2 >> least) & 1) std::swap(side1, side2);
}

bool is_valid_partition(const SimplicialGraph& g, const WhiteheadPartition& p,
                        bool allow_singleton, std::string* why) {
  auto reject = [&](const std::string& r) {
    if (why) *why = r;
    return false;
  };
  SSet all = g.all_signed();
  if ((p.link | p.side1 | p.side2) != all)
    return reject("link and sides do not cover V±");
  if ((p.link & p.side1) || (p.link & p.side2) || (p.side1 & p.side2))
    return reject("link and sides are not disjoint");
  if (p.link != sset_inverse(p.link))
    return reject("link is not closed under inversion");
  if (!p.side1 || !p.side2) return reject("a side is empty");
  if (!allow_singleton && !p.proper())
    return reject("a side has no additional element");
  VSet bases = p.bases(g);
  if (!bases) return reject("no base vertex: need a split x with lk±(x) = link");
  int x = lowest_bit(bases);
  // Sides must be unions of connected components of Γ± \ lk±(x).
  for (SSet comp : components_double(g, p.link)) {
    if ((comp & p.side1) && (comp & p.side2))
      return reject("a component of Γ±∖link is split between the sides");
  }
  // Split vertices must satisfy lk(y) ⊆ lk(x); automatic for genuine
  // components, but asserted so invalid hand-built triples are caught.
  VSet lkx = link(g, x);
  SSet split = p.split_set();
  bool ok = true;
  for_each_bit(split | sset_inverse(split), [&](int s) {
    if (link(g, sv_vertex(s)) & ~lkx) ok = false;
  });
  if (!ok) return reject("a split vertex has link not contained in the base link");
  return true;
}

void validate_partition(const SimplicialGraph& g, const WhiteheadPartition& p,
                        bool allow_singleton) {
  std::string why;
  if (!is_valid_partition(g, p, allow_singleton, &why))
    fail("invalid partition: " + why);
}

std::vector<WhiteheadPartition> partitions_based_at(const SimplicialGraph& g,
                                                    int x) {
  require(x >= 0 && x < g.n(), "unknown vertex index");
  SSet lk = signed_link(g, x);
  std::vector<SSet> comps = components_double(g, lk);
  // x and x^-1 are isolated in Γ± \ lk±(x); the rest are free to assign.
  std::vector<SSet> free_comps;
  for (SSet c : comps)
    if (c != (SSet(1) << sv(x, false)) && c != (SSet(1) << sv(x, true)))
      free_comps.push_back(c);
  std::vector<WhiteheadPartition> out;
  std::size_t k = free_comps.size();
  require(k < 60, "too many components to enumerate");
  for (std::uint64_t a = 0; a < (1ull << k); ++a) {
    SSet s1 = SSet(1) << sv(x, false);
    SSet s2 = SSet(1) << sv(x, true);
    for (std::size_t i = 0; i < k; ++i)
      ((a >> i) & 1 ? s1 : s2) |= free_comps[i];
    if (popcount(s1) < 2 || popcount(s2) < 2) continue;
    WhiteheadPartition p{lk, s1, s2};
    p.canonicalize();
    out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<WhiteheadPartition> all_partitions(const SimplicialGraph& g) {
  std::vector<WhiteheadPartition> out;
  for (int v = 0; v < g.n(); ++v) {
    auto ps = partitions_based_at(g, v);
    out.insert(out.end(), ps.begin(), ps.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

WhiteheadPartition singleton_partition(const SimplicialGraph& g, int v) {
  SSet lk = signed_link(g, v);
  SSet vneg = SSet(1) << sv(v, true);
  SSet rest = g.all_signed() & ~lk & ~vneg;
  require(popcount(rest) >= 2,
          "degenerate singleton partition: no room besides v, v^-1");
  WhiteheadPartition p{lk, vneg, rest};
  p.canonicalize();
  return p;
}

bool adjacent(const SimplicialGraph& g, const WhiteheadPartition& p,
              const WhiteheadPartition& q) {
  VSet bp = p.bases(g), bq = q.bases(g);
  if (!bp || !bq) return false;
  return g.adjacent(lowest_bit(bp), lowest_bit(bq));
}

bool compatible(const SimplicialGraph& g, const WhiteheadPartition& p,
                const WhiteheadPartition& q) {
  if (adjacent(g, p, q)) return true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if ((p.side(i) & q.side(j)) == 0) return true;
  return false;
}

PartitionMultiset::PartitionMultiset(std::vector<WhiteheadPartition> es) {
  entries = std::move(es);
  std::sort(entries.begin(), entries.end());
}

void validate_multiset(const SimplicialGraph& g, const PartitionMultiset& pi,
                       bool allow_singletons_and_duplicates) {
  for (std::size_t i = 0; i < pi.entries.size(); ++i) {
    validate_partition(g, pi.entries[i], allow_singletons_and_duplicates);
    if (!allow_singletons_and_duplicates) {
      require(pi.entries[i].proper(), "collection contains a singleton entry");
      if (i > 0)
        require(!(pi.entries[i] == pi.entries[i - 1]),
                "collection contains a duplicate entry");
    }
    for (std::size_t j = i + 1; j < pi.entries.size(); ++j)
      if (!compatible(g, pi.entries[i], pi.entries[j]))
        fail("incompatible pair: entries " + std::to_string(i) + " and " +
             std::to_string(j));
  }
}

PartitionMultiset make_collection(const SimplicialGraph& g,
                                  std::vector<WhiteheadPartition> es) {
  PartitionMultiset pi(std::move(es));
  validate_multiset(g, pi, /*allow_singletons_and_duplicates=*/false);
  return pi;
}

std::vector<PartitionMultiset> enumerate_compatible_collections(
    const SimplicialGraph& g, int max_size, int threads) {
  require(max_size >= 0, "max_size must be nonnegative");
  auto ps = all_partitions(g);
  std::size_t n = ps.size();
  std::vector<std::vector<bool>> ok(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      ok[i][j] = ok[j][i] = compatible(g, ps[i], ps[j]);

  // DFS with increasing indices, grouped by the first entry so the roots can
  // run in parallel; the final ordering pass restores size-then-lex order.
  std::vector<std::vector<std::vector<int>>> per_root(n);
  std::function<void(std::vector<int>&, std::vector<std::vector<int>>&)> grow =
      [&](std::vector<int>& cur, std::vector<std::vector<int>>& sink) {
        if (static_cast<int>(cur.size()) >= max_size) return;
        for (std::size_t next = cur.back() + 1; next < n; ++next) {
          bool fits = true;
          for (int c : cur)
            if (!ok[c][next]) {
              fits = false;
              break;
            }
          if (!fits) continue;
          cur.push_back(static_cast<int>(next));
          sink.push_back(cur);
          grow(cur, sink);
          cur.pop_back();
        }
      };
  parallel_for(n, threads, [&](std::size_t root) {
    if (max_size < 1) return;
    std::vector<int> cur{static_cast<int>(root)};
    per_root[root].push_back(cur);
    grow(cur, per_root[root]);
  });

  std::vector<std::vector<int>> all;
  all.push_back({});  // the empty collection
  for (auto& bucket : per_root)
    for (auto& c : bucket) all.push_back(std::move(c));
  std::stable_sort(all.begin(), all.end(),
                   [](const std::vector<int>& a, const std::vector<int>& b) {
                     if (a.size() != b.size()) return a.size() < b.size();
                     return a < b;
                   });
  std::vector<PartitionMultiset> out;
  out.reserve(all.size());
  for (const auto& idxs : all) {
    std::vector<WhiteheadPartition> es;
    for (int i : idxs) es.push_back(ps[i]);
    out.push_back(PartitionMultiset(std::move(es)));
  }
  return out;
}

RestrictedPartition restrict_partition(const SimplicialGraph& g,
                                       const WhiteheadPartition& p, VSet d) {
  require((p.bases(g) & ~d) == 0 && p.bases(g) != 0,
          "restrict: partition bases must lie in the subgraph");
  SSet dpm = sset_of_vset(d);
  WhiteheadPartition r{p.link & dpm, p.side1 & dpm, p.side2 & dpm};
  r.canonicalize();
  RestrictedPartition out;
  out.partition = r;
  out.trivial = popcount(r.side1) <= 1 || popcount(r.side2) <= 1;
  return out;
}

SimplicialGraph induced_subgraph(const SimplicialGraph& g, VSet d) {
  std::vector<std::string> names;
  for_each_bit(d, [&](int v) { names.push_back(g.name(v)); });
  std::vector<std::pair<std::string, std::string>> edges;
  for_each_bit(d, [&](int u) {
    for_each_bit(d & g.adj_mask(u), [&](int v) {
      if (u < v) edges.push_back({g.name(u), g.name(v)});
    });
  });
  return SimplicialGraph(names, edges);
}

namespace {
SSet map_sset(SSet s, const std::vector<int>& vertex_map) {
  SSet out = 0;
  for_each_bit(s, [&](int b) {
    int v = vertex_map[sv_vertex(b)];
    require(v >= 0, "signed vertex outside the subgraph");
    out |= SSet(1) << sv(v, sv_negative(b));
  });
  return out;
}
}  // namespace

WhiteheadPartition reindex_to_subgraph(const SimplicialGraph& g, VSet d,
                                       const WhiteheadPartition& p) {
  // Vertex order is inherited from g, so the map is order-preserving.
  std::vector<int> vmap(g.n(), -1);
  int next = 0;
  for_each_bit(d, [&](int v) { vmap[v] = next++; });
  WhiteheadPartition q{map_sset(p.link, vmap), map_sset(p.side1, vmap),
                       map_sset(p.side2, vmap)};
  q.canonicalize();
  return q;
}

WhiteheadPartition reindex_from_subgraph(const SimplicialGraph& g, VSet d,
                                         const WhiteheadPartition& q) {
  std::vector<int> vmap;
  for_each_bit(d, [&](int v) { vmap.push_back(v); });
  WhiteheadPartition p{map_sset(q.link, vmap), map_sset(q.side1, vmap),
                       map_sset(q.side2, vmap)};
  p.canonicalize();
  return p;
}

}  // namespace gcx
