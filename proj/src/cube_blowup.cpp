#include "gcx/cube_blowup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace gcx {

namespace {

// Pairwise entry relations used by the region DFS and the square rules.
struct EntryRelations {
  std::vector<std::vector<bool>> adj;        // bases commute
  std::vector<std::vector<bool>> same;       // equal partitions
  // meets[i][ci][j][cj]: side ci of entry i intersects side cj of entry j
  std::vector<std::vector<std::array<std::array<bool, 2>, 2>>> meets;
};

EntryRelations entry_relations(const SimplicialGraph& g,
                               const std::vector<WhiteheadPartition>& es) {
  std::size_t k = es.size();
  EntryRelations r;
  r.adj.assign(k, std::vector<bool>(k, false));
  r.same.assign(k, std::vector<bool>(k, false));
  r.meets.assign(k, std::vector<std::array<std::array<bool, 2>, 2>>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      r.adj[i][j] = adjacent(g, es[i], es[j]);
      r.same[i][j] = es[i] == es[j];
      for (int ci = 0; ci < 2; ++ci)
        for (int cj = 0; cj < 2; ++cj)
          r.meets[i][j][ci][cj] = (es[i].side(ci) & es[j].side(cj)) != 0;
    }
  return r;
}

bool choices_consistent(const EntryRelations& r, std::size_t i, int ci,
                        std::size_t j, int cj) {
  if (r.same[i][j]) return true;  // within-class pairs follow the wall order
  return r.adj[i][j] || r.meets[i][j][ci][cj];
}

}  // namespace

int BlowupComplex::region_index(const std::vector<std::uint8_t>& r) const {
  auto it = std::lower_bound(regions.begin(), regions.end(), r);
  require(it != regions.end() && *it == r, "no such region");
  return static_cast<int>(it - regions.begin());
}

BlowupComplex build_blowup(const SimplicialGraph& g,
                           const PartitionMultiset& pi) {
  validate_multiset(g, pi);
  const auto& es = pi.entries;
  std::size_t k = es.size();
  EntryRelations rel = entry_relations(g, es);

  BlowupComplex x;
  x.graph = g;
  x.pi = pi;

  // Regions: DFS in entry order; monotone (side2 before side1 is encoded as
  // choice 1 before choice 0, i.e. non-increasing runs read as walls).
  std::vector<std::uint8_t> cur(k);
  std::function<void(std::size_t)> grow = [&](std::size_t i) {
    if (i == k) {
      x.regions.push_back(cur);
      return;
    }
    for (int c = 1; c >= 0; --c) {
      if (i > 0 && rel.same[i][i - 1] && c > cur[i - 1]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = choices_consistent(rel, i, c, j, cur[j]);
      if (!ok) continue;
      cur[i] = static_cast<std::uint8_t>(c);
      grow(i + 1);
    }
  };
  grow(0);
  std::sort(x.regions.begin(), x.regions.end());
  require(!x.regions.empty(), "blowup has no consistent region");

  CubeComplex& cc = x.complex;
  cc.nv = static_cast<int>(x.regions.size());

  // Entry edges: flip one entry's side where both tuples are regions.
  for (std::size_t i = 0; i < k; ++i) {
    for (int ri = 0; ri < cc.nv; ++ri) {
      std::vector<std::uint8_t> r = x.regions[ri];
      if (r[i] != 1) continue;  // count each edge once, from the side2 end
      r[i] = 0;
      auto it = std::lower_bound(x.regions.begin(), x.regions.end(), r);
      if (it == x.regions.end() || *it != r) continue;
      CubeComplex::Edge e;
      e.u = ri;
      e.v = static_cast<int>(it - x.regions.begin());
      e.label = EdgeLabel::entry(static_cast<int>(i));
      e.oriented = false;
      cc.edges.push_back(e);
    }
  }

  // Vertex edges: entries with v in the link are free; all others force the
  // initial end onto the side with v^-1 and the terminal end onto the side
  // with v.
  for (int v = 0; v < g.n(); ++v) {
    int vp = sv(v, false), vn = sv(v, true);
    for (int ri = 0; ri < cc.nv; ++ri) {
      const auto& r = x.regions[ri];
      bool initial = true;
      std::vector<std::uint8_t> t(r);
      for (std::size_t i = 0; i < k && initial; ++i) {
        if ((es[i].link >> vp) & 1) continue;  // free entry
        int side_v = es[i].side_of(vp), side_vn = es[i].side_of(vn);
        if (r[i] != side_vn) initial = false;
        t[i] = static_cast<std::uint8_t>(side_v);
      }
      if (!initial) continue;
      auto it = std::lower_bound(x.regions.begin(), x.regions.end(), t);
      if (it == x.regions.end() || *it != t) continue;
      CubeComplex::Edge e;
      e.u = ri;
      e.v = static_cast<int>(it - x.regions.begin());
      e.label = EdgeLabel::vertex(v);
      e.oriented = true;
      cc.edges.push_back(e);
    }
    }

  // Out-dart table: (region, label, sign) -> dart. For entry edges the sign
  // is + when the tail has side1; for vertex edges + is along orientation.
  auto out_key = [&](int region, EdgeLabel l, int sign) {
    return std::make_tuple(region, l.key(), sign);
  };
  std::map<std::tuple<int, decltype(EdgeLabel().key()), int>, int> out;
  for (int e = 0; e < cc.ne(); ++e) {
    const auto& ed = cc.edges[e];
    if (ed.label.kind == EdgeLabel::Kind::Vertex) {
      out[out_key(ed.u, ed.label, 0)] = dart(e, false);
      out[out_key(ed.v, ed.label, 1)] = dart(e, true);
    } else {
      // ed.u carries side2 (choice 1), ed.v side1 by construction
      out[out_key(ed.v, ed.label, 0)] = dart(e, true);
      out[out_key(ed.u, ed.label, 1)] = dart(e, false);
    }
  }
  auto find_out = [&](int region, EdgeLabel l, int sign) -> int {
    auto it = out.find(out_key(region, l, sign));
    return it == out.end() ? -1 : it->second;
  };

  auto labels_commute = [&](EdgeLabel a, EdgeLabel b) {
    if (a.kind == EdgeLabel::Kind::Vertex && b.kind == EdgeLabel::Kind::Vertex)
      return g.adjacent(a.index, b.index);
    if (a.kind == EdgeLabel::Kind::Entry && b.kind == EdgeLabel::Kind::Entry)
      return !rel.same[a.index][b.index] && rel.adj[a.index][b.index];
    int v = a.kind == EdgeLabel::Kind::Vertex ? a.index : b.index;
    int i = a.kind == EdgeLabel::Kind::Entry ? a.index : b.index;
    return ((es[i].link >> sv(v, false)) & 1) != 0;
  };

  // out-darts grouped by region: (label, sign, dart)
  std::vector<std::vector<std::tuple<EdgeLabel, int, int>>> at(cc.nv);
  for (const auto& [key, d] : out)
    at[std::get<0>(key)].push_back(
        {cc.edges[dart_edge(d)].label, std::get<2>(key), d});

  std::set<Square> squares;
  for (int ri = 0; ri < cc.nv; ++ri) {
    for (std::size_t i = 0; i < at[ri].size(); ++i) {
      auto [l1, sign1, d1] = at[ri][i];
      for (std::size_t j = i + 1; j < at[ri].size(); ++j) {
        auto [l2, sign2, d2] = at[ri][j];
        if (!labels_commute(l1, l2)) continue;
        int d1p = find_out(cc.dart_head(d2), l1, sign1);
        int d2p = find_out(cc.dart_head(d1), l2, sign2);
        if (d1p < 0 || d2p < 0) continue;
        if (cc.dart_head(d1p) != cc.dart_head(d2p)) continue;
        squares.insert(cc.canonical_square({d1, d2, d1p, d2p}));
      }
    }
  }
  cc.squares.assign(squares.begin(), squares.end());
  cc.validate();

  x.hyps = hyperplanes(cc);
  require(x.hyps.two_sided, "blowup produced a one-sided hyperplane");
  x.entry_hyperplane.assign(k, -1);
  x.vertex_hyperplane.assign(g.n(), -1);
  for (int e = 0; e < cc.ne(); ++e) {
    const auto& ed = cc.edges[e];
    int h = x.hyps.edge_class[e];
    int& slot = ed.label.kind == EdgeLabel::Kind::Vertex
                    ? x.vertex_hyperplane[ed.label.index]
                    : x.entry_hyperplane[ed.label.index];
    require(slot == -1 || slot == h,
            "label split across hyperplanes in blowup construction");
    slot = h;
  }
  for (std::size_t i = 0; i < k; ++i)
    require(x.entry_hyperplane[i] >= 0, "entry without dual edges");
  for (int v = 0; v < g.n(); ++v)
    require(x.vertex_hyperplane[v] >= 0, "vertex without dual edges");
  // distinct labels give distinct hyperplanes
  std::set<int> distinct(x.entry_hyperplane.begin(), x.entry_hyperplane.end());
  for (int h : x.vertex_hyperplane) distinct.insert(h);
  require(static_cast<int>(distinct.size()) == x.hyps.count &&
              distinct.size() == k + g.n(),
          "hyperplane count mismatch in blowup construction");
  return x;
}

BlowupComplex salvetti(const SimplicialGraph& g) {
  return build_blowup(g, PartitionMultiset{});
}

std::vector<int> BlowupStructure::treelike_ids() const {
  std::vector<int> out;
  for (std::size_t h = 0; h < treelike.size(); ++h)
    if (treelike[h]) out.push_back(static_cast<int>(h));
  return out;
}

BlowupStructure canonical_structure(const BlowupComplex& x) {
  BlowupStructure s;
  s.treelike.assign(x.hyps.count, false);
  for (int h : x.entry_hyperplane) s.treelike[h] = true;
  s.edge_vertex.assign(x.complex.ne(), -1);
  s.edge_forward.assign(x.complex.ne(), true);
  for (int e = 0; e < x.complex.ne(); ++e)
    if (x.complex.edges[e].label.kind == EdgeLabel::Kind::Vertex)
      s.edge_vertex[e] = x.complex.edges[e].label.index;
  return s;
}

namespace {

// BFS path through the treelike 1-skeleton; returns darts.
std::vector<int> treelike_path(const CubeComplex& x, const Hyperplanes& h,
                               const BlowupStructure& s, int from, int to) {
  if (from == to) return {};
  std::vector<int> prev_dart(x.nv, -1);
  std::vector<bool> seen(x.nv, false);
  std::queue<int> q;
  q.push(from);
  seen[from] = true;
  while (!q.empty() && !seen[to]) {
    int v = q.front();
    q.pop();
    for (int e = 0; e < x.ne(); ++e) {
      if (!s.treelike[h.edge_class[e]]) continue;
      for (int d : {dart(e, false), dart(e, true)}) {
        if (x.dart_tail(d) != v || seen[x.dart_head(d)]) continue;
        seen[x.dart_head(d)] = true;
        prev_dart[x.dart_head(d)] = d;
        q.push(x.dart_head(d));
      }
    }
  }
  require(seen[to], "treelike subcomplex does not connect the vertices");
  std::vector<int> path;
  for (int v = to; v != from; v = x.dart_tail(prev_dart[v]))
    path.push_back(prev_dart[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

void check_crosses_once(const CubeComplex& x, const Hyperplanes& h,
                        const std::vector<int>& path) {
  std::set<int> crossed;
  for (int d : path)
    require(crossed.insert(h.edge_class[dart_edge(d)]).second,
            "path crosses a hyperplane twice");
}

}  // namespace

std::vector<int> characteristic_cycle(const CubeComplex& x,
                                      const Hyperplanes& h,
                                      const BlowupStructure& s, int v) {
  int edge = -1;
  for (int e = 0; e < x.ne(); ++e)
    if (s.edge_vertex[e] == v && !s.treelike[h.edge_class[e]]) {
      edge = e;
      break;
    }
  require(edge >= 0, "no edge labeled by the requested vertex");
  int d = dart(edge, !s.edge_forward[edge]);
  std::vector<int> cycle = treelike_path(x, h, s, 0, x.dart_tail(d));
  cycle.push_back(d);
  auto back = treelike_path(x, h, s, x.dart_head(d), 0);
  cycle.insert(cycle.end(), back.begin(), back.end());
  check_crosses_once(x, h, cycle);
  return cycle;
}

namespace {

// All graph isomorphisms adjA -> adjB as vertex maps (brute force with degree
// pruning; desk-scale graphs only).
void graph_isos(const std::vector<VSet>& a, const std::vector<VSet>& b,
                std::vector<std::vector<int>>& out, std::size_t limit) {
  std::size_t n = a.size();
  if (n != b.size()) return;
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == n) {
      out.push_back(map);
      return limit != 0 && out.size() >= limit;
    }
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || popcount(a[i]) != popcount(b[w])) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = (((a[i] >> j) & 1) == ((b[w] >> map[j]) & 1));
      if (!ok) continue;
      map[i] = static_cast<int>(w);
      used[w] = true;
      if (rec(i + 1)) return true;
      used[w] = false;
      map[i] = -1;
    }
    return false;
  };
  rec(0);
}

// Commutation structure of a candidate Salvetti quotient: exactly one vertex,
// loops only, torus squares only, one square per commuting pair.
bool salvetti_shape(const CubeComplex& q, std::vector<VSet>* comm) {
  if (q.nv != 1) return false;
  for (const auto& e : q.edges)
    if (e.u != e.v) return false;
  int n = q.ne();
  if (n > kMaxVertices) return false;
  std::vector<VSet> adj(n, 0);
  std::set<std::pair<int, int>> pairs;
  for (const auto& s : q.squares) {
    if (s.a != s.a2 || s.b != s.b2) return false;  // not a torus square
    int e1 = dart_edge(s.a), e2 = dart_edge(s.b);
    if (e1 == e2) return false;
    if (!pairs.insert({std::min(e1, e2), std::max(e1, e2)}).second)
      return false;  // two squares on one pair
    adj[e1] |= VSet(1) << e2;
    adj[e2] |= VSet(1) << e1;
  }
  *comm = adj;
  return true;
}

}  // namespace

bool isomorphic_to_salvetti(const CubeComplex& q, const SimplicialGraph& g) {
  std::vector<VSet> comm;
  if (!salvetti_shape(q, &comm)) return false;
  if (static_cast<int>(comm.size()) != g.n()) return false;
  std::vector<VSet> target(g.n());
  for (int v = 0; v < g.n(); ++v) target[v] = g.adj_mask(v);
  std::vector<std::vector<int>> isos;
  graph_isos(comm, target, isos, 1);
  return !isos.empty();
}

bool is_treelike(const CubeComplex& x, const SimplicialGraph& g,
                 const std::vector<int>& hyperplane_ids) {
  return isomorphic_to_salvetti(collapse_hyperplanes(x, hyperplane_ids).complex,
                                g);
}

std::vector<std::vector<int>> treelike_sets(const CubeComplex& x,
                                            const SimplicialGraph& g) {
  Hyperplanes h = hyperplanes(x);
  require(h.count <= 20, "too many hyperplanes for treelike enumeration");
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = 0; mask < (1u << h.count); ++mask) {
    std::vector<int> ids;
    for (int c = 0; c < h.count; ++c)
      if ((mask >> c) & 1) ids.push_back(c);
    if (is_treelike(x, g, ids)) out.push_back(ids);
  }
  return out;
}

std::vector<BlowupStructure> enumerate_structures(
    const CubeComplex& x, const Hyperplanes& h, const SimplicialGraph& g,
    const std::vector<int>& treelike_set, bool identity_labels_only,
    std::size_t limit) {
  std::vector<bool> tl(h.count, false);
  for (int id : treelike_set) tl[id] = true;
  CollapseResult q = collapse(x, h.edge_class, tl);
  std::vector<VSet> comm;
  std::vector<BlowupStructure> out;
  if (!salvetti_shape(q.complex, &comm)) return out;
  if (static_cast<int>(comm.size()) != g.n()) return out;

  // hyperplane -> quotient loop
  std::vector<int> loop_of_hyp(h.count, -1);
  for (int e = 0; e < x.ne(); ++e) {
    int d = q.dart_map[dart(e, false)];
    if (d >= 0) loop_of_hyp[h.edge_class[e]] = dart_edge(d);
  }
  std::vector<int> free_hyps;
  for (int c = 0; c < h.count; ++c)
    if (!tl[c]) free_hyps.push_back(c);

  std::vector<VSet> target(g.n());
  for (int v = 0; v < g.n(); ++v) target[v] = g.adj_mask(v);
  std::vector<std::vector<int>> isos;
  graph_isos(comm, target, isos, 0);

  for (const auto& iso : isos) {
    // vertex assigned to each free hyperplane
    std::vector<int> vert(h.count, -1);
    bool ok = true;
    for (int c : free_hyps) {
      vert[c] = iso[loop_of_hyp[c]];
      if (identity_labels_only) {
        for (int e : h.duals[c]) {
          const auto& lab = x.edges[e].label;
          if (lab.kind == EdgeLabel::Kind::Vertex && lab.index != vert[c])
            ok = false;
        }
      }
    }
    if (!ok) continue;
    std::size_t nfree = free_hyps.size();
    for (std::uint32_t signs = 0; signs < (1u << nfree); ++signs) {
      BlowupStructure s;
      s.treelike = tl;
      s.edge_vertex.assign(x.ne(), -1);
      s.edge_forward.assign(x.ne(), true);
      for (std::size_t i = 0; i < nfree; ++i) {
        int c = free_hyps[i];
        int side = (signs >> i) & 1;
        for (int e : h.duals[c]) {
          s.edge_vertex[e] = vert[c];
          s.edge_forward[e] = (h.dart_side[dart(e, false)] == side);
        }
      }
      out.push_back(std::move(s));
      if (limit && out.size() >= limit) return out;
    }
  }
  return out;
}

RecoveredPartitions recover_partitions(const CubeComplex& x,
                                       const Hyperplanes& h,
                                       const SimplicialGraph& g,
                                       const BlowupStructure& s) {
  RecoveredPartitions out;
  // vertex -> hyperplane under this labeling
  std::vector<int> vhyp(g.n(), -1);
  for (int e = 0; e < x.ne(); ++e) {
    int v = s.edge_vertex[e];
    if (v < 0) continue;
    require(vhyp[v] == -1 || vhyp[v] == h.edge_class[e],
            "labeling assigns one generator to two hyperplanes");
    vhyp[v] = h.edge_class[e];
  }
  for (int v = 0; v < g.n(); ++v)
    require(vhyp[v] >= 0, "labeling misses generator " + g.name(v));

  for (int c = 0; c < h.count; ++c) {
    if (!s.treelike[c]) continue;
    // pieces of the treelike skeleton after removing the duals of c
    std::vector<int> piece(x.nv, -1);
    int npieces = 0;
    for (int v0 = 0; v0 < x.nv; ++v0) {
      if (piece[v0] != -1) continue;
      std::vector<int> stack{v0};
      piece[v0] = npieces;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e = 0; e < x.ne(); ++e) {
          if (!s.treelike[h.edge_class[e]] || h.edge_class[e] == c) continue;
          for (int w : {x.edges[e].u, x.edges[e].v})
            if ((x.edges[e].u == v || x.edges[e].v == v) && piece[w] == -1) {
              piece[w] = npieces;
              stack.push_back(w);
            }
        }
      }
      ++npieces;
    }
    require(npieces == 2,
            "treelike hyperplane does not cut the vertex set in two");

    SSet link = 0, u[2] = {0, 0};
    for (int v = 0; v < g.n(); ++v) {
      if (h.crosses(c, vhyp[v])) {
        link |= SSet(1) << sv(v, false);
        link |= SSet(1) << sv(v, true);
        continue;
      }
      int term = -1, init = -1;
      for (int e : h.duals[vhyp[v]]) {
        int d = dart(e, !s.edge_forward[e]);  // positive dart
        int tpiece = piece[x.dart_head(d)];
        int ipiece = piece[x.dart_tail(d)];
        require(term == -1 || term == tpiece,
                "dual edges of a generator disagree on their side");
        require(init == -1 || init == ipiece,
                "dual edges of a generator disagree on their side");
        term = tpiece;
        init = ipiece;
      }
      u[term] |= SSet(1) << sv(v, false);
      u[init] |= SSet(1) << sv(v, true);
    }
    WhiteheadPartition p{link, u[0], u[1]};
    p.canonicalize();
    validate_partition(g, p, /*allow_singleton=*/true);
    out.hyperplane_ids.push_back(c);
    out.hyperplane_partition.push_back(p);
  }
  out.multiset = PartitionMultiset(out.hyperplane_partition);
  validate_multiset(g, out.multiset);
  return out;
}

RaagAutomorphism induced_outer_automorphism(const CubeComplex& x,
                                            const Hyperplanes& h,
                                            const SimplicialGraph& g,
                                            const BlowupStructure& s,
                                            const CubicalMap& f) {
  auto read = [&](const std::vector<int>& path) {
    Word w;
    for (int d : path) {
      int e = dart_edge(d);
      if (s.treelike[h.edge_class[e]]) continue;
      int v = s.edge_vertex[e];
      require(v >= 0, "unlabeled non-treelike edge in structure");
      bool positive = (dart_back(d) == 0) == s.edge_forward[e];
      w.push_back(sv(v, !positive));
    }
    return w;
  };
  // Connect the moved basepoint back through the treelike skeleton (silent).
  CubicalMap finv = inverse_map(x, f);
  std::vector<Word> im(g.n()), inv(g.n());
  for (int v = 0; v < g.n(); ++v) {
    std::vector<int> chi = characteristic_cycle(x, h, s, v);
    std::vector<int> fchi, ichi;
    for (int d : chi) {
      fchi.push_back(f.dart_map[d]);
      ichi.push_back(finv.dart_map[d]);
    }
    check_crosses_once(x, h, fchi);
    check_crosses_once(x, h, ichi);
    im[v] = read(fchi);
    inv[v] = read(ichi);
  }
  return RaagAutomorphism::from_images(g, im, inv);
}

PartitionCollapse collapse_partition(const BlowupComplex& x, int entry_index) {
  require(entry_index >= 0 &&
              entry_index < static_cast<int>(x.pi.entries.size()),
          "entry index out of range");
  std::vector<WhiteheadPartition> rest;
  for (std::size_t i = 0; i < x.pi.entries.size(); ++i)
    if (static_cast<int>(i) != entry_index) rest.push_back(x.pi.entries[i]);

  PartitionCollapse out;
  out.result = build_blowup(x.graph, PartitionMultiset(rest));
  const BlowupComplex& y = out.result;

  out.vertex_map.assign(x.regions.size(), -1);
  for (std::size_t r = 0; r < x.regions.size(); ++r) {
    std::vector<std::uint8_t> t = x.regions[r];
    t.erase(t.begin() + entry_index);
    out.vertex_map[r] = y.region_index(t);
  }
  out.dart_map.assign(2 * x.complex.ne(), -1);
  // edge lookup in the collapsed blowup
  std::map<std::tuple<int, int, int, int>, int> index;
  for (int e = 0; e < y.complex.ne(); ++e) {
    const auto& ed = y.complex.edges[e];
    index[{static_cast<int>(ed.label.kind), ed.label.index, ed.u, ed.v}] = e;
  }
  for (int e = 0; e < x.complex.ne(); ++e) {
    const auto& ed = x.complex.edges[e];
    EdgeLabel lab = ed.label;
    if (lab.kind == EdgeLabel::Kind::Entry) {
      if (lab.index == entry_index) continue;  // erased
      lab.index -= (lab.index > entry_index) ? 1 : 0;
    }
    int u = out.vertex_map[ed.u], v = out.vertex_map[ed.v];
    auto it = index.find({static_cast<int>(lab.kind), lab.index, u, v});
    bool reversed = false;
    if (it == index.end() && lab.kind == EdgeLabel::Kind::Entry) {
      it = index.find({static_cast<int>(lab.kind), lab.index, v, u});
      reversed = true;
    }
    require(it != index.end(), "collapsed edge has no image");
    out.dart_map[dart(e, false)] = dart(it->second, reversed);
    out.dart_map[dart(e, true)] = dart(it->second, !reversed);
  }
  return out;
}

std::vector<int> map_path(const std::vector<int>& dart_map,
                          const std::vector<int>& path) {
  std::vector<int> out;
  for (int d : path)
    if (dart_map[d] >= 0) out.push_back(dart_map[d]);
  return out;
}

namespace {

// Shared machinery for the two duplication flavors. `region_choice` gives the
// new copy's side for the image of an old region; `midpoint_choice` the side
// taken between the two parallel walls.
Duplication duplicate_with(
    const BlowupComplex& x, const WhiteheadPartition& extra,
    int dual_hyperplane,
    const std::function<int(const std::vector<std::uint8_t>&, std::size_t)>&
        region_choice,
    int midpoint_choice) {
  std::vector<WhiteheadPartition> es = x.pi.entries;
  es.push_back(extra);
  Duplication out;
  out.result = build_blowup(x.graph, PartitionMultiset(es));
  const BlowupComplex& y = out.result;

  // Old entry i keeps its relative position inside its run of equal entries;
  // the new copy conceptually sits at the end of its run. Runs are re-sorted
  // monotone afterwards, so only the choice multiset per run matters.
  auto slot_of_old = [&](std::size_t i) {
    const auto& sorted = y.pi.entries;
    const auto& p = x.pi.entries[i];
    std::size_t first =
        std::lower_bound(sorted.begin(), sorted.end(), p) - sorted.begin();
    std::size_t offset = 0;
    for (std::size_t j = 0; j < i; ++j)
      if (x.pi.entries[j] == p) ++offset;
    return first + offset;
  };
  std::size_t run_size = 0;
  for (const auto& p : y.pi.entries)
    if (p == extra) ++run_size;
  std::size_t new_slot =
      (std::lower_bound(y.pi.entries.begin(), y.pi.entries.end(), extra) -
       y.pi.entries.begin()) +
      run_size - 1;

  auto resort_runs = [&](std::vector<std::uint8_t>& t) {
    std::size_t start = 0;
    for (std::size_t i = 1; i <= t.size(); ++i) {
      if (i == t.size() || !(y.pi.entries[i] == y.pi.entries[start])) {
        std::sort(t.begin() + start, t.begin() + i,
                  std::greater<std::uint8_t>());
        start = i;
      }
    }
  };
  auto lift = [&](const std::vector<std::uint8_t>& r, int extra_choice) {
    std::vector<std::uint8_t> t(y.pi.entries.size(), 0);
    for (std::size_t i = 0; i < x.pi.entries.size(); ++i)
      t[slot_of_old(i)] = r[i];
    t[new_slot] = static_cast<std::uint8_t>(extra_choice);
    resort_runs(t);
    return t;
  };

  out.vertex_map.assign(x.regions.size(), -1);
  for (std::size_t r = 0; r < x.regions.size(); ++r)
    out.vertex_map[r] =
        y.region_index(lift(x.regions[r], region_choice(x.regions[r], r)));
  out.entry_map.resize(x.pi.entries.size());
  for (std::size_t i = 0; i < x.pi.entries.size(); ++i)
    out.entry_map[i] = static_cast<int>(slot_of_old(i));

  for (int e : x.hyps.duals[dual_hyperplane]) {
    // edges store the initial / side2 end in `u`
    int far_end = x.complex.edges[e].u;
    out.midpoint_of_edge[e] =
        y.region_index(lift(x.regions[far_end], midpoint_choice));
  }
  return out;
}

}  // namespace

Duplication duplicate_entry(const BlowupComplex& x, int entry_index) {
  require(entry_index >= 0 &&
              entry_index < static_cast<int>(x.pi.entries.size()),
          "entry index out of range");
  const WhiteheadPartition& p = x.pi.entries[entry_index];
  // Regions keep their own side for the new wall; midpoints sit between the
  // duplicated wall's side2 end and the new wall, so they take side1.
  return duplicate_with(
      x, p, x.entry_hyperplane[entry_index],
      [entry_index](const std::vector<std::uint8_t>& r, std::size_t) {
        return static_cast<int>(r[entry_index]);
      },
      /*midpoint_choice=*/0);
}

Duplication duplicate_vertex_hyperplane(const BlowupComplex& x, int v) {
  require(v >= 0 && v < x.graph.n(), "unknown vertex");
  WhiteheadPartition s = singleton_partition(x.graph, v);
  int small_side = popcount(s.side1) == 1 ? 0 : 1;
  int big_side = 1 - small_side;
  return duplicate_with(
      x, s, x.vertex_hyperplane[v],
      [big_side](const std::vector<std::uint8_t>&, std::size_t) {
        return big_side;
      },
      /*midpoint_choice=*/small_side);
}

std::optional<CubicalMap> blowup_isomorphism(const BlowupComplex& a,
                                             const BlowupComplex& b) {
  return find_isomorphism(a.complex, b.complex, /*respect_labels=*/false);
}

}  // namespace gcx
