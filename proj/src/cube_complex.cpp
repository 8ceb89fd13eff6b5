#include "gcx/cube_complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace gcx {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Square CubeComplex::canonical_square(Square s) const {
  auto r = [](int d) { return dart_reverse(d); };
  Square reps[8] = {
      {s.a, s.b, s.a2, s.b2},
      {r(s.a), s.b2, r(s.a2), s.b},
      {s.a2, r(s.b), s.a, r(s.b2)},
      {r(s.a2), r(s.b2), r(s.a), r(s.b)},
      {s.b, s.a, s.b2, s.a2},
      {s.b2, r(s.a), s.b, r(s.a2)},
      {r(s.b), s.a2, r(s.b2), s.a},
      {r(s.b2), r(s.a2), r(s.b), r(s.a)},
  };
  return *std::min_element(reps, reps + 8);
}

void CubeComplex::canonicalize_squares() {
  for (auto& s : squares) s = canonical_square(s);
  std::sort(squares.begin(), squares.end());
  squares.erase(std::unique(squares.begin(), squares.end()), squares.end());
}

void CubeComplex::validate() const {
  for (const auto& e : edges)
    require(e.u >= 0 && e.u < nv && e.v >= 0 && e.v < nv,
            "edge endpoint out of range");
  for (const auto& s : squares) {
    for (int d : {s.a, s.b, s.a2, s.b2})
      require(d >= 0 && d < 2 * ne(), "square dart out of range");
    require(dart_tail(s.a) == dart_tail(s.b) &&
                dart_head(s.a) == dart_tail(s.b2) &&
                dart_head(s.b) == dart_tail(s.a2) &&
                dart_head(s.a2) == dart_head(s.b2),
            "square corners do not close up");
  }
}

Hyperplanes hyperplanes(const CubeComplex& x) {
  Hyperplanes h;
  UnionFind edge_uf(x.ne());
  UnionFind dart_uf(2 * x.ne());
  for (const auto& s : x.squares) {
    edge_uf.unite(dart_edge(s.a), dart_edge(s.a2));
    edge_uf.unite(dart_edge(s.b), dart_edge(s.b2));
    dart_uf.unite(s.a, s.a2);
    dart_uf.unite(dart_reverse(s.a), dart_reverse(s.a2));
    dart_uf.unite(s.b, s.b2);
    dart_uf.unite(dart_reverse(s.b), dart_reverse(s.b2));
  }
  std::map<int, int> renumber;
  h.edge_class.resize(x.ne());
  for (int e = 0; e < x.ne(); ++e) {
    int root = edge_uf.find(e);
    auto it = renumber.find(root);
    if (it == renumber.end()) it = renumber.insert({root, h.count++}).first;
    h.edge_class[e] = it->second;
  }
  h.duals.assign(h.count, {});
  for (int e = 0; e < x.ne(); ++e) h.duals[h.edge_class[e]].push_back(e);
  h.crossing.assign(h.count, {});
  std::set<std::pair<int, int>> seen;
  for (const auto& s : x.squares) {
    int h1 = h.edge_class[dart_edge(s.a)], h2 = h.edge_class[dart_edge(s.b)];
    if (seen.insert({std::min(h1, h2), std::max(h1, h2)}).second) {
      h.crossing[h1].push_back(h2);
      if (h1 != h2) h.crossing[h2].push_back(h1);
    }
  }
  for (auto& v : h.crossing) std::sort(v.begin(), v.end());
  h.dart_side.assign(2 * x.ne(), -1);
  for (int e = 0; e < x.ne(); ++e)
    if (dart_uf.find(dart(e, false)) == dart_uf.find(dart(e, true)))
      h.two_sided = false;
  std::map<int, int> side_of_root;
  for (int c = 0; c < h.count; ++c) {
    side_of_root.clear();
    for (int e : h.duals[c])
      for (int d : {dart(e, false), dart(e, true)}) {
        int root = dart_uf.find(d);
        auto it = side_of_root.find(root);
        if (it == side_of_root.end())
          it = side_of_root
                   .insert({root, static_cast<int>(side_of_root.size()) % 2})
                   .first;
        h.dart_side[d] = it->second;
      }
  }
  return h;
}

bool Hyperplanes::crosses(int h1, int h2) const {
  return std::binary_search(crossing[h1].begin(), crossing[h1].end(), h2);
}

CollapseResult collapse(const CubeComplex& x, const std::vector<int>& edge_class,
                        const std::vector<bool>& collapse_class) {
  auto dual = [&](int e) { return collapse_class[edge_class[e]]; };

  UnionFind vuf(x.nv);
  for (int e = 0; e < x.ne(); ++e)
    if (dual(e)) vuf.unite(x.edges[e].u, x.edges[e].v);

  UnionFind duf(2 * x.ne());
  for (const auto& s : x.squares) {
    bool da = dual(dart_edge(s.a)), db = dual(dart_edge(s.b));
    if (da && !db) {
      duf.unite(s.b, s.b2);
      duf.unite(dart_reverse(s.b), dart_reverse(s.b2));
    } else if (db && !da) {
      duf.unite(s.a, s.a2);
      duf.unite(dart_reverse(s.a), dart_reverse(s.a2));
    }
  }

  CollapseResult out;
  out.vertex_map.assign(x.nv, -1);
  std::map<int, int> vroot;
  for (int v = 0; v < x.nv; ++v) {
    int root = vuf.find(v);
    auto it = vroot.find(root);
    if (it == vroot.end()) {
      it = vroot.insert({root, out.complex.nv++}).first;
    }
    out.vertex_map[v] = it->second;
  }

  out.dart_map.assign(2 * x.ne(), -1);
  std::map<int, int> class_to_dart;  // surviving dart-class root -> new dart
  for (int e = 0; e < x.ne(); ++e) {
    if (dual(e)) continue;
    int rf = duf.find(dart(e, false));
    int rb = duf.find(dart(e, true));
    require(rf != rb, "collapse degenerated an edge onto itself");
    auto it = class_to_dart.find(rf);
    if (it == class_to_dart.end()) {
      int ne = out.complex.ne();
      CubeComplex::Edge ned;
      ned.u = out.vertex_map[x.edges[e].u];
      ned.v = out.vertex_map[x.edges[e].v];
      ned.label = x.edges[e].label;
      ned.oriented = x.edges[e].oriented;
      out.complex.edges.push_back(ned);
      class_to_dart[rf] = dart(ne, false);
      class_to_dart[rb] = dart(ne, true);
      it = class_to_dart.find(rf);
    }
    out.dart_map[dart(e, false)] = it->second;
    out.dart_map[dart(e, true)] = class_to_dart.at(rb);
    // Merged edges must agree where they land.
    require(out.complex.dart_tail(it->second) == out.vertex_map[x.edges[e].u],
            "collapse produced inconsistent edge identification");
  }

  for (const auto& s : x.squares) {
    if (dual(dart_edge(s.a)) || dual(dart_edge(s.b))) continue;
    Square ns{out.dart_map[s.a], out.dart_map[s.b], out.dart_map[s.a2],
              out.dart_map[s.b2]};
    out.complex.squares.push_back(out.complex.canonical_square(ns));
  }
  std::sort(out.complex.squares.begin(), out.complex.squares.end());
  out.complex.squares.erase(
      std::unique(out.complex.squares.begin(), out.complex.squares.end()),
      out.complex.squares.end());
  out.complex.validate();
  return out;
}

CollapseResult collapse_hyperplanes(const CubeComplex& x,
                                    const std::vector<int>& hyperplane_ids) {
  Hyperplanes h = hyperplanes(x);
  std::vector<bool> flag(h.count, false);
  for (int id : hyperplane_ids) {
    require(id >= 0 && id < h.count, "unknown hyperplane id");
    flag[id] = true;
  }
  return collapse(x, h.edge_class, flag);
}

CubicalMap identity_map(const CubeComplex& x) {
  CubicalMap m;
  m.vertex_map.resize(x.nv);
  std::iota(m.vertex_map.begin(), m.vertex_map.end(), 0);
  m.dart_map.resize(2 * x.ne());
  std::iota(m.dart_map.begin(), m.dart_map.end(), 0);
  return m;
}

CubicalMap compose(const CubeComplex& x, const CubicalMap& f,
                   const CubicalMap& g) {
  CubicalMap m;
  m.vertex_map.resize(x.nv);
  m.dart_map.resize(2 * x.ne());
  for (int v = 0; v < x.nv; ++v) m.vertex_map[v] = f.vertex_map[g.vertex_map[v]];
  for (int d = 0; d < 2 * x.ne(); ++d) m.dart_map[d] = f.dart_map[g.dart_map[d]];
  return m;
}

CubicalMap inverse_map(const CubeComplex& x, const CubicalMap& f) {
  CubicalMap m;
  m.vertex_map.assign(x.nv, -1);
  m.dart_map.assign(2 * x.ne(), -1);
  for (int v = 0; v < x.nv; ++v) m.vertex_map[f.vertex_map[v]] = v;
  for (int d = 0; d < 2 * x.ne(); ++d) m.dart_map[f.dart_map[d]] = d;
  require(std::count(m.vertex_map.begin(), m.vertex_map.end(), -1) == 0 &&
              std::count(m.dart_map.begin(), m.dart_map.end(), -1) == 0,
          "map is not bijective");
  return m;
}

bool is_cubical_automorphism(const CubeComplex& x, const CubicalMap& f,
                             std::string* why) {
  auto reject = [&](const std::string& r) {
    if (why) *why = r;
    return false;
  };
  if (static_cast<int>(f.vertex_map.size()) != x.nv ||
      static_cast<int>(f.dart_map.size()) != 2 * x.ne())
    return reject("map has wrong size");
  std::vector<bool> vseen(x.nv, false), dseen(2 * x.ne(), false);
  for (int v : f.vertex_map) {
    if (v < 0 || v >= x.nv || vseen[v]) return reject("vertex map not bijective");
    vseen[v] = true;
  }
  for (int d : f.dart_map) {
    if (d < 0 || d >= 2 * x.ne() || dseen[d]) return reject("dart map not bijective");
    dseen[d] = true;
  }
  for (int d = 0; d < 2 * x.ne(); ++d) {
    if (f.dart_map[dart_reverse(d)] != dart_reverse(f.dart_map[d]))
      return reject("dart map does not commute with reversal");
    if (f.vertex_map[x.dart_tail(d)] != x.dart_tail(f.dart_map[d]))
      return reject("dart map does not respect incidence");
  }
  std::set<Square> sq(x.squares.begin(), x.squares.end());
  for (const auto& s : x.squares) {
    Square ms{f.dart_map[s.a], f.dart_map[s.b], f.dart_map[s.a2],
              f.dart_map[s.b2]};
    if (!sq.count(x.canonical_square(ms)))
      return reject("square structure not preserved");
  }
  return true;
}

namespace {

// Joint color refinement. Colors must be assigned from shared signatures so
// that equal colors mean "locally alike" across both complexes.
std::pair<std::vector<int>, std::vector<int>> refine_colors(
    const CubeComplex& a, const CubeComplex& b, bool respect_labels) {
  auto initial = [&](const CubeComplex& x) {
    std::vector<std::vector<int>> sig(x.nv);
    for (int v = 0; v < x.nv; ++v) sig[v] = {0, 0};
    for (int e = 0; e < x.ne(); ++e) {
      if (x.is_loop(e)) {
        sig[x.edges[e].u][0]++;
      } else {
        sig[x.edges[e].u][1]++;
        sig[x.edges[e].v][1]++;
      }
    }
    return sig;
  };
  auto sa = initial(a), sb = initial(b);
  std::map<std::vector<int>, int> palette;
  std::vector<int> ca(a.nv), cb(b.nv);
  auto assign = [&](const std::vector<std::vector<int>>& sig,
                    std::vector<int>& out) {
    for (std::size_t v = 0; v < sig.size(); ++v) {
      auto it = palette.find(sig[v]);
      if (it == palette.end())
        it = palette.insert({sig[v], static_cast<int>(palette.size())}).first;
      out[v] = it->second;
    }
  };
  assign(sa, ca);
  assign(sb, cb);

  for (int round = 0; round < a.nv + 2; ++round) {
    auto signature = [&](const CubeComplex& x, const std::vector<int>& col) {
      std::vector<std::vector<int>> sig(x.nv);
      for (int v = 0; v < x.nv; ++v) sig[v] = {col[v]};
      for (int e = 0; e < x.ne(); ++e) {
        int lab = 0;
        if (respect_labels)
          lab = (static_cast<int>(x.edges[e].label.kind) << 16) ^
                (x.edges[e].label.index + 1);
        sig[x.edges[e].u].push_back((col[x.edges[e].v] << 8) ^ lab);
        sig[x.edges[e].v].push_back((col[x.edges[e].u] << 8) ^ lab);
      }
      for (int v = 0; v < x.nv; ++v)
        std::sort(sig[v].begin() + 1, sig[v].end());
      // square participation profile
      std::vector<int> sq(x.nv, 0);
      for (const auto& s : x.squares) {
        sq[x.dart_tail(s.a)]++;
        sq[x.dart_head(s.a)]++;
        sq[x.dart_tail(s.a2)]++;
        sq[x.dart_head(s.a2)]++;
      }
      for (int v = 0; v < x.nv; ++v) sig[v].push_back(sq[v]);
      return sig;
    };
    auto na = signature(a, ca), nb = signature(b, cb);
    palette.clear();
    std::vector<int> ca2(a.nv), cb2(b.nv);
    assign(na, ca2);
    assign(nb, cb2);
    if (ca2 == ca && cb2 == cb) break;
    ca = ca2;
    cb = cb2;
  }
  return {ca, cb};
}

struct IsoSearch {
  const CubeComplex& a;
  const CubeComplex& b;
  bool respect_labels;
  std::size_t limit;
  std::vector<int> ca, cb;
  std::vector<CubicalMap> found;
  std::set<Square> b_squares;

  bool labels_match(int ea, int eb) const {
    if (!respect_labels) return true;
    return a.edges[ea].label == b.edges[eb].label &&
           a.edges[ea].oriented == b.edges[eb].oriented;
  }

  bool run() {
    if (a.nv != b.nv || a.ne() != b.ne() ||
        a.squares.size() != b.squares.size())
      return false;
    {
      auto sa = ca, sb = cb;
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      if (sa != sb) return false;
    }
    for (const auto& s : b.squares) b_squares.insert(b.canonical_square(s));
    std::vector<int> vmap(a.nv, -1);
    std::vector<bool> used(b.nv, false);
    return place_vertex(0, vmap, used);
  }

  bool place_vertex(int v, std::vector<int>& vmap, std::vector<bool>& used) {
    if (v == a.nv) return assign_edges(vmap);
    for (int w = 0; w < b.nv; ++w) {
      if (used[w] || ca[v] != cb[w]) continue;
      // partial consistency: edge multiplicities to already-placed vertices
      bool ok = true;
      std::map<int, int> mult_a, mult_b;
      for (int e = 0; e < a.ne() && ok; ++e) {
        int x = -1;
        if (a.edges[e].u == v)
          x = a.edges[e].v;
        else if (a.edges[e].v == v)
          x = a.edges[e].u;
        if (x >= 0 && x < v) mult_a[vmap[x]]++;
        if (x == v) mult_a[w]++;  // loops must match loops at w
      }
      for (int e = 0; e < b.ne() && ok; ++e) {
        int x = -1;
        if (b.edges[e].u == w)
          x = b.edges[e].v;
        else if (b.edges[e].v == w)
          x = b.edges[e].u;
        if (x == w) mult_b[w]++;
        else if (x >= 0) {
          // count only images of already-placed vertices
          for (int p = 0; p < v; ++p)
            if (vmap[p] == x) {
              mult_b[x]++;
              break;
            }
        }
      }
      if (mult_a != mult_b) continue;
      vmap[v] = w;
      used[w] = true;
      if (place_vertex(v + 1, vmap, used)) return true;
      used[w] = false;
      vmap[v] = -1;
    }
    return false;
  }

  // With vertices fixed, match edges block by block (same endpoint images),
  // loops with a direction choice each.
  bool assign_edges(const std::vector<int>& vmap) {
    std::map<std::pair<int, int>, std::vector<int>> blocks_a, blocks_b;
    for (int e = 0; e < a.ne(); ++e) {
      int u = vmap[a.edges[e].u], v = vmap[a.edges[e].v];
      blocks_a[{std::min(u, v), std::max(u, v)}].push_back(e);
    }
    for (int e = 0; e < b.ne(); ++e) {
      int u = b.edges[e].u, v = b.edges[e].v;
      blocks_b[{std::min(u, v), std::max(u, v)}].push_back(e);
    }
    if (blocks_a.size() != blocks_b.size()) return false;
    for (const auto& [k, v] : blocks_a) {
      auto it = blocks_b.find(k);
      if (it == blocks_b.end() || it->second.size() != v.size()) return false;
    }
    std::vector<int> dmap(2 * a.ne(), -1);
    std::vector<std::pair<std::vector<int>, std::vector<int>>> blocks;
    for (const auto& [k, es] : blocks_a) blocks.push_back({es, blocks_b[k]});
    return match_block(0, blocks, vmap, dmap);
  }

  bool match_block(
      std::size_t bi,
      std::vector<std::pair<std::vector<int>, std::vector<int>>>& blocks,
      const std::vector<int>& vmap, std::vector<int>& dmap) {
    if (bi == blocks.size()) return finish(vmap, dmap);
    auto& [ea, eb] = blocks[bi];
    std::vector<bool> used(eb.size(), false);
    return match_edge(bi, 0, blocks, vmap, dmap, used);
  }

  bool match_edge(
      std::size_t bi, std::size_t i,
      std::vector<std::pair<std::vector<int>, std::vector<int>>>& blocks,
      const std::vector<int>& vmap, std::vector<int>& dmap,
      std::vector<bool>& used) {
    auto& [ea, eb] = blocks[bi];
    if (i == ea.size()) return match_block(bi + 1, blocks, vmap, dmap);
    int e = ea[i];
    for (std::size_t j = 0; j < eb.size(); ++j) {
      if (used[j] || !labels_match(e, eb[j])) continue;
      int f = eb[j];
      bool a_loop = a.is_loop(e);
      for (int flip = 0; flip < (a_loop ? 2 : 1); ++flip) {
        // direction: non-loops forced by endpoints; label-respecting oriented
        // loops must keep the positive dart positive
        if (a_loop && flip == 1 && respect_labels && a.edges[e].oriented)
          continue;
        int d0, d1;
        if (a_loop) {
          d0 = dart(f, flip);
          d1 = dart(f, !flip);
        } else {
          bool rev = vmap[a.edges[e].u] != b.edges[f].u;
          if (respect_labels && a.edges[e].oriented && rev) continue;
          d0 = dart(f, rev);
          d1 = dart(f, !rev);
        }
        dmap[dart(e, false)] = d0;
        dmap[dart(e, true)] = d1;
        used[j] = true;
        if (match_edge(bi, i + 1, blocks, vmap, dmap, used)) return true;
        used[j] = false;
        dmap[dart(e, false)] = dmap[dart(e, true)] = -1;
      }
    }
    return false;
  }

  bool finish(const std::vector<int>& vmap, std::vector<int>& dmap) {
    for (const auto& s : a.squares) {
      Square ms{dmap[s.a], dmap[s.b], dmap[s.a2], dmap[s.b2]};
      if (!b_squares.count(b.canonical_square(ms))) return false;
    }
    CubicalMap m;
    m.vertex_map = vmap;
    m.dart_map = dmap;
    found.push_back(std::move(m));
    return limit != 0 && found.size() >= limit;
  }
};

}  // namespace

std::vector<CubicalMap> find_isomorphisms(const CubeComplex& a,
                                          const CubeComplex& b,
                                          bool respect_labels,
                                          std::size_t limit) {
  auto [ca, cb] = refine_colors(a, b, respect_labels);
  IsoSearch s{a, b, respect_labels, limit, std::move(ca), std::move(cb), {}, {}};
  s.run();
  std::sort(s.found.begin(), s.found.end());
  return std::move(s.found);
}

std::optional<CubicalMap> find_isomorphism(const CubeComplex& a,
                                           const CubeComplex& b,
                                           bool respect_labels) {
  auto r = find_isomorphisms(a, b, respect_labels, 1);
  if (r.empty()) return std::nullopt;
  return r.front();
}

std::vector<CubicalMap> automorphism_group(const CubeComplex& x,
                                           bool respect_labels) {
  return find_isomorphisms(x, x, respect_labels, 0);
}

std::string canonical_certificate(const CubeComplex& x) {
  auto [ca, cb] = refine_colors(x, x, false);
  (void)cb;

  std::string best;
  bool have_best = false;

  auto encode = [&](const std::vector<int>& perm) {
    std::ostringstream os;
    os << "V" << x.nv << "|E";
    std::vector<std::pair<int, int>> es;
    for (const auto& e : x.edges) {
      int u = perm[e.u], v = perm[e.v];
      es.push_back({std::min(u, v), std::max(u, v)});
    }
    std::sort(es.begin(), es.end());
    for (auto [u, v] : es) os << u << "," << v << ";";
    os << "|S";
    std::vector<std::string> sq;
    for (const auto& s : x.squares) {
      // direction-free corner tuples
      std::vector<std::string> corners;
      auto corner = [&](int da, int db) {
        int c = perm[x.dart_tail(da)];
        auto pa = std::minmax(perm[x.dart_tail(da)], perm[x.dart_head(da)]);
        auto pb = std::minmax(perm[x.dart_tail(db)], perm[x.dart_head(db)]);
        if (pb < pa) std::swap(pa, pb);
        std::ostringstream c2;
        c2 << c << ":" << pa.first << "-" << pa.second << ":" << pb.first
           << "-" << pb.second;
        return c2.str();
      };
      corners.push_back(corner(s.a, s.b));
      corners.push_back(corner(dart_reverse(s.a), s.b2));
      corners.push_back(corner(s.a2, dart_reverse(s.b)));
      corners.push_back(corner(dart_reverse(s.a2), dart_reverse(s.b2)));
      std::sort(corners.begin(), corners.end());
      std::string key;
      for (auto& c : corners) key += c + "/";
      sq.push_back(key);
    }
    std::sort(sq.begin(), sq.end());
    for (auto& k : sq) os << k << ";";
    return os.str();
  };

  // Branch over orderings compatible with the refined colors; vertices are
  // placed color-class by color-class.
  std::vector<int> order;
  std::vector<bool> used(x.nv, false);
  std::function<void()> rec = [&]() {
    if (static_cast<int>(order.size()) == x.nv) {
      std::vector<int> perm(x.nv);
      for (int i = 0; i < x.nv; ++i) perm[order[i]] = i;
      std::string enc = encode(perm);
      if (!have_best || enc < best) {
        best = enc;
        have_best = true;
      }
      return;
    }
    // least remaining color
    int best_color = -1;
    for (int v = 0; v < x.nv; ++v)
      if (!used[v] && (best_color == -1 || ca[v] < best_color))
        best_color = ca[v];
    for (int v = 0; v < x.nv; ++v) {
      if (used[v] || ca[v] != best_color) continue;
      used[v] = true;
      order.push_back(v);
      rec();
      order.pop_back();
      used[v] = false;
    }
  };
  if (x.nv == 0) return "V0|E|S";
  rec();
  return best;
}

std::vector<int> separating_hyperplanes(const CubeComplex& x) {
  Hyperplanes h = hyperplanes(x);
  std::vector<int> out;
  for (int c = 0; c < h.count; ++c) {
    std::vector<bool> skip(x.ne(), false);
    for (int e : h.duals[c]) skip[e] = true;
    // connectivity of the 1-skeleton without the dual edges
    if (x.nv == 0) continue;
    std::vector<int> comp(x.nv, -1);
    std::vector<int> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e = 0; e < x.ne(); ++e) {
        if (skip[e]) continue;
        int w = -1;
        if (x.edges[e].u == v) w = x.edges[e].v;
        if (x.edges[e].v == v) w = x.edges[e].u;
        if (w >= 0 && comp[w] == -1) {
          comp[w] = 0;
          stack.push_back(w);
        }
      }
    }
    if (std::count(comp.begin(), comp.end(), -1) > 0) out.push_back(c);
  }
  return out;
}

}  // namespace gcx
