#include "gcx/restriction_extension.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"

namespace gcx {

DeltaSide delta_side(const SimplicialGraph& g, const WhiteheadPartition& p,
                     VSet d) {
  require(is_u0_invariant(g, d).invariant, "delta_side needs an invariant subgraph");
  require(link_of_set(g, d) == 0, "delta_side needs lk(Δ) = ∅");
  require((p.bases(g) & d) == 0, "delta_side needs an outside-based partition");
  SSet dpm = sset_of_vset(d);
  bool ok[2];
  for (int i = 0; i < 2; ++i)
    ok[i] = (p.side(i) & dpm) != 0 && (dpm & ~(p.side(i) | p.link)) == 0;
  require(ok[0] != ok[1], "no unique Δ-side; preconditions violated");
  return DeltaSide{ok[0] ? 0 : 1};
}

InvariantSubcomplex invariant_subcomplex(const BlowupComplex& x, VSet d) {
  const SimplicialGraph& g = x.graph;
  require(is_u0_invariant(g, d).invariant,
          "invariant_subcomplex needs a U⁰-invariant subgraph");
  require(link_of_set(g, d) == 0, "invariant_subcomplex needs lk(Δ) = ∅");

  InvariantSubcomplex out;
  std::size_t k = x.pi.entries.size();
  std::vector<bool> inside(k, false);
  std::vector<int> forced(k, -1);
  for (std::size_t i = 0; i < k; ++i) {
    VSet bases = x.pi.entries[i].bases(g);
    if ((bases & ~d) == 0) {
      inside[i] = true;
    } else {
      require((bases & d) == 0,
              "partition based both inside and outside the invariant subgraph");
      forced[i] = delta_side(g, x.pi.entries[i], d).side;
    }
  }

  // Regions of K_Δ: outside entries pinned to their Δ-side.
  std::vector<int> sub_of_region(x.regions.size(), -1);
  for (std::size_t r = 0; r < x.regions.size(); ++r) {
    bool in = true;
    for (std::size_t i = 0; i < k && in; ++i)
      if (!inside[i] && x.regions[r][i] != forced[i]) in = false;
    if (in) {
      sub_of_region[r] = static_cast<int>(out.region_ids.size());
      out.region_ids.push_back(static_cast<int>(r));
    }
  }

  // Ω: restrictions of the inside entries, in entry order.
  for (std::size_t i = 0; i < k; ++i)
    if (inside[i])
      out.omega.push_back(restrict_partition(g, x.pi.entries[i], d));

  // Edges of K_Δ: Δ-vertex labels and inside entries, endpoints in K.
  std::vector<int> sub_of_edge(x.complex.ne(), -1);
  for (int e = 0; e < x.complex.ne(); ++e) {
    const auto& ed = x.complex.edges[e];
    bool keep = false;
    if (ed.label.kind == EdgeLabel::Kind::Vertex)
      keep = ((d >> ed.label.index) & 1) != 0;
    else
      keep = inside[ed.label.index];
    if (!keep || sub_of_region[ed.u] < 0 || sub_of_region[ed.v] < 0) continue;
    sub_of_edge[e] = static_cast<int>(out.edge_ids.size());
    out.edge_ids.push_back(e);
  }

  // Extract the subcomplex with comparable labels: entry labels become ranks
  // of the restricted partitions (over the induced subgraph), so identified
  // entries share a label.
  out.delta = induced_subgraph(g, d);
  std::vector<WhiteheadPartition> omega_sub;
  for (const auto& rp : out.omega)
    omega_sub.push_back(reindex_to_subgraph(g, d, rp.partition));
  std::vector<WhiteheadPartition> ranks = omega_sub;
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  auto rank_of = [&](const WhiteheadPartition& p) {
    return static_cast<int>(
        std::lower_bound(ranks.begin(), ranks.end(), p) - ranks.begin());
  };

  std::vector<int> to_sub(g.n(), -1);
  {
    int next = 0;
    for_each_bit(d, [&](int v) { to_sub[v] = next++; });
  }
  out.subcomplex.nv = static_cast<int>(out.region_ids.size());
  std::vector<int> inside_rank;  // per inside entry, parallel to omega
  {
    std::size_t oi = 0;
    std::vector<int> entry_rank(k, -1);
    for (std::size_t i = 0; i < k; ++i)
      if (inside[i]) entry_rank[i] = rank_of(omega_sub[oi++]);
    for (int e : out.edge_ids) {
      const auto& ed = x.complex.edges[e];
      CubeComplex::Edge ne;
      ne.u = sub_of_region[ed.u];
      ne.v = sub_of_region[ed.v];
      if (ed.label.kind == EdgeLabel::Kind::Vertex) {
        ne.label = EdgeLabel::vertex(to_sub[ed.label.index]);
        ne.oriented = true;
      } else {
        ne.label = EdgeLabel::entry(entry_rank[ed.label.index]);
        ne.oriented = false;
      }
      out.subcomplex.edges.push_back(ne);
    }
  }
  // squares with all sides kept
  std::map<int, int> edge_new;
  for (std::size_t i = 0; i < out.edge_ids.size(); ++i)
    edge_new[out.edge_ids[i]] = static_cast<int>(i);
  auto map_dart = [&](int dd) -> int {
    auto it = edge_new.find(dart_edge(dd));
    if (it == edge_new.end()) return -1;
    return dart(it->second, dart_back(dd));
  };
  for (const auto& s : x.complex.squares) {
    Square ns{map_dart(s.a), map_dart(s.b), map_dart(s.a2), map_dart(s.b2)};
    if (ns.a < 0 || ns.b < 0 || ns.a2 < 0 || ns.b2 < 0) continue;
    out.subcomplex.squares.push_back(out.subcomplex.canonical_square(ns));
  }
  std::sort(out.subcomplex.squares.begin(), out.subcomplex.squares.end());
  out.subcomplex.validate();

  // The subdivided Δ-blowup and the label-respecting isomorphism.
  out.delta_blowup = build_blowup(out.delta, PartitionMultiset(omega_sub));
  CubeComplex target = out.delta_blowup.complex;
  for (auto& e : target.edges)
    if (e.label.kind == EdgeLabel::Kind::Entry)
      e.label = EdgeLabel::entry(
          rank_of(out.delta_blowup.pi.entries[e.label.index]));
  auto iso = find_isomorphism(out.subcomplex, target, /*respect_labels=*/true);
  require(iso.has_value(),
          "invariant subcomplex is not a subdivided Δ-blowup (internal)");
  out.iso = *iso;
  return out;
}

SubcomplexSelection invariant_subcomplex_via_structure(
    const CubeComplex& x, const Hyperplanes& h, const SimplicialGraph& g,
    const BlowupStructure& s, VSet d) {
  require(is_u0_invariant(g, d).invariant && link_of_set(g, d) == 0,
          "invariant subcomplex needs invariant Δ with empty link");
  RecoveredPartitions rec = recover_partitions(x, h, g, s);

  // vertex selection: for each outside-based treelike hyperplane, keep the
  // piece matching the Δ-side
  std::vector<bool> keep_vertex(x.nv, true);
  std::vector<bool> inside_hyp(h.count, false);
  for (std::size_t t = 0; t < rec.hyperplane_ids.size(); ++t) {
    int c = rec.hyperplane_ids[t];
    const WhiteheadPartition& p = rec.hyperplane_partition[t];
    VSet bases = p.bases(g);
    if ((bases & ~d) == 0) {
      inside_hyp[c] = true;
      continue;
    }
    require((bases & d) == 0, "partition based across the subgraph boundary");
    int side = delta_side(g, p, d).side;
    // recompute the two pieces the way recover_partitions does
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
          if (x.edges[e].u != v && x.edges[e].v != v) continue;
          for (int w : {x.edges[e].u, x.edges[e].v})
            if (piece[w] == -1) {
              piece[w] = npieces;
              stack.push_back(w);
            }
        }
      }
      ++npieces;
    }
    // Locate the piece carrying Δ: take a Δ-letter inside the Δ-side (it
    // exists by definition; such a vertex is not in lk(p), so its hyperplane
    // does not cross H and its dual edges stay in one piece). The terminal
    // ends of its dual edges sit in the piece of its positive letter.
    SSet dside = p.side(side) & sset_of_vset(d);
    require(dside != 0, "Δ-side carries no Δ-letter (internal)");
    int wl = lowest_bit(dside);
    int w = sv_vertex(wl);
    int wedge = -1;
    for (int e = 0; e < x.ne(); ++e)
      if (s.edge_vertex[e] == w) {
        wedge = e;
        break;
      }
    require(wedge >= 0, "no edge labeled by a Δ-vertex");
    int pos = dart(wedge, !s.edge_forward[wedge]);  // positive dart
    int piece_of_delta = sv_negative(wl) ? piece[x.dart_tail(pos)]
                                         : piece[x.dart_head(pos)];
    for (int v = 0; v < x.nv; ++v)
      if (piece[v] != piece_of_delta) keep_vertex[v] = false;
  }

  SubcomplexSelection sel;
  for (int v = 0; v < x.nv; ++v)
    if (keep_vertex[v]) sel.vertices.push_back(v);
  for (int e = 0; e < x.ne(); ++e) {
    if (!keep_vertex[x.edges[e].u] || !keep_vertex[x.edges[e].v]) continue;
    bool keep = false;
    if (s.treelike[h.edge_class[e]])
      keep = inside_hyp[h.edge_class[e]];
    else
      keep = s.edge_vertex[e] >= 0 && ((d >> s.edge_vertex[e]) & 1);
    if (keep) sel.edges.push_back(e);
  }
  return sel;
}

namespace {

// Bases of a Δ-partition q (ambient coordinates): split vertices of Δ whose
// Δ-link matches the link of q.
VSet delta_bases(const SimplicialGraph& g, VSet d, const WhiteheadPartition& q) {
  VSet out = 0;
  SSet split = q.split_set() | sset_inverse(q.split_set());
  for_each_bit(split, [&](int sb) {
    if (sv_negative(sb)) return;
    int m = sv_vertex(sb);
    if (((d >> m) & 1) && sset_of_vset(link(g, m) & d) == q.link)
      out |= VSet(1) << m;
  });
  return out;
}

}  // namespace

ExtendabilityReport is_extendable_partition(const SimplicialGraph& g, VSet d,
                                            const WhiteheadPartition& q) {
  require(is_u0_invariant(g, d).invariant,
          "extendability is relative to an invariant subgraph");
  ExtendabilityReport rep;
  VSet bases = delta_bases(g, d, q);
  require(bases != 0, "not a Δ-partition: no base");
  for_each_bit(bases, [&](int m) {
    if (rep.extendable) return;
    VSet lkm = link(g, m);
    // (1) split vertices have links inside lk(m)
    SSet split = q.split_set() | sset_inverse(q.split_set());
    int bad = -1;
    for_each_bit(split, [&](int sb) {
      if (!sv_negative(sb) && (link(g, sv_vertex(sb)) & ~lkm)) bad = sv_vertex(sb);
    });
    if (bad >= 0) {
      rep.failures.push_back({m, 1, bad, -1});
      return;
    }
    // (2) Δ-vertices in one component of Γ∖st(m) lie fully on one side
    for (VSet c : components(g, g.all_vertices() & ~star(g, m))) {
      VSet cd = c & d;
      if (popcount(cd) < 2) continue;
      int side = -1;
      int v1 = -1, v2 = -1;
      bool okc = true;
      for_each_bit(cd, [&](int v) {
        int sp = q.side_of(sv(v, false)), sn = q.side_of(sv(v, true));
        if (sp != sn || sp < 0) {
          okc = false;
          v2 = v;
          return;
        }
        if (side == -1) {
          side = sp;
          v1 = v;
        } else if (sp != side) {
          okc = false;
          v2 = v;
        }
      });
      if (!okc) {
        rep.failures.push_back({m, 2, v1 >= 0 ? v1 : lowest_bit(cd), v2});
        return;
      }
    }
    rep.extendable = true;
    rep.base = m;
  });
  return rep;
}

namespace {

WhiteheadPartition build_extension(const SimplicialGraph& g, VSet d,
                                   const WhiteheadPartition& q, int m,
                                   const std::vector<int>& free_sides,
                                   const std::vector<VSet>& free_comps) {
  SSet s[2] = {q.side1, q.side2};
  SSet lk = sset_of_vset(link(g, m));
  for (VSet c : components(g, g.all_vertices() & ~star(g, m))) {
    VSet cd = c & d;
    VSet rest = c & ~d;
    if (!rest) continue;
    if (cd) {
      // place with an unsplit Δ-witness
      int side = -1;
      for_each_bit(cd, [&](int v) {
        int sp = q.side_of(sv(v, false));
        if (sp >= 0 && sp == q.side_of(sv(v, true))) side = sp;
      });
      require(side >= 0, "no unsplit witness in a mixed component");
      s[side] |= sset_of_vset(rest);
    }
  }
  for (std::size_t i = 0; i < free_comps.size(); ++i)
    s[free_sides[i]] |= sset_of_vset(free_comps[i]);
  WhiteheadPartition ext{lk, s[0], s[1]};
  ext.canonicalize();
  validate_partition(g, ext, /*allow_singleton=*/true);
  return ext;
}

std::vector<VSet> free_components(const SimplicialGraph& g, VSet d, int m) {
  std::vector<VSet> out;
  for (VSet c : components(g, g.all_vertices() & ~star(g, m)))
    if (!(c & d)) out.push_back(c);
  return out;
}

}  // namespace

WhiteheadPartition extend_partition(const SimplicialGraph& g, VSet d,
                                    const WhiteheadPartition& q,
                                    FreePlacement policy) {
  ExtendabilityReport rep = is_extendable_partition(g, d, q);
  if (!rep.extendable) {
    std::string msg = "partition is not extendable:";
    for (const auto& f : rep.failures)
      msg += " base " + g.name(f.m) + " fails condition (" +
             std::to_string(f.condition) + ")";
    fail(msg);
  }
  int m = rep.base;
  int base_side = q.side_of(sv(m, false));
  auto comps = free_components(g, d, m);
  std::vector<int> sides(comps.size(), policy == FreePlacement::WithBase
                                            ? base_side
                                            : 1 - base_side);
  WhiteheadPartition ext = build_extension(g, d, q, m, sides, comps);
  require(restrict_partition(g, ext, d).partition == q,
          "extension does not restrict back (internal)");
  return ext;
}

std::vector<WhiteheadPartition> extend_partition_all(const SimplicialGraph& g,
                                                     VSet d,
                                                     const WhiteheadPartition& q) {
  std::vector<WhiteheadPartition> out;
  ExtendabilityReport rep = is_extendable_partition(g, d, q);
  if (!rep.extendable) return out;
  VSet bases = delta_bases(g, d, q);
  for_each_bit(bases, [&](int m) {
    auto comps = free_components(g, d, m);
    std::size_t nf = comps.size();
    for (std::uint32_t mask = 0; mask < (1u << nf); ++mask) {
      std::vector<int> sides(nf);
      for (std::size_t i = 0; i < nf; ++i) sides[i] = (mask >> i) & 1;
      try {
        WhiteheadPartition ext = build_extension(g, d, q, m, sides, comps);
        if (restrict_partition(g, ext, d).partition == q) out.push_back(ext);
      } catch (const Error&) {
        break;  // this base fails a condition
      }
    }
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string extendability_report_to_json(const SimplicialGraph& g,
                                         const ExtendabilityReport& r) {
  nlohmann::ordered_json j;
  j["extendable"] = r.extendable;
  if (r.extendable) j["base"] = g.name(r.base);
  j["failures"] = nlohmann::json::array();
  for (const auto& f : r.failures) {
    nlohmann::ordered_json jf;
    jf["base"] = g.name(f.m);
    jf["condition"] = f.condition;
    jf["v1"] = f.v1 >= 0 ? g.name(f.v1) : "";
    if (f.v2 >= 0) jf["v2"] = g.name(f.v2);
    j["failures"].push_back(jf);
  }
  return j.dump() + "\n";
}

ActionOnComplex make_action(const CubeComplex& complex,
                            const SimplicialGraph& g,
                            const BlowupStructure& structure,
                            const std::vector<std::string>& names,
                            const std::vector<CubicalMap>& generators,
                            std::size_t closure_budget) {
  ActionOnComplex a;
  a.complex = complex;
  a.hyps = hyperplanes(complex);
  a.graph = g;
  a.structure = structure;
  a.generator_names = names;
  a.generators = generators;
  for (const auto& f : generators) {
    std::string why;
    require(is_cubical_automorphism(complex, f, &why),
            "action generator is not a cubical automorphism: " + why);
  }
  std::set<CubicalMap> closed;
  std::vector<CubicalMap> frontier{identity_map(complex)};
  closed.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<CubicalMap> next;
    for (const auto& f : frontier)
      for (const auto& gmap : generators) {
        CubicalMap h = compose(complex, gmap, f);
        if (closed.insert(h).second) next.push_back(h);
        require(closed.size() <= closure_budget,
                "group closure exceeds the budget; is the action finite?");
      }
    frontier = std::move(next);
  }
  a.closure.assign(closed.begin(), closed.end());
  return a;
}

namespace {

// permutation induced on hyperplanes by a cubical map
std::vector<int> hyperplane_action(const CubeComplex& x, const Hyperplanes& h,
                                   const CubicalMap& f) {
  std::vector<int> out(h.count, -1);
  for (int e = 0; e < x.ne(); ++e) {
    int img = h.edge_class[dart_edge(f.dart_map[dart(e, false)])];
    int src = h.edge_class[e];
    require(out[src] == -1 || out[src] == img,
            "map does not permute hyperplanes");
    out[src] = img;
  }
  return out;
}

}  // namespace

std::vector<std::vector<int>> hyperplane_orbits(const ActionOnComplex& a) {
  std::vector<std::vector<int>> perms;
  for (const auto& f : a.closure)
    perms.push_back(hyperplane_action(a.complex, a.hyps, f));
  std::vector<bool> seen(a.hyps.count, false);
  std::vector<std::vector<int>> orbits;
  for (int c = 0; c < a.hyps.count; ++c) {
    if (seen[c]) continue;
    std::set<int> orb;
    for (const auto& p : perms) orb.insert(p[c]);
    std::vector<int> o(orb.begin(), orb.end());
    for (int x : o) seen[x] = true;
    orbits.push_back(o);
  }
  return orbits;
}

ReducedReport is_reduced_action(const ActionOnComplex& a) {
  ReducedReport rep;
  auto orbits = hyperplane_orbits(a);
  auto trees = treelike_sets(a.complex, a.graph);
  for (const auto& orb : orbits) {
    for (const auto& t : trees) {
      if (std::includes(t.begin(), t.end(), orb.begin(), orb.end())) {
        rep.reduced = false;
        rep.witness_orbit = orb;
        rep.witness_treelike = t;
        return rep;
      }
    }
  }
  return rep;
}

namespace {

// Transfers a structure whose treelike set contains the collapsed classes.
BlowupStructure transfer_structure(const CubeComplex& x, const Hyperplanes& h,
                                   const BlowupStructure& s,
                                   const CollapseResult& cr,
                                   const CubeComplex& y,
                                   const Hyperplanes& hy) {
  BlowupStructure out;
  out.treelike.assign(hy.count, false);
  out.edge_vertex.assign(y.ne(), -1);
  out.edge_forward.assign(y.ne(), true);
  for (int e = 0; e < x.ne(); ++e) {
    int nd = cr.dart_map[dart(e, false)];
    if (nd < 0) continue;
    int ne = dart_edge(nd);
    if (s.treelike[h.edge_class[e]]) out.treelike[hy.edge_class[ne]] = true;
    if (s.edge_vertex[e] >= 0) {
      require(out.edge_vertex[ne] == -1 || out.edge_vertex[ne] == s.edge_vertex[e],
              "structure transfer produced conflicting labels");
      out.edge_vertex[ne] = s.edge_vertex[e];
      out.edge_forward[ne] = dart_back(nd) ? !s.edge_forward[e]
                                           : s.edge_forward[e];
    }
  }
  return out;
}

}  // namespace

ReducedAction reduce_action(const ActionOnComplex& a) {
  ReducedAction out;
  out.action = a;
  for (;;) {
    ReducedReport rep = is_reduced_action(out.action);
    if (rep.reduced) break;
    // least collapsible orbit with the least treelike set containing it
    auto orbits = hyperplane_orbits(out.action);
    auto trees = treelike_sets(out.action.complex, out.action.graph);
    std::vector<int> orbit, tree;
    for (const auto& orb : orbits) {
      for (const auto& t : trees)
        if (std::includes(t.begin(), t.end(), orb.begin(), orb.end())) {
          orbit = orb;
          tree = t;
          break;
        }
      if (!orbit.empty()) break;
    }
    // switch to a structure on `tree` whose recovery is valid
    BlowupStructure sw;
    bool got = false;
    for (auto& cand :
         enumerate_structures(out.action.complex, out.action.hyps,
                              out.action.graph, tree)) {
      try {
        recover_partitions(out.action.complex, out.action.hyps,
                           out.action.graph, cand);
        sw = cand;
        got = true;
        break;
      } catch (const Error&) {
      }
    }
    require(got, "no valid structure on the treelike set (internal)");

    CollapseResult cr =
        collapse(out.action.complex, out.action.hyps.edge_class, [&] {
          std::vector<bool> flag(out.action.hyps.count, false);
          for (int c : orbit) flag[c] = true;
          return flag;
        }());

    ReductionStep step;
    step.collapsed_orbit = orbit;
    step.structure_before = sw;
    step.collapse_data = cr;

    CubeComplex y = cr.complex;
    Hyperplanes hy = hyperplanes(y);
    BlowupStructure ns = transfer_structure(out.action.complex,
                                            out.action.hyps, sw, cr, y, hy);

    // carry the generators through the collapse
    std::vector<CubicalMap> gens;
    for (const auto& f : out.action.generators) {
      CubicalMap nf;
      nf.vertex_map.assign(y.nv, -1);
      nf.dart_map.assign(2 * y.ne(), -1);
      for (int v = 0; v < out.action.complex.nv; ++v) {
        int img = cr.vertex_map[f.vertex_map[v]];
        int src = cr.vertex_map[v];
        require(nf.vertex_map[src] == -1 || nf.vertex_map[src] == img,
                "orbit collapse is not equivariant (internal)");
        nf.vertex_map[src] = img;
      }
      for (int dd = 0; dd < 2 * out.action.complex.ne(); ++dd) {
        int src = cr.dart_map[dd];
        if (src < 0) continue;
        int img = cr.dart_map[f.dart_map[dd]];
        require(img >= 0, "generator does not preserve the collapsed orbit");
        require(nf.dart_map[src] == -1 || nf.dart_map[src] == img,
                "orbit collapse is not equivariant (internal)");
        nf.dart_map[src] = img;
      }
      std::string why;
      require(is_cubical_automorphism(y, nf, &why),
              "collapsed generator is not an automorphism: " + why);
      gens.push_back(nf);
    }
    out.action = make_action(y, out.action.graph, ns,
                             out.action.generator_names, gens);
    out.steps.push_back(std::move(step));
  }
  return out;
}

std::vector<int> separating_hyperplane_ids(const CubeComplex& x) {
  return separating_hyperplanes(x);
}

CollapseResult collapse_separating(const CubeComplex& x) {
  CollapseResult acc;
  acc.complex = x;
  acc.vertex_map.resize(x.nv);
  for (int v = 0; v < x.nv; ++v) acc.vertex_map[v] = v;
  acc.dart_map.resize(2 * x.ne());
  for (int d = 0; d < 2 * x.ne(); ++d) acc.dart_map[d] = d;
  for (;;) {
    auto sep = separating_hyperplanes(acc.complex);
    if (sep.empty()) break;
    CollapseResult step = collapse_hyperplanes(acc.complex, sep);
    for (auto& v : acc.vertex_map) v = step.vertex_map[v];
    for (auto& d : acc.dart_map)
      if (d >= 0) d = step.dart_map[d];
    acc.complex = step.complex;
  }
  return acc;
}

}  // namespace gcx
