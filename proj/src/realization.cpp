#include "gcx/realization.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

namespace gcx {

namespace {

int default_radius(const std::vector<RealizationTarget>& targets) {
  std::size_t longest = 1;
  for (const auto& t : targets)
    for (const auto& w : t.automorphism.images())
      longest = std::max(longest, w.size());
  return static_cast<int>(2 * longest);
}

RaagAutomorphism realize_expression(const SimplicialGraph& g,
                                    const std::vector<TaggedGenerator>& expr) {
  RaagAutomorphism acc = RaagAutomorphism::identity(g);
  for (const auto& t : expr) acc = compose(acc, t.realize(g));
  return acc;
}

RaagAutomorphism relation_product(const SimplicialGraph& g,
                                  const std::vector<RaagAutomorphism>& targets,
                                  const RelationWord& rel) {
  RaagAutomorphism acc = RaagAutomorphism::identity(g);
  for (auto [i, e] : rel) {
    require(i >= 0 && i < static_cast<int>(targets.size()),
            "relation names an unknown target");
    acc = compose(acc, e >= 0 ? targets[i] : inverse(targets[i]));
  }
  return acc;
}

}  // namespace

void validate_problem(const RealizationProblem& p) {
  require(!p.targets.empty(), "problem needs at least one target");
  int radius = p.budget.radius >= 0 ? p.budget.radius : default_radius(p.targets);
  for (const auto& rel : p.relations) {
    RaagAutomorphism prod = relation_product(p.g, [&] {
      std::vector<RaagAutomorphism> ts;
      for (const auto& t : p.targets) ts.push_back(t.automorphism);
      return ts;
    }(), rel);
    require(is_inner_bounded(p.g, prod, radius).has_value(),
            "a relation fails on the targets (within the witness radius)");
  }
}

TypeCatalog enumerate_complex_types(const SimplicialGraph& g, int max_entries,
                                    int threads) {
  int cap = max_entries >= 0 ? max_entries
                             : static_cast<int>(all_partitions(g).size());
  auto collections = enumerate_compatible_collections(g, cap, threads);
  TypeCatalog cat;
  std::vector<BlowupComplex> blowups(collections.size());
  std::vector<std::string> certs(collections.size());
  parallel_for(collections.size(), threads, [&](std::size_t i) {
    blowups[i] = build_blowup(g, collections[i]);
    certs[i] = canonical_certificate(blowups[i].complex);
  });
  std::map<std::string, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < collections.size(); ++i)
    buckets[certs[i]].push_back(i);
  std::set<std::size_t> representative;
  for (auto& [cert, idxs] : buckets) {
    // exact isomorphism within a bucket guards the certificate encoding
    std::vector<std::size_t> reps;
    for (std::size_t i : idxs) {
      bool fresh = true;
      for (std::size_t r : reps)
        if (find_isomorphism(blowups[i].complex, blowups[r].complex, false)
                .has_value()) {
          fresh = false;
          break;
        }
      if (fresh) reps.push_back(i);
    }
    for (std::size_t r : reps) representative.insert(r);
  }
  for (std::size_t i : representative) {
    TypeCatalogEntry e;
    e.representative = collections[i];
    e.blowup = blowups[i];
    e.certificate = certs[i];
    e.automorphism_order = automorphism_group(blowups[i].complex).size();
    cat.entries.push_back(std::move(e));
  }
  std::sort(cat.entries.begin(), cat.entries.end(),
            [](const TypeCatalogEntry& a, const TypeCatalogEntry& b) {
              return a.certificate < b.certificate;
            });
  return cat;
}

namespace {

struct SearchContext {
  const RealizationProblem& p;
  int radius;
  std::chrono::steady_clock::time_point deadline;

  bool expired() const {
    return std::chrono::steady_clock::now() > deadline;
  }
};

std::optional<RealizationCertificate> try_complex(
    SearchContext& ctx, const PartitionMultiset& pi, const BlowupComplex& x) {
  const SimplicialGraph& g = ctx.p.g;
  auto aut = automorphism_group(x.complex);

  std::vector<std::vector<int>> tsets;
  tsets.push_back(canonical_structure(x).treelike_ids());
  if (ctx.p.budget.all_treelike_structures) {
    for (auto& t : treelike_sets(x.complex, g))
      if (t != tsets[0]) tsets.push_back(t);
  }

  for (const auto& tset : tsets) {
    auto structures = enumerate_structures(x.complex, x.hyps, g, tset, false,
                                           ctx.p.budget.max_structures);
    for (const auto& s : structures) {
      if (ctx.expired()) return std::nullopt;
      // induced outer classes for the whole automorphism group
      std::vector<std::optional<RaagAutomorphism>> ind(aut.size());
      std::vector<std::vector<std::size_t>> candidates(ctx.p.targets.size());
      std::vector<std::vector<Word>> cand_witness(ctx.p.targets.size());
      for (std::size_t ti = 0; ti < ctx.p.targets.size(); ++ti) {
        for (std::size_t fi = 0; fi < aut.size(); ++fi) {
          if (!ind[fi]) {
            try {
              ind[fi] = induced_outer_automorphism(x.complex, x.hyps, g, s,
                                                   aut[fi]);
            } catch (const Error&) {
              continue;  // structure invalid for this map; skip
            }
          }
          auto w = outer_equal_bounded(g, *ind[fi],
                                       ctx.p.targets[ti].automorphism,
                                       ctx.radius);
          if (w) {
            candidates[ti].push_back(fi);
            cand_witness[ti].push_back(w->conjugator);
          }
        }
        if (candidates[ti].empty()) break;
      }
      bool feasible = true;
      for (const auto& c : candidates)
        if (c.empty()) feasible = false;
      if (!feasible) continue;

      // assignment search obeying the relations exactly
      std::vector<std::size_t> pick(ctx.p.targets.size(), 0);
      std::function<bool(std::size_t)> assign = [&](std::size_t ti) -> bool {
        if (ti == ctx.p.targets.size()) {
          CubicalMap id = identity_map(x.complex);
          for (const auto& rel : ctx.p.relations) {
            CubicalMap accm = id;
            for (auto [i, e] : rel) {
              const CubicalMap& f = aut[candidates[i][pick[i]]];
              accm = compose(x.complex, e >= 0 ? f : inverse_map(x.complex, f),
                             accm);
            }
            if (!(accm == id)) return false;
          }
          return true;
        }
        for (std::size_t c = 0; c < candidates[ti].size(); ++c) {
          pick[ti] = c;
          if (assign(ti + 1)) return true;
        }
        return false;
      };
      if (!assign(0)) continue;

      RealizationCertificate cert;
      cert.g = g;
      cert.pi = pi;
      cert.structure = s;
      cert.relations = ctx.p.relations;
      cert.radius = ctx.radius;
      for (std::size_t ti = 0; ti < ctx.p.targets.size(); ++ti) {
        cert.target_names.push_back(ctx.p.targets[ti].name);
        cert.targets.push_back(ctx.p.targets[ti].automorphism);
        cert.assignment.push_back(aut[candidates[ti][pick[ti]]]);
        cert.witnesses.push_back(cand_witness[ti][pick[ti]]);
      }
      return cert;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<RealizationCertificate> realize(const RealizationProblem& p) {
  validate_problem(p);
  SearchContext ctx{
      p,
      p.budget.radius >= 0 ? p.budget.radius : default_radius(p.targets),
      std::chrono::steady_clock::now() +
          std::chrono::milliseconds(
              static_cast<long long>(p.budget.time_limit_seconds * 1000))};

  const SimplicialGraph& g = p.g;
  auto ps = all_partitions(g);
  int cap = p.budget.max_entries >= 0 ? p.budget.max_entries
                                      : static_cast<int>(ps.size());
  auto collections = enumerate_compatible_collections(g, cap, p.budget.threads);

  // pass 0: plain blowups; pass t: multisets with t extra singleton or
  // duplicate entries (one duplication round per hyperplane)
  for (int extra = 0; extra <= p.budget.max_extra_entries; ++extra) {
    for (const auto& base : collections) {
      if (ctx.expired()) return std::nullopt;
      std::vector<PartitionMultiset> variants;
      if (extra == 0) {
        variants.push_back(base);
      } else {
        // extensions by `extra` additional entries: duplicates of base
        // entries or singleton partitions, each hyperplane at most once
        std::vector<WhiteheadPartition> pool;
        for (const auto& e : base.entries) pool.push_back(e);
        for (int v = 0; v < g.n(); ++v) {
          try {
            pool.push_back(singleton_partition(g, v));
          } catch (const Error&) {
          }
        }
        std::sort(pool.begin(), pool.end());
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
        std::vector<int> idx(extra, 0);
        std::function<void(std::size_t, std::size_t)> choose =
            [&](std::size_t from, std::size_t got) {
              if (got == static_cast<std::size_t>(extra)) {
                std::vector<WhiteheadPartition> es = base.entries;
                for (std::size_t i = 0; i < got; ++i)
                  es.push_back(pool[idx[i]]);
                try {
                  PartitionMultiset m(es);
                  validate_multiset(g, m);
                  variants.push_back(m);
                } catch (const Error&) {
                }
                return;
              }
              for (std::size_t i = from; i < pool.size(); ++i) {
                idx[got] = static_cast<int>(i);
                choose(i + 1, got + 1);
              }
            };
        choose(0, 0);
      }
      for (const auto& pi : variants) {
        if (ctx.expired()) return std::nullopt;
        BlowupComplex x = build_blowup(g, pi);
        auto cert = try_complex(ctx, pi, x);
        if (cert) return cert;
      }
    }
  }
  return std::nullopt;
}

CheckResult check_certificate(const RealizationCertificate& c) {
  auto fail_with = [](const std::string& r) { return CheckResult{false, r}; };
  try {
    BlowupComplex x = build_blowup(c.g, c.pi);
    Hyperplanes h = x.hyps;
    // structure sanity: treelike set really is treelike, labels recover
    if (c.structure.treelike.size() != static_cast<std::size_t>(h.count))
      return fail_with("structure does not match the complex");
    if (!is_treelike(x.complex, c.g, c.structure.treelike_ids()))
      return fail_with("structure's hyperplane set is not treelike");
    recover_partitions(x.complex, h, c.g, c.structure);

    if (c.assignment.size() != c.targets.size() ||
        c.witnesses.size() != c.targets.size() ||
        c.target_names.size() != c.targets.size())
      return fail_with("certificate arrays disagree in length");

    for (std::size_t i = 0; i < c.assignment.size(); ++i) {
      std::string why;
      if (!is_cubical_automorphism(x.complex, c.assignment[i], &why))
        return fail_with("assignment '" + c.target_names[i] +
                         "' is not a cubical automorphism: " + why);
    }
    // relations hold exactly as cubical maps
    CubicalMap id = identity_map(x.complex);
    for (std::size_t r = 0; r < c.relations.size(); ++r) {
      CubicalMap acc = id;
      for (auto [i, e] : c.relations[r]) {
        if (i < 0 || i >= static_cast<int>(c.assignment.size()))
          return fail_with("relation names an unknown target");
        const CubicalMap& f = c.assignment[i];
        acc = compose(x.complex, e >= 0 ? f : inverse_map(x.complex, f), acc);
      }
      if (!(acc == id))
        return fail_with("relation " + std::to_string(r) +
                         " is violated by the assignment");
    }
    // induced outer automorphisms match the targets through the witnesses
    for (std::size_t i = 0; i < c.assignment.size(); ++i) {
      RaagAutomorphism ind = induced_outer_automorphism(
          x.complex, h, c.g, c.structure, c.assignment[i]);
      RaagAutomorphism expected =
          compose(inner_automorphism(c.g, c.witnesses[i]), c.targets[i]);
      if (!(ind == expected))
        return fail_with("witness fails for target '" + c.target_names[i] +
                         "'");
    }
  } catch (const Error& e) {
    return fail_with(std::string("certificate rejected: ") + e.what());
  }
  return {};
}

RealizationCertificate reduce_certificate(const RealizationCertificate& c) {
  BlowupComplex x = build_blowup(c.g, c.pi);
  ActionOnComplex action = make_action(x.complex, c.g, c.structure,
                                       c.target_names, c.assignment);
  ReducedAction red = reduce_action(action);
  RealizationCertificate out;
  out.g = c.g;
  out.relations = c.relations;
  out.radius = c.radius;
  out.target_names = c.target_names;
  out.assignment = red.action.generators;

  // the reduced complex as a blowup: recover its multiset and rebuild
  RecoveredPartitions rec =
      recover_partitions(red.action.complex, red.action.hyps, red.action.graph,
                         red.action.structure);
  out.pi = rec.multiset;
  BlowupComplex rebuilt = build_blowup(c.g, rec.multiset);
  auto iso = find_isomorphism(red.action.complex, rebuilt.complex, false);
  require(iso.has_value(), "reduced complex is not a blowup (internal)");
  // transport everything through the isomorphism so the certificate is
  // phrased on the canonical rebuilt complex
  CubicalMap phi = *iso;
  CubicalMap phi_inv = inverse_map(red.action.complex, phi);
  BlowupStructure ns;
  Hyperplanes hr = rebuilt.hyps;
  ns.treelike.assign(hr.count, false);
  ns.edge_vertex.assign(rebuilt.complex.ne(), -1);
  ns.edge_forward.assign(rebuilt.complex.ne(), true);
  for (int e = 0; e < red.action.complex.ne(); ++e) {
    int nd = phi.dart_map[dart(e, false)];
    int ne = dart_edge(nd);
    if (red.action.structure.treelike[red.action.hyps.edge_class[e]])
      ns.treelike[hr.edge_class[ne]] = true;
    ns.edge_vertex[ne] = red.action.structure.edge_vertex[e];
    if (red.action.structure.edge_vertex[e] >= 0)
      ns.edge_forward[ne] = dart_back(nd)
                                ? !red.action.structure.edge_forward[e]
                                : red.action.structure.edge_forward[e];
  }
  out.structure = ns;
  std::vector<CubicalMap> gens;
  for (const auto& f : red.action.generators)
    gens.push_back(compose(rebuilt.complex, phi,
                           compose(rebuilt.complex, f, phi_inv)));
  out.assignment = gens;

  // record the targets the reduced action realizes: the transferred induced
  // outer classes (equal to the originals whenever no structure switch was
  // needed)
  for (std::size_t i = 0; i < gens.size(); ++i) {
    RaagAutomorphism ind = induced_outer_automorphism(
        rebuilt.complex, hr, c.g, ns, gens[i]);
    out.targets.push_back(ind);
    out.witnesses.push_back({});
  }
  CheckResult chk = check_certificate(out);
  require(chk.ok, "reduced certificate fails verification: " + chk.reason);
  return out;
}

namespace {

// all subgroups of a small group given by its sorted element list
std::vector<std::vector<std::size_t>> subgroups_of(
    const CubeComplex& x, const std::vector<CubicalMap>& elements,
    std::size_t max_order) {
  require(elements.size() <= max_order,
          "automorphism group exceeds the subgroup-enumeration budget");
  std::map<CubicalMap, std::size_t> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index[elements[i]] = i;
  auto closure_of = [&](std::set<std::size_t> seed) {
    std::vector<std::size_t> frontier(seed.begin(), seed.end());
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (std::size_t a : frontier)
        for (std::size_t b : seed) {
          std::size_t c = index.at(compose(x, elements[a], elements[b]));
          if (seed.insert(c).second) next.push_back(c);
          c = index.at(compose(x, elements[b], elements[a]));
          if (seed.insert(c).second) next.push_back(c);
        }
      frontier = std::move(next);
    }
    return seed;
  };
  std::size_t id_index = index.at(identity_map(x));
  std::set<std::set<std::size_t>> subs;
  subs.insert({id_index});
  for (std::size_t i = 0; i < elements.size(); ++i) {
    std::set<std::size_t> seed{id_index, i};
    subs.insert(closure_of(seed));
  }
  // join closure
  for (;;) {
    std::set<std::set<std::size_t>> grown = subs;
    for (const auto& a : subs)
      for (const auto& b : subs) {
        std::set<std::size_t> u = a;
        u.insert(b.begin(), b.end());
        grown.insert(closure_of(u));
      }
    if (grown.size() == subs.size()) break;
    subs = std::move(grown);
  }
  std::vector<std::vector<std::size_t>> out;
  for (const auto& s : subs) out.push_back({s.begin(), s.end()});
  std::sort(out.begin(), out.end(),
            [](const std::vector<std::size_t>& a,
               const std::vector<std::size_t>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return out;
}

}  // namespace

std::vector<SubgroupClass> enumerate_finite_subgroup_classes(
    const SimplicialGraph& g, int max_entries, int radius,
    std::size_t max_group_order) {
  TypeCatalog cat = enumerate_complex_types(g, max_entries);
  std::vector<SubgroupClass> out;
  // outer-image sets already listed (for exact-outer-image dedup)
  std::vector<std::vector<RaagAutomorphism>> listed;
  for (std::size_t t = 0; t < cat.entries.size(); ++t) {
    const BlowupComplex& x = cat.entries[t].blowup;
    auto aut = automorphism_group(x.complex);
    if (aut.size() > max_group_order) continue;
    BlowupStructure s = canonical_structure(x);
    std::vector<RaagAutomorphism> ind;
    for (const auto& f : aut)
      ind.push_back(
          induced_outer_automorphism(x.complex, x.hyps, g, s, f));
    for (const auto& sub : subgroups_of(x.complex, aut, max_group_order)) {
      // induced outer set, deduplicated by bounded outer equality
      std::vector<RaagAutomorphism> images;
      for (std::size_t e : sub) {
        bool fresh = true;
        for (const auto& got : images)
          if (outer_equal_bounded(g, ind[e], got, radius)) {
            fresh = false;
            break;
          }
        if (fresh) images.push_back(ind[e]);
      }
      std::sort(images.begin(), images.end());
      bool dup = false;
      for (const auto& prev : listed) {
        if (prev.size() != images.size()) continue;
        bool all = true;
        for (std::size_t i = 0; i < images.size() && all; ++i) {
          bool hit = false;
          for (std::size_t j = 0; j < prev.size() && !hit; ++j)
            if (outer_equal_bounded(g, images[i], prev[j], radius)) hit = true;
          all = hit;
        }
        if (all) {
          dup = true;
          break;
        }
      }
      if (dup) continue;
      listed.push_back(images);
      SubgroupClass sc;
      sc.type_index = t;
      sc.element_ids = sub;
      sc.outer_images = images;
      out.push_back(std::move(sc));
    }
  }
  return out;
}

}  // namespace gcx
