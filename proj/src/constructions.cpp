#include "gcx/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "json.hpp"

namespace gcx {

JoinDecomposition make_join(const SimplicialGraph& g, VSet part1) {
  JoinDecomposition j;
  j.g = g;
  j.part1 = part1;
  j.part2 = g.all_vertices() & ~part1;
  require(j.part1 && j.part2, "join needs two nonempty parts");
  for_each_bit(j.part1, [&](int u) {
    for_each_bit(j.part2, [&](int v) {
      require(g.adjacent(u, v), "join decomposition is missing the cross edge " +
                                    g.name(u) + " -- " + g.name(v));
    });
  });
  return j;
}

WhiteheadPartition lift_partition(const JoinDecomposition& j, int which_part,
                                  const WhiteheadPartition& p) {
  VSet mine = which_part == 1 ? j.part1 : j.part2;
  VSet other = which_part == 1 ? j.part2 : j.part1;
  WhiteheadPartition amb = reindex_from_subgraph(j.g, mine, p);
  amb.link |= sset_of_vset(other);
  amb.canonicalize();
  validate_partition(j.g, amb, /*allow_singleton=*/true);
  return amb;
}

BlowupComplex product_blowup(const BlowupComplex& x1, const BlowupComplex& x2,
                             const JoinDecomposition& j) {
  require(x1.graph == induced_subgraph(j.g, j.part1),
          "first factor is not over the first join part");
  require(x2.graph == induced_subgraph(j.g, j.part2),
          "second factor is not over the second join part");
  std::vector<WhiteheadPartition> lifted;
  for (const auto& p : x1.pi.entries) lifted.push_back(lift_partition(j, 1, p));
  for (const auto& p : x2.pi.entries) lifted.push_back(lift_partition(j, 2, p));
  BlowupComplex prod = build_blowup(j.g, PartitionMultiset(lifted));
  require(prod.regions.size() == x1.regions.size() * x2.regions.size(),
          "product blowup region count mismatch");
  return prod;
}

void validate_amalgam_spec(const AmalgamSpec& spec) {
  const SimplicialGraph& g = spec.g;
  VSet used = spec.lambda;
  for (VSet c : spec.components) {
    require(c != 0, "empty amalgam component");
    require((used & c) == 0, "amalgam parts overlap");
    used |= c;
  }
  require(used == g.all_vertices(), "amalgam parts do not cover the graph");
  // no edges between different parts, and Λ is discrete
  auto part_of = [&](int v) -> int {
    for (std::size_t i = 0; i < spec.components.size(); ++i)
      if ((spec.components[i] >> v) & 1) return static_cast<int>(i);
    return -1;  // lambda
  };
  for (auto [u, v] : g.edge_list()) {
    require(part_of(u) == part_of(v) && part_of(u) != -1,
            "the decomposition is not a disjoint union (edge " + g.name(u) +
                " -- " + g.name(v) + ")");
  }
  int k = static_cast<int>(spec.components.size());
  require(static_cast<int>(spec.labeled.size()) == spec.skeleton_vertices,
          "skeleton labeling size mismatch");
  std::vector<int> seen(k, 0);
  std::vector<int> valence(spec.skeleton_vertices, 0);
  for (int lab : spec.labeled)
    if (lab >= 0) {
      require(lab < k, "skeleton label out of range");
      seen[lab]++;
    }
  for (int i = 0; i < k; ++i)
    require(seen[i] == 1, "each component labels exactly one skeleton vertex");
  for (const auto& e : spec.skeleton_edges) {
    require(e.from >= 0 && e.from < spec.skeleton_vertices && e.to >= 0 &&
                e.to < spec.skeleton_vertices,
            "skeleton edge endpoint out of range");
    valence[e.from]++;
    valence[e.to]++;
  }
  for (int v = 0; v < spec.skeleton_vertices; ++v)
    if (spec.labeled[v] < 0)
      require(valence[v] >= 3, "unlabeled skeleton vertex of valence < 3");
  // connected and of rank |Λ|
  if (spec.skeleton_vertices > 0) {
    std::vector<int> uf(spec.skeleton_vertices);
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int a) {
      while (uf[a] != a) a = uf[a] = uf[uf[a]];
      return a;
    };
    for (const auto& e : spec.skeleton_edges) uf[find(e.from)] = find(e.to);
    int roots = 0;
    for (int v = 0; v < spec.skeleton_vertices; ++v)
      if (find(v) == v) ++roots;
    require(roots == 1, "skeleton graph must be connected");
    int rank = static_cast<int>(spec.skeleton_edges.size()) -
               spec.skeleton_vertices + 1;
    require(rank == popcount(spec.lambda),
            "skeleton rank " + std::to_string(rank) + " differs from |Λ| = " +
                std::to_string(popcount(spec.lambda)));
  } else {
    require(spec.lambda == 0 && spec.components.empty(),
            "empty skeleton needs an empty graph");
  }
}

namespace {

// Finds the dart at `region` along `label` (positive direction preferred).
int dart_at(const BlowupComplex& x, int region, EdgeLabel label) {
  for (int e = 0; e < x.complex.ne(); ++e) {
    const auto& ed = x.complex.edges[e];
    if (!(ed.label == label)) continue;
    if (ed.u == region) return dart(e, false);
  }
  for (int e = 0; e < x.complex.ne(); ++e) {
    const auto& ed = x.complex.edges[e];
    if (!(ed.label == label)) continue;
    if (ed.v == region) return dart(e, true);
  }
  fail("attachment point names a label with no dart at its region");
}

struct PendingPoint {
  int region;
  std::vector<EdgeLabel> half;
};

// Subdivides one component until every attachment point is a vertex.
BlowupComplex subdivide_for_points(const BlowupComplex& start,
                                   std::vector<PendingPoint>& pts) {
  BlowupComplex x = start;
  for (;;) {
    std::size_t next = pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (!pts[i].half.empty()) {
        next = i;
        break;
      }
    if (next == pts.size()) return x;
    PendingPoint& p = pts[next];
    EdgeLabel lab = p.half.back();
    p.half.pop_back();
    int d = dart_at(x, p.region, lab);
    int e = dart_edge(d);
    Duplication dup =
        lab.kind == EdgeLabel::Kind::Vertex
            ? duplicate_vertex_hyperplane(x, lab.index)
            : duplicate_entry(x, lab.index);
    int mid = dup.midpoint_of_edge.at(e);
    // remap every pending point
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == next)
        pts[i].region = mid;
      else
        pts[i].region = dup.vertex_map[pts[i].region];
      for (auto& l : pts[i].half)
        if (l.kind == EdgeLabel::Kind::Entry) l.index = dup.entry_map[l.index];
    }
    x = dup.result;
  }
}

}  // namespace

AmalgamResult gamma_amalgam(const AmalgamSpec& spec,
                            const std::vector<BlowupComplex>& components) {
  validate_amalgam_spec(spec);
  const SimplicialGraph& g = spec.g;
  int k = static_cast<int>(spec.components.size());
  require(static_cast<int>(components.size()) == k,
          "component complex count mismatch");
  for (int i = 0; i < k; ++i)
    require(components[i].graph == induced_subgraph(g, spec.components[i]),
            "component " + std::to_string(i) +
                " is not a blowup over its subgraph");

  // Collect attachment points per component and subdivide.
  std::vector<std::vector<PendingPoint>> pts(k);
  std::vector<std::vector<std::pair<int, int>>> point_slot(
      spec.skeleton_edges.size());  // per edge end: (component, point index)
  for (std::size_t ei = 0; ei < spec.skeleton_edges.size(); ++ei) {
    const auto& se = spec.skeleton_edges[ei];
    for (int end = 0; end < 2; ++end) {
      int sv = end == 0 ? se.from : se.to;
      int comp = spec.labeled[sv];
      if (comp < 0) {
        point_slot[ei].push_back({-1, sv});
        continue;
      }
      const AttachPoint& ap = end == 0 ? se.at_from : se.at_to;
      point_slot[ei].push_back(
          {comp, static_cast<int>(pts[comp].size())});
      pts[comp].push_back({ap.region, ap.half});
    }
  }
  std::vector<BlowupComplex> sub;
  for (int i = 0; i < k; ++i)
    sub.push_back(subdivide_for_points(components[i], pts[i]));

  // Assemble Y_Γ.
  CubeComplex y;
  std::vector<int> vertex_offset(k, 0), edge_offset(k, 0);
  std::vector<int> skeleton_point(spec.skeleton_vertices, -1);
  for (int i = 0; i < k; ++i) {
    vertex_offset[i] = y.nv;
    edge_offset[i] = y.ne();
    y.nv += sub[i].complex.nv;
    std::vector<int> to_global(sub[i].graph.n());
    {
      int next = 0;
      for_each_bit(spec.components[i], [&](int v) { to_global[next++] = v; });
    }
    for (const auto& ed : sub[i].complex.edges) {
      CubeComplex::Edge ne = ed;
      ne.u += vertex_offset[i];
      ne.v += vertex_offset[i];
      if (ne.label.kind == EdgeLabel::Kind::Vertex)
        ne.label = EdgeLabel::vertex(to_global[ne.label.index]);
      else
        ne.label = EdgeLabel::entry(1000 * (i + 1) + ne.label.index);
      y.edges.push_back(ne);
    }
    for (const auto& s : sub[i].complex.squares)
      y.squares.push_back({s.a + 2 * edge_offset[i], s.b + 2 * edge_offset[i],
                           s.a2 + 2 * edge_offset[i],
                           s.b2 + 2 * edge_offset[i]});
  }
  for (int v = 0; v < spec.skeleton_vertices; ++v)
    if (spec.labeled[v] < 0) skeleton_point[v] = y.nv++;

  std::vector<int> skeleton_edge_id(spec.skeleton_edges.size(), -1);
  for (std::size_t ei = 0; ei < spec.skeleton_edges.size(); ++ei) {
    int ends[2];
    for (int end = 0; end < 2; ++end) {
      auto [comp, idx] = point_slot[ei][end];
      ends[end] = comp < 0 ? skeleton_point[idx]
                           : vertex_offset[comp] + pts[comp][idx].region;
    }
    CubeComplex::Edge ne;
    ne.u = ends[0];
    ne.v = ends[1];
    ne.label = EdgeLabel::plain(static_cast<int>(ei));
    ne.oriented = false;
    skeleton_edge_id[ei] = y.ne();
    y.edges.push_back(ne);
  }
  y.canonicalize_squares();
  y.validate();

  // Collapse separating hyperplanes (separating skeleton edges).
  CollapseResult cr = collapse_separating(y);
  CubeComplex& xg = cr.complex;
  Hyperplanes hx = hyperplanes(xg);

  // Structure: component entry hyperplanes and a maximal tree of the
  // surviving skeleton edges are treelike; non-tree skeleton edges take the
  // Λ labels in canonical order.
  AmalgamResult out;
  out.structure.treelike.assign(hx.count, false);
  out.structure.edge_vertex.assign(xg.ne(), -1);
  out.structure.edge_forward.assign(xg.ne(), true);

  // spanning tree over "component nodes": contract components, then UF
  std::vector<int> uf(spec.skeleton_vertices + k);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (uf[a] != a) a = uf[a] = uf[uf[a]];
    return a;
  };
  auto node_of = [&](int skel_v) {
    return spec.labeled[skel_v] < 0 ? skel_v
                                    : spec.skeleton_vertices + spec.labeled[skel_v];
  };
  std::vector<int> lambda_vertices;
  for_each_bit(spec.lambda, [&](int v) { lambda_vertices.push_back(v); });
  std::size_t next_lambda = 0;
  for (std::size_t ei = 0; ei < spec.skeleton_edges.size(); ++ei) {
    int id = skeleton_edge_id[ei];
    int nd = cr.dart_map[dart(id, false)];
    const auto& se = spec.skeleton_edges[ei];
    int a = find(node_of(se.from)), b = find(node_of(se.to));
    bool tree_edge = a != b;
    if (tree_edge) uf[a] = b;
    if (nd < 0) {
      require(tree_edge || a == b,
              "collapsed skeleton edge was not separating (internal)");
      continue;  // collapsed separating edge
    }
    int ne = dart_edge(nd);
    if (tree_edge) {
      out.structure.treelike[hx.edge_class[ne]] = true;
    } else {
      require(next_lambda < lambda_vertices.size(),
              "more independent skeleton loops than Λ vertices");
      int v = lambda_vertices[next_lambda++];
      out.structure.edge_vertex[ne] = v;
      out.structure.edge_forward[ne] = !dart_back(nd);
    }
  }
  require(next_lambda == lambda_vertices.size(),
          "fewer independent skeleton loops than Λ vertices");

  // component labels carried through the collapse
  for (int e = 0; e < y.ne(); ++e) {
    int nd = cr.dart_map[dart(e, false)];
    if (nd < 0) continue;
    int ne = dart_edge(nd);
    const auto& lab = y.edges[e].label;
    if (lab.kind == EdgeLabel::Kind::Entry) {
      out.structure.treelike[hx.edge_class[ne]] = true;
    } else if (lab.kind == EdgeLabel::Kind::Vertex) {
      out.structure.edge_vertex[ne] = lab.index;
      out.structure.edge_forward[ne] = !dart_back(nd);
    }
  }

  require(is_treelike(xg, g, out.structure.treelike_ids()),
          "amalgam validation failed: candidate set is not treelike");
  out.recovered = recover_partitions(xg, hx, g, out.structure);
  for (const auto& p : out.recovered.multiset.entries)
    require(p.proper(), "amalgam validation failed: a recovered partition is "
                        "a singleton");
  for (std::size_t i = 0; i + 1 < out.recovered.multiset.entries.size(); ++i)
    require(!(out.recovered.multiset.entries[i] ==
              out.recovered.multiset.entries[i + 1]),
            "amalgam validation failed: duplicate recovered partitions");
  out.rebuilt = build_blowup(g, out.recovered.multiset);
  require(find_isomorphism(out.rebuilt.complex, xg, /*respect_labels=*/false)
              .has_value(),
          "amalgam validation failed: rebuilt blowup is not isomorphic");
  require(separating_hyperplanes(xg).empty(),
          "amalgam still has separating hyperplanes");
  out.complex = xg;
  return out;
}

std::string amalgam_spec_to_json(const AmalgamSpec& spec) {
  nlohmann::ordered_json j;
  j["graph"] = nlohmann::json::parse(graph_to_json(spec.g));
  j["components"] = nlohmann::json::array();
  for (VSet c : spec.components) {
    nlohmann::json names = nlohmann::json::array();
    for_each_bit(c, [&](int v) { names.push_back(spec.g.name(v)); });
    j["components"].push_back(names);
  }
  j["lambda"] = nlohmann::json::array();
  for_each_bit(spec.lambda, [&](int v) { j["lambda"].push_back(spec.g.name(v)); });
  j["skeleton_vertices"] = spec.skeleton_vertices;
  j["labeled"] = spec.labeled;
  j["edges"] = nlohmann::json::array();
  auto point_json = [&](const AttachPoint& p) {
    nlohmann::ordered_json jp;
    jp["region"] = p.region;
    jp["half"] = nlohmann::json::array();
    for (const auto& l : p.half) {
      if (l.kind == EdgeLabel::Kind::Vertex)
        jp["half"].push_back(spec.g.name(l.index));
      else
        jp["half"].push_back(l.index);
    }
    return jp;
  };
  for (const auto& e : spec.skeleton_edges) {
    nlohmann::ordered_json je;
    je["from"] = e.from;
    je["to"] = e.to;
    je["at_from"] = point_json(e.at_from);
    je["at_to"] = point_json(e.at_to);
    j["edges"].push_back(je);
  }
  return j.dump() + "\n";
}

AmalgamSpec amalgam_spec_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(std::string("amalgam JSON parse error: ") + e.what());
  }
  AmalgamSpec spec;
  require(j.contains("graph"), "amalgam spec needs a graph");
  spec.g = graph_from_json(j["graph"].dump());
  for (const auto& c : j.value("components", nlohmann::json::array())) {
    VSet m = 0;
    for (const auto& name : c) m |= VSet(1) << spec.g.index(name);
    spec.components.push_back(m);
  }
  for (const auto& name : j.value("lambda", nlohmann::json::array()))
    spec.lambda |= VSet(1) << spec.g.index(name);
  spec.skeleton_vertices = j.value("skeleton_vertices", 0);
  for (const auto& l : j.value("labeled", nlohmann::json::array()))
    spec.labeled.push_back(l.get<int>());
  auto parse_point = [&](const nlohmann::json& jp) {
    AttachPoint p;
    p.region = jp.value("region", 0);
    for (const auto& h : jp.value("half", nlohmann::json::array())) {
      if (h.is_string())
        p.half.push_back(EdgeLabel::vertex(spec.g.index(h.get<std::string>())));
      else
        p.half.push_back(EdgeLabel::entry(h.get<int>()));
    }
    return p;
  };
  for (const auto& je : j.value("edges", nlohmann::json::array())) {
    SkeletonEdge e;
    e.from = je.value("from", 0);
    e.to = je.value("to", 0);
    if (je.contains("at_from")) e.at_from = parse_point(je["at_from"]);
    if (je.contains("at_to")) e.at_to = parse_point(je["at_to"]);
    spec.skeleton_edges.push_back(e);
  }
  return spec;
}

}  // namespace gcx
