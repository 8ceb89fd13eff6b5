#include "gcx/json_io.hpp"

#include <algorithm>

#include "json.hpp"

namespace gcx {

namespace {

using njson = nlohmann::ordered_json;

njson sset_json(const SimplicialGraph& g, SSet s) {
  njson a = njson::array();
  for_each_bit(s, [&](int b) { a.push_back(signed_name(g, b)); });
  return a;
}

SSet sset_parse(const SimplicialGraph& g, const nlohmann::json& a) {
  SSet out = 0;
  for (const auto& t : a) {
    Word w = word_from_string(g, t.get<std::string>());
    require(w.size() == 1, "expected a single signed generator");
    out |= SSet(1) << w[0];
  }
  return out;
}

njson partition_json(const SimplicialGraph& g, const WhiteheadPartition& p) {
  njson j;
  j["link"] = sset_json(g, p.link);
  j["side1"] = sset_json(g, p.side1);
  j["side2"] = sset_json(g, p.side2);
  return j;
}

WhiteheadPartition partition_parse(const SimplicialGraph& g,
                                   const nlohmann::json& j) {
  require(j.is_object() && j.contains("link") && j.contains("side1") &&
              j.contains("side2"),
          "partition JSON needs link/side1/side2");
  WhiteheadPartition p{sset_parse(g, j["link"]), sset_parse(g, j["side1"]),
                       sset_parse(g, j["side2"])};
  p.canonicalize();
  validate_partition(g, p, /*allow_singleton=*/true);
  return p;
}

njson tagged_json(const SimplicialGraph& g, const TaggedGenerator& t) {
  njson j;
  switch (t.kind) {
    case TaggedGenerator::Kind::Inversion:
      j["kind"] = "inversion";
      j["v"] = g.name(t.v);
      break;
    case TaggedGenerator::Kind::Fold:
      j["kind"] = "fold";
      j["x"] = g.name(t.x);
      j["y"] = signed_name(g, t.y_signed);
      j["side"] = t.side == FoldSide::Right ? "right" : "left";
      break;
    case TaggedGenerator::Kind::PartialConjugation: {
      j["kind"] = "partial_conjugation";
      j["x"] = signed_name(g, t.x);
      njson c = njson::array();
      for_each_bit(t.c, [&](int v) { c.push_back(g.name(v)); });
      j["component"] = c;
      break;
    }
    case TaggedGenerator::Kind::Whitehead:
      j["kind"] = "whitehead";
      j["partition"] = partition_json(g, t.partition);
      j["base"] = signed_name(g, t.base_signed);
      break;
  }
  return j;
}

int parse_signed(const SimplicialGraph& g, const std::string& s) {
  Word w = word_from_string(g, s);
  require(w.size() == 1, "expected a single signed generator");
  return w[0];
}

TaggedGenerator tagged_parse(const SimplicialGraph& g,
                             const nlohmann::json& j) {
  TaggedGenerator t;
  std::string kind = j.value("kind", "");
  if (kind == "inversion") {
    t.kind = TaggedGenerator::Kind::Inversion;
    t.v = g.index(j.at("v").get<std::string>());
  } else if (kind == "fold") {
    t.kind = TaggedGenerator::Kind::Fold;
    t.x = g.index(j.at("x").get<std::string>());
    t.y_signed = parse_signed(g, j.at("y").get<std::string>());
    std::string side = j.value("side", "right");
    require(side == "right" || side == "left", "fold side must be right/left");
    t.side = side == "right" ? FoldSide::Right : FoldSide::Left;
  } else if (kind == "partial_conjugation") {
    t.kind = TaggedGenerator::Kind::PartialConjugation;
    t.x = parse_signed(g, j.at("x").get<std::string>());
    for (const auto& n : j.at("component"))
      t.c |= VSet(1) << g.index(n.get<std::string>());
  } else if (kind == "whitehead") {
    t.kind = TaggedGenerator::Kind::Whitehead;
    t.partition = partition_parse(g, j.at("partition"));
    t.base_signed = parse_signed(g, j.at("base").get<std::string>());
  } else {
    fail("unknown generator kind '" + kind + "'");
  }
  return t;
}

njson structure_json(const BlowupStructure& s) {
  njson j;
  j["treelike"] = s.treelike_ids();
  njson labels = njson::array();
  for (std::size_t e = 0; e < s.edge_vertex.size(); ++e)
    if (s.edge_vertex[e] >= 0) {
      njson l;
      l["edge"] = e;
      l["vertex"] = s.edge_vertex[e];
      l["forward"] = static_cast<bool>(s.edge_forward[e]);
      labels.push_back(l);
    }
  j["labels"] = labels;
  return j;
}

BlowupStructure structure_parse(const nlohmann::json& j, int hyperplanes,
                                int edges) {
  BlowupStructure s;
  s.treelike.assign(hyperplanes, false);
  s.edge_vertex.assign(edges, -1);
  s.edge_forward.assign(edges, true);
  for (const auto& t : j.at("treelike")) {
    int id = t.get<int>();
    require(id >= 0 && id < hyperplanes, "treelike hyperplane out of range");
    s.treelike[id] = true;
  }
  for (const auto& l : j.at("labels")) {
    int e = l.at("edge").get<int>();
    require(e >= 0 && e < edges, "label edge out of range");
    s.edge_vertex[e] = l.at("vertex").get<int>();
    s.edge_forward[e] = l.value("forward", true);
  }
  return s;
}

njson map_json(const CubicalMap& f) {
  njson j;
  j["vertices"] = f.vertex_map;
  j["darts"] = f.dart_map;
  return j;
}

CubicalMap map_parse(const nlohmann::json& j) {
  CubicalMap f;
  for (const auto& v : j.at("vertices")) f.vertex_map.push_back(v.get<int>());
  for (const auto& d : j.at("darts")) f.dart_map.push_back(d.get<int>());
  return f;
}

njson relations_json(const std::vector<std::string>& names,
                     const std::vector<RelationWord>& rels) {
  njson out = njson::array();
  for (const auto& r : rels) {
    njson w = njson::array();
    for (auto [i, e] : r) w.push_back(names[i] + (e >= 0 ? "" : "^-1"));
    out.push_back(w);
  }
  return out;
}

std::vector<RelationWord> relations_parse(const std::vector<std::string>& names,
                                          const nlohmann::json& j) {
  std::vector<RelationWord> out;
  for (const auto& r : j) {
    RelationWord w;
    for (const auto& tok : r) {
      std::string s = tok.get<std::string>();
      int e = 1;
      if (s.size() > 3 && s.substr(s.size() - 3) == "^-1") {
        e = -1;
        s = s.substr(0, s.size() - 3);
      }
      auto it = std::find(names.begin(), names.end(), s);
      require(it != names.end(), "relation names unknown target '" + s + "'");
      w.push_back({static_cast<int>(it - names.begin()), e});
    }
    out.push_back(w);
  }
  return out;
}

}  // namespace

std::string partition_to_json(const SimplicialGraph& g,
                              const WhiteheadPartition& p) {
  return partition_json(g, p).dump() + "\n";
}

WhiteheadPartition partition_from_json(const SimplicialGraph& g,
                                       const std::string& text) {
  return partition_parse(g, nlohmann::json::parse(text));
}

std::string collection_to_json(const SimplicialGraph& g,
                               const PartitionMultiset& pi) {
  njson a = njson::array();
  for (const auto& p : pi.entries) a.push_back(partition_json(g, p));
  return a.dump() + "\n";
}

PartitionMultiset collection_from_json(const SimplicialGraph& g,
                                       const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(std::string("collection JSON parse error: ") + e.what());
  }
  require(j.is_array(), "collection JSON must be an array of partitions");
  std::vector<WhiteheadPartition> es;
  for (const auto& p : j) es.push_back(partition_parse(g, p));
  PartitionMultiset pi(es);
  validate_multiset(g, pi);
  return pi;
}

std::string automorphism_to_json(const RaagAutomorphism& a) {
  njson j;
  for (int v = 0; v < a.graph().n(); ++v)
    j[a.graph().name(v)] = word_to_string(a.graph(), a.image(v));
  return j.dump() + "\n";
}

std::string blowup_to_json(const BlowupComplex& x) {
  njson j;
  j["graph"] = nlohmann::json::parse(graph_to_json(x.graph));
  njson ms = njson::array();
  for (const auto& p : x.pi.entries) ms.push_back(partition_json(x.graph, p));
  j["multiset"] = ms;
  j["regions"] = njson::array();
  for (const auto& r : x.regions) {
    njson rr = njson::array();
    for (auto c : r) rr.push_back(static_cast<int>(c));
    j["regions"].push_back(rr);
  }
  j["edges"] = njson::array();
  for (const auto& e : x.complex.edges) {
    njson je;
    if (e.label.kind == EdgeLabel::Kind::Vertex)
      je["label"] = x.graph.name(e.label.index);
    else
      je["label"] = njson{{"entry", e.label.index}};
    je["from"] = e.u;
    je["to"] = e.v;
    je["oriented"] = e.oriented;
    j["edges"].push_back(je);
  }
  j["hyperplanes"] = njson::array();
  for (int c = 0; c < x.hyps.count; ++c) {
    njson h;
    h["edges"] = x.hyps.duals[c];
    j["hyperplanes"].push_back(h);
  }
  j["certificate"] = canonical_certificate(x.complex);
  return j.dump() + "\n";
}

std::string catalog_to_json(const SimplicialGraph& g, const TypeCatalog& cat) {
  njson j;
  j["complete"] = cat.complete;
  j["types"] = njson::array();
  for (const auto& e : cat.entries) {
    njson t;
    njson ms = njson::array();
    for (const auto& p : e.representative.entries)
      ms.push_back(partition_json(g, p));
    t["collection"] = ms;
    t["regions"] = e.blowup.regions.size();
    t["edges"] = e.blowup.complex.ne();
    t["automorphism_order"] = e.automorphism_order;
    t["certificate"] = e.certificate;
    j["types"].push_back(t);
  }
  return j.dump() + "\n";
}

std::string problem_to_json(const RealizationProblem& p) {
  njson j;
  j["graph"] = nlohmann::json::parse(graph_to_json(p.g));
  j["targets"] = njson::array();
  for (const auto& t : p.targets) {
    njson jt;
    jt["name"] = t.name;
    njson gens = njson::array();
    for (const auto& gen : t.expression) gens.push_back(tagged_json(p.g, gen));
    jt["generators"] = gens;
    j["targets"].push_back(jt);
  }
  std::vector<std::string> names;
  for (const auto& t : p.targets) names.push_back(t.name);
  j["relations"] = relations_json(names, p.relations);
  njson b;
  b["max_entries"] = p.budget.max_entries;
  b["radius"] = p.budget.radius;
  b["time_limit_seconds"] = p.budget.time_limit_seconds;
  b["max_extra_entries"] = p.budget.max_extra_entries;
  b["all_treelike_structures"] = p.budget.all_treelike_structures;
  b["threads"] = p.budget.threads;
  j["budget"] = b;
  return j.dump() + "\n";
}

RealizationProblem problem_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(std::string("problem JSON parse error: ") + e.what());
  }
  RealizationProblem p;
  require(j.contains("graph"), "problem needs a graph");
  p.g = graph_from_json(j["graph"].dump());
  require(j.contains("targets") && j["targets"].is_array() &&
              !j["targets"].empty(),
          "problem needs targets");
  for (const auto& jt : j["targets"]) {
    RealizationTarget t;
    t.name = jt.at("name").get<std::string>();
    RaagAutomorphism acc = RaagAutomorphism::identity(p.g);
    for (const auto& jg : jt.value("generators", nlohmann::json::array())) {
      TaggedGenerator gen = tagged_parse(p.g, jg);
      t.expression.push_back(gen);
      acc = compose(acc, gen.realize(p.g));
    }
    t.automorphism = acc;
    p.targets.push_back(std::move(t));
  }
  std::vector<std::string> names;
  for (const auto& t : p.targets) names.push_back(t.name);
  if (j.contains("relations"))
    p.relations = relations_parse(names, j["relations"]);
  if (j.contains("budget")) {
    const auto& b = j["budget"];
    p.budget.max_entries = b.value("max_entries", -1);
    p.budget.radius = b.value("radius", -1);
    p.budget.time_limit_seconds = b.value("time_limit_seconds", 120.0);
    p.budget.max_extra_entries = b.value("max_extra_entries", 1);
    p.budget.all_treelike_structures =
        b.value("all_treelike_structures", false);
    p.budget.threads = b.value("threads", 1);
  }
  return p;
}

std::string certificate_to_json(const RealizationCertificate& c) {
  njson j;
  j["graph"] = nlohmann::json::parse(graph_to_json(c.g));
  njson ms = njson::array();
  for (const auto& p : c.pi.entries) ms.push_back(partition_json(c.g, p));
  j["multiset"] = ms;
  j["structure"] = structure_json(c.structure);
  j["targets"] = njson::array();
  for (std::size_t i = 0; i < c.targets.size(); ++i) {
    njson t;
    t["name"] = c.target_names[i];
    njson im, inv;
    for (int v = 0; v < c.g.n(); ++v) {
      im[c.g.name(v)] = word_to_string(c.g, c.targets[i].image(v));
      inv[c.g.name(v)] = word_to_string(c.g, c.targets[i].inverse_images()[v]);
    }
    t["images"] = im;
    t["inverse_images"] = inv;
    j["targets"].push_back(t);
  }
  j["relations"] = relations_json(c.target_names, c.relations);
  j["assignment"] = njson::array();
  for (const auto& f : c.assignment) j["assignment"].push_back(map_json(f));
  j["witnesses"] = njson::array();
  for (const auto& w : c.witnesses)
    j["witnesses"].push_back(word_to_string(c.g, w));
  j["radius"] = c.radius;
  // the complex itself, so third parties can re-verify without the search
  j["complex"] = nlohmann::json::parse(blowup_to_json(build_blowup(c.g, c.pi)));
  return j.dump() + "\n";
}

RealizationCertificate certificate_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(std::string("certificate JSON parse error: ") + e.what());
  }
  RealizationCertificate c;
  require(j.contains("graph"), "certificate needs a graph");
  c.g = graph_from_json(j["graph"].dump());
  std::vector<WhiteheadPartition> es;
  for (const auto& p : j.value("multiset", nlohmann::json::array()))
    es.push_back(partition_parse(c.g, p));
  c.pi = PartitionMultiset(es);
  BlowupComplex x = build_blowup(c.g, c.pi);
  c.structure = structure_parse(j.at("structure"), x.hyps.count,
                                x.complex.ne());
  for (const auto& t : j.at("targets")) {
    c.target_names.push_back(t.at("name").get<std::string>());
    std::vector<Word> im(c.g.n()), inv(c.g.n());
    for (int v = 0; v < c.g.n(); ++v) {
      im[v] = word_from_string(c.g,
                               t.at("images").at(c.g.name(v)).get<std::string>());
      inv[v] = word_from_string(
          c.g, t.at("inverse_images").at(c.g.name(v)).get<std::string>());
    }
    c.targets.push_back(RaagAutomorphism::from_images(c.g, im, inv));
  }
  c.relations = relations_parse(c.target_names, j.value("relations",
                                                        nlohmann::json::array()));
  for (const auto& f : j.at("assignment")) c.assignment.push_back(map_parse(f));
  for (const auto& w : j.at("witnesses"))
    c.witnesses.push_back(word_from_string(c.g, w.get<std::string>()));
  c.radius = j.value("radius", 0);
  return c;
}

}  // namespace gcx
