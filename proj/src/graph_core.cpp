#include "gcx/graph_core.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace gcx {

SimplicialGraph::SimplicialGraph(
    std::vector<std::string> vertex_names,
    const std::vector<std::pair<std::string, std::string>>& edges) {
  std::sort(vertex_names.begin(), vertex_names.end());
  for (std::size_t i = 0; i + 1 < vertex_names.size(); ++i)
    require(vertex_names[i] != vertex_names[i + 1],
            "duplicate vertex name '" + vertex_names[i] + "'");
  require(static_cast<int>(vertex_names.size()) <= kMaxVertices,
          "graph exceeds the vertex budget of " + std::to_string(kMaxVertices));
  names_ = std::move(vertex_names);
  adj_.assign(names_.size(), 0);
  for (const auto& [a, b] : edges) {
    int u = index(a), v = index(b);
    require(u != v, "loop edge at vertex '" + a + "'");
    adj_[u] |= (VSet(1) << v);
    adj_[v] |= (VSet(1) << u);
  }
}

int SimplicialGraph::index(const std::string& name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  require(it != names_.end() && *it == name, "unknown vertex '" + name + "'");
  return static_cast<int>(it - names_.begin());
}

std::vector<std::pair<int, int>> SimplicialGraph::edge_list() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n(); ++u)
    for (int v = u + 1; v < n(); ++v)
      if (adjacent(u, v)) out.push_back({u, v});
  return out;
}

VSet link(const SimplicialGraph& g, int v) {
  require(v >= 0 && v < g.n(), "unknown vertex index");
  return g.adj_mask(v);
}

VSet star(const SimplicialGraph& g, int v) {
  return link(g, v) | (VSet(1) << v);
}

VSet link_of_set(const SimplicialGraph& g, VSet s) {
  require((s & ~g.all_vertices()) == 0, "vertex set outside graph");
  VSet acc = g.all_vertices();  // empty intersection = everything
  for_each_bit(s, [&](int v) { acc &= g.adj_mask(v); });
  return acc;
}

VSet neighborhood(const SimplicialGraph& g, VSet s) {
  VSet out = s;
  for (int v = 0; v < g.n(); ++v)
    if (g.adj_mask(v) & s) out |= (VSet(1) << v);
  return out;
}

std::vector<VSet> components(const SimplicialGraph& g, VSet s) {
  require((s & ~g.all_vertices()) == 0, "vertex set outside graph");
  std::vector<VSet> out;
  VSet left = s;
  while (left) {
    VSet comp = VSet(1) << lowest_bit(left);
    for (;;) {
      VSet grow = comp;
      for_each_bit(comp, [&](int v) { grow |= (g.adj_mask(v) & s); });
      if (grow == comp) break;
      comp = grow;
    }
    out.push_back(comp);
    left &= ~comp;
  }
  return out;
}

SSet signed_link(const SimplicialGraph& g, int v) {
  return sset_of_vset(link(g, v));
}

bool signed_adjacent(const SimplicialGraph& g, int a, int b) {
  int u = sv_vertex(a), v = sv_vertex(b);
  return u != v && g.adjacent(u, v);
}

std::vector<SSet> components_double(const SimplicialGraph& g, SSet removed) {
  SSet left = g.all_signed() & ~removed;
  std::vector<SSet> out;
  while (left) {
    SSet comp = SSet(1) << lowest_bit(left);
    for (;;) {
      SSet grow = comp;
      for_each_bit(comp, [&](int s) {
        SSet nb = sset_of_vset(g.adj_mask(sv_vertex(s))) & left;
        grow |= nb;
      });
      if (grow == comp) break;
      comp = grow;
    }
    out.push_back(comp);
    left &= ~comp;
  }
  return out;
}

FoldClasses fold_classes(const SimplicialGraph& g) {
  FoldClasses fc;
  std::vector<bool> seen(g.n(), false);
  for (int v = 0; v < g.n(); ++v) {
    if (seen[v]) continue;
    VSet cls = 0;
    for (int w = v; w < g.n(); ++w)
      if (g.adj_mask(w) == g.adj_mask(v)) {
        cls |= (VSet(1) << w);
        seen[w] = true;
      }
    fc.classes.push_back(cls);
    fc.class_links.push_back(g.adj_mask(v));
  }
  std::size_t k = fc.classes.size();
  fc.leq.assign(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      fc.leq[i][j] = (fc.class_links[i] & ~fc.class_links[j]) == 0;
  fc.maximal.assign(k, true);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j && fc.leq[i][j] && !fc.leq[j][i]) fc.maximal[i] = false;
  return fc;
}

// ---- ingestion / emission ----

SimplicialGraph graph_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(std::string("graph JSON parse error: ") + e.what());
  }
  require(j.is_object() && j.contains("vertices") && j["vertices"].is_array(),
          "graph JSON needs a \"vertices\" array");
  std::vector<std::string> vs;
  for (const auto& v : j["vertices"]) {
    require(v.is_string(), "graph vertices must be strings");
    vs.push_back(v.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> es;
  if (j.contains("edges")) {
    require(j["edges"].is_array(), "graph \"edges\" must be an array");
    for (const auto& e : j["edges"]) {
      require(e.is_array() && e.size() == 2 && e[0].is_string() && e[1].is_string(),
              "each edge must be a pair of vertex names");
      es.push_back({e[0].get<std::string>(), e[1].get<std::string>()});
    }
  }
  return SimplicialGraph(vs, es);
}

std::string graph_to_json(const SimplicialGraph& g) {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::json::array();
  for (const auto& s : g.names()) j["vertices"].push_back(s);
  j["edges"] = nlohmann::json::array();
  for (auto [u, v] : g.edge_list())
    j["edges"].push_back({g.name(u), g.name(v)});
  return j.dump() + "\n";
}

SimplicialGraph graph_from_dot(const std::string& text) {
  // Tokens: identifiers, '--', '{', '}', ';'. Comments are not supported.
  std::vector<std::string> toks;
  std::size_t i = 0;
  auto is_id = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '{' || c == '}' || c == ';') {
      toks.push_back(std::string(1, c));
      ++i;
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
      toks.push_back("--");
      i += 2;
    } else if (is_id(c)) {
      std::size_t j = i;
      while (j < text.size() && is_id(text[j])) ++j;
      toks.push_back(text.substr(i, j - i));
      i = j;
    } else {
      fail(std::string("unexpected character '") + c + "' in DOT input");
    }
  }
  std::size_t p = 0;
  auto eat = [&](const std::string& what) {
    require(p < toks.size() && toks[p] == what, "DOT: expected '" + what + "'");
    ++p;
  };
  require(p < toks.size() && toks[p] == "graph", "DOT: expected 'graph'");
  ++p;
  if (p < toks.size() && toks[p] != "{") ++p;  // optional name
  eat("{");
  std::set<std::string> vs;
  std::vector<std::pair<std::string, std::string>> es;
  while (p < toks.size() && toks[p] != "}") {
    require(toks[p] != "--" && toks[p] != ";" && toks[p] != "{",
            "DOT: expected a vertex name");
    std::string a = toks[p++];
    vs.insert(a);
    while (p < toks.size() && toks[p] == "--") {
      ++p;
      require(p < toks.size(), "DOT: dangling '--'");
      std::string b = toks[p++];
      vs.insert(b);
      es.push_back({a, b});
      a = b;
    }
    if (p < toks.size() && toks[p] == ";") ++p;
  }
  eat("}");
  return SimplicialGraph(std::vector<std::string>(vs.begin(), vs.end()), es);
}

std::string graph_to_dot(const SimplicialGraph& g) {
  std::ostringstream os;
  os << "graph g {\n";
  std::vector<bool> in_edge(g.n(), false);
  for (auto [u, v] : g.edge_list()) in_edge[u] = in_edge[v] = true;
  for (int v = 0; v < g.n(); ++v)
    if (!in_edge[v]) os << "  " << g.name(v) << ";\n";
  for (auto [u, v] : g.edge_list())
    os << "  " << g.name(u) << " -- " << g.name(v) << ";\n";
  os << "}\n";
  return os.str();
}

SimplicialGraph graph_from_text(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[' ? graph_from_json(text) : graph_from_dot(text);
  }
  fail("empty graph input");
}

std::string vset_to_string(const SimplicialGraph& g, VSet s) {
  std::string out = "{";
  bool first = true;
  for_each_bit(s, [&](int v) {
    if (!first) out += ",";
    out += g.name(v);
    first = false;
  });
  return out + "}";
}

std::string signed_name(const SimplicialGraph& g, int s) {
  return g.name(sv_vertex(s)) + (sv_negative(s) ? "^-1" : "");
}

std::string sset_to_string(const SimplicialGraph& g, SSet s) {
  std::string out = "{";
  bool first = true;
  for_each_bit(s, [&](int b) {
    if (!first) out += ",";
    out += signed_name(g, b);
    first = false;
  });
  return out + "}";
}

}  // namespace gcx
