#include "gcx/graph_core.hpp"

#include "doctest.h"
#include "fixtures.hpp"

using namespace gcx;
using namespace gcx::testing;

TEST_CASE("links, stars and link_of_set on the figure-4 graph") {
  SimplicialGraph g = figure4();
  CHECK(link(g, g.index("a")) == vset(g, {"e", "c", "d"}));
  CHECK(star(g, g.index("a")) == vset(g, {"a", "e", "c", "d"}));
  CHECK(link_of_set(g, vset(g, {"c", "d"})) == vset(g, {"a", "b"}));
  CHECK(link_of_set(g, vset(g, {"a", "b", "c", "d"})) == 0);
  CHECK(link_of_set(g, 0) == g.all_vertices());
}

TEST_CASE("links on complete and discrete graphs") {
  SimplicialGraph k3 = complete(3);
  CHECK(link(k3, k3.index("p")) == vset(k3, {"q", "r"}));
  CHECK(link_of_set(k3, vset(k3, {"p", "q"})) == vset(k3, {"r"}));
  SimplicialGraph f2 = free2();
  CHECK(link(f2, f2.index("x")) == 0);
  CHECK_THROWS_AS(f2.index("nope"), Error);
}

TEST_CASE("components of induced subgraphs") {
  SimplicialGraph g = figure4();
  auto comps = components(g, g.all_vertices() & ~star(g, g.index("c")));
  CHECK(comps.size() == 3);  // {d}, {e}, {f}
  CHECK(comps[0] == vset(g, {"d"}));
  CHECK(comps[1] == vset(g, {"e"}));
  CHECK(comps[2] == vset(g, {"f"}));
  for (const auto& c : comps) CHECK(c != 0);
}

TEST_CASE("the double graph") {
  SimplicialGraph g = figure4();
  auto singletons = components_double(g, signed_link(g, g.index("c")));
  CHECK(singletons.size() == 8);
  for (const auto& s : singletons) CHECK(popcount(s) == 1);

  SimplicialGraph f2 = free2();
  CHECK(components_double(f2, 0).size() == 4);
  // {v, v^-1} never adjacent
  for (int v = 0; v < f2.n(); ++v)
    CHECK(!signed_adjacent(f2, sv(v, false), sv(v, true)));
}

TEST_CASE("fold classes and their order") {
  SimplicialGraph g = figure4();
  FoldClasses fc = fold_classes(g);
  REQUIRE(fc.classes.size() == 5);
  CHECK(fc.classes[0] == vset(g, {"a"}));
  CHECK(fc.classes[1] == vset(g, {"b"}));
  CHECK(fc.classes[2] == vset(g, {"c", "d"}));
  CHECK(fc.classes[3] == vset(g, {"e"}));
  CHECK(fc.classes[4] == vset(g, {"f"}));
  std::vector<VSet> maximal;
  for (std::size_t i = 0; i < fc.classes.size(); ++i)
    if (fc.maximal[i]) maximal.push_back(fc.classes[i]);
  CHECK(maximal == std::vector<VSet>{vset(g, {"a"}), vset(g, {"b"}),
                                     vset(g, {"c", "d"})});
}

TEST_CASE("fold classes on discrete and complete graphs") {
  SimplicialGraph f3 = free_group(3);
  FoldClasses fc = fold_classes(f3);
  REQUIRE(fc.classes.size() == 1);
  CHECK(fc.classes[0] == f3.all_vertices());
  CHECK(fc.maximal[0]);

  FoldClasses k = fold_classes(complete(3));
  CHECK(k.classes.size() == 3);
  for (bool m : k.maximal) CHECK(m);
}

TEST_CASE("fold classes partition V and match link equality by brute force") {
  for (const auto& g : small_graphs(4)) {
    FoldClasses fc = fold_classes(g);
    VSet all = 0;
    for (VSet c : fc.classes) {
      CHECK((all & c) == 0);
      all |= c;
    }
    CHECK(all == g.all_vertices());
    for (int u = 0; u < g.n(); ++u)
      for (int v = 0; v < g.n(); ++v) {
        bool same_class = false;
        for (VSet c : fc.classes)
          if (((c >> u) & 1) && ((c >> v) & 1)) same_class = true;
        CHECK(same_class == (g.adj_mask(u) == g.adj_mask(v)));
      }
  }
}

TEST_CASE("basic link/star invariants hold on all graphs with 4 vertices") {
  for (const auto& g : small_graphs(4)) {
    for (int v = 0; v < g.n(); ++v) {
      CHECK(((link(g, v) >> v) & 1) == 0);
      CHECK((link(g, v) & ~star(g, v)) == 0);
      CHECK(popcount(star(g, v)) == popcount(link(g, v)) + 1);
    }
    // doubled graph: restriction to positive vertices equals g
    for (int u = 0; u < g.n(); ++u)
      for (int v = 0; v < g.n(); ++v)
        if (u != v)
          CHECK(signed_adjacent(g, sv(u, false), sv(v, false)) ==
                g.adjacent(u, v));
  }
}

TEST_CASE("JSON round trip is bit-exact") {
  SimplicialGraph g = figure4();
  std::string j = graph_to_json(g);
  SimplicialGraph g2 = graph_from_json(j);
  CHECK(g == g2);
  CHECK(graph_to_json(g2) == j);
}

TEST_CASE("DOT round trip") {
  SimplicialGraph g = figure4();
  std::string d = graph_to_dot(g);
  SimplicialGraph g2 = graph_from_dot(d);
  CHECK(g == g2);
  CHECK(graph_to_dot(g2) == d);
  SimplicialGraph g3 = graph_from_dot("graph { x -- y -- z; w; }");
  CHECK(g3.n() == 4);
  CHECK(g3.adjacent(g3.index("x"), g3.index("y")));
  CHECK(g3.adjacent(g3.index("y"), g3.index("z")));
  CHECK(!g3.adjacent(g3.index("x"), g3.index("z")));
}

TEST_CASE("malformed inputs are rejected") {
  CHECK_THROWS_AS(graph_from_json("{\"vertices\": 3}"), Error);
  CHECK_THROWS_AS(graph_from_json("not json"), Error);
  CHECK_THROWS_AS(graph_from_dot("digraph { a -> b; }"), Error);
  CHECK_THROWS_AS(
      SimplicialGraph({"a", "a"}, {}), Error);
  CHECK_THROWS_AS(SimplicialGraph({"a"}, {{"a", "a"}}), Error);
}
