#include <catch_amalgamated.hpp>

#include <cmath>

#include "homoset/exact_search.hpp"
#include "homoset/families.hpp"
#include "homoset/spider.hpp"
#include "homoset/tree.hpp"
#include "oracle.hpp"

using namespace homoset;

namespace {

bool is_subtree(const InducedSubgraph& sub, const Graph& t) {
  if (!sub.graph.is_tree()) return false;
  for (const auto& [u, v] : sub.graph.edges())
    if (!t.has_edge(sub.original[u], sub.original[v])) return false;
  return true;
}

std::int64_t ceil_cbrt(std::size_t n) {
  std::int64_t c = 0;
  while (c * c * c < static_cast<std::int64_t>(n)) ++c;
  return c;
}

}  // namespace

TEST_CASE("root_order levels, parents and the ancestor order", "[tree_toolkit]") {
  const Graph s = spider_graph({2, 2, 1});
  const auto ro = root_order(s, 0);
  CHECK(ro.levels.size() == 3);
  CHECK(ro.levels[1] == std::vector<Vertex>{1, 3, 5});
  CHECK(ro.levels[2] == std::vector<Vertex>{2, 4});
  CHECK(ro.parent[2] == 1);
  CHECK(ro.parent[0] == kNoVertex);
  CHECK(ro.precedes(2, 0));
  CHECK(ro.precedes(2, 1));
  CHECK_FALSE(ro.precedes(1, 2));
  CHECK_FALSE(ro.comparable(2, 3));
  CHECK(ro.is_antichain({2, 4, 5}));
  CHECK_FALSE(ro.is_antichain({1, 2}));
  CHECK(ro.sibling_groups().size() == 3);
  CHECK_THROWS_AS(root_order(cycle_graph(4), 0), Error);
  CHECK_THROWS_AS(root_order(s, 9), Error);
}

TEST_CASE("bad vertex analysis examples", "[tree_toolkit]") {
  const auto p = bad_analysis(spider_graph({2, 2, 1}));
  CHECK(p.bad == 1);
  CHECK(p.bad3 == 1);
  CHECK(p.bad_l == 1);
  CHECK(p.bad_vertices == std::vector<Vertex>{0});
  CHECK(p.bad_paths == std::vector<std::vector<Vertex>>{{5}});

  CHECK(bad_analysis(spider_graph({2, 2, 2, 2})).bad == 0);
  CHECK(bad_analysis(path_graph(7)).bad == 0);

  const auto star = bad_analysis(star_graph(5));
  CHECK(star.bad == 1);
  CHECK(star.bad3 == 0);
  CHECK(star.bad_l == 1);
}

TEST_CASE("pendent paths hang by an endpoint", "[tree_toolkit]") {
  const Graph s = spider_graph({3, 1, 1});
  const auto paths = pendent_paths(s, 0);
  REQUIRE(paths.size() == 3);
  CHECK(paths[0] == std::vector<Vertex>{1, 2, 3});
  CHECK(pendent_paths(s, 1).empty());
  // The branch at vertex 1 of a double star is not a path.
  const Graph ds = caterpillar_graph({2, 2});
  CHECK(pendent_paths(ds, 0).size() == 2);
}

TEST_CASE("clean and trim examples", "[tree_toolkit]") {
  const Graph s = spider_graph({2, 2, 1});
  const auto cleaned = clean_tree(s);
  CHECK(cleaned.graph.vertex_count() == 5);
  CHECK(cleaned.original == std::vector<Vertex>{0, 1, 2, 3, 4});
  const auto trimmed = trim_tree(s);
  CHECK(trimmed.original == std::vector<Vertex>{0, 1, 3});
  CHECK(is_subtree(cleaned, s));
  CHECK(is_subtree(trimmed, s));
}

TEST_CASE("cleaned and trimmed trees are subtrees", "[tree_toolkit]") {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph t = random_tree(3 + rng.below(30), rng);
    const auto p = bad_analysis(t);
    const auto c = clean_tree(t);
    CHECK(is_subtree(c, t));
    CHECK(c.graph.vertex_count() == t.vertex_count() - p.bad_l);
    const auto r = trim_tree(t);
    CHECK(is_subtree(r, t));
    CHECK(r.graph.vertex_count() <= c.graph.vertex_count());
  }
}

TEST_CASE("sibling_partition examples and errors", "[tree_toolkit]") {
  const Graph star = star_graph(5);
  const auto ro = root_order(star, 0);
  const auto c = sibling_partition(star, ro, {1, 2, 3, 4, 5});
  CHECK(c.s1 == VertexSet{1, 3});
  CHECK(c.s2 == VertexSet{2, 4});
  CHECK(odd_sibling_families(ro, {1, 2, 3, 4, 5}) == 1);

  const Graph s = spider_graph({2, 2, 1});
  const auto rs = root_order(s, 0);
  CHECK_THROWS_AS(sibling_partition(s, rs, {1, 2}), Error);
  CHECK_THROWS_AS(sibling_partition(s, rs, {0}), Error);
  CHECK_THROWS_AS(sibling_partition(s, rs, {2, 3}), Error);
  CHECK(sibling_partition(s, rs, {1, 3}).size() == 1);
}

TEST_CASE("sibling partitions of random antichains certify with |S| - k' vertices", "[tree_toolkit]") {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const Graph t = random_tree(3 + rng.below(25), rng);
    const auto ro = root_order(t, tree_center(t));
    if (ro.levels.size() < 2) continue;
    const auto depth = 1 + rng.below(ro.levels.size() - 1);
    std::vector<Vertex> s;
    for (const auto& group : ro.sibling_groups())
      if (group.size() >= 2 && ro.depth[group.front()] == depth && rng.chance(0.7))
        s.insert(s.end(), group.begin(), group.end());
    if (s.empty()) continue;
    const VertexSet set(s);
    REQUIRE(ro.is_antichain(set));
    const auto c = sibling_partition(t, ro, set);
    CHECK(verify_certificate(t, c));
    CHECK(2 * c.size() == set.size() - odd_sibling_families(ro, set));
    CHECK(3 * 2 * c.size() >= 2 * set.size());
  }
}

TEST_CASE("level gap examples", "[tree_toolkit]") {
  CHECK(level_gap_construction(star_graph(8)).size() == 4);
  CHECK(level_gap_construction(path_graph(9)).size() == 4);
  std::vector<Edge> binary;
  for (Vertex v = 1; v < 15; ++v) binary.emplace_back((v - 1) / 2, v);
  const Graph bt(15, binary);
  const auto c = level_gap_construction(bt);
  CHECK(c.size() >= 2);
  CHECK(verify_certificate(bt, c));
  CHECK(tree_center(path_graph(9)) == 4);
  CHECK(tree_center(path_graph(4)) == 1);
}

TEST_CASE("level gap or halving reaches ceil(n^(1/3)) - 1 on random trees", "[tree_toolkit]") {
  Rng rng(23);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 2 + rng.below(150);
    const Graph t = random_tree(n, rng);
    const auto c = level_gap_construction(t);
    CHECK(verify_certificate(t, c));
    CHECK(static_cast<std::int64_t>(c.size()) >= ceil_cbrt(n) - 1);
  }
}

TEST_CASE("bound report examples", "[tree_toolkit]") {
  const auto p10 = lemma_bounds(path_graph(10));
  REQUIRE(p10.find("diameter"));
  CHECK(p10.find("diameter")->value == Rational(10));
  CHECK(p10.find("diameter")->h_ceil() == 5);
  CHECK(p10.find("sibling") == nullptr);
  CHECK(p10.best.size() == 5);

  const Graph s = spider_graph({2, 2, 1});
  const auto r = lemma_bounds(s, VertexSet{1, 3, 5});
  CHECK(r.profile.bad == 1);
  CHECK(r.find("sibling")->value == Rational(2));
  CHECK(r.find("sibling_two_thirds")->value == Rational(2));
  CHECK(r.find("leaves_minus_bad")->value == Rational(2));
  CHECK(r.find("level")->value == Rational(1, 2));
  CHECK(r.find("cleaned")->value == Rational(5, 4));
  CHECK(r.find("degree_low")->value == Rational(6 - 2 - 4, 6));
  CHECK(r.find("degree_branching")->value == Rational(6 - 3 - 2, 5));
  CHECK(r.degree_checks.all());
  CHECK_THROWS_AS(lemma_bounds(cycle_graph(5)), Error);
}

TEST_CASE("bounds against exact h on every tree up to 9 vertices", "[tree_toolkit]") {
  for (std::size_t n = 2; n <= 9; ++n)
    for (const auto& t : all_trees(n)) {
      const auto h = static_cast<std::int64_t>(oracle::max_h(t));
      const auto r = lemma_bounds(t);
      CHECK(r.degree_checks.all());
      CHECK(verify_certificate(t, r.best));
      CHECK(static_cast<std::int64_t>(r.best.size()) <= h);
      for (const auto& b : r.bounds) {
        INFO(b.name << " on n = " << n);
        CHECK(h >= b.h_floor());
        if (b.name != "diameter") CHECK(h >= b.h_ceil());
      }
    }
}

TEST_CASE("the diameter bound read with a ceiling overshoots on short paths", "[tree_toolkit]") {
  const auto r = lemma_bounds(path_graph(3));
  CHECK(r.find("diameter")->h_ceil() == 2);
  CHECK(max_homometric(path_graph(3)).certificate.size() == 1);
  CHECK(r.find("diameter")->h_floor() == 1);
}

TEST_CASE("leaf count identity holds on random trees", "[tree_toolkit]") {
  Rng rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = bad_analysis(random_tree(2 + rng.below(200), rng));
    std::int64_t weighted = 0;
    for (std::size_t i = 3; i < p.degree_counts.size(); ++i)
      weighted += static_cast<std::int64_t>(p.degree_counts[i]) * static_cast<std::int64_t>(i - 2);
    if (p.n > 2) CHECK(static_cast<std::int64_t>(p.d(1)) == 2 + weighted);
    CHECK(degree_inequalities(p).all());
  }
}

TEST_CASE("caterpillar examples", "[tree_toolkit]") {
  CHECK(caterpillar_construction(path_graph(12)).size() == 6);
  const Graph two = caterpillar_graph({5, 5});
  const auto c = caterpillar_construction(two);
  CHECK(c.size() >= 2);
  CHECK(verify_certificate(two, c));
  CHECK(caterpillar_construction(star_graph(9)).size() == 4);
  CHECK(caterpillar_spine(path_graph(5))->size() == 3);
  CHECK_FALSE(caterpillar_spine(spider_graph({2, 2, 2})));
  CHECK_THROWS_AS(caterpillar_construction(spider_graph({2, 2, 2})), Error);
}

TEST_CASE("caterpillars reach floor(n/6)", "[tree_toolkit]") {
  Rng rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t spine = 1 + rng.below(8);
    std::vector<std::size_t> leaves(spine);
    for (auto& l : leaves) l = rng.below(7);
    const Graph t = caterpillar_graph(leaves);
    if (t.vertex_count() < 2) continue;
    const auto c = caterpillar_construction(t);
    CHECK(verify_certificate(t, c));
    CHECK(c.size() >= t.vertex_count() / 6);
  }
}

TEST_CASE("haircomb recognition and construction", "[tree_toolkit]") {
  const Graph comb = haircomb_graph({0, 3, 0, 2, 1, 0});
  const auto shape = haircomb_shape(comb);
  REQUIRE(shape);
  std::size_t covered = shape->spine.size();
  for (const auto& leg : shape->legs) covered += leg.size();
  CHECK(covered == comb.vertex_count());
  CHECK(comb.degree(shape->spine.front()) == 1);
  CHECK(comb.degree(shape->spine.back()) == 1);

  CHECK(haircomb_shape(path_graph(6))->legs.empty());
  CHECK_FALSE(haircomb_shape(star_graph(4)));
  const Graph claws = build_graph(10, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {2, 6}, {2, 7}, {3, 8}, {3, 9}});
  CHECK_FALSE(haircomb_shape(claws));
  CHECK_THROWS_AS(haircomb_construction(star_graph(4)), Error);

  Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t spine = 1 + rng.below(10);
    std::vector<std::size_t> legs(spine);
    for (auto& l : legs) l = rng.below(6);
    const Graph t = haircomb_graph(legs);
    if (t.vertex_count() < 2) continue;
    const auto c = haircomb_construction(t);
    CHECK(verify_certificate(t, c));
    const auto target = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(t.vertex_count())) / 2.0));
    CHECK(c.size() >= target);
  }
}
