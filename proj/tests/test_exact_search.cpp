#include <catch_amalgamated.hpp>

#include <set>

#include "homoset/exact_search.hpp"
#include "homoset/families.hpp"
#include "homoset/spider.hpp"
#include "oracle.hpp"

using namespace homoset;

TEST_CASE("max_homometric small examples", "[exact_search]") {
  CHECK(max_homometric(path_graph(5)).certificate.size() == 2);
  CHECK(max_homometric(cycle_graph(6)).certificate.size() == 3);
  CHECK(max_homometric(star_graph(3)).certificate.size() == 1);
  CHECK(max_homometric(path_graph(2)).certificate.size() == 1);

  const auto r = max_homometric(path_graph(6));
  CHECK(r.exact);
  CHECK(r.certificate.provenance == "exhaustive");
  CHECK(verify_certificate(path_graph(6), r.certificate));

  CHECK_THROWS_AS(max_homometric(Graph(1, {})), Error);
  CHECK_THROWS_AS(max_homometric(build_graph(4, {{0, 1}, {2, 3}})), Error);
}

TEST_CASE("paths and cycles reach floor(n/2)", "[exact_search]") {
  for (std::size_t n = 3; n <= 12; ++n) {
    INFO("n = " << n);
    CHECK(max_homometric(path_graph(n)).certificate.size() == n / 2);
    CHECK(max_homometric(cycle_graph(n)).certificate.size() == n / 2);
  }
}

TEST_CASE("max_homometric agrees with the brute-force reference on random graphs", "[exact_search]") {
  Rng rng(101);
  for (int trial = 0; trial < 80; ++trial) {
    const Graph g = random_connected_graph(2 + rng.below(7), 0.1 + 0.1 * static_cast<double>(rng.below(6)), rng);
    const auto r = max_homometric(g);
    REQUIRE(r.exact);
    CHECK(r.certificate.size() == oracle::max_h(g));
    CHECK(verify_certificate(g, r.certificate));
  }
}

TEST_CASE("max_homometric agrees with the brute-force reference on every tree up to 10 vertices",
          "[exact_search]") {
  for (std::size_t n = 2; n <= 10; ++n)
    for (const auto& t : all_trees(n)) {
      const auto r = max_homometric(t);
      CHECK(r.certificate.size() == oracle::max_h(t));
    }
}

TEST_CASE("find_homometric_of_size examples", "[exact_search]") {
  const auto pet = find_homometric_of_size(petersen_graph(), 3);
  REQUIRE(pet);
  CHECK(verify_certificate(petersen_graph(), *pet));

  const auto p4 = find_homometric_of_size(path_graph(4), 2);
  REQUIRE(p4);
  CHECK(p4->s1 == VertexSet{0, 1});
  CHECK(p4->s2 == VertexSet{2, 3});

  CHECK_FALSE(find_homometric_of_size(path_graph(3), 2));
  CHECK_FALSE(find_homometric_of_size(path_graph(5), 0));
  CHECK_FALSE(find_homometric_of_size(path_graph(5), 3));
}

TEST_CASE("for_each_homometric_pair lists exactly the reference pairs", "[exact_search]") {
  Rng rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = random_connected_graph(3 + rng.below(6), 0.3, rng);
    std::set<std::pair<std::uint64_t, std::uint64_t>> got;
    for_each_homometric_pair(g, 1, g.vertex_count() / 2, [&](std::uint64_t a, std::uint64_t b) {
      got.emplace(std::min(a, b), std::max(a, b));
      return true;
    });
    std::set<std::pair<std::uint64_t, std::uint64_t>> want;
    for (auto [a, b] : oracle::homometric_pairs(g, 1, g.vertex_count() / 2)) want.emplace(a, b);
    CHECK(got == want);
  }
}

TEST_CASE("for_each_homometric_pair stops when the visitor says so", "[exact_search]") {
  std::size_t calls = 0;
  const bool finished = for_each_homometric_pair(cycle_graph(8), 1, 4, [&](std::uint64_t, std::uint64_t) {
    ++calls;
    return false;
  });
  CHECK_FALSE(finished);
  CHECK(calls == 1);
}

TEST_CASE("budget exhaustion falls back to a flagged lower bound", "[exact_search]") {
  const auto r = max_homometric(path_graph(20), {1000, 1});
  CHECK_FALSE(r.exact);
  CHECK(r.certificate.size() == 10);
  CHECK(verify_certificate(path_graph(20), r.certificate));

  const auto c = max_homometric(cycle_graph(20), {1000, 1});
  CHECK_FALSE(c.exact);
  CHECK(c.certificate.size() >= 5);
  CHECK_THROWS_AS(find_homometric_of_size(cycle_graph(20), 8, {10, 1}), Error);
}

TEST_CASE("results do not depend on the thread count", "[exact_search]") {
  Rng rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = random_connected_graph(8 + rng.below(5), 0.25, rng);
    const auto one = max_homometric(g, {SearchOptions{}.budget, 1});
    for (unsigned t : {2u, 3u, 4u}) {
      const auto many = max_homometric(g, {SearchOptions{}.budget, t});
      CHECK(many.certificate.s1 == one.certificate.s1);
      CHECK(many.certificate.s2 == one.certificate.s2);
    }
  }
}

TEST_CASE("every half of an even cycle is homometric to its complement", "[exact_search]") {
  for (std::size_t m : {2u, 3u, 4u, 5u, 6u}) CHECK(cycle_complement_check(m));
  CHECK_THROWS_AS(cycle_complement_check(1), Error);
}

TEST_CASE("difference_multiset examples", "[exact_search]") {
  CHECK(difference_multiset({0, 1, 3}).values() == std::vector<std::int64_t>{1, 2, 3});
  CHECK(difference_multiset({5, 5}).values() == std::vector<std::int64_t>{0});
  CHECK(difference_multiset({3, 0, 1}) == difference_multiset({10, 11, 13}));
  CHECK(integers_homometric({0, 1, 4, 10, 12, 17}, {0, 1, 8, 11, 13, 17}));
  CHECK_FALSE(integers_homometric({0, 1, 2}, {0, 1, 3}));
  CHECK_THROWS_AS(difference_multiset({4}), Error);
}

TEST_CASE("sum and difference sets are homometric", "[exact_search]") {
  const auto [a, b] = rosenblatt_seymour({0, 1, 3}, {0, 1, 5});
  CHECK(a.values() == std::vector<std::int64_t>{0, 1, 1, 2, 3, 4, 5, 6, 8});
  CHECK(b.values() == std::vector<std::int64_t>{0, 1, 3, 4, 5, 5, 6, 7, 8});
  CHECK(integers_homometric(a, b));

  const auto [s1, s2] = rosenblatt_seymour({7}, {0, 2, 9});
  CHECK(s1 == IntegerMultiset({0, 2, 9}));
  CHECK(integers_homometric(s1, s2));
  CHECK_THROWS_AS(rosenblatt_seymour({}, {1}), Error);

  Rng rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::int64_t> u(1 + rng.below(6)), v(1 + rng.below(6));
    for (auto& x : u) x = static_cast<std::int64_t>(rng.below(41)) - 20;
    for (auto& x : v) x = static_cast<std::int64_t>(rng.below(41)) - 20;
    const auto [p, q] = rosenblatt_seymour(IntegerMultiset(u), IntegerMultiset(v));
    if (p.size() < 2) continue;
    CHECK(integers_homometric(p, q));
  }
}

TEST_CASE("are_similar examples", "[exact_search]") {
  const DistanceMatrix p6(path_graph(6));
  CHECK(are_similar(p6, {0, 1, 2}, {3, 4, 5}));
  CHECK(are_similar(p6, {0, 2}, {3, 5}));
  CHECK_FALSE(are_similar(p6, {0, 1}, {2, 4}));
  CHECK_THROWS_AS(are_similar(p6, {0, 1}, {1, 2}), Error);
  CHECK_THROWS_AS(are_similar(p6, {0, 1}, {2}), Error);

  const DistanceMatrix c8(cycle_graph(8));
  CHECK(are_similar(c8, {0, 1, 3}, {4, 5, 7}));
  // A reflection of the cycle.
  CHECK(are_similar(c8, {0, 1, 2, 4}, {3, 5, 6, 7}));
}

TEST_CASE("homometric but not similar on the four-leg spider", "[exact_search]") {
  const SpiderSpec s({6, 6, 6, 6});
  const DistanceMatrix dm(s.graph());
  const VertexSet a{s.leg_vertex(0, 1), s.leg_vertex(1, 1), s.leg_vertex(2, 1), s.leg_vertex(3, 5)};
  const VertexSet b{s.head(), s.leg_vertex(0, 3), s.leg_vertex(1, 3), s.leg_vertex(2, 3)};
  CHECK(distance_multiset(dm, a) == distance_multiset(dm, b));
  CHECK(distance_multiset(dm, a).sorted() == std::vector<Vertex>{4, 4, 4, 8, 8, 8});
  CHECK_FALSE(are_similar(dm, a, b));
}

TEST_CASE("similar pairs are homometric", "[exact_search]") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_connected_graph(4 + rng.below(7), 0.3, rng);
    const DistanceMatrix dm(g);
    std::vector<Vertex> a, b;
    for (Vertex v = 0; v < g.vertex_count(); ++v) (rng.chance(0.5) ? a : b).push_back(v);
    const auto k = std::min<std::size_t>({a.size(), b.size(), 5});
    if (k == 0) continue;
    a.resize(k);
    b.resize(k);
    if (are_similar(dm, VertexSet(a), VertexSet(b))) CHECK(verify_homometric(dm, VertexSet(a), VertexSet(b)));
  }
}
