#include <catch_amalgamated.hpp>

#include "homoset/certificate.hpp"
#include "homoset/families.hpp"
#include "homoset/graph.hpp"
#include "homoset/rational.hpp"
#include "oracle.hpp"

using namespace homoset;

namespace {

std::vector<Vertex> seq(std::initializer_list<Vertex> v) { return v; }

}  // namespace

TEST_CASE("build_graph accepts simple graphs and rejects loops", "[graph_core]") {
  const Graph e = build_graph(2, {{0, 1}});
  CHECK(e.edge_count() == 1);
  CHECK(DistanceMatrix(e).diameter() == 1);

  const Graph p4 = build_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(p4.is_tree());
  CHECK(p4.degree(0) == 1);
  CHECK(p4.degree(1) == 2);
  CHECK(p4.neighbors(2) == seq({1, 3}));

  CHECK_THROWS_AS(build_graph(3, {{0, 0}}), Error);
  CHECK_THROWS_AS(build_graph(3, {{0, 3}}), Error);
}

TEST_CASE("duplicate edges collapse and adjacency matches the edge set", "[graph_core]") {
  const Graph g = build_graph(3, {{0, 1}, {1, 0}, {1, 2}});
  CHECK(g.edge_count() == 2);
  for (const auto& [u, v] : g.edges()) {
    CHECK(g.has_edge(u, v));
    CHECK(g.has_edge(v, u));
  }
  CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("all_pairs_distances on paths, cycles and disconnected input", "[graph_core]") {
  const DistanceMatrix p4(path_graph(4));
  CHECK(p4(0, 3) == 3);
  CHECK(p4.diameter() == 3);

  const DistanceMatrix c5(cycle_graph(5));
  for (Vertex u = 0; u < 5; ++u)
    for (Vertex v = 0; v < 5; ++v)
      if (u != v) CHECK((c5(u, v) == 1 || c5(u, v) == 2));
  CHECK(c5.diameter() == 2);

  CHECK_THROWS_AS(DistanceMatrix(build_graph(4, {{0, 1}, {2, 3}})), Error);
  CHECK_THROWS_AS(p4.at(0, 4), Error);
}

TEST_CASE("distance matrix is a metric with the diameter as its maximum", "[graph_core]") {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = random_connected_graph(3 + rng.below(10), 0.2, rng);
    const DistanceMatrix dm(g);
    const auto ref = oracle::distances(g);
    Vertex mx = 0;
    const auto n = static_cast<Vertex>(g.vertex_count());
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v) {
        REQUIRE(static_cast<int>(dm(u, v)) == ref[u][v]);
        CHECK(dm(u, v) == dm(v, u));
        if (u != v) CHECK(dm(u, v) >= 1);
        for (Vertex w = 0; w < n; ++w) CHECK(dm(u, w) <= dm(u, v) + dm(v, w));
        mx = std::max(mx, dm(u, v));
      }
    CHECK(mx == dm.diameter());
  }
}

TEST_CASE("distance_multiset examples", "[graph_core]") {
  const DistanceMatrix p4(path_graph(4));
  CHECK(distance_multiset(p4, {0, 1, 2, 3}).sorted() == seq({1, 1, 1, 2, 2, 3}));
  CHECK(distance_multiset(p4, {0, 3}).sorted() == seq({3}));
  CHECK(distance_multiset(p4, {2}).empty());
  CHECK(distance_multiset(p4, {}).empty());
  CHECK_THROWS_AS(distance_multiset(p4, {0, 9}), Error);

  const DistanceMatrix c5(cycle_graph(5));
  const auto all = distance_multiset(c5, {0, 1, 2, 3, 4});
  CHECK(all.counts() == std::map<Vertex, std::size_t>{{1, 5}, {2, 5}});
  CHECK(all.str() == "{1,1,1,1,1,2,2,2,2,2}");
}

TEST_CASE("cross_distances examples", "[graph_core]") {
  const DistanceMatrix p4(path_graph(4));
  CHECK(cross_distances(p4, {0}, {3}).sorted() == seq({3}));
  CHECK(cross_distances(p4, {0, 1}, {2, 3}).sorted() == seq({1, 2, 2, 3}));
  CHECK_THROWS_AS(cross_distances(p4, {0}, {0}), Error);
}

TEST_CASE("induced_edge_count examples", "[graph_core]") {
  const Graph c4 = cycle_graph(4);
  CHECK(induced_edge_count(c4, {0, 1}) == 1);
  CHECK(induced_edge_count(c4, {0, 2}) == 0);
  CHECK(induced_edge_count(complete_graph(4), {0, 1, 2, 3}) == 6);
}

TEST_CASE("tree_profile examples", "[graph_core]") {
  const auto p5 = tree_profile(path_graph(5));
  CHECK(p5.d(1) == 2);
  CHECK(p5.d(2) == 3);
  CHECK(p5.diameter == 4);

  const auto star = tree_profile(star_graph(4));
  CHECK(star.d(1) == 4);
  CHECK(star.d(4) == 1);
  CHECK(star.diameter == 2);
  CHECK(star.leaves == seq({1, 2, 3, 4}));

  CHECK_THROWS_AS(tree_profile(cycle_graph(4)), Error);
}

TEST_CASE("multiset size is C(|S|,2) and matches the reference", "[graph_core]") {
  Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = random_connected_graph(2 + rng.below(8), 0.3, rng);
    const DistanceMatrix dm(g);
    const auto ref = oracle::distances(g);
    const auto mask = static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << g.vertex_count()));
    const auto s = VertexSet::from_mask(mask);
    const auto d = distance_multiset(dm, s);
    CHECK(d.size() == s.size() * (s.size() - (s.empty() ? 0 : 1)) / 2);
    const auto expect = oracle::multiset(ref, oracle::members(mask));
    CHECK(std::vector<int>(d.sorted().begin(), d.sorted().end()) == expect);
    for (auto x : d.sorted()) CHECK(x >= 1);
  }
}

TEST_CASE("multisets are invariant under rotations of cycles and permutations of cliques", "[graph_core]") {
  for (std::size_t n = 3; n <= 9; ++n) {
    const DistanceMatrix c(cycle_graph(n));
    const DistanceMatrix k(complete_graph(n));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); mask += 3) {
      const auto s = VertexSet::from_mask(mask);
      std::vector<Vertex> rotated, reflected;
      for (Vertex v : s) {
        rotated.push_back(static_cast<Vertex>((v + 1) % n));
        reflected.push_back(static_cast<Vertex>((n - v) % n));
      }
      CHECK(distance_multiset(c, s) == distance_multiset(c, VertexSet(rotated)));
      CHECK(distance_multiset(c, s) == distance_multiset(c, VertexSet(reflected)));
      CHECK(distance_multiset(k, s) == distance_multiset(k, VertexSet(rotated)));
    }
  }
}

TEST_CASE("contiguous blocks of a path share their multiset", "[graph_core]") {
  const DistanceMatrix p(path_graph(12));
  for (Vertex t = 1; t <= 12; ++t) {
    std::vector<Vertex> first;
    for (Vertex i = 0; i < t; ++i) first.push_back(i);
    const auto base = distance_multiset(p, VertexSet(first));
    for (Vertex shift = 1; shift + t <= 12; ++shift) {
      std::vector<Vertex> block;
      for (Vertex i = 0; i < t; ++i) block.push_back(i + shift);
      CHECK(distance_multiset(p, VertexSet(block)) == base);
    }
  }
}

TEST_CASE("D(A) + D(B) + cross(A,B) = D(A u B)", "[graph_core]") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = random_connected_graph(4 + rng.below(8), 0.25, rng);
    const DistanceMatrix dm(g);
    std::vector<Vertex> a, b;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      const auto r = rng.below(3);
      if (r == 0) a.push_back(v);
      if (r == 1) b.push_back(v);
    }
    const VertexSet sa(a), sb(b);
    const auto lhs = distance_multiset(dm, sa).merged(distance_multiset(dm, sb)).merged(cross_distances(dm, sa, sb));
    CHECK(lhs == distance_multiset(dm, sa.united(sb)));
  }
}

TEST_CASE("verify_homometric examples", "[graph_core]") {
  const Graph p6 = path_graph(6);
  CHECK(verify_homometric(p6, {0, 1, 2}, {3, 4, 5}));
  CHECK_FALSE(verify_homometric(path_graph(5), {0, 1}, {2, 4}));
  CHECK(check_homometric(DistanceMatrix(path_graph(5)), {0, 1}, {2, 4}) == HomometryVerdict::multiset_mismatch);
  CHECK(verify_homometric(petersen_graph(), {0}, {1}));
  CHECK(check_homometric(DistanceMatrix(p6), {0, 1}, {1, 2}) == HomometryVerdict::overlap);
  CHECK(check_homometric(DistanceMatrix(p6), {0, 1}, {2}) == HomometryVerdict::size_mismatch);
}

TEST_CASE("certify orders the pair and refuses non-homometric input", "[graph_core]") {
  const DistanceMatrix p6(path_graph(6));
  const auto c = certify(p6, {3, 4, 5}, {0, 1, 2}, "test");
  CHECK(c.s1 == VertexSet{0, 1, 2});
  CHECK(c.s2 == VertexSet{3, 4, 5});
  CHECK(c.multiset.sorted() == seq({1, 1, 2}));
  CHECK(verify_certificate(p6, c));
  CHECK_THROWS_AS(certify(p6, {0, 1}, {2, 4}, "bad"), Error);
}

TEST_CASE("shortest_path_halving examples", "[graph_core]") {
  const auto p6 = shortest_path_halving(path_graph(6));
  CHECK(p6.s1 == VertexSet{0, 1, 2});
  CHECK(p6.s2 == VertexSet{3, 4, 5});
  CHECK(shortest_path_halving(cycle_graph(8)).size() == 2);
  CHECK(shortest_path_halving(complete_graph(4)).size() == 1);
  CHECK_THROWS_AS(shortest_path_halving(Graph(1, {})), Error);
}

TEST_CASE("halving size is floor((diam+1)/2) and always certifies", "[graph_core]") {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_connected_graph(2 + rng.below(25), 0.1, rng);
    const DistanceMatrix dm(g);
    const auto c = shortest_path_halving(g, dm);
    CHECK(c.size() == (dm.diameter() + 1) / 2);
    CHECK(verify_certificate(dm, c));
  }
}

TEST_CASE("induced_subgraph relabels in increasing id order", "[graph_core]") {
  const auto sub = induced_subgraph(path_graph(6), {1, 2, 4, 5});
  CHECK(sub.graph.vertex_count() == 4);
  CHECK(sub.graph.edge_count() == 2);
  CHECK(sub.original == seq({1, 2, 4, 5}));
  CHECK(sub.graph.has_edge(0, 1));
  CHECK(sub.graph.has_edge(2, 3));
}

TEST_CASE("rationals are exact", "[graph_core]") {
  CHECK(Rational(65, 12).ceil() == 6);
  CHECK(Rational(65, 12).floor() == 5);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK((Rational(1, 4) + Rational(3, 28)) * Rational(21) == Rational(15, 2));
  CHECK(Rational(6, 4).str() == "3/2");
  CHECK(Rational(4, 2).str() == "2");
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}
