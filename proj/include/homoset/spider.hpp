#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "homoset/certificate.hpp"
#include "homoset/exact_search.hpp"
#include "homoset/graph.hpp"
#include "homoset/rational.hpp"
#include "homoset/tree.hpp"

namespace homoset {

/// A spider given by its leg lengths (vertex counts), in the order given.
///
/// Labeling: the head is 0, then leg 0 from its attachment vertex outward,
/// then leg 1, and so on. Vertex j of leg i (0-based) is at distance j + 1
/// from the head.
class SpiderSpec {
 public:
  SpiderSpec() = default;
  explicit SpiderSpec(std::vector<std::size_t> legs) : legs_(std::move(legs)) {
    if (legs_.empty()) throw Error("spider needs at least one leg");
    for (auto l : legs_)
      if (l == 0) throw Error("spider legs must have at least one vertex");
    offsets_.resize(legs_.size());
    std::size_t next = 1;
    for (std::size_t i = 0; i < legs_.size(); ++i) {
      offsets_[i] = next;
      next += legs_[i];
    }
  }

  const std::vector<std::size_t>& legs() const { return legs_; }
  std::size_t leg_count() const { return legs_.size(); }
  std::size_t leg(std::size_t i) const { return legs_.at(i); }
  std::size_t n() const { return 1 + std::accumulate(legs_.begin(), legs_.end(), std::size_t{0}); }

  static constexpr Vertex head() { return 0; }

  /// Vertex j (0-based, distance j + 1 from the head) of leg i.
  Vertex leg_vertex(std::size_t i, std::size_t j) const {
    if (j >= legs_.at(i)) throw Error("leg position out of range");
    return static_cast<Vertex>(offsets_[i] + j);
  }

  std::vector<Vertex> leg_vertices(std::size_t i) const {
    std::vector<Vertex> out;
    for (std::size_t j = 0; j < legs_.at(i); ++j) out.push_back(leg_vertex(i, j));
    return out;
  }

  Graph graph() const {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < legs_.size(); ++i) {
      edges.emplace_back(head(), leg_vertex(i, 0));
      for (std::size_t j = 1; j < legs_[i]; ++j) edges.emplace_back(leg_vertex(i, j - 1), leg_vertex(i, j));
    }
    return Graph(n(), edges);
  }

  /// Leg indices ordered by decreasing length, ties by index.
  std::vector<std::size_t> legs_by_length() const {
    std::vector<std::size_t> order(legs_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return legs_[a] > legs_[b]; });
    return order;
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < legs_.size(); ++i) s += (i ? "," : "") + std::to_string(legs_[i]);
    return s;
  }

 private:
  std::vector<std::size_t> legs_;
  std::vector<std::size_t> offsets_;
};

namespace detail {

using LegRoles = std::array<std::size_t, 3>;

inline HomometricCertificate three_legs(const SpiderSpec& s, const DistanceMatrix& dm, LegRoles role) {
  const auto [i1, i2, i3] = role;
  if (s.leg(i1) < s.leg(i2)) throw Error("construction_three_legs requires l_1 >= l_2");
  std::vector<Vertex> a{SpiderSpec::head()}, b;
  for (std::size_t i = 1; i <= s.leg(i3) / 2; ++i) {
    a.push_back(s.leg_vertex(i3, 2 * i - 1));  // v_{2i}
    b.push_back(s.leg_vertex(i3, 2 * i - 2));  // v_{2i-1}
  }
  for (std::size_t j = 0; j + 1 < s.leg(i2); ++j) a.push_back(s.leg_vertex(i1, j));
  for (Vertex v : s.leg_vertices(i2)) b.push_back(v);
  return certify(dm, VertexSet(std::move(a)), VertexSet(std::move(b)), "construction_three_legs");
}

inline HomometricCertificate three_legs_special(const SpiderSpec& s, const DistanceMatrix& dm, LegRoles role) {
  const auto [i1, i2, i3] = role;
  if (s.leg(i1) <= s.leg(i2)) throw Error("construction_three_legs_special requires l_1 > l_2");
  const std::size_t x = s.leg(i1) - s.leg(i2);
  const std::size_t b = (s.leg(i3) + 1) / x;
  if (b == 0) throw Error("construction_three_legs_special requires l_3 + 1 >= l_1 - l_2");
  // Blocks P_0..P_a must fit on head + L_3, which forces a <= b - 1, a even.
  const std::size_t a = b % 2 == 1 ? b - 1 : b - 2;
  // v_0 is the head, v_j (j >= 1) is vertex j - 1 of L_3.
  auto v = [&](std::size_t j) { return j == 0 ? SpiderSpec::head() : s.leg_vertex(i3, j - 1); };
  std::vector<Vertex> first, second;
  for (std::size_t i = 0; i <= a; ++i)
    for (std::size_t j = i * x; j < i * x + x; ++j) (i % 2 == 0 ? first : second).push_back(v(j));
  for (Vertex w : s.leg_vertices(i2)) first.push_back(w);
  for (Vertex w : s.leg_vertices(i1)) second.push_back(w);
  return certify(dm, VertexSet(std::move(first)), VertexSet(std::move(second)), "construction_three_legs_special");
}

inline void require_three_legs(const SpiderSpec& s) {
  if (s.leg_count() != 3) throw Error("construction needs a spider with exactly 3 legs");
}

}  // namespace detail

/// Three-leg construction on legs (L_1, L_2, L_3) = legs 0, 1, 2.
inline HomometricCertificate construction_three_legs(const SpiderSpec& s) {
  detail::require_three_legs(s);
  return detail::three_legs(s, DistanceMatrix(s.graph()), {0, 1, 2});
}

/// Three-leg block construction on legs (L_1, L_2, L_3) = legs 0, 1, 2, with x = l_1 - l_2
/// and l_3 + 1 = b x + r.
inline HomometricCertificate construction_three_legs_special(const SpiderSpec& s) {
  detail::require_three_legs(s);
  return detail::three_legs_special(s, DistanceMatrix(s.graph()), {0, 1, 2});
}

/// Paired-leg construction: with legs sorted by length, pair leg 2i with leg 2i-1 and
/// match all of the shorter leg against the nearest part of the longer one.
inline HomometricCertificate construction_k_legs(const SpiderSpec& s) {
  if (s.leg_count() < 2) throw Error("construction_k_legs needs at least two legs");
  const auto order = s.legs_by_length();
  std::vector<Vertex> a, b;
  for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
    const std::size_t longer = order[i], shorter = order[i + 1];
    for (std::size_t j = 0; j < s.leg(shorter); ++j) {
      a.push_back(s.leg_vertex(shorter, j));
      b.push_back(s.leg_vertex(longer, j));
    }
  }
  return certify(DistanceMatrix(s.graph()), VertexSet(std::move(a)), VertexSet(std::move(b)),
                 "construction_k_legs");
}

/// Class lower bound for spiders with k legs on n vertices.
inline Rational spider_class_bound(std::size_t n, std::size_t k) {
  const auto nn = static_cast<std::int64_t>(n);
  if (k == 3) return Rational(5 * nn, 12);
  if (k == 4) return Rational(nn, 3);
  if (k >= 5) return (Rational(1, 4) + Rational(3, 8 * static_cast<std::int64_t>(k) - 12)) * Rational(nn);
  throw Error("spider class bound needs k >= 3");
}

struct SpiderBoundReport {
  Rational class_bound;
  std::int64_t class_floor = 0;
  std::int64_t class_ceil = 0;
  /// Largest certificate among Constructions 1, 3, 4, 5 and the tree strategies.
  HomometricCertificate best;
  std::vector<HomometricCertificate> certificates;
  BoundReport tree_bounds;
};

inline SpiderBoundReport spider_bound(const SpiderSpec& s) {
  if (s.leg_count() < 3) throw Error("spider_bound needs k >= 3");
  const Graph g = s.graph();
  const DistanceMatrix dm(g);
  SpiderBoundReport r;
  r.class_bound = spider_class_bound(s.n(), s.leg_count());
  r.class_floor = r.class_bound.floor();
  r.class_ceil = r.class_bound.ceil();
  r.tree_bounds = lemma_bounds(g);

  r.certificates.push_back(shortest_path_halving(g, dm));
  r.certificates.push_back(construction_k_legs(s));
  r.certificates.push_back(r.tree_bounds.best);
  if (s.leg_count() == 3) {
    std::array<std::size_t, 3> role{0, 1, 2};
    do {
      if (s.leg(role[0]) >= s.leg(role[1])) r.certificates.push_back(detail::three_legs(s, dm, role));
      if (s.leg(role[0]) > s.leg(role[1]) && s.leg(role[2]) + 1 >= s.leg(role[0]) - s.leg(role[1]))
        r.certificates.push_back(detail::three_legs_special(s, dm, role));
    } while (std::next_permutation(role.begin(), role.end()));
  }
  r.best = *std::max_element(r.certificates.begin(), r.certificates.end(),
                             [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return r;
}

struct ExactClaim {
  Rational value;
  std::string pattern;
};

/// Claimed exact values for particular spiders:
///  - equal_legs: k = 3 and l_1 = l_2 = l_3, h = n/2;
///  - odd_multiple: k = 3 and l_1 + 1 = t (l_2 - l_3) for odd t, h = n/2;
///  - half_single_legs: n/2 legs of one vertex and one leg of n/2 - 1
///    vertices, h = (n + 2)/4.
/// These are claims, not certificates; callers compare them with the oracle.
inline std::optional<ExactClaim> spider_exact_cases(const SpiderSpec& s) {
  if (s.leg_count() < 3) return std::nullopt;
  const auto n = static_cast<std::int64_t>(s.n());
  if (s.leg_count() == 3) {
    const auto order = s.legs_by_length();
    const auto l1 = s.leg(order[0]), l2 = s.leg(order[1]), l3 = s.leg(order[2]);
    if (l1 == l2 && l2 == l3) return ExactClaim{Rational(n, 2), "equal_legs"};
    if (l2 > l3 && (l1 + 1) % (l2 - l3) == 0 && ((l1 + 1) / (l2 - l3)) % 2 == 1)
      return ExactClaim{Rational(n, 2), "odd_multiple"};
  }
  if (n % 2 == 0) {
    const auto half = static_cast<std::size_t>(n / 2);
    const auto order = s.legs_by_length();
    bool match = s.leg_count() == half + 1 && s.leg(order[0]) == half - 1;
    for (std::size_t i = 1; match && i < order.size(); ++i) match = s.leg(order[i]) == 1;
    if (match) return ExactClaim{Rational(n + 2, 4), "half_single_legs"};
  }
  return std::nullopt;
}

/// (H, m, v)-flower: H on vertices 0..|H|-1, the path on |H|..|H|+m-1 with v
/// = |H| as the endpoint joined to every vertex of H.
struct FlowerSpec {
  Graph h_graph;
  std::size_t m = 1;

  std::size_t h_size() const { return h_graph.vertex_count(); }
  std::size_t n() const { return h_size() + m; }
  Vertex v() const { return static_cast<Vertex>(h_size()); }
  Vertex v1() const { return static_cast<Vertex>(h_size() + 1); }

  Graph graph() const {
    if (h_size() == 0) throw Error("flower needs a non-empty H");
    if (m == 0) throw Error("flower needs a path with at least one vertex");
    std::vector<Edge> edges = h_graph.edges();
    for (Vertex u = 0; u < h_size(); ++u) edges.emplace_back(u, v());
    for (std::size_t i = 1; i < m; ++i) edges.emplace_back(v() + i - 1, v() + i);
    return Graph(n(), edges);
  }
};

inline constexpr std::size_t kMaxFlowerVertices = 14;

/// First homometric pair of size >= 2 escaping the flower confinement, if any:
/// S1 ∪ S2 must lie in V(P) plus one vertex of H, or in V(H) ∪ {v, v_1}.
inline std::optional<std::pair<VertexSet, VertexSet>> flower_confinement_violation(
    const FlowerSpec& f, std::size_t max_size = kMaxFlowerVertices) {
  if (f.n() > std::min(max_size, kMaxFlowerVertices))
    throw Error("flower has " + std::to_string(f.n()) + " vertices; exhaustive check is limited to " +
                std::to_string(std::min(max_size, kMaxFlowerVertices)));
  const Graph g = f.graph();
  const std::uint64_t h_mask = (std::uint64_t{1} << f.h_size()) - 1;
  std::uint64_t core_mask = h_mask | (std::uint64_t{1} << f.v());
  if (f.m >= 2) core_mask |= std::uint64_t{1} << f.v1();
  std::optional<std::pair<VertexSet, VertexSet>> bad;
  for_each_homometric_pair(g, 2, g.vertex_count() / 2, [&](std::uint64_t a, std::uint64_t b) {
    const std::uint64_t u = a | b;
    const bool path_side = __builtin_popcountll(u & h_mask) <= 1;
    const bool h_side = (u & ~core_mask) == 0;
    if (path_side || h_side) return true;
    bad = std::make_pair(VertexSet::from_mask(a), VertexSet::from_mask(b));
    return false;
  });
  return bad;
}

inline bool flower_confinement_check(const FlowerSpec& f, std::size_t max_size = kMaxFlowerVertices) {
  return !flower_confinement_violation(f, max_size).has_value();
}

}  // namespace homoset
