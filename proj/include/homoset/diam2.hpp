#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "homoset/certificate.hpp"
#include "homoset/graph.hpp"
#include "homoset/rational.hpp"

namespace homoset {

/// In a graph of diameter at most 2 every distance is 1 or 2, so two disjoint
/// equal-size sets are homometric iff they induce the same number of edges.
inline bool diam2_equivalence(const Graph& g, const DistanceMatrix& dm, const VertexSet& s1, const VertexSet& s2) {
  if (dm.diameter() > 2) throw Error("diam2_equivalence: diameter " + std::to_string(dm.diameter()) + " exceeds 2");
  check_in_range(dm, s1);
  check_in_range(dm, s2);
  if (!s1.disjoint(s2)) throw Error("diam2_equivalence: sets overlap");
  if (s1.size() != s2.size()) throw Error("diam2_equivalence: sets differ in size");
  return induced_edge_count(g, s1) == induced_edge_count(g, s2);
}

inline bool diam2_equivalence(const Graph& g, const VertexSet& s1, const VertexSet& s2) {
  return diam2_equivalence(g, DistanceMatrix(g), s1, s2);
}

namespace detail {

inline constexpr std::uint64_t kSaturated = std::uint64_t{1} << 62;

/// C(a, b), saturating at kSaturated.
inline std::uint64_t binomial_saturating(std::uint64_t a, std::uint64_t b) {
  if (b > a) return 0;
  b = std::min(b, a - b);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= b; ++i) {
    r = r * (a - b + i) / i;
    if (r >= kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t pow_saturating(std::uint64_t base, std::uint64_t exp) {
  unsigned __int128 r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    r *= base;
    if (r >= kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t isqrt(std::uint64_t x) {
  std::uint64_t r = 0;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

}  // namespace detail

/// Left side C(C(k,2) + d - 1, d - 1) of the coloring condition.
inline std::uint64_t kneser_lhs(std::uint64_t d, std::uint64_t k) {
  return detail::binomial_saturating(k * (k - 1) / 2 + d - 1, d - 1);
}

/// C(C(k,2) + d - 1, d - 1) < n - 2k + 2: the distance multisets of k-sets
/// use fewer colors than KG(n, k) needs, so two disjoint k-sets collide.
inline bool kneser_inequality(std::uint64_t n, std::uint64_t d, std::uint64_t k) {
  if (k == 0 || 2 * k > n) return false;
  return kneser_lhs(d, k) < n - 2 * k + 2;
}

/// Largest k with the coloring condition (0 if none).
inline std::uint64_t kneser_best_k(std::uint64_t n, std::uint64_t d) {
  std::uint64_t best = 0;
  for (std::uint64_t k = 1; 2 * k <= n; ++k) {
    if (!kneser_inequality(n, d, k)) break;  // lhs grows, rhs shrinks
    best = k;
  }
  return best;
}

struct KneserCondition {
  std::uint64_t n = 0, d = 0, e = 0;
  std::uint64_t k = 0;    // largest k satisfying the condition
  std::uint64_t lhs = 0;  // at k
  std::uint64_t rhs = 0;  // n - 2k + 2 at k
  Rational half_diameter;
  Rational edge_ratio;    // 2e/n; the bound term is its square root
  std::uint64_t sqrt_floor = 0;
  std::uint64_t sqrt_ceil = 0;
  bool closed_form_applies = false;  // n >= d^(2d-2)
  std::uint64_t closed_form = 0;     // floor(0.5 n^(1/(2d-2)))

  /// Certified by constructions: k via the coloring argument, ceil(d/2) via
  /// the halving construction.
  std::uint64_t guarantee() const {
    return std::max<std::uint64_t>(k, static_cast<std::uint64_t>(half_diameter.ceil()));
  }
  /// max{k, d/2, sqrt(2e/n)} as an integer lower bound, including the unproven edge term.
  std::uint64_t claimed() const { return std::max(guarantee(), sqrt_ceil); }
};

inline KneserCondition kneser_guarantee(std::uint64_t n, std::uint64_t d, std::uint64_t e = 0) {
  if (n < 5) throw Error("kneser_guarantee needs n >= 5");
  if (d < 2) throw Error("kneser_guarantee needs d >= 2");
  KneserCondition c;
  c.n = n;
  c.d = d;
  c.e = e;
  c.k = kneser_best_k(n, d);
  if (c.k > 0) {
    c.lhs = kneser_lhs(d, c.k);
    c.rhs = n - 2 * c.k + 2;
  }
  c.half_diameter = Rational(static_cast<std::int64_t>(d), 2);
  c.edge_ratio = Rational(2 * static_cast<std::int64_t>(e), static_cast<std::int64_t>(n));
  // floor/ceil of sqrt(2e/n) from integer arithmetic on p/q.
  const auto p = static_cast<std::uint64_t>(c.edge_ratio.num());
  const auto q = static_cast<std::uint64_t>(c.edge_ratio.den());
  std::uint64_t r = 0;
  while ((r + 1) * (r + 1) * q <= p) ++r;
  c.sqrt_floor = r;
  c.sqrt_ceil = r * r * q == p ? r : r + 1;
  c.closed_form_applies = detail::pow_saturating(d, 2 * d - 2) <= n;
  std::uint64_t j = 0;
  while (detail::pow_saturating(2 * (j + 1), 2 * d - 2) <= n) ++j;
  c.closed_form = j;
  return c;
}

/// The coloring condition with d = 2 inside N[v] of a maximum-degree vertex,
/// where distances agree with G: a guarantee of order sqrt(Delta).
inline std::uint64_t max_degree_neighborhood_bound(const Graph& g) {
  if (!g.connected()) throw Error("max_degree_neighborhood_bound: graph is disconnected");
  if (g.vertex_count() < 2) return 0;
  return std::max<std::uint64_t>(1, kneser_best_k(g.max_degree() + 1, 2));
}

struct BalancedPartition {
  bool feasible = false;
  std::vector<std::size_t> index1, index2;  // positions in the input
  std::vector<std::int64_t> part1, part2;
  /// Distinct values in [1, 2m-2] with m even and m >= 89.
  bool size_hypotheses = false;

  std::int64_t sum1() const { return std::accumulate(part1.begin(), part1.end(), std::int64_t{0}); }
  std::int64_t sum2() const { return std::accumulate(part2.begin(), part2.end(), std::int64_t{0}); }
};

namespace detail {

/// Suffix reachability for exact (count, sum) subset selection.
class SubsetSumTable {
 public:
  explicit SubsetSumTable(const std::vector<std::int64_t>& values) : values_(values), m_(values.size()) {
    for (auto v : values_) (v < 0 ? lo_ : hi_) += v;
    width_ = static_cast<std::size_t>(hi_ - lo_ + 1);
    words_ = (width_ + 63) / 64;
    bits_.assign((m_ + 1) * (m_ + 1) * words_, 0);
    set(m_, 0, 0);
    for (std::size_t i = m_; i-- > 0;)
      for (std::size_t c = 0; c <= m_ - i; ++c) {
        or_shifted(i, c, i + 1, c, 0);
        if (c > 0) or_shifted(i, c, i + 1, c - 1, values_[i]);
      }
  }

  bool reachable(std::size_t i, std::size_t c, std::int64_t sum) const {
    if (sum < lo_ || sum > hi_ || c > m_ - i) return false;
    const auto pos = static_cast<std::size_t>(sum - lo_);
    return (row(i, c)[pos / 64] >> (pos % 64)) & 1;
  }

  /// Greedy in input order: the chosen index set is the one that takes each
  /// earlier element whenever a completion still exists.
  std::optional<std::vector<std::size_t>> pick(std::size_t count, std::int64_t sum) const {
    if (!reachable(0, count, sum)) return std::nullopt;
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < m_ && count > 0; ++i)
      if (reachable(i + 1, count - 1, sum - values_[i])) {
        chosen.push_back(i);
        --count;
        sum -= values_[i];
      }
    return chosen;
  }

 private:
  std::uint64_t* row(std::size_t i, std::size_t c) { return bits_.data() + (i * (m_ + 1) + c) * words_; }
  const std::uint64_t* row(std::size_t i, std::size_t c) const {
    return bits_.data() + (i * (m_ + 1) + c) * words_;
  }

  void set(std::size_t i, std::size_t c, std::int64_t sum) {
    const auto pos = static_cast<std::size_t>(sum - lo_);
    row(i, c)[pos / 64] |= std::uint64_t{1} << (pos % 64);
  }

  void or_shifted(std::size_t dst_i, std::size_t dst_c, std::size_t src_i, std::size_t src_c, std::int64_t shift) {
    const std::uint64_t* src = row(src_i, src_c);
    std::uint64_t* dst = row(dst_i, dst_c);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t word = src[w];
      while (word != 0) {
        const std::size_t bit = w * 64 + static_cast<std::size_t>(__builtin_ctzll(word));
        word &= word - 1;
        const auto target = static_cast<std::int64_t>(bit) + shift;
        if (target >= 0 && target < static_cast<std::int64_t>(width_))
          dst[static_cast<std::size_t>(target) / 64] |= std::uint64_t{1} << (static_cast<std::size_t>(target) % 64);
      }
    }
  }

  std::vector<std::int64_t> values_;
  std::size_t m_;
  std::int64_t lo_ = 0, hi_ = 0;
  std::size_t width_ = 1, words_ = 1;
  std::vector<std::uint64_t> bits_;
};

inline BalancedPartition partition_from(const std::vector<std::int64_t>& values, const std::vector<std::size_t>& pick) {
  BalancedPartition p;
  p.feasible = true;
  std::vector<char> in(values.size(), 0);
  for (auto i : pick) in[i] = 1;
  for (std::size_t i = 0; i < values.size(); ++i) {
    (in[i] ? p.index1 : p.index2).push_back(i);
    (in[i] ? p.part1 : p.part2).push_back(values[i]);
  }
  return p;
}

inline bool size_hypotheses(const std::vector<std::int64_t>& values) {
  const auto m = static_cast<std::int64_t>(values.size());
  if (m < 89 || m % 2 != 0) return false;
  std::vector<std::int64_t> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  return sorted.front() >= 1 && sorted.back() <= 2 * m - 2;
}

}  // namespace detail

/// Balanced split: divide `values` into parts whose
/// sizes and sums each differ by at most one, preferring equal sums. Solved by
/// a (count, sum) subset-sum table, so no size hypothesis is needed.
inline BalancedPartition balanced_partition(const std::vector<std::int64_t>& values) {
  const std::size_t m = values.size();
  const std::int64_t total = std::accumulate(values.begin(), values.end(), std::int64_t{0});
  const detail::SubsetSumTable table(values);
  const std::size_t sizes[] = {(m + 1) / 2, m / 2};
  auto floor_half = [](std::int64_t x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); };
  const std::int64_t lo = floor_half(total);
  for (int diff = 0; diff <= 1; ++diff)
    for (std::size_t size : sizes) {
      // part1 sum s, part2 sum total - s, |2s - total| == diff
      for (std::int64_t s : {lo, lo + 1}) {
        const std::int64_t gap = 2 * s - total;
        if ((gap < 0 ? -gap : gap) != diff) continue;
        if (auto pick = table.pick(size, s)) {
          auto p = detail::partition_from(values, *pick);
          p.size_hypotheses = detail::size_hypotheses(values);
          return p;
        }
      }
    }
  BalancedPartition none;
  none.size_hypotheses = detail::size_hypotheses(values);
  return none;
}

/// Degree classes V_i = {v : deg(v) = i}.
struct DegreeClasses {
  std::vector<std::vector<Vertex>> classes;  // classes[i] = V_i, sorted

  std::size_t odd_count() const {
    std::size_t c = 0;
    for (const auto& v : classes) c += v.size() % 2;
    return c;
  }
};

inline DegreeClasses degree_classes(const Graph& g) {
  DegreeClasses dc;
  dc.classes.assign(g.max_degree() + 1, {});
  for (Vertex v = 0; v < g.vertex_count(); ++v) dc.classes[g.degree(v)].push_back(v);
  return dc;
}

struct DegreePartitionResult {
  std::optional<HomometricCertificate> certificate;
  DegreeClasses classes;
  bool all_classes_even = false;        // condition 2
  bool most_classes_odd = false;        // condition 1: more than n/2 odd classes
  bool meets_size_hypothesis = false;   // n >= 90
  bool size_hypotheses = false;      // for the leftover degrees
};

/// Degree-class partition for diameter-2 graphs on an even number of
/// vertices: deal each V_i alternately into A and B, then split the leftover
/// vertices (one per odd class) into equal halves with equal degree sums.
/// Equal degree sums over A and V - A force equal induced edge counts, which
/// on diameter 2 means homometric.
inline DegreePartitionResult degree_class_partition(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n % 2 != 0) throw Error("degree_class_partition needs an even number of vertices");
  const DistanceMatrix dm(g);
  if (dm.diameter() != 2) throw Error("degree_class_partition needs diameter 2");

  DegreePartitionResult r;
  r.classes = degree_classes(g);
  const std::size_t odd = r.classes.odd_count();
  r.all_classes_even = odd == 0;
  r.most_classes_odd = 2 * odd > n;
  r.meets_size_hypothesis = n >= 90;

  std::vector<Vertex> a, b, rest;
  for (const auto& cls : r.classes.classes) {
    for (std::size_t i = 0; i + 1 < cls.size(); i += 2) {
      a.push_back(cls[i]);
      b.push_back(cls[i + 1]);
    }
    if (cls.size() % 2 == 1) rest.push_back(cls.back());
  }
  if (!rest.empty()) {
    std::vector<std::int64_t> degrees;
    std::int64_t total = 0;
    for (Vertex v : rest) {
      degrees.push_back(static_cast<std::int64_t>(g.degree(v)));
      total += degrees.back();
    }
    r.size_hypotheses = detail::size_hypotheses(degrees);
    if (total % 2 != 0) return r;  // impossible for a graph; kept as a guard
    const detail::SubsetSumTable table(degrees);
    const auto pick = table.pick(rest.size() / 2, total / 2);
    if (!pick) return r;
    std::vector<char> in(rest.size(), 0);
    for (auto i : *pick) in[i] = 1;
    for (std::size_t i = 0; i < rest.size(); ++i) (in[i] ? a : b).push_back(rest[i]);
  }
  r.certificate = certify(dm, VertexSet(std::move(a)), VertexSet(std::move(b)), "degree_class_partition");
  return r;
}

}  // namespace homoset
