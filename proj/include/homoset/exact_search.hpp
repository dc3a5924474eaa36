#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstring>
#include <functional>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

#include "homoset/certificate.hpp"
#include "homoset/graph.hpp"

namespace homoset {

struct SearchOptions {
  /// Cap on the number of enumerated subsets across all levels.
  std::uint64_t budget = 10'000'000;
  /// Worker threads; shards are subsets grouped by their smallest element.
  unsigned threads = 1;
};

struct SearchResult {
  HomometricCertificate certificate;
  /// False when the budget ran out; the certificate is then only a lower bound.
  bool exact = true;
  std::uint64_t subsets_enumerated = 0;
};

namespace detail {

inline constexpr std::size_t kMaxSearchVertices = 64;

/// All k-subsets of one level in lexicographic order, each with its distance
/// histogram (count of distance d at column d-1). The histogram is the
/// canonical form of the sorted distance sequence, so equal rows mean equal
/// distance multisets.
struct LevelTable {
  std::size_t stride = 1;
  std::vector<std::uint64_t> masks;
  std::vector<std::uint16_t> hist;

  const std::uint16_t* row(std::size_t i) const { return hist.data() + i * stride; }
};

class Budget {
 public:
  explicit Budget(std::uint64_t limit) : limit_(limit) {}
  /// Returns false once the shared limit is crossed.
  bool charge(std::uint64_t amount) {
    const auto before = used_.fetch_add(amount, std::memory_order_relaxed);
    if (before + amount > limit_) {
      exhausted_.store(true, std::memory_order_relaxed);
      return false;
    }
    return true;
  }
  bool exhausted() const { return exhausted_.load(std::memory_order_relaxed); }
  std::uint64_t used() const { return std::min(used_.load(), limit_); }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> used_{0};
  std::atomic<bool> exhausted_{false};
};

class ShardEnumerator {
 public:
  ShardEnumerator(const DistanceMatrix& dm, std::size_t k, std::size_t stride, Budget& budget, LevelTable& out)
      : dm_(dm), k_(k), n_(dm.size()), budget_(budget), out_(out), chosen_(k), hist_(stride, 0) {}

  /// Enumerates the k-subsets whose smallest element is `first`.
  bool run(Vertex first) {
    chosen_[0] = first;
    mask_ = std::uint64_t{1} << first;
    extend(1, first + 1);
    return flush();
  }

 private:
  void extend(std::size_t depth, Vertex start) {
    if (aborted_) return;
    if (depth == k_) {
      out_.masks.push_back(mask_);
      out_.hist.insert(out_.hist.end(), hist_.begin(), hist_.end());
      if (++pending_ == 4096 && !flush()) aborted_ = true;
      return;
    }
    for (Vertex v = start; v + (k_ - depth) <= n_; ++v) {
      for (std::size_t i = 0; i < depth; ++i) ++hist_[dm_(chosen_[i], v) - 1];
      chosen_[depth] = v;
      mask_ |= std::uint64_t{1} << v;
      extend(depth + 1, v + 1);
      mask_ &= ~(std::uint64_t{1} << v);
      for (std::size_t i = 0; i < depth; ++i) --hist_[dm_(chosen_[i], v) - 1];
      if (aborted_) return;
    }
  }

  bool flush() {
    const bool ok = budget_.charge(pending_) && !aborted_;
    pending_ = 0;
    return ok;
  }

  const DistanceMatrix& dm_;
  std::size_t k_;
  std::size_t n_;
  Budget& budget_;
  LevelTable& out_;
  std::vector<Vertex> chosen_;
  std::vector<std::uint16_t> hist_;
  std::uint64_t mask_ = 0;
  std::uint64_t pending_ = 0;
  bool aborted_ = false;
};

/// Enumerates one level, sharded by smallest element. Shard tables are
/// concatenated in shard order, so the result does not depend on `threads`.
inline std::optional<LevelTable> enumerate_level(const DistanceMatrix& dm, std::size_t k, Budget& budget,
                                                 unsigned threads) {
  const std::size_t n = dm.size();
  const std::size_t stride = std::max<std::size_t>(dm.diameter(), 1);
  const std::size_t shard_count = n - k + 1;
  std::vector<LevelTable> shards(shard_count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto worker = [&] {
    for (std::size_t s = next.fetch_add(1); s < shard_count; s = next.fetch_add(1)) {
      if (failed.load()) return;
      shards[s].stride = stride;
      ShardEnumerator e(dm, k, stride, budget, shards[s]);
      if (!e.run(static_cast<Vertex>(s))) failed.store(true);
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(shard_count)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) return std::nullopt;

  LevelTable merged;
  merged.stride = stride;
  for (auto& s : shards) {
    merged.masks.insert(merged.masks.end(), s.masks.begin(), s.masks.end());
    merged.hist.insert(merged.hist.end(), s.hist.begin(), s.hist.end());
  }
  return merged;
}

/// Visits each group of >= 2 subsets sharing a distance multiset. Members of a
/// group are passed in lexicographic order.
inline void for_each_bucket(const LevelTable& table,
                            const std::function<void(const std::vector<std::uint64_t>&)>& visit) {
  const std::size_t count = table.masks.size();
  std::vector<std::uint32_t> order(count);
  std::iota(order.begin(), order.end(), 0u);
  const std::size_t bytes = table.stride * sizeof(std::uint16_t);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    const int c = std::memcmp(table.row(a), table.row(b), bytes);
    return c != 0 ? c < 0 : a < b;
  });
  std::vector<std::uint64_t> group;
  for (std::size_t i = 0; i < count;) {
    std::size_t j = i + 1;
    while (j < count && std::memcmp(table.row(order[i]), table.row(order[j]), bytes) == 0) ++j;
    if (j - i >= 2) {
      group.clear();
      for (std::size_t t = i; t < j; ++t) group.push_back(table.masks[order[t]]);
      visit(group);
    }
    i = j;
  }
}

/// Lexicographically least set ordering on equal-popcount masks.
inline bool mask_lex_less(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t diff = a ^ b;
  return diff != 0 && (a & (diff & -diff)) != 0;
}

struct PairSearch {
  bool complete = true;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> pair;
};

/// Lexicographically least disjoint pair (s1 < s2) of homometric k-subsets.
inline PairSearch least_pair_at_level(const DistanceMatrix& dm, std::size_t k, Budget& budget, unsigned threads) {
  PairSearch result;
  auto table = enumerate_level(dm, k, budget, threads);
  if (!table) {
    result.complete = false;
    return result;
  }
  for_each_bucket(*table, [&](const std::vector<std::uint64_t>& group) {
    std::uint64_t common = ~std::uint64_t{0};
    for (auto m : group) common &= m;
    if (common != 0) return;  // every member shares a vertex
    for (std::size_t a = 0; a < group.size(); ++a) {
      if (result.pair && !mask_lex_less(group[a], result.pair->first)) return;
      for (std::size_t b = a + 1; b < group.size(); ++b)
        if ((group[a] & group[b]) == 0) {
          result.pair = std::make_pair(group[a], group[b]);
          return;
        }
    }
  });
  return result;
}

inline void check_searchable(const Graph& g) {
  if (g.vertex_count() > kMaxSearchVertices) throw Error("exact search supports at most 64 vertices");
  if (!g.connected()) throw Error("graph is disconnected");
}

}  // namespace detail

/// Exact h(G): descends k from floor(n/2), bucketing all k-subsets by distance
/// multiset and looking for a disjoint pair inside a bucket. Returns the
/// lexicographically least maximum pair. When the subset budget runs out the
/// result falls back to the best certificate seen (at least the halving certificate)
/// and is flagged as a lower bound.
inline SearchResult max_homometric(const Graph& g, const SearchOptions& options = {}) {
  detail::check_searchable(g);
  if (g.vertex_count() < 2) throw Error("max_homometric needs at least two vertices");
  const DistanceMatrix dm(g);
  detail::Budget budget(options.budget);
  for (std::size_t k = g.vertex_count() / 2; k >= 1; --k) {
    const auto level = detail::least_pair_at_level(dm, k, budget, options.threads);
    if (!level.complete) {
      SearchResult fallback{shortest_path_halving(g, dm), false, budget.used()};
      fallback.certificate.provenance = "shortest_path_halving (search budget exhausted)";
      return fallback;
    }
    if (level.pair)
      return {certify(dm, VertexSet::from_mask(level.pair->first), VertexSet::from_mask(level.pair->second),
                      "exhaustive"),
              true, budget.used()};
  }
  throw Error("unreachable: singletons are always homometric");
}

/// Some certificate of size exactly k (the lexicographically least), if any.
inline std::optional<HomometricCertificate> find_homometric_of_size(const Graph& g, std::size_t k,
                                                                    const SearchOptions& options = {}) {
  detail::check_searchable(g);
  if (k == 0 || 2 * k > g.vertex_count()) return std::nullopt;
  const DistanceMatrix dm(g);
  detail::Budget budget(options.budget);
  const auto level = detail::least_pair_at_level(dm, k, budget, options.threads);
  if (!level.complete) throw Error("search budget exhausted");
  if (!level.pair) return std::nullopt;
  return certify(dm, VertexSet::from_mask(level.pair->first), VertexSet::from_mask(level.pair->second),
                 "exhaustive");
}

/// Calls `visit(s1, s2)` for every unordered disjoint homometric pair with
/// min_size <= |s1| = |s2| <= max_size. Intended for exhaustive property
/// checks on small graphs; stops early when `visit` returns false.
inline bool for_each_homometric_pair(const Graph& g, std::size_t min_size, std::size_t max_size,
                                     const std::function<bool(std::uint64_t, std::uint64_t)>& visit,
                                     const SearchOptions& options = {}) {
  detail::check_searchable(g);
  const DistanceMatrix dm(g);
  detail::Budget budget(options.budget);
  bool keep_going = true;
  for (std::size_t k = std::max<std::size_t>(min_size, 1); keep_going && k <= max_size && 2 * k <= g.vertex_count();
       ++k) {
    auto table = detail::enumerate_level(dm, k, budget, options.threads);
    if (!table) throw Error("search budget exhausted");
    detail::for_each_bucket(*table, [&](const std::vector<std::uint64_t>& group) {
      for (std::size_t a = 0; keep_going && a < group.size(); ++a)
        for (std::size_t b = a + 1; keep_going && b < group.size(); ++b)
          if ((group[a] & group[b]) == 0) keep_going = visit(group[a], group[b]);
    });
  }
  return keep_going;
}

/// Lemke–Skiena–Smith check on C_{2m}: every m-subset is homometric to its
/// complement. Exhaustive over all C(2m, m) subsets.
inline bool cycle_complement_check(std::size_t m) {
  if (m < 2) throw Error("cycle_complement_check needs m >= 2");
  if (2 * m > detail::kMaxSearchVertices) throw Error("cycle too long");
  const std::size_t n = 2 * m;
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) edges.emplace_back(i, static_cast<Vertex>((i + 1) % n));
  const Graph cycle(n, edges);
  const DistanceMatrix dm(cycle);
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;

  // Gosper's hack over all m-subsets.
  std::uint64_t s = (std::uint64_t{1} << m) - 1;
  while (s <= all) {
    if (!verify_homometric(dm, VertexSet::from_mask(s), VertexSet::from_mask(all & ~s))) return false;
    const std::uint64_t c = s & -s;
    const std::uint64_t r = s + c;
    if (r == 0) break;
    s = (((r ^ s) >> 2) / c) | r;
  }
  return true;
}

/// Are two disjoint sets similar, i.e. is there a bijection S1 -> S2
/// preserving every pairwise distance? Backtracking with per-vertex distance
/// profile pruning; sets larger than 10 are rejected.
inline bool are_similar(const DistanceMatrix& dm, const VertexSet& s1, const VertexSet& s2) {
  check_in_range(dm, s1);
  check_in_range(dm, s2);
  if (s1.size() != s2.size()) throw Error("are_similar: sets differ in size");
  if (!s1.disjoint(s2)) throw Error("are_similar: sets overlap");
  if (s1.size() > 10) throw Error("are_similar: sets larger than 10 are not supported");
  const std::size_t k = s1.size();

  auto profile = [&](const VertexSet& s, std::size_t i) {
    std::vector<Vertex> p;
    for (std::size_t j = 0; j < k; ++j)
      if (j != i) p.push_back(dm(s[i], s[j]));
    std::sort(p.begin(), p.end());
    return p;
  };
  std::vector<std::vector<Vertex>> p1(k), p2(k);
  for (std::size_t i = 0; i < k; ++i) {
    p1[i] = profile(s1, i);
    p2[i] = profile(s2, i);
  }

  std::vector<std::size_t> image(k);
  std::vector<char> used(k, 0);
  std::function<bool(std::size_t)> assign = [&](std::size_t i) {
    if (i == k) return true;
    for (std::size_t j = 0; j < k; ++j) {
      if (used[j] || p1[i] != p2[j]) continue;
      bool ok = true;
      for (std::size_t t = 0; t < i && ok; ++t) ok = dm(s1[i], s1[t]) == dm(s2[j], s2[image[t]]);
      if (!ok) continue;
      used[j] = 1;
      image[i] = j;
      if (assign(i + 1)) return true;
      used[j] = 0;
    }
    return false;
  };
  return assign(0);
}

inline bool are_similar(const Graph& g, const VertexSet& s1, const VertexSet& s2) {
  return are_similar(DistanceMatrix(g), s1, s2);
}

/// Multiset of integers kept in sorted order.
class IntegerMultiset {
 public:
  IntegerMultiset() = default;
  IntegerMultiset(std::initializer_list<std::int64_t> values) : values_(values) {
    std::sort(values_.begin(), values_.end());
  }
  explicit IntegerMultiset(std::vector<std::int64_t> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
  }

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  const std::vector<std::int64_t>& values() const { return values_; }

  /// Shifted so the minimum is 0; difference multisets are translation invariant.
  IntegerMultiset normalized() const {
    if (values_.empty()) return *this;
    std::vector<std::int64_t> out(values_);
    const auto lo = out.front();
    for (auto& x : out) x -= lo;
    return IntegerMultiset(std::move(out));
  }

  friend bool operator==(const IntegerMultiset&, const IntegerMultiset&) = default;

 private:
  std::vector<std::int64_t> values_;
};

inline IntegerMultiset difference_multiset(const IntegerMultiset& x) {
  if (x.size() < 2) throw Error("difference_multiset needs at least two values");
  const auto& v = x.values();
  std::vector<std::int64_t> out;
  out.reserve(v.size() * (v.size() - 1) / 2);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) out.push_back(v[j] - v[i]);
  return IntegerMultiset(std::move(out));
}

inline bool integers_homometric(const IntegerMultiset& a, const IntegerMultiset& b) {
  return difference_multiset(a) == difference_multiset(b);
}

/// (U+V, U−V) as full |U|·|V| multisets, each normalized to minimum 0.
inline std::pair<IntegerMultiset, IntegerMultiset> rosenblatt_seymour(const IntegerMultiset& u,
                                                                      const IntegerMultiset& v) {
  if (u.empty() || v.empty()) throw Error("rosenblatt_seymour needs non-empty multisets");
  std::vector<std::int64_t> sums, diffs;
  for (auto a : u.values())
    for (auto b : v.values()) {
      sums.push_back(a + b);
      diffs.push_back(a - b);
    }
  return {IntegerMultiset(std::move(sums)).normalized(), IntegerMultiset(std::move(diffs)).normalized()};
}

}  // namespace homoset
