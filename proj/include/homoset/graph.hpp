#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace homoset {

/// Every precondition violation in the library surfaces as this exception.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

/// Sorted, duplicate-free list of vertex ids. Ordering is lexicographic on the
/// sorted member list, which is the order used for deterministic tie-breaking.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> members) : members_(members) { normalize(); }
  explicit VertexSet(std::vector<Vertex> members) : members_(std::move(members)) { normalize(); }

  static VertexSet from_mask(std::uint64_t mask) {
    VertexSet s;
    while (mask != 0) {
      s.members_.push_back(static_cast<Vertex>(__builtin_ctzll(mask)));
      mask &= mask - 1;
    }
    return s;
  }

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  Vertex operator[](std::size_t i) const { return members_[i]; }
  const std::vector<Vertex>& members() const { return members_; }

  bool contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }

  bool disjoint(const VertexSet& other) const {
    auto a = members_.begin();
    auto b = other.members_.begin();
    while (a != members_.end() && b != other.members_.end()) {
      if (*a == *b) return false;
      if (*a < *b) ++a; else ++b;
    }
    return true;
  }

  VertexSet united(const VertexSet& other) const {
    std::vector<Vertex> out;
    std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                   std::back_inserter(out));
    return VertexSet(std::move(out));
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet& a, const VertexSet& b) { return a.members_ <=> b.members_; }

 private:
  void normalize() {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  std::vector<Vertex> members_;
};

/// Immutable simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;

  /// Rejects loops and out-of-range endpoints; duplicate edges collapse.
  Graph(std::size_t n, const std::vector<Edge>& edges) : n_(n), adjacency_(n) {
    for (auto [u, v] : edges) {
      if (u >= n || v >= n)
        throw Error("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range for n=" +
                    std::to_string(n));
      if (u == v) throw Error("loop at vertex " + std::to_string(u));
      edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (auto [u, v] : edges_) {
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
    connected_ = compute_connected();
  }

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_.at(v); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
  bool connected() const { return connected_; }

  bool has_edge(Vertex u, Vertex v) const {
    const auto& nbrs = adjacency_.at(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
  }

  std::size_t max_degree() const {
    std::size_t best = 0;
    for (const auto& nbrs : adjacency_) best = std::max(best, nbrs.size());
    return best;
  }

  bool is_tree() const { return n_ >= 1 && connected_ && edges_.size() + 1 == n_; }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  bool compute_connected() const {
    if (n_ == 0) return true;
    std::vector<char> seen(n_, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : adjacency_[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
    }
    return count == n_;
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  bool connected_ = true;
};

inline Graph build_graph(std::size_t n, const std::vector<Edge>& edges) { return Graph(n, edges); }

/// Breadth-first distances from one source; unreachable vertices get kNoVertex.
inline std::vector<Vertex> bfs_distances(const Graph& g, Vertex source) {
  std::vector<Vertex> dist(g.vertex_count(), kNoVertex);
  std::queue<Vertex> queue;
  dist.at(source) = 0;
  queue.push(source);
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop();
    for (Vertex w : g.neighbors(v))
      if (dist[w] == kNoVertex) {
        dist[w] = dist[v] + 1;
        queue.push(w);
      }
  }
  return dist;
}

/// Hop-count matrix of a connected graph.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(const Graph& g) : n_(g.vertex_count()), dist_(n_ * n_) {
    if (!g.connected()) throw Error("graph is disconnected; distances are infinite");
    for (Vertex s = 0; s < n_; ++s) {
      const auto row = bfs_distances(g, s);
      std::copy(row.begin(), row.end(), dist_.begin() + static_cast<std::ptrdiff_t>(s * n_));
      for (Vertex d : row) diameter_ = std::max(diameter_, d);
    }
  }

  std::size_t size() const { return n_; }
  Vertex operator()(Vertex u, Vertex v) const { return dist_[u * n_ + v]; }
  Vertex at(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_) throw Error("vertex out of range in distance lookup");
    return dist_[u * n_ + v];
  }
  Vertex diameter() const { return diameter_; }

  /// N_i(x): vertices at distance exactly i from x.
  std::vector<Vertex> sphere(Vertex x, Vertex i) const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < n_; ++v)
      if (at(x, v) == i) out.push_back(v);
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Vertex> dist_;
  Vertex diameter_ = 0;
};

inline DistanceMatrix all_pairs_distances(const Graph& g) { return DistanceMatrix(g); }

/// Multiset of distances, stored canonically as a sorted sequence.
class DistanceMultiset {
 public:
  DistanceMultiset() = default;
  explicit DistanceMultiset(std::vector<Vertex> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
  }

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  const std::vector<Vertex>& sorted() const { return values_; }

  std::map<Vertex, std::size_t> counts() const {
    std::map<Vertex, std::size_t> out;
    for (Vertex d : values_) ++out[d];
    return out;
  }

  DistanceMultiset merged(const DistanceMultiset& other) const {
    std::vector<Vertex> out;
    std::merge(values_.begin(), values_.end(), other.values_.begin(), other.values_.end(),
               std::back_inserter(out));
    return DistanceMultiset(std::move(out));
  }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(values_[i]);
    }
    return s + "}";
  }

  friend bool operator==(const DistanceMultiset&, const DistanceMultiset&) = default;

 private:
  std::vector<Vertex> values_;
};

inline void check_in_range(const DistanceMatrix& dm, const VertexSet& s) {
  for (Vertex v : s)
    if (v >= dm.size()) throw Error("vertex " + std::to_string(v) + " out of range");
}

/// D(S): distances over all C(|S|,2) unordered pairs of S.
inline DistanceMultiset distance_multiset(const DistanceMatrix& dm, const VertexSet& s) {
  check_in_range(dm, s);
  std::vector<Vertex> values;
  values.reserve(s.size() * (s.size() > 0 ? s.size() - 1 : 0) / 2);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) values.push_back(dm(s[i], s[j]));
  return DistanceMultiset(std::move(values));
}

/// D(A,B): distances over all |A|·|B| pairs with one end in each set.
inline DistanceMultiset cross_distances(const DistanceMatrix& dm, const VertexSet& a, const VertexSet& b) {
  check_in_range(dm, a);
  check_in_range(dm, b);
  if (!a.disjoint(b)) throw Error("cross_distances requires disjoint sets");
  std::vector<Vertex> values;
  values.reserve(a.size() * b.size());
  for (Vertex u : a)
    for (Vertex v : b) values.push_back(dm(u, v));
  return DistanceMultiset(std::move(values));
}

inline std::size_t induced_edge_count(const Graph& g, const VertexSet& s) {
  std::size_t count = 0;
  for (Vertex u : s)
    for (Vertex w : g.neighbors(u))
      if (u < w && s.contains(w)) ++count;
  return count;
}

/// Degree statistics of a tree together with the bad-vertex data filled in by
/// bad_analysis() in tree.hpp. tree_profile() only fills the first block.
struct TreeProfile {
  std::size_t n = 0;
  std::vector<std::size_t> degree_counts;  // degree_counts[i] = d_i
  std::vector<Vertex> leaves;
  Vertex diameter = 0;

  std::vector<Vertex> bad_vertices;
  std::vector<std::vector<Vertex>> bad_paths;  // one per bad vertex, attachment vertex first
  std::size_t bad = 0;
  std::size_t bad3 = 0;
  std::size_t bad_l = 0;

  std::size_t d(std::size_t i) const { return i < degree_counts.size() ? degree_counts[i] : 0; }

  std::size_t sum_degrees_from(std::size_t lo) const {
    std::size_t s = 0;
    for (std::size_t i = lo; i < degree_counts.size(); ++i) s += degree_counts[i];
    return s;
  }
};

inline TreeProfile tree_profile(const Graph& g) {
  if (!g.is_tree()) throw Error("graph is not a tree");
  TreeProfile p;
  p.n = g.vertex_count();
  p.degree_counts.assign(g.max_degree() + 1, 0);
  for (Vertex v = 0; v < p.n; ++v) {
    ++p.degree_counts[g.degree(v)];
    if (g.degree(v) == 1) p.leaves.push_back(v);
  }
  // Double sweep is exact on trees.
  auto first = bfs_distances(g, 0);
  const Vertex far = static_cast<Vertex>(std::max_element(first.begin(), first.end()) - first.begin());
  auto second = bfs_distances(g, far);
  p.diameter = *std::max_element(second.begin(), second.end());
  return p;
}

/// Subgraph induced by `keep`, relabelled 0..|keep|-1 in increasing id order.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> original;  // new id -> id in the parent graph
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& keep) {
  std::vector<Vertex> index(g.vertex_count(), kNoVertex);
  for (std::size_t i = 0; i < keep.size(); ++i) index.at(keep[i]) = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    if (index[u] != kNoVertex && index[v] != kNoVertex) edges.emplace_back(index[u], index[v]);
  return {Graph(keep.size(), edges), keep.members()};
}

}  // namespace homoset
