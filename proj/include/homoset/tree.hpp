#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homoset/certificate.hpp"
#include "homoset/graph.hpp"
#include "homoset/rational.hpp"

namespace homoset {

/// The r-order P(T, r): x < y iff y lies on the path from x to the root.
struct RootedOrder {
  Vertex root = 0;
  std::vector<Vertex> parent;  // kNoVertex at the root
  std::vector<Vertex> depth;
  std::vector<std::vector<Vertex>> levels;    // levels[i] = N_i(root), sorted
  std::vector<std::vector<Vertex>> children;  // sorted

  /// Children grouped by parent, in increasing parent id; only non-empty groups.
  std::vector<std::vector<Vertex>> sibling_groups() const {
    std::vector<std::vector<Vertex>> out;
    for (const auto& c : children)
      if (!c.empty()) out.push_back(c);
    return out;
  }

  /// x < y in P(T, r): y is a proper ancestor of x.
  bool precedes(Vertex x, Vertex y) const {
    if (depth[x] <= depth[y]) return false;
    while (depth[x] > depth[y]) x = parent[x];
    return x == y;
  }

  bool comparable(Vertex x, Vertex y) const { return x == y || precedes(x, y) || precedes(y, x); }

  bool is_antichain(const VertexSet& s) const {
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j)
        if (comparable(s[i], s[j])) return false;
    return true;
  }
};

inline RootedOrder root_order(const Graph& t, Vertex r) {
  if (!t.is_tree()) throw Error("root_order: graph is not a tree");
  if (r >= t.vertex_count()) throw Error("root_order: root out of range");
  const std::size_t n = t.vertex_count();
  RootedOrder ro;
  ro.root = r;
  ro.parent.assign(n, kNoVertex);
  ro.depth = bfs_distances(t, r);
  ro.children.assign(n, {});
  Vertex height = *std::max_element(ro.depth.begin(), ro.depth.end());
  ro.levels.assign(height + 1, {});
  for (Vertex v = 0; v < n; ++v) {
    ro.levels[ro.depth[v]].push_back(v);
    if (v == r) continue;
    for (Vertex w : t.neighbors(v))
      if (ro.depth[w] + 1 == ro.depth[v]) {
        ro.parent[v] = w;
        ro.children[w].push_back(v);
        break;
      }
  }
  return ro;
}

/// Pendent paths of x: components of T - x that are paths hanging from x by
/// an endpoint. Each path is listed from its attachment vertex outward.
/// Only vertices of degree >= 3 have pendent paths.
inline std::vector<std::vector<Vertex>> pendent_paths(const Graph& t, Vertex x) {
  std::vector<std::vector<Vertex>> out;
  if (t.degree(x) < 3) return out;
  for (Vertex start : t.neighbors(x)) {
    std::vector<Vertex> path{start};
    Vertex prev = x, cur = start;
    bool hanging = true;
    while (true) {
      if (t.degree(cur) == 1) break;
      if (t.degree(cur) > 2) {
        hanging = false;
        break;
      }
      const auto& nb = t.neighbors(cur);
      const Vertex next = nb[0] == prev ? nb[1] : nb[0];
      prev = cur;
      cur = next;
      path.push_back(cur);
    }
    if (hanging) out.push_back(std::move(path));
  }
  return out;
}

/// Degree profile plus bad vertices: a vertex of degree >= 3 is bad when it
/// has an odd number of pendent paths; its bad path is a shortest one (ties go
/// to the smallest attachment vertex).
inline TreeProfile bad_analysis(const Graph& t) {
  TreeProfile p = tree_profile(t);
  for (Vertex x = 0; x < t.vertex_count(); ++x) {
    auto paths = pendent_paths(t, x);
    if (paths.size() % 2 == 0) continue;
    const auto shortest = std::min_element(paths.begin(), paths.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a.front() < b.front();
    });
    p.bad_vertices.push_back(x);
    p.bad_l += shortest->size();
    if (t.degree(x) == 3) ++p.bad3;
    p.bad_paths.push_back(*shortest);
  }
  p.bad = p.bad_vertices.size();
  return p;
}

/// Cleaned tree: all bad paths removed in a single pass.
inline InducedSubgraph clean_tree(const Graph& t) {
  const auto p = bad_analysis(t);
  std::vector<char> drop(t.vertex_count(), 0);
  for (const auto& path : p.bad_paths)
    for (Vertex v : path) drop[v] = 1;
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < t.vertex_count(); ++v)
    if (!drop[v]) keep.push_back(v);
  return induced_subgraph(t, VertexSet(std::move(keep)));
}

/// Trimmed tree: the cleaned tree with every remaining pendent path of T cut
/// back to its attachment vertex.
inline InducedSubgraph trim_tree(const Graph& t) {
  const auto p = bad_analysis(t);
  std::vector<char> drop(t.vertex_count(), 0);
  for (const auto& path : p.bad_paths)
    for (Vertex v : path) drop[v] = 1;
  for (Vertex x = 0; x < t.vertex_count(); ++x)
    for (const auto& path : pendent_paths(t, x)) {
      if (drop[path.front()]) continue;  // this one was the bad path
      for (std::size_t i = 1; i < path.size(); ++i) drop[path[i]] = 1;
    }
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < t.vertex_count(); ++v)
    if (!drop[v]) keep.push_back(v);
  return induced_subgraph(t, VertexSet(std::move(keep)));
}

/// Sibling partition. `s` must be an antichain of P(T, r) in which every vertex
/// has a sibling. Each family of siblings is sorted by id and dealt
/// alternately into S1 and S2; an odd family leaves its largest id out.
inline HomometricCertificate sibling_partition(const Graph& t, const RootedOrder& ro, const VertexSet& s) {
  for (Vertex v : s)
    if (v >= t.vertex_count()) throw Error("sibling_partition: vertex " + std::to_string(v) + " out of range");
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (ro.comparable(s[i], s[j]))
        throw Error("sibling_partition: vertex " + std::to_string(s[i]) + " is comparable with " +
                    std::to_string(s[j]));
  std::map<Vertex, std::vector<Vertex>> families;
  for (Vertex v : s) {
    if (v == ro.root) throw Error("sibling_partition: vertex " + std::to_string(v) + " is the root");
    families[ro.parent[v]].push_back(v);
  }
  std::vector<Vertex> a, b;
  for (const auto& [parent, family] : families) {
    if (family.size() < 2)
      throw Error("sibling_partition: vertex " + std::to_string(family.front()) + " has no sibling in the set");
    for (std::size_t i = 0; i + 1 < family.size(); i += 2) {
      a.push_back(family[i]);
      b.push_back(family[i + 1]);
    }
  }
  return certify(DistanceMatrix(t), VertexSet(std::move(a)), VertexSet(std::move(b)), "sibling_partition");
}

/// k'(S): number of maximal sibling families of odd size within S.
inline std::size_t odd_sibling_families(const RootedOrder& ro, const VertexSet& s) {
  std::map<Vertex, std::size_t> sizes;
  for (Vertex v : s) ++sizes[ro.parent.at(v)];
  std::size_t odd = 0;
  for (const auto& [parent, size] : sizes) odd += size % 2;
  return odd;
}

/// Center of a tree; the smaller id when there are two.
inline Vertex tree_center(const Graph& t) {
  const DistanceMatrix dm(t);
  Vertex best = 0;
  Vertex best_ecc = kNoVertex;
  for (Vertex v = 0; v < t.vertex_count(); ++v) {
    Vertex ecc = 0;
    for (Vertex w = 0; w < t.vertex_count(); ++w) ecc = std::max(ecc, dm(v, w));
    if (ecc < best_ecc) {
      best_ecc = ecc;
      best = v;
    }
  }
  return best;
}

/// The level-gap step on its own: root at the center, pick the level j with
/// the largest |N_j| - |N_{j-1}| (smallest j on ties) and sibling-partition
/// the vertices of N_j that have a sibling. Empty when that set is empty.
inline std::optional<HomometricCertificate> level_gap_partition(const Graph& t) {
  if (!t.is_tree()) throw Error("level_gap_partition: graph is not a tree");
  if (t.vertex_count() < 2) return std::nullopt;
  const auto ro = root_order(t, tree_center(t));
  std::size_t best_j = 1;
  long best_gap = std::numeric_limits<long>::min();
  for (std::size_t j = 1; j < ro.levels.size(); ++j) {
    const long gap = static_cast<long>(ro.levels[j].size()) - static_cast<long>(ro.levels[j - 1].size());
    if (gap > best_gap) {
      best_gap = gap;
      best_j = j;
    }
  }
  std::vector<Vertex> s;
  for (Vertex v : ro.levels[best_j])
    if (ro.children[ro.parent[v]].size() >= 2) s.push_back(v);
  if (s.empty()) return std::nullopt;
  auto cert = sibling_partition(t, ro, VertexSet(std::move(s)));
  cert.provenance = "level_gap";
  return cert;
}

/// Best of the level-gap partition and the halving construction; ties keep the level gap.
inline HomometricCertificate level_gap_construction(const Graph& t) {
  auto halving = shortest_path_halving(t);
  auto gap = level_gap_partition(t);
  if (gap && gap->size() >= halving.size()) return *gap;
  return halving;
}

enum class BoundTarget { twice_h, h };

/// One lower bound, kept as an exact rational on either 2h or h.
struct Bound {
  std::string name;
  std::string formula;
  Rational value;
  BoundTarget target = BoundTarget::twice_h;
  /// Backed by a construction this library can run.
  bool constructive = false;

  Rational on_h() const { return target == BoundTarget::twice_h ? value / Rational(2) : value; }
  /// Reading the inequality literally: h is an integer, so h >= ceil.
  std::int64_t h_ceil() const { return on_h().ceil(); }
  /// Conservative integer reading for bounds stated without floors.
  std::int64_t h_floor() const { return on_h().floor(); }
};

struct DegreeInequalities {
  bool leaf_identity = false;    // d_1 = 2 + sum_{i>=3} d_i (i - 2)
  bool leaves_minus_bad = false; // d_1 - bad >= 2 + sum_{i>=4} d_i
  bool leaves_share = false;     // 3 d_1 >= 2 (n - d_2 - d_3)
  bool high_degree_share = false;// 3 sum_{i>=4} d_i <= n - d_2 - d_3
  bool all() const { return leaf_identity && leaves_minus_bad && leaves_share && high_degree_share; }
};

struct BoundReport {
  TreeProfile profile;
  std::vector<Bound> bounds;
  DegreeInequalities degree_checks;
  HomometricCertificate best;

  const Bound* find(const std::string& name) const {
    for (const auto& b : bounds)
      if (b.name == name) return &b;
    return nullptr;
  }
};

inline DegreeInequalities degree_inequalities(const TreeProfile& p) {
  DegreeInequalities out;
  const auto n = static_cast<long>(p.n);
  const auto d1 = static_cast<long>(p.d(1)), d2 = static_cast<long>(p.d(2)), d3 = static_cast<long>(p.d(3));
  const auto high = static_cast<long>(p.sum_degrees_from(4));
  long weighted = 0;
  for (std::size_t i = 3; i < p.degree_counts.size(); ++i)
    weighted += static_cast<long>(p.degree_counts[i]) * static_cast<long>(i - 2);
  out.leaf_identity = p.n == 1 || p.n == 2 ? true : d1 == 2 + weighted;
  out.leaves_minus_bad = d1 - static_cast<long>(p.bad) >= 2 + high;
  out.leaves_share = 3 * d1 >= 2 * (n - d2 - d3);
  out.high_degree_share = 3 * high <= n - d2 - d3;
  return out;
}

/// Six closed-form lower bounds on 2h(T), two bounds on h(T) and the
/// leaf-degree inequalities. `s` enables the two sibling-set bounds and
/// must satisfy the sibling_partition preconditions for a center rooting.
inline BoundReport lemma_bounds(const Graph& t, const std::optional<VertexSet>& s = std::nullopt) {
  if (!t.is_tree()) throw Error("lemma_bounds: graph is not a tree");
  if (t.vertex_count() < 2) throw Error("lemma_bounds: tree needs at least two vertices");
  BoundReport r;
  r.profile = bad_analysis(t);
  const auto& p = r.profile;
  const auto n = static_cast<std::int64_t>(p.n);
  const auto diam = static_cast<std::int64_t>(p.diameter);
  const auto bad = static_cast<std::int64_t>(p.bad);

  r.best = level_gap_construction(t);

  r.bounds.push_back({"diameter", "2h >= diam(T) + 1", Rational(diam + 1), BoundTarget::twice_h, true});
  if (s) {
    const auto ro = root_order(t, tree_center(t));
    auto cert = sibling_partition(t, ro, *s);
    const auto k_odd = static_cast<std::int64_t>(odd_sibling_families(ro, *s));
    const auto size = static_cast<std::int64_t>(s->size());
    r.bounds.push_back({"sibling", "2h >= |S| - k'", Rational(size - k_odd), BoundTarget::twice_h, true});
    r.bounds.push_back({"sibling_two_thirds", "2h >= 2|S|/3", Rational(2 * size, 3), BoundTarget::twice_h, true});
    if (cert.size() > r.best.size()) r.best = cert;
  }
  r.bounds.push_back({"leaves_minus_bad", "2h >= d_1(T) - bad(T)",
                      Rational(static_cast<std::int64_t>(p.d(1)) - bad), BoundTarget::twice_h, false});
  r.bounds.push_back({"level", "2h >= n/diam(T) - bad(T)", Rational(n, diam) - Rational(bad), BoundTarget::twice_h,
                      false});
  r.bounds.push_back({"cleaned", "2h >= (n - bad_l(T))/diam(T)",
                      Rational(n - static_cast<std::int64_t>(p.bad_l), diam), BoundTarget::twice_h, false});
  r.bounds.push_back({"degree_low", "h >= (n - d_2 - 4 d_3)/6",
                      Rational(n - static_cast<std::int64_t>(p.d(2)) - 4 * static_cast<std::int64_t>(p.d(3)), 6),
                      BoundTarget::h, false});
  r.bounds.push_back({"degree_branching", "h >= (n - d_1 - d_2)/(diam(T) + 1)",
                      Rational(n - static_cast<std::int64_t>(p.d(1)) - static_cast<std::int64_t>(p.d(2)), diam + 1),
                      BoundTarget::h, false});
  r.degree_checks = degree_inequalities(p);
  return r;
}

/// Double-sweep diametral path of a tree, from the smallest-id farthest
/// vertex of a sweep started at 0.
inline std::vector<Vertex> diametral_path(const Graph& t) {
  auto farthest = [&](Vertex from) {
    const auto d = bfs_distances(t, from);
    return static_cast<Vertex>(std::max_element(d.begin(), d.end()) - d.begin());
  };
  const Vertex a = farthest(0);
  const Vertex b = farthest(a);
  const auto to_b = bfs_distances(t, b);
  std::vector<Vertex> path{a};
  for (Vertex cur = a; cur != b;) {
    for (Vertex w : t.neighbors(cur))
      if (to_b[w] + 1 == to_b[cur]) {
        cur = w;
        break;
      }
    path.push_back(cur);
  }
  return path;
}

/// Spine of a caterpillar: the interior of a longest path (a single vertex for
/// n <= 2). Empty when every non-spine vertex is not a leaf hanging off it.
inline std::optional<std::vector<Vertex>> caterpillar_spine(const Graph& t) {
  if (!t.is_tree()) return std::nullopt;
  if (t.vertex_count() <= 2) return std::vector<Vertex>{0};
  auto path = diametral_path(t);
  std::vector<Vertex> spine(path.begin() + 1, path.end() - 1);
  std::vector<char> on_spine(t.vertex_count(), 0);
  for (Vertex v : spine) on_spine[v] = 1;
  for (Vertex v = 0; v < t.vertex_count(); ++v)
    if (!on_spine[v] && (t.degree(v) != 1 || !on_spine[t.neighbors(v)[0]])) return std::nullopt;
  return spine;
}

/// Caterpillar strategy: a spine with at least n/3 vertices gives a long
/// shortest path; otherwise the leaves form large sibling families.
inline HomometricCertificate caterpillar_construction(const Graph& t) {
  const auto spine = caterpillar_spine(t);
  if (!spine) throw Error("caterpillar_construction: graph is not a caterpillar");
  if (3 * spine->size() >= t.vertex_count() || t.vertex_count() < 3) {
    auto cert = shortest_path_halving(t);
    cert.provenance = "caterpillar/long_spine";
    return cert;
  }
  const auto ro = root_order(t, spine->front());
  std::vector<char> on_spine(t.vertex_count(), 0);
  for (Vertex v : *spine) on_spine[v] = 1;
  std::vector<Vertex> s;
  for (Vertex v : *spine) {
    std::vector<Vertex> leaves;
    for (Vertex w : t.neighbors(v))
      if (!on_spine[w]) leaves.push_back(w);
    if (leaves.size() >= 2) s.insert(s.end(), leaves.begin(), leaves.end());
  }
  auto cert = sibling_partition(t, ro, VertexSet(std::move(s)));
  cert.provenance = "caterpillar/leaf_families";
  return cert;
}

struct HaircombShape {
  std::vector<Vertex> spine;
  std::vector<std::vector<Vertex>> legs;  // each from its attachment vertex outward
};

/// Recognizes a haircomb: maximum degree 3 and every degree-3 vertex on one
/// path. The spine is that path extended along the longest branches at both
/// ends, so it runs leaf to leaf.
inline std::optional<HaircombShape> haircomb_shape(const Graph& t) {
  if (!t.is_tree() || t.max_degree() > 3) return std::nullopt;
  const std::size_t n = t.vertex_count();
  std::vector<Vertex> branch;
  for (Vertex v = 0; v < n; ++v)
    if (t.degree(v) == 3) branch.push_back(v);
  HaircombShape shape;
  if (branch.empty()) {
    shape.spine = n == 1 ? std::vector<Vertex>{0} : diametral_path(t);
    return shape;
  }
  auto farthest_branch = [&](Vertex from) {
    const auto d = bfs_distances(t, from);
    Vertex best = from;
    for (Vertex b : branch)
      if (d[b] > d[best]) best = b;
    return best;
  };
  const Vertex x = farthest_branch(branch.front());
  const Vertex y = farthest_branch(x);
  const auto to_y = bfs_distances(t, y);
  std::vector<Vertex> core{x};
  for (Vertex cur = x; cur != y;) {
    for (Vertex w : t.neighbors(cur))
      if (to_y[w] + 1 == to_y[cur]) {
        cur = w;
        break;
      }
    core.push_back(cur);
  }
  std::vector<char> on_core(n, 0);
  for (Vertex v : core) on_core[v] = 1;
  for (Vertex b : branch)
    if (!on_core[b]) return std::nullopt;

  // Off-core branches are hanging paths, since no degree-3 vertex is off-core.
  auto walk = [&](Vertex from, Vertex start) {
    std::vector<Vertex> path{start};
    Vertex prev = from, cur = start;
    while (t.degree(cur) == 2) {
      const auto& nb = t.neighbors(cur);
      const Vertex next = nb[0] == prev ? nb[1] : nb[0];
      prev = cur;
      cur = next;
      path.push_back(cur);
    }
    return path;
  };
  auto branches_at = [&](Vertex v) {
    std::vector<std::vector<Vertex>> out;
    for (Vertex w : t.neighbors(v))
      if (!on_core[w]) out.push_back(walk(v, w));
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return out;
  };

  auto head = branches_at(x);
  std::vector<Vertex> spine(head.front().rbegin(), head.front().rend());
  head.erase(head.begin());
  std::vector<std::vector<Vertex>> tail_branches;
  if (x == y) {
    tail_branches.push_back(head.front());
    head.erase(head.begin());
  } else {
    tail_branches = branches_at(y);
  }
  spine.insert(spine.end(), core.begin(), core.end());
  spine.insert(spine.end(), tail_branches.front().begin(), tail_branches.front().end());
  for (auto& leg : head) shape.legs.push_back(std::move(leg));
  for (std::size_t i = 1; i < tail_branches.size(); ++i) shape.legs.push_back(tail_branches[i]);
  for (std::size_t i = 1; i + 1 < core.size(); ++i)
    for (auto& leg : branches_at(core[i])) shape.legs.push_back(std::move(leg));
  shape.spine = std::move(spine);
  return shape;
}

/// Haircomb strategy: with k legs on a spine of m vertices, either k + 1 >=
/// sqrt(n) (and the spine is long) or some leg has at least sqrt(n)
/// vertices; both cases end in the halving construction on a diametral path.
inline HomometricCertificate haircomb_construction(const Graph& t) {
  const auto shape = haircomb_shape(t);
  if (!shape) throw Error("haircomb_construction: graph is not a haircomb");
  const std::size_t n = t.vertex_count();
  const std::size_t k = shape->legs.size();
  auto cert = shortest_path_halving(t);
  cert.provenance = (k + 1) * (k + 1) >= n ? "haircomb/spine_case" : "haircomb/leg_case";
  return cert;
}

}  // namespace homoset
