#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "homoset/graph.hpp"
#include "homoset/rational.hpp"
#include "homoset/spider.hpp"

namespace homoset {

/// mt19937_64 with portable bounded draws (rejection sampling instead of
/// std::uniform_int_distribution, whose output is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do x = engine_(); while (x >= limit);
    return x % bound;
  }

  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  bool chance(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Deterministic families. Each documents its labeling.

/// P_n: 0 - 1 - ... - (n-1).
inline Graph path_graph(std::size_t n) {
  if (n == 0) throw Error("path needs at least one vertex");
  std::vector<Edge> edges;
  for (Vertex i = 1; i < n; ++i) edges.emplace_back(i - 1, i);
  return Graph(n, edges);
}

/// C_n: the path 0..n-1 closed by (n-1, 0).
inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw Error("cycle needs at least three vertices");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) edges.emplace_back(i, static_cast<Vertex>((i + 1) % n));
  return Graph(n, edges);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, edges);
}

inline Graph empty_graph(std::size_t n) { return Graph(n, {}); }

/// K_{1,leaves}: center 0, leaves 1..leaves.
inline Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (Vertex i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph(leaves + 1, edges);
}

/// Complete multipartite graph; parts are consecutive id ranges.
inline Graph complete_multipartite(const std::vector<std::size_t>& parts) {
  std::vector<std::size_t> part_of;
  for (std::size_t p = 0; p < parts.size(); ++p) part_of.insert(part_of.end(), parts[p], p);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < part_of.size(); ++u)
    for (Vertex v = u + 1; v < part_of.size(); ++v)
      if (part_of[u] != part_of[v]) edges.emplace_back(u, v);
  return Graph(part_of.size(), edges);
}

/// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i - (i+5).
inline Graph petersen_graph() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    edges.emplace_back(i, 5 + i);
  }
  return Graph(10, edges);
}

inline Graph spider_graph(const std::vector<std::size_t>& legs) { return SpiderSpec(legs).graph(); }

/// Spine 0..s-1 with leaves[i] leaves on spine vertex i; leaves are numbered
/// after the spine, spine vertex by spine vertex.
inline Graph caterpillar_graph(const std::vector<std::size_t>& leaves) {
  if (leaves.empty()) throw Error("caterpillar needs a spine");
  const std::size_t spine = leaves.size();
  std::vector<Edge> edges;
  for (Vertex i = 1; i < spine; ++i) edges.emplace_back(i - 1, i);
  Vertex next = static_cast<Vertex>(spine);
  for (Vertex i = 0; i < spine; ++i)
    for (std::size_t j = 0; j < leaves[i]; ++j) edges.emplace_back(i, next++);
  return Graph(next, edges);
}

/// Spine 0..m-1 where spine vertex i carries a leg of legs[i] vertices (0 for
/// none). Legs follow the spine, in spine order, each from the spine outward.
inline Graph haircomb_graph(const std::vector<std::size_t>& legs) {
  if (legs.empty()) throw Error("haircomb needs a spine");
  const std::size_t spine = legs.size();
  std::vector<Edge> edges;
  for (Vertex i = 1; i < spine; ++i) edges.emplace_back(i - 1, i);
  Vertex next = static_cast<Vertex>(spine);
  for (Vertex i = 0; i < spine; ++i) {
    Vertex prev = i;
    for (std::size_t j = 0; j < legs[i]; ++j) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
  }
  return Graph(next, edges);
}

/// Haircomb labeled as above, then sub[t] extra vertices hanging as a path
/// from the t-th leg vertex (leg vertices counted in label order). A single
/// entry in `sub` applies to every leg vertex.
inline Graph double_haircomb_graph(const std::vector<std::size_t>& legs, const std::vector<std::size_t>& sub) {
  const Graph base = haircomb_graph(legs);
  const std::size_t spine = legs.size();
  const std::size_t leg_vertices = base.vertex_count() - spine;
  if (sub.size() != 1 && sub.size() != leg_vertices)
    throw Error("double_haircomb needs one sub-path length per leg vertex (" + std::to_string(leg_vertices) + ")");
  std::vector<Edge> edges = base.edges();
  Vertex next = static_cast<Vertex>(base.vertex_count());
  for (std::size_t t = 0; t < leg_vertices; ++t) {
    Vertex prev = static_cast<Vertex>(spine + t);
    const std::size_t len = sub.size() == 1 ? sub[0] : sub[t];
    for (std::size_t j = 0; j < len; ++j) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
  }
  return Graph(next, edges);
}

/// Disjoint union of cliques, consecutive id ranges.
inline Graph disjoint_cliques(const std::vector<std::size_t>& sizes) {
  std::vector<Edge> edges;
  Vertex base = 0;
  for (auto a : sizes) {
    for (Vertex u = 0; u < a; ++u)
      for (Vertex v = u + 1; v < a; ++v) edges.emplace_back(base + u, base + v);
    base += static_cast<Vertex>(a);
  }
  return Graph(base, edges);
}

inline Graph flower_graph(const Graph& h, std::size_t m) { return FlowerSpec{h, m}.graph(); }

/// Clique sizes and path length for the upper-bound flower of cliques.
struct CliqueFlowerParams {
  std::vector<std::uint64_t> sizes;  // a_1..a_k; a_0 = 1 is implicit
  std::uint64_t path_length = 0;
  bool from_recurrence = false;
  Rational formula_n;     // 2(a_1 + ... + a_k) - k/4
  Rational formula_path;  // n/2 - k/8

  bool n_integral() const { return formula_n.is_integer(); }
  bool path_integral() const { return formula_path.is_integer(); }

  /// a_i > 4(1 + sum_{j<i} C(a_j + 1, 2)) and a_i odd, for i >= 2.
  bool satisfies_recurrence() const {
    unsigned __int128 acc = 1;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      if (i >= 1 && (sizes[i] % 2 == 0 || static_cast<unsigned __int128>(sizes[i]) <= 4 * acc)) return false;
      acc += static_cast<unsigned __int128>(sizes[i] + 1) * sizes[i] / 2;
    }
    return true;
  }

  /// a_j >= (4/5) sum_{i=0}^{j} a_i for every j >= 1.
  bool satisfies_growth() const {
    unsigned __int128 prefix = 1;
    for (auto a : sizes) {
      prefix += a;
      if (5 * static_cast<unsigned __int128>(a) < 4 * prefix) return false;
    }
    return true;
  }
};

/// Each a_i (i >= 2) is the smallest odd number above 4(1 + sum C(a_j + 1, 2)).
inline CliqueFlowerParams paper_clique_sequence(std::size_t k, std::uint64_t a1) {
  if (k == 0) throw Error("clique sequence needs k >= 1");
  if (a1 < 5) throw Error("clique sequence needs a_1 >= 5");
  constexpr unsigned __int128 limit = static_cast<unsigned __int128>(1) << 62;
  CliqueFlowerParams p;
  p.from_recurrence = true;
  p.sizes.push_back(a1);
  unsigned __int128 acc = 1 + static_cast<unsigned __int128>(a1 + 1) * a1 / 2;
  while (p.sizes.size() < k) {
    unsigned __int128 next = 4 * acc + 1;
    if (next % 2 == 0) ++next;
    if (next >= limit) throw Error("clique sequence exceeds 64-bit range at a_" + std::to_string(p.sizes.size() + 1));
    p.sizes.push_back(static_cast<std::uint64_t>(next));
    acc += (next + 1) * next / 2;
    if (acc >= limit * limit / 4) throw Error("clique sequence exceeds 64-bit range");
  }
  std::int64_t sum = 0;
  for (auto a : p.sizes) {
    if (a > static_cast<std::uint64_t>(INT64_MAX / 4) || sum > INT64_MAX / 4) throw Error("clique sizes too large");
    sum += static_cast<std::int64_t>(a);
  }
  const auto kk = static_cast<std::int64_t>(k);
  p.formula_n = Rational(2 * sum) - Rational(kk, 4);
  p.formula_path = p.formula_n / Rational(2) - Rational(kk, 8);
  p.path_length = p.path_integral() ? static_cast<std::uint64_t>(p.formula_path.num()) : 0;
  return p;
}

/// Flower of cliques: cliques on consecutive ids, then the path.
inline Graph clique_flower_graph(const CliqueFlowerParams& p) {
  if (p.path_length == 0) throw Error("clique flower needs an explicit integral path length");
  std::uint64_t total = p.path_length;
  for (auto a : p.sizes) total += a;
  if (total > 4096) throw Error("clique flower too large to materialize");
  std::vector<std::size_t> sizes(p.sizes.begin(), p.sizes.end());
  return flower_graph(disjoint_cliques(sizes), p.path_length);
}

/// Tree from a Prüfer sequence over 0..n-1 (n = sequence length + 2).
inline Graph tree_from_pruefer(const std::vector<Vertex>& seq) {
  const std::size_t n = seq.size() + 2;
  std::vector<std::size_t> degree(n, 1);
  for (Vertex v : seq) {
    if (v >= n) throw Error("Prüfer entry out of range");
    ++degree[v];
  }
  std::set<Vertex> leaves;
  for (Vertex v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.insert(v);
  std::vector<Edge> edges;
  for (Vertex v : seq) {
    const Vertex leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.emplace_back(leaf, v);
    if (--degree[v] == 1) leaves.insert(v);
  }
  const Vertex u = *leaves.begin();
  const Vertex w = *std::next(leaves.begin());
  edges.emplace_back(u, w);
  return Graph(n, edges);
}

/// Uniform labeled tree via a uniform Prüfer sequence.
inline Graph random_tree(std::size_t n, Rng& rng) {
  if (n == 0) throw Error("tree needs at least one vertex");
  if (n == 1) return Graph(1, {});
  std::vector<Vertex> seq(n - 2);
  for (auto& v : seq) v = static_cast<Vertex>(rng.below(n));
  return tree_from_pruefer(seq);
}

/// G(n, p) conditioned on being connected (and on the diameter when
/// `diameter` is set), by rejection sampling.
inline Graph random_graph(std::size_t n, double p, Rng& rng, std::optional<Vertex> diameter = std::nullopt,
                          std::size_t max_attempts = 100000) {
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (rng.chance(p)) edges.emplace_back(u, v);
    Graph g(n, edges);
    if (!g.connected()) continue;
    if (diameter && DistanceMatrix(g).diameter() != *diameter) continue;
    return g;
  }
  throw Error("random_graph: no sample met the constraints");
}

/// Random spanning tree plus each remaining pair with probability p.
inline Graph random_connected_graph(std::size_t n, double p, Rng& rng) {
  const Graph t = random_tree(n, rng);
  std::vector<Edge> edges = t.edges();
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!t.has_edge(u, v) && rng.chance(p)) edges.emplace_back(u, v);
  return Graph(n, edges);
}

namespace detail {

inline std::string ahu_code(const Graph& t, Vertex v, Vertex parent) {
  std::vector<std::string> codes;
  for (Vertex w : t.neighbors(v))
    if (w != parent) codes.push_back(ahu_code(t, w, v));
  std::sort(codes.begin(), codes.end());
  std::string out = "(";
  for (const auto& c : codes) out += c;
  return out + ")";
}

/// Canonical code of a free tree: AHU code rooted at the center (the smaller
/// code when there are two centers).
inline std::string free_tree_code(const Graph& t) {
  const std::size_t n = t.vertex_count();
  std::vector<std::size_t> degree(n);
  std::vector<Vertex> layer;
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = t.degree(v);
    if (degree[v] <= 1) layer.push_back(v);
  }
  std::size_t remaining = n;
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<Vertex> next;
    for (Vertex v : layer)
      for (Vertex w : t.neighbors(v))
        if (--degree[w] == 1) next.push_back(w);
    layer = std::move(next);
  }
  std::string best;
  for (Vertex c : layer) {
    auto code = ahu_code(t, c, kNoVertex);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

}  // namespace detail

inline constexpr std::size_t kMaxAllTreesVertices = 12;

/// All non-isomorphic trees on n vertices, from Beyer–Hedetniemi level
/// sequences of rooted trees deduplicated by center-rooted canonical code.
/// The order is the order of first appearance, hence fixed.
inline std::vector<Graph> all_trees(std::size_t n) {
  if (n == 0) throw Error("all_trees needs n >= 1");
  if (n > kMaxAllTreesVertices) throw Error("all_trees is limited to n <= 12");
  if (n == 1) return {Graph(1, {})};
  std::vector<std::size_t> level(n);
  for (std::size_t i = 0; i < n; ++i) level[i] = i;
  std::set<std::string> seen;
  std::vector<Graph> out;
  while (true) {
    std::vector<Edge> edges;
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t j = i;
      while (level[--j] != level[i] - 1) {
      }
      edges.emplace_back(static_cast<Vertex>(j), static_cast<Vertex>(i));
    }
    Graph t(n, edges);
    if (seen.insert(detail::free_tree_code(t)).second) out.push_back(std::move(t));

    std::size_t p = n;
    for (std::size_t i = n; i-- > 1;)
      if (level[i] > 1) {
        p = i;
        break;
      }
    if (p == n) break;
    std::size_t q = p;
    while (level[--q] != level[p] - 1) {
    }
    for (std::size_t i = p; i < n; ++i) level[i] = level[i - (p - q)];
  }
  return out;
}

enum class Family {
  path,
  cycle,
  star,
  spider,
  caterpillar,
  haircomb,
  double_haircomb,
  flower,
  clique_flower,
  random_tree,
  random_graph,
  catalog_tree
};

/// A family tag with its parameters, written on one line as
/// `family=spider legs=3,2,2,1`.
struct FamilySpec {
  Family family = Family::path;
  std::map<std::string, std::string> params;

  static FamilySpec parse(const std::string& line);
  std::string str() const;

  bool has(const std::string& key) const { return params.count(key) != 0; }
  std::size_t count(const std::string& key) const;
  std::vector<std::size_t> counts(const std::string& key) const;
  double real(const std::string& key, double fallback) const;
};

inline const std::vector<std::pair<Family, std::string>>& family_names() {
  static const std::vector<std::pair<Family, std::string>> names{
      {Family::path, "path"},
      {Family::cycle, "cycle"},
      {Family::star, "star"},
      {Family::spider, "spider"},
      {Family::caterpillar, "caterpillar"},
      {Family::haircomb, "haircomb"},
      {Family::double_haircomb, "double_haircomb"},
      {Family::flower, "flower"},
      {Family::clique_flower, "clique_flower"},
      {Family::random_tree, "random_tree"},
      {Family::random_graph, "random_graph"},
      {Family::catalog_tree, "catalog_tree"}};
  return names;
}

inline Family parse_family(const std::string& name) {
  for (const auto& [f, s] : family_names())
    if (s == name) return f;
  throw Error("unknown family '" + name + "'");
}

inline std::string family_name(Family f) {
  for (const auto& [g, s] : family_names())
    if (g == f) return s;
  return "?";
}

inline std::vector<std::size_t> parse_counts(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw Error("expected a comma-separated list of non-negative integers, got '" + text + "'");
    out.push_back(std::stoull(item));
  }
  if (out.empty()) throw Error("empty list");
  return out;
}

inline FamilySpec FamilySpec::parse(const std::string& line) {
  FamilySpec spec;
  std::stringstream ss(line);
  std::string token;
  bool have_family = false;
  while (ss >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) throw Error("malformed family parameter '" + token + "'");
    const auto key = token.substr(0, eq);
    const auto value = token.substr(eq + 1);
    if (key == "family") {
      spec.family = parse_family(value);
      have_family = true;
    } else {
      spec.params[key] = value;
    }
  }
  if (!have_family) throw Error("family spec needs family=<name>");
  return spec;
}

inline std::string FamilySpec::str() const {
  std::string out = "family=" + family_name(family);
  for (const auto& [k, v] : params) out += " " + k + "=" + v;
  return out;
}

inline std::size_t FamilySpec::count(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw Error(family_name(family) + " needs " + key + "=");
  const auto values = parse_counts(it->second);
  if (values.size() != 1) throw Error(key + " must be a single integer");
  return values[0];
}

inline std::vector<std::size_t> FamilySpec::counts(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw Error(family_name(family) + " needs " + key + "=");
  return parse_counts(it->second);
}

inline double FamilySpec::real(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw Error(key + " must be a number");
  }
}

/// Materializes a family. Randomized families read `seed=` from the spec,
/// falling back to `seed`; identical specs and seeds give identical graphs.
inline Graph generate(const FamilySpec& spec, std::uint64_t seed = 0) {
  if (spec.has("seed")) seed = spec.count("seed");
  switch (spec.family) {
    case Family::path: return path_graph(spec.count("n"));
    case Family::cycle: return cycle_graph(spec.count("n"));
    case Family::star: return star_graph(spec.has("leaves") ? spec.count("leaves") : spec.count("n") - 1);
    case Family::spider: return spider_graph(spec.counts("legs"));
    case Family::caterpillar: return caterpillar_graph(spec.counts("leaves"));
    case Family::haircomb: return haircomb_graph(spec.counts("legs"));
    case Family::double_haircomb: return double_haircomb_graph(spec.counts("legs"), spec.counts("sub"));
    case Family::flower: {
      const std::size_t h = spec.count("h_n");
      const std::string kind = spec.params.count("h") ? spec.params.at("h") : "empty";
      Graph hg;
      if (kind == "empty") {
        hg = empty_graph(h);
      } else if (kind == "complete") {
        hg = complete_graph(h);
      } else if (kind == "random") {
        Rng rng(seed);
        std::vector<Edge> edges;
        const double p = spec.real("p", 0.5);
        for (Vertex u = 0; u < h; ++u)
          for (Vertex v = u + 1; v < h; ++v)
            if (rng.chance(p)) edges.emplace_back(u, v);
        hg = Graph(h, edges);
      } else {
        throw Error("flower h must be empty, complete or random");
      }
      return flower_graph(hg, spec.count("m"));
    }
    case Family::clique_flower: {
      CliqueFlowerParams p;
      for (auto a : spec.counts("sizes")) p.sizes.push_back(a);
      p.path_length = spec.count("m");
      return clique_flower_graph(p);
    }
    case Family::random_tree: {
      Rng rng(seed);
      return random_tree(spec.count("n"), rng);
    }
    case Family::random_graph: {
      Rng rng(seed);
      std::optional<Vertex> diameter;
      if (spec.has("diameter")) diameter = static_cast<Vertex>(spec.count("diameter"));
      return random_graph(spec.count("n"), spec.real("p", 0.5), rng, diameter);
    }
    case Family::catalog_tree: {
      // index into all_trees(n)
      const auto trees = all_trees(spec.count("n"));
      const auto index = spec.count("index");
      if (index >= trees.size()) throw Error("catalog_tree index out of range");
      return trees[index];
    }
  }
  throw Error("unhandled family");
}

}  // namespace homoset
