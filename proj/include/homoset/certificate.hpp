#pragma once

#include <string>
#include <utility>

#include "homoset/graph.hpp"

namespace homoset {

/// Two disjoint, equal-size vertex sets sharing a distance multiset.
struct HomometricCertificate {
  VertexSet s1;
  VertexSet s2;
  DistanceMultiset multiset;
  std::string provenance;

  std::size_t size() const { return s1.size(); }
};

enum class HomometryVerdict { homometric, overlap, size_mismatch, multiset_mismatch };

inline const char* to_string(HomometryVerdict v) {
  switch (v) {
    case HomometryVerdict::homometric: return "homometric";
    case HomometryVerdict::overlap: return "overlap";
    case HomometryVerdict::size_mismatch: return "size_mismatch";
    case HomometryVerdict::multiset_mismatch: return "multiset_mismatch";
  }
  return "unknown";
}

inline HomometryVerdict check_homometric(const DistanceMatrix& dm, const VertexSet& s1, const VertexSet& s2) {
  check_in_range(dm, s1);
  check_in_range(dm, s2);
  if (!s1.disjoint(s2)) return HomometryVerdict::overlap;
  if (s1.size() != s2.size()) return HomometryVerdict::size_mismatch;
  if (distance_multiset(dm, s1) != distance_multiset(dm, s2)) return HomometryVerdict::multiset_mismatch;
  return HomometryVerdict::homometric;
}

inline bool verify_homometric(const DistanceMatrix& dm, const VertexSet& s1, const VertexSet& s2) {
  return check_homometric(dm, s1, s2) == HomometryVerdict::homometric;
}

inline bool verify_homometric(const Graph& g, const VertexSet& s1, const VertexSet& s2) {
  return verify_homometric(DistanceMatrix(g), s1, s2);
}

inline bool verify_certificate(const DistanceMatrix& dm, const HomometricCertificate& c) {
  return verify_homometric(dm, c.s1, c.s2) && distance_multiset(dm, c.s1) == c.multiset;
}

inline bool verify_certificate(const Graph& g, const HomometricCertificate& c) {
  return verify_certificate(DistanceMatrix(g), c);
}

/// Builds a certificate and refuses to hand out one that does not verify, so
/// every construction in the library is sound by the time it returns.
inline HomometricCertificate certify(const DistanceMatrix& dm, VertexSet s1, VertexSet s2, std::string provenance) {
  const auto verdict = check_homometric(dm, s1, s2);
  if (verdict != HomometryVerdict::homometric)
    throw Error(provenance + " produced a non-homometric pair (" + to_string(verdict) + ")");
  if (s2 < s1) std::swap(s1, s2);
  auto multiset = distance_multiset(dm, s1);
  return {std::move(s1), std::move(s2), std::move(multiset), std::move(provenance)};
}

/// Halving construction: split the first 2t vertices of
/// a diametral shortest path into two halves of t consecutive vertices.
///
/// The diametral pair is the lexicographically least (u, v) at maximum
/// distance; the path follows smallest-id predecessors, so the result is
/// reproducible.
inline HomometricCertificate shortest_path_halving(const Graph& g, const DistanceMatrix& dm) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw Error("shortest_path_halving needs at least two vertices");
  Vertex from = 0, to = 1;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (dm(u, v) > dm(from, to)) {
        from = u;
        to = v;
      }
  std::vector<Vertex> path{from};
  Vertex cur = from;
  while (cur != to) {
    for (Vertex w : g.neighbors(cur))
      if (dm(w, to) + 1 == dm(cur, to)) {
        cur = w;
        break;
      }
    path.push_back(cur);
  }
  const std::size_t t = path.size() / 2;
  std::vector<Vertex> first(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(t));
  std::vector<Vertex> second(path.begin() + static_cast<std::ptrdiff_t>(t),
                             path.begin() + static_cast<std::ptrdiff_t>(2 * t));
  return certify(dm, VertexSet(std::move(first)), VertexSet(std::move(second)), "shortest_path_halving");
}

inline HomometricCertificate shortest_path_halving(const Graph& g) {
  return shortest_path_halving(g, DistanceMatrix(g));
}

}  // namespace homoset
