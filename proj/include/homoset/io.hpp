#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "homoset/certificate.hpp"
#include "homoset/graph.hpp"

namespace homoset {

/// Edge-list text: a header line "n m", then m lines "u v" with 0-based ids.
/// Everything after '#' on a line is ignored, as are blank lines.
inline Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n = 0, m = 0;
  std::vector<Edge> edges;
  auto fail = [&](const std::string& what) {
    throw Error("edge list line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    long long a, b;
    if (!(ss >> a)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) fail("expected two integers");
      continue;
    }
    if (!(ss >> b)) fail("expected two integers");
    std::string rest;
    if (ss >> rest) fail("trailing text '" + rest + "'");
    if (a < 0 || b < 0) fail("negative value");
    if (!have_header) {
      n = static_cast<std::size_t>(a);
      m = static_cast<std::size_t>(b);
      have_header = true;
      continue;
    }
    if (static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n)
      fail("endpoint out of range for n=" + std::to_string(n));
    edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  if (!have_header) throw Error("edge list: missing \"n m\" header");
  if (edges.size() != m)
    throw Error("edge list: header announces " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  return Graph(n, edges);
}

inline Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

inline Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_edge_list(in);
}

inline std::string format_edge_list(const Graph& g) {
  std::string out = std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count()) + "\n";
  for (const auto& [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

/// FNV-1a over n and the sorted edge list; independent of input edge order.
inline std::uint64_t graph_hash(const Graph& g) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xFFu;
      h *= 1099511628211ULL;
    }
  };
  mix(g.vertex_count());
  for (const auto& [u, v] : g.edges()) {
    mix(u);
    mix(v);
  }
  return h;
}

inline std::string hash_hex(std::uint64_t h) {
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << h;
  return ss.str();
}

inline constexpr int kCertificateVersion = 1;

inline nlohmann::ordered_json certificate_to_json(const HomometricCertificate& c, const Graph& g, bool exact = true) {
  nlohmann::ordered_json j;
  j["version"] = kCertificateVersion;
  j["graph_hash"] = hash_hex(graph_hash(g));
  j["n"] = g.vertex_count();
  j["size"] = c.size();
  j["s1"] = c.s1.members();
  j["s2"] = c.s2.members();
  j["multiset"] = c.multiset.sorted();
  j["provenance"] = c.provenance;
  j["exact"] = exact;
  return j;
}

/// Reads a certificate record and re-verifies it against `g`. Throws on a
/// version or hash mismatch and on a pair that is not homometric.
inline HomometricCertificate certificate_from_json(const nlohmann::json& j, const Graph& g) {
  try {
    if (j.at("version").get<int>() != kCertificateVersion) throw Error("unsupported certificate version");
    if (j.at("graph_hash").get<std::string>() != hash_hex(graph_hash(g)))
      throw Error("certificate was issued for a different graph");
    const DistanceMatrix dm(g);
    auto c = certify(dm, VertexSet(j.at("s1").get<std::vector<Vertex>>()),
                     VertexSet(j.at("s2").get<std::vector<Vertex>>()), j.at("provenance").get<std::string>());
    if (c.multiset.sorted() != j.at("multiset").get<std::vector<Vertex>>())
      throw Error("certificate multiset does not match the graph");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace homoset
