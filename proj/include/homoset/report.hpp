#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "homoset/exact_search.hpp"
#include "homoset/io.hpp"
#include "homoset/spider.hpp"
#include "homoset/tree.hpp"

namespace homoset {

/// Rationals are rendered as "p/q" (or "p") strings, never as floats.
inline nlohmann::ordered_json rational_json(const Rational& r) { return r.str(); }

inline nlohmann::ordered_json bound_json(const Bound& b) {
  nlohmann::ordered_json j;
  j["name"] = b.name;
  j["formula"] = b.formula;
  j["target"] = b.target == BoundTarget::twice_h ? "2h" : "h";
  j["value"] = rational_json(b.value);
  j["on_h"] = rational_json(b.on_h());
  j["h_floor"] = b.h_floor();
  j["h_ceil"] = b.h_ceil();
  j["constructive"] = b.constructive;
  return j;
}

struct BoundsRequest {
  /// Sibling set for the two sibling bounds (rooted at the center).
  std::optional<VertexSet> sibling_set;
  /// Leg vector when the tree is a spider built by SpiderSpec.
  std::optional<SpiderSpec> spider;
  /// Run the exact search when n is at most this (0 disables it).
  std::size_t exact_up_to = 24;
  SearchOptions search;
};

/// Bound report for a tree: all closed-form bounds with their integer
/// readings, the degree checks, the best certificate and, when requested,
/// the spider class bound and exact-case claim next to the oracle value.
inline nlohmann::ordered_json bounds_report_json(const Graph& t, const BoundsRequest& req = {}) {
  const auto rep = lemma_bounds(t, req.sibling_set);
  const auto& p = rep.profile;
  nlohmann::ordered_json j;
  j["graph_hash"] = hash_hex(graph_hash(t));
  j["n"] = p.n;
  j["diameter"] = p.diameter;
  j["profile"] = {{"degree_counts", p.degree_counts},
                  {"leaves", p.leaves.size()},
                  {"bad", p.bad},
                  {"bad3", p.bad3},
                  {"bad_l", p.bad_l},
                  {"bad_vertices", p.bad_vertices}};
  auto& bounds = j["bounds"] = nlohmann::ordered_json::array();
  for (const auto& b : rep.bounds) bounds.push_back(bound_json(b));
  const auto& d = rep.degree_checks;
  j["degree_checks"] = {{"leaf_identity", d.leaf_identity},
                        {"leaves_minus_bad", d.leaves_minus_bad},
                        {"leaves_share", d.leaves_share},
                        {"high_degree_share", d.high_degree_share}};
  j["best_certificate"] = certificate_to_json(rep.best, t, false);

  std::optional<SearchResult> exact;
  if (req.exact_up_to > 0 && t.vertex_count() <= req.exact_up_to) {
    exact = max_homometric(t, req.search);
    j["oracle"] = {{"h", exact->certificate.size()},
                   {"exact", exact->exact},
                   {"certificate", certificate_to_json(exact->certificate, t, exact->exact)}};
  }

  if (req.spider && req.spider->leg_count() >= 3) {
    const auto sb = spider_bound(*req.spider);
    nlohmann::ordered_json s;
    s["legs"] = req.spider->legs();
    s["class_bound"] = rational_json(sb.class_bound);
    s["class_floor"] = sb.class_floor;
    s["class_ceil"] = sb.class_ceil;
    s["best_certificate"] = certificate_to_json(sb.best, t, false);
    if (const auto claim = spider_exact_cases(*req.spider)) {
      s["exact_claim"] = {{"pattern", claim->pattern}, {"value", rational_json(claim->value)}};
      if (exact && exact->exact)
        s["exact_claim"]["oracle_agrees"] =
            claim->value == Rational(static_cast<std::int64_t>(exact->certificate.size()));
    } else {
      s["exact_claim"] = nullptr;
    }
    j["spider"] = std::move(s);
  }
  return j;
}

}  // namespace homoset
