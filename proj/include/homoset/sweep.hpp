#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "homoset/certificate.hpp"
#include "homoset/diam2.hpp"
#include "homoset/exact_search.hpp"
#include "homoset/families.hpp"
#include "homoset/graph.hpp"
#include "homoset/spider.hpp"
#include "homoset/tree.hpp"

namespace homoset {

enum class RowStatus { pass, warn, fail };

inline const char* to_string(RowStatus s) {
  switch (s) {
    case RowStatus::pass: return "pass";
    case RowStatus::warn: return "warn";
    case RowStatus::fail: return "fail";
  }
  return "?";
}

/// One checked instance. `instance` is a FamilySpec one-liner whenever the
/// input is a graph, so `generate(FamilySpec::parse(instance))` rebuilds it.
struct SweepRow {
  std::size_t index = 0;
  std::string instance;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::optional<std::int64_t> h;
  bool h_exact = false;
  std::string check;
  std::string expected;
  std::string observed;
  RowStatus status = RowStatus::pass;
  std::string note;
};

inline constexpr const char* kSweepCsvHeader =
    "thm,index,instance,seed,n,h,h_exact,check,expected,observed,status,note";

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

struct SweepReport {
  std::string thm;
  std::vector<SweepRow> rows;

  std::size_t count(RowStatus s) const {
    std::size_t c = 0;
    for (const auto& r : rows) c += r.status == s;
    return c;
  }
  bool ok() const { return count(RowStatus::fail) == 0; }

  std::string summary() const {
    return thm + ": " + std::to_string(rows.size()) + " rows, " + std::to_string(count(RowStatus::pass)) +
           " pass, " + std::to_string(count(RowStatus::warn)) + " warn, " + std::to_string(count(RowStatus::fail)) +
           " fail";
  }

  std::string csv() const {
    std::string out = std::string(kSweepCsvHeader) + "\n";
    for (const auto& r : rows) {
      const std::vector<std::string> fields{thm,
                                            std::to_string(r.index),
                                            r.instance,
                                            std::to_string(r.seed),
                                            std::to_string(r.n),
                                            r.h ? std::to_string(*r.h) : "",
                                            r.h_exact ? "1" : "0",
                                            r.check,
                                            r.expected,
                                            r.observed,
                                            to_string(r.status),
                                            r.note};
      for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + detail::csv_field(fields[i]);
      out += "\n";
    }
    return out;
  }

  nlohmann::ordered_json json() const {
    nlohmann::ordered_json j;
    j["thm"] = thm;
    j["summary"] = {{"rows", rows.size()},
                    {"pass", count(RowStatus::pass)},
                    {"warn", count(RowStatus::warn)},
                    {"fail", count(RowStatus::fail)}};
    auto& out = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json row;
      row["index"] = r.index;
      row["instance"] = r.instance;
      row["seed"] = r.seed;
      row["n"] = r.n;
      row["h"] = r.h ? nlohmann::ordered_json(*r.h) : nlohmann::ordered_json();
      row["h_exact"] = r.h_exact;
      row["check"] = r.check;
      row["expected"] = r.expected;
      row["observed"] = r.observed;
      row["status"] = to_string(r.status);
      row["note"] = r.note;
      out.push_back(std::move(row));
    }
    return j;
  }
};

struct SweepOptions {
  std::string thm;
  /// Sizes to sweep (n, or m for LSS, or the largest n for T6/L1/L2). Empty
  /// selects the battery default.
  std::vector<std::size_t> sizes;
  /// Instances per size (or total, for RS and CERT); 0 selects the default.
  std::size_t trials = 0;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint64_t budget = SearchOptions{}.budget;
};

inline const std::vector<std::string>& sweep_tags() {
  static const std::vector<std::string> tags{"T3", "T4", "T5", "T6", "T8", "L1", "L2", "L4", "RS", "LSS", "CERT"};
  return tags;
}

/// Parses "a..b" (inclusive) or "a,b,c".
inline std::vector<std::size_t> parse_size_range(const std::string& text) {
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const auto lo = parse_counts(text.substr(0, dots));
    const auto hi = parse_counts(text.substr(dots + 2));
    if (lo.size() != 1 || hi.size() != 1 || lo[0] > hi[0]) throw Error("bad range '" + text + "'");
    std::vector<std::size_t> out;
    for (auto v = lo[0]; v <= hi[0]; ++v) out.push_back(v);
    return out;
  }
  return parse_counts(text);
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t job_seed(std::uint64_t base, std::size_t i) { return splitmix64(base * 0x100000001b3ULL + i); }

struct SweepJob {
  SweepRow base;
  std::function<void(const SweepRow& base, std::vector<SweepRow>& out)> run;
};

/// Runs jobs on up to `threads` workers. Output order follows job order; a
/// job that throws contributes one failing row carrying the message.
inline std::vector<SweepRow> run_jobs(const std::vector<SweepJob>& jobs, unsigned threads) {
  std::vector<std::vector<SweepRow>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        jobs[i].run(jobs[i].base, results[i]);
      } catch (const std::exception& e) {
        SweepRow row = jobs[i].base;
        row.check = row.check.empty() ? "run" : row.check;
        row.status = RowStatus::fail;
        row.observed = "error";
        row.note = e.what();
        results[i] = {row};
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::vector<SweepRow> rows;
  for (auto& r : results)
    for (auto& row : r) {
      row.index = rows.size();
      rows.push_back(std::move(row));
    }
  return rows;
}

inline SweepRow verdict(SweepRow row, std::string check, std::string expected, std::string observed, bool ok,
                        RowStatus on_failure = RowStatus::fail, std::string note = {}) {
  row.check = std::move(check);
  row.expected = std::move(expected);
  row.observed = std::move(observed);
  row.status = ok ? RowStatus::pass : on_failure;
  row.note = std::move(note);
  return row;
}

inline std::vector<std::size_t> sizes_or(const SweepOptions& o, std::vector<std::size_t> fallback) {
  return o.sizes.empty() ? fallback : o.sizes;
}

inline std::size_t trials_or(const SweepOptions& o, std::size_t fallback) { return o.trials ? o.trials : fallback; }

/// Smallest c with c^3 >= n.
inline std::int64_t ceil_cbrt(std::uint64_t n) {
  std::int64_t c = 0;
  while (static_cast<std::uint64_t>(c * c * c) < n) ++c;
  return c;
}

/// ceil(sqrt(n) / 2): smallest c with (2c)^2 >= n.
inline std::int64_t ceil_half_sqrt(std::uint64_t n) {
  std::int64_t c = 0;
  while (static_cast<std::uint64_t>(4 * c * c) < n) ++c;
  return c;
}

inline SweepRow instance_row(const FamilySpec& spec, std::uint64_t seed, std::size_t n = 0) {
  SweepRow r;
  r.instance = spec.str();
  r.seed = seed;
  r.n = n;
  return r;
}

inline SearchResult exact_h(const Graph& g, const SweepOptions& o) { return max_homometric(g, {o.budget, 1}); }

inline std::string cert_brief(const HomometricCertificate& c) {
  std::ostringstream ss;
  ss << c.provenance << " {";
  for (std::size_t i = 0; i < c.s1.size(); ++i) ss << (i ? " " : "") << c.s1[i];
  ss << "} {";
  for (std::size_t i = 0; i < c.s2.size(); ++i) ss << (i ? " " : "") << c.s2[i];
  ss << "}";
  return ss.str();
}

/// Leaves whose parent (rooted at the center) has at least two leaf
/// children; a valid sibling_partition input, possibly empty.
inline std::optional<VertexSet> sibling_leaves(const Graph& t) {
  if (t.vertex_count() < 3) return std::nullopt;
  const auto ro = root_order(t, tree_center(t));
  std::map<Vertex, std::vector<Vertex>> families;
  for (Vertex v = 0; v < t.vertex_count(); ++v)
    if (t.degree(v) == 1 && v != ro.root) families[ro.parent[v]].push_back(v);
  std::vector<Vertex> s;
  for (const auto& [p, f] : families)
    if (f.size() >= 2) s.insert(s.end(), f.begin(), f.end());
  if (s.empty()) return std::nullopt;
  return VertexSet(std::move(s));
}

// ---------------------------------------------------------------- batteries

inline std::vector<SweepJob> battery_t3(const SweepOptions& o) {
  std::vector<SweepJob> jobs;
  static const char* densities[] = {"0.25", "0.4", "0.6", "0.8"};
  std::size_t i = 0;
  for (auto n : sizes_or(o, {5, 6, 7, 8, 9, 10, 11, 12})) {
    if (n < 5 || n > 16) throw Error("T3 sizes must lie in 5..16");
    for (std::size_t t = 0; t < trials_or(o, 25); ++t, ++i) {
      FamilySpec spec;
      spec.family = Family::random_graph;
      spec.params = {{"n", std::to_string(n)}, {"p", densities[t % 4]}};
      spec.params["seed"] = std::to_string(job_seed(o.seed, i));
      jobs.push_back({instance_row(spec, job_seed(o.seed, i), n), [spec, o](const SweepRow& base, auto& out) {
                        const Graph g = generate(spec);
                        const DistanceMatrix dm(g);
                        const auto res = exact_h(g, o);
                        SweepRow row = base;
                        row.h = static_cast<std::int64_t>(res.certificate.size());
                        row.h_exact = res.exact;
                        const auto h = static_cast<std::uint64_t>(*row.h);
                        if (dm.diameter() < 2) {
                          out.push_back(verdict(row, "kneser_k", "d >= 2", "d=1", true, RowStatus::pass,
                                                "complete graph; condition not applicable"));
                          return;
                        }
                        const auto kc = kneser_guarantee(g.vertex_count(), dm.diameter(), g.edge_count());
                        const std::string params = "d=" + std::to_string(kc.d) + " e=" + std::to_string(kc.e);
                        out.push_back(verdict(row, "kneser_k", "k <= h", "k=" + std::to_string(kc.k), kc.k <= h,
                                              res.exact ? RowStatus::fail : RowStatus::warn, params));
                        out.push_back(verdict(row, "guarantee", "max(k, ceil(d/2)) <= h",
                                              std::to_string(kc.guarantee()), kc.guarantee() <= h,
                                              res.exact ? RowStatus::fail : RowStatus::warn, params));
                        out.push_back(verdict(row, "edge_term", "ceil(sqrt(2e/n)) <= h", std::to_string(kc.sqrt_ceil),
                                              kc.sqrt_ceil <= h, RowStatus::warn,
                                              params + " (stated term, not backed by a construction)"));
                      }});
    }
  }
  SweepRow fixed;
  fixed.instance = "kneser n=10 d=2";
  jobs.push_back({fixed, [](const SweepRow& base, auto& out) {
                    const auto kc = kneser_guarantee(10, 2);
                    SweepRow row = base;
                    row.n = 10;
                    out.push_back(verdict(row, "kneser_k", "3", std::to_string(kc.k), kc.k == 3));
                  }});
  SweepRow petersen;
  petersen.instance = "petersen";
  jobs.push_back({petersen, [o](const SweepRow& base, auto& out) {
                    const Graph g = petersen_graph();
                    const auto res = exact_h(g, o);
                    const auto kc = kneser_guarantee(10, DistanceMatrix(g).diameter(), g.edge_count());
                    SweepRow row = base;
                    row.n = 10;
                    row.h = static_cast<std::int64_t>(res.certificate.size());
                    row.h_exact = res.exact;
                    out.push_back(verdict(row, "petersen_h", ">= 3", std::to_string(*row.h),
                                          *row.h >= 3 && kc.guarantee() <= static_cast<std::uint64_t>(*row.h),
                                          RowStatus::fail, "guarantee " + std::to_string(kc.guarantee())));
                  }});
  return jobs;
}

inline std::vector<SweepJob> battery_t4(const SweepOptions& o) {
  std::vector<SweepJob> jobs;
  std::size_t i = 0;
  for (auto n : sizes_or(o, {20, 50, 100, 200})) {
    if (n < 2) throw Error("T4 sizes must be at least 2");
    for (std::size_t t = 0; t < trials_or(o, 50); ++t, ++i) {
      FamilySpec spec;
      spec.family = Family::random_tree;
      spec.params = {{"n", std::to_string(n)}, {"seed", std::to_string(job_seed(o.seed, i))}};
      jobs.push_back({instance_row(spec, job_seed(o.seed, i), n), [spec](const SweepRow& base, auto& out) {
                        const Graph t = generate(spec);
                        const auto cert = level_gap_construction(t);
                        const DistanceMatrix dm(t);
                        SweepRow row = base;
                        row.h = static_cast<std::int64_t>(cert.size());
                        const auto target = ceil_cbrt(t.vertex_count()) - 1;
                        const bool ok = verify_certificate(dm, cert) && row.h >= target;
                        out.push_back(verdict(row, "level_gap_or_halving", ">= " + std::to_string(target),
                                              std::to_string(*row.h), ok, RowStatus::fail, cert.provenance));
                      }});
    }
  }
  return jobs;
}

inline FamilySpec random_caterpillar_spec(std::size_t n, Rng& rng) {
  const std::size_t spine = 1 + rng.below(std::max<std::size_t>(1, n / 2));
  std::vector<std::size_t> leaves(spine, 0);
  for (std::size_t j = spine; j < n; ++j) ++leaves[rng.below(spine)];
  FamilySpec spec;
  spec.family = Family::caterpillar;
  std::string text;
  for (std::size_t j = 0; j < spine; ++j) text += (j ? "," : "") + std::to_string(leaves[j]);
  spec.params["leaves"] = text;
  return spec;
}

inline FamilySpec random_haircomb_spec(std::size_t n, Rng& rng) {
  const std::size_t spine = 1 + rng.below(n);
  std::vector<std::size_t> legs(spine, 0);
  for (std::size_t j = spine; j < n; ++j) ++legs[rng.below(spine)];
  FamilySpec spec;
  spec.family = Family::haircomb;
  std::string text;
  for (std::size_t j = 0; j < spine; ++j) text += (j ? "," : "") + std::to_string(legs[j]);
  spec.params["legs"] = text;
  return spec;
}

inline std::vector<SweepJob> battery_t5(const SweepOptions& o) {
  std::vector<SweepJob> jobs;
  std::size_t i = 0;
  for (auto n : sizes_or(o, parse_size_range("4..40"))) {
    if (n < 2) throw Error("T5 sizes must be at least 2");
    for (std::size_t t = 0; t < trials_or(o, 4); ++t, ++i) {
      const auto seed = job_seed(o.seed, i);
      Rng rng(seed);
      const auto cat = random_caterpillar_spec(n, rng);
      const auto comb = random_haircomb_spec(n, rng);
      jobs.push_back({instance_row(cat, seed, n), [](const SweepRow& base, auto& out) {
                        const Graph t = generate(FamilySpec::parse(base.instance));
                        const auto cert = caterpillar_construction(t);
                        SweepRow row = base;
                        row.h = static_cast<std::int64_t>(cert.size());
                        const auto target = static_cast<std::int64_t>(t.vertex_count() / 6);
                        out.push_back(verdict(row, "caterpillar", ">= floor(n/6) = " + std::to_string(target),
                                              std::to_string(*row.h),
                                              verify_certificate(DistanceMatrix(t), cert) && *row.h >= target,
                                              RowStatus::fail, cert.provenance));
                      }});
      jobs.push_back({instance_row(comb, seed, n), [](const SweepRow& base, auto& out) {
                        const Graph t = generate(FamilySpec::parse(base.instance));
                        const auto cert = haircomb_construction(t);
                        SweepRow row = base;
                        row.h = static_cast<std::int64_t>(cert.size());
                        const auto target = ceil_half_sqrt(t.vertex_count());
                        out.push_back(verdict(row, "haircomb", ">= ceil(sqrt(n)/2) = " + std::to_string(target),
                                              std::to_string(*row.h),
                                              verify_certificate(DistanceMatrix(t), cert) && *row.h >= target,
                                              RowStatus::fail, cert.provenance));
                      }});
    }
  }
  return jobs;
}

/// Non-increasing leg vectors with at least `min_legs` legs summing to `total`.
inline void leg_partitions(std::size_t total, std::size_t max_part, std::size_t min_legs,
                           std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
  if (total == 0) {
    if (cur.size() >= min_legs) out.push_back(cur);
    return;
  }
  for (std::size_t p = std::min(total, max_part); p >= 1; --p) {
    cur.push_back(p);
    leg_partitions(total - p, p, min_legs, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<std::size_t>> spider_leg_vectors(std::size_t n, std::size_t min_legs = 3) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  if (n >= 1) leg_partitions(n - 1, n - 1, min_legs, cur, out);
  return out;
}

inline std::vector<SweepJob> battery_t6(const SweepOptions& o) {
  std::vector<SweepJob> jobs;
  const auto sizes = sizes_or(o, {13});
  const std::size_t max_n = *std::max_element(sizes.begin(), sizes.end());
  if (max_n > 20) throw Error("T6 runs exact search; keep n <= 20");
  for (std::size_t n = 4; n <= max_n; ++n)
    for (const auto& legs : spider_leg_vectors(n)) {
      FamilySpec spec;
      spec.family = Family::spider;
      spec.params["legs"] = SpiderSpec(legs).str();
      jobs.push_back({instance_row(spec, 0, n), [legs, o](const SweepRow& base, auto& out) {
                        const SpiderSpec s(legs);
                        const Graph g = s.graph();
                        const auto res = exact_h(g, o);
                        SweepRow row = base;
                        row.h = static_cast<std::int64_t>(res.certificate.size());
                        row.h_exact = res.exact;
                        const auto h = *row.h;
                        const auto rep = spider_bound(s);
                        const std::string bound = rep.class_bound.str();
                        if (h < rep.class_floor)
                          out.push_back(verdict(row, "class_bound", ">= floor(" + bound + ")", std::to_string(h),
                                                false, res.exact ? RowStatus::fail : RowStatus::warn));
                        else
                          out.push_back(verdict(row, "class_bound", ">= ceil(" + bound + ")", std::to_string(h),
                                                h >= rep.class_ceil, RowStatus::warn,
                                                h >= rep.class_ceil ? "" : "holds only with floor rounding"));
                        out.push_back(verdict(row, "instance_best", "verified, <= h", std::to_string(rep.best.size()),
                                              verify_certificate(DistanceMatrix(g), rep.best) &&
                                                  static_cast<std::int64_t>(rep.best.size()) <= h,
                                              RowStatus::fail, rep.best.provenance));
                        if (const auto claim = spider_exact_cases(s)) {
                          const bool integral = claim->value.is_integer();
                          const bool agree = integral && claim->value == Rational(h);
                          const bool hard = claim->pattern == "half_single_legs" && integral && res.exact;
                          out.push_back(verdict(row, "exact_claim/" + claim->pattern, claim->value.str(),
                                                std::to_string(h), agree, hard ? RowStatus::fail : RowStatus::warn,
                                                integral ? "" : "claimed value is not an integer"));
                        }
                      }});
    }
  return jobs;
}

inline std::vector<SweepJob> battery_t8(const SweepOptions& o) {
  std::vector<SweepJob> jobs;
  std::size_t i = 0;
  for (auto n : sizes_or(o, {4, 6, 8, 10, 12, 14, 16})) {
    if (n % 2 != 0 || n < 4) throw Error("T8 sizes must be even and at least 4");
    for (std::size_t t = 0; t < trials_or(o, 15); ++t, ++i) {
      FamilySpec spec;
      spec.family = Family::random_graph;
      spec.params = {{"n", std::to_string(n)},
                     {"p", "0.6"},
                     {"diameter", "2"},
                     {"seed", std::to_string(job_seed(o.seed, i))}};
      jobs.push_back({instance_row(spec, job_seed(o.seed, i), n), [spec](const SweepRow& base, auto& out) {
                        const Graph g = generate(spec);
                        const auto r = degree_class_partition(g);
                        SweepRow row = base;
                        std::string note = std::string("odd classes ") + std::to_string(r.classes.odd_count()) +
                                           (r.all_classes_even ? "; all even" : "") +
                                           (r.most_classes_odd ? "; most odd" : "");
                        if (!r.certificate) {
                          out.push_back(verdict(row, "degree_partition", "size n/2 or absent", "absent", true,
                                                RowStatus::pass, note));
                          return;
                        }
                        const auto& c = *r.certificate;
                        std::size_t deg1 = 0, deg2 = 0;
                        for (Vertex v : c.s1) deg1 += g.degree(v);
                        for (Vertex v : c.s2) deg2 += g.degree(v);
                        const bool ok = 2 * c.size() == g.vertex_count() &&
                                        verify_certificate(DistanceMatrix(g), c) && deg1 == deg2 &&
                                        induced_edge_count(g, c.s1) == induced_edge_count(g, c.s2);
                        row.h = static_cast<std::int64_t>(c.size());
                        out.push_back(verdict(row, "degree_partition", "size " + std::to_string(g.vertex_count() / 2),
                                              std::to_string(c.size()), ok, RowStatus::fail, note));
                      }});
    }
  }
  return jobs;
}

inline std::vector<SweepJob> battery_l1(const SweepOptions& o) {
  std::vector<SweepJob> jobs;
  const auto sizes = sizes_or(o, {12});
  const std::size_t max_n = *std::max_element(sizes.begin(), sizes.end());
  if (max_n > kMaxFlowerVertices) throw Error("L1 is limited to n <= 14");
  const std::size_t randoms = trials_or(o, 20);
  auto add = [&](FamilySpec spec, std::uint64_t seed, std::size_t n) {
    jobs.push_back({instance_row(spec, seed, n), [spec](const SweepRow& base, auto& out) {
                      const Graph g = generate(spec);
                      const std::size_t hn = spec.count("h_n");
                      FlowerSpec f{induced_subgraph(g, VertexSet::from_mask((std::uint64_t{1} << hn) - 1)).graph,
                                   spec.count("m")};
                      const auto bad = flower_confinement_violation(f);
                      out.push_back(verdict(base, "confinement", "no escaping pair", bad ? "violation" : "none", !bad,
                                            RowStatus::fail,
                                            bad ? cert_brief({bad->first, bad->second, {}, "pair"}) : ""));
                    }});
  };
  std::size_t i = 0;
  for (std::size_t n = 3; n <= max_n; ++n) {
    for (std::size_t hn = 1; hn < n; ++hn)
      for (const char* kind : {"empty", "complete"}) {
        FamilySpec spec;
        spec.family = Family::flower;
        spec.params = {{"h", kind}, {"h_n", std::to_string(hn)}, {"m", std::to_string(n - hn)}};
        add(spec, 0, n);
      }
    for (std::size_t t = 0; t < randoms; ++t, ++i) {
      const auto seed = job_seed(o.seed, i);
      Rng rng(seed);
      const std::size_t hn = 1 + rng.below(n - 1);
      FamilySpec spec;
      spec.family = Family::flower;
      spec.params = {{"h", "random"},
                     {"h_n", std::to_string(hn)},
                     {"m", std::to_string(n - hn)},
                     {"p", "0.5"},
                     {"seed", std::to_string(seed)}};
      add(spec, seed, n);
    }
  }
  return jobs;
}

inline std::vector<SweepJob> battery_l2(const SweepOptions& o) {
  std::vector<SweepJob> jobs;
  const auto sizes = sizes_or(o, {10});
  const std::size_t max_n = *std::max_element(sizes.begin(), sizes.end());
  if (max_n > kMaxAllTreesVertices) throw Error("L2 is limited to n <= 12");
  for (std::size_t n = 2; n <= max_n; ++n) {
    const std::size_t count = all_trees(n).size();
    for (std::size_t idx = 0; idx < count; ++idx) {
      FamilySpec spec;
      spec.family = Family::catalog_tree;
      spec.params = {{"n", std::to_string(n)}, {"index", std::to_string(idx)}};
      jobs.push_back({instance_row(spec, 0, n), [spec, o](const SweepRow& base, auto& out) {
                        const Graph t = generate(spec);
                        const DistanceMatrix dm(t);
                        const auto res = exact_h(t, o);
                        SweepRow row = base;
                        row.h = static_cast<std::int64_t>(res.certificate.size());
                        row.h_exact = res.exact;
                        const auto h = *row.h;
                        const auto rep = lemma_bounds(t, sibling_leaves(t));
                        std::string violated, floor_violated;
                        for (const auto& b : rep.bounds) {
                          if (b.h_ceil() > h) violated += (violated.empty() ? "" : "; ") + b.name + " " + b.value.str();
                          if (b.h_floor() > h) floor_violated += (floor_violated.empty() ? "" : "; ") + b.name;
                        }
                        std::vector<HomometricCertificate> certs{rep.best, shortest_path_halving(t, dm),
                                                                 level_gap_construction(t)};
                        if (caterpillar_spine(t)) certs.push_back(caterpillar_construction(t));
                        if (haircomb_shape(t)) certs.push_back(haircomb_construction(t));
                        std::string cert_bad;
                        for (const auto& c : certs)
                          if (!verify_certificate(dm, c) || static_cast<std::int64_t>(c.size()) > h)
                            cert_bad += (cert_bad.empty() ? "" : "; ") + c.provenance;
                        std::string note;
                        if (!violated.empty())
                          note = "ceil violations: " + violated +
                                 (floor_violated.empty() ? "; all hold with floor rounding"
                                                         : "; floor violations: " + floor_violated);
                        if (!cert_bad.empty()) note += (note.empty() ? "" : " | ") + std::string("certs: ") + cert_bad;
                        if (!rep.degree_checks.all()) note += (note.empty() ? "" : " | ") + std::string("degree checks");
                        const bool ok = violated.empty() && cert_bad.empty() && rep.degree_checks.all();
                        out.push_back(verdict(row, "lemma_bounds", "h >= ceil(bound) for every bound",
                                              violated.empty() ? "all hold" : "violated", ok,
                                              res.exact ? RowStatus::fail : RowStatus::warn, note));
                      }});
    }
  }
  return jobs;
}

inline std::vector<SweepJob> battery_l4(const SweepOptions& o) {
  std::vector<SweepJob> jobs;
  std::size_t i = 0;
  for (auto n : sizes_or(o, {10, 20, 50, 100, 200})) {
    for (std::size_t t = 0; t < trials_or(o, 200); ++t, ++i) {
      FamilySpec spec;
      spec.family = Family::random_tree;
      spec.params = {{"n", std::to_string(n)}, {"seed", std::to_string(job_seed(o.seed, i))}};
      jobs.push_back({instance_row(spec, job_seed(o.seed, i), n), [spec](const SweepRow& base, auto& out) {
                        const auto p = bad_analysis(generate(spec));
                        const auto d = degree_inequalities(p);
                        std::string obs = std::string(d.leaf_identity ? "1" : "0") + (d.leaves_minus_bad ? "1" : "0") +
                                          (d.leaves_share ? "1" : "0") + (d.high_degree_share ? "1" : "0");
                        out.push_back(verdict(base, "degree_inequalities", "1111", obs, d.all(), RowStatus::fail,
                                              "bad=" + std::to_string(p.bad)));
                      }});
    }
  }
  return jobs;
}

inline std::string multiset_text(const IntegerMultiset& m) {
  std::string s = "{";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? " " : "") + std::to_string(m.values()[i]);
  return s + "}";
}

inline std::vector<SweepJob> battery_rs(const SweepOptions& o) {
  std::vector<SweepJob> jobs;
  for (std::size_t i = 0; i < trials_or(o, 1000); ++i) {
    const auto seed = job_seed(o.seed, i);
    Rng rng(seed);
    std::vector<std::int64_t> u(1 + rng.below(5)), v(1 + rng.below(5));
    if (u.size() * v.size() < 2) v.push_back(0);
    for (auto& x : u) x = static_cast<std::int64_t>(rng.below(21));
    for (auto& x : v) x = static_cast<std::int64_t>(rng.below(21));
    const IntegerMultiset mu(u), mv(v);
    SweepRow base;
    base.instance = "U=" + multiset_text(mu) + " V=" + multiset_text(mv);
    base.seed = seed;
    jobs.push_back({base, [mu, mv](const SweepRow& b, auto& out) {
                      const auto [sum, diff] = rosenblatt_seymour(mu, mv);
                      out.push_back(verdict(b, "difference_multisets", "equal",
                                            integers_homometric(sum, diff) ? "equal" : "different",
                                            integers_homometric(sum, diff)));
                    }});
  }
  return jobs;
}

inline std::vector<SweepJob> battery_lss(const SweepOptions& o) {
  std::vector<SweepJob> jobs;
  for (auto m : sizes_or(o, {2, 3, 4, 5, 6})) {
    if (m < 2 || m > 16) throw Error("LSS sizes must lie in 2..16");
    FamilySpec spec;
    spec.family = Family::cycle;
    spec.params["n"] = std::to_string(2 * m);
    jobs.push_back({instance_row(spec, 0, 2 * m), [m](const SweepRow& base, auto& out) {
                      const bool ok = cycle_complement_check(m);
                      out.push_back(verdict(base, "cycle_complement", "every m-subset homometric to its complement",
                                            ok ? "holds" : "fails", ok));
                    }});
  }
  return jobs;
}

/// Random antichain input for sibling_partition: a random level of a random
/// rooting, keeping a random subset of each sibling family of size >= 2.
inline std::optional<std::pair<Vertex, VertexSet>> random_sibling_set(const Graph& t, Rng& rng) {
  const Vertex root = static_cast<Vertex>(rng.below(t.vertex_count()));
  const auto ro = root_order(t, root);
  if (ro.levels.size() < 2) return std::nullopt;
  std::vector<Vertex> s;
  for (const auto& family : ro.sibling_groups()) {
    if (family.size() < 2 || rng.chance(0.3)) continue;
    std::vector<Vertex> pick;
    for (Vertex v : family)
      if (rng.chance(0.7)) pick.push_back(v);
    if (pick.size() < 2) pick.assign(family.begin(), family.begin() + 2);
    // families at different depths can still be comparable; keep one level
    if (!s.empty() && ro.depth[pick.front()] != ro.depth[s.front()]) continue;
    s.insert(s.end(), pick.begin(), pick.end());
  }
  if (s.empty()) return std::nullopt;
  return std::make_pair(root, VertexSet(std::move(s)));
}

inline std::vector<std::size_t> random_legs(Rng& rng, std::size_t k, std::size_t max_len) {
  std::vector<std::size_t> legs(k);
  for (auto& l : legs) l = 1 + rng.below(max_len);
  return legs;
}

inline std::string legs_text(const std::vector<std::size_t>& legs) { return SpiderSpec(legs).str(); }

/// Randomized certification of every construction, cycling through them.
inline std::vector<SweepJob> battery_cert(const SweepOptions& o) {
  static const char* kinds[] = {"halving",      "sibling_partition", "three_legs", "three_legs_special",
                                "k_legs",       "level_gap",         "caterpillar", "haircomb"};
  std::vector<SweepJob> jobs;
  for (std::size_t i = 0; i < trials_or(o, 10000); ++i) {
    const auto seed = job_seed(o.seed, i);
    SweepRow base;
    base.seed = seed;
    base.check = kinds[i % 8];
    jobs.push_back({base, [i, seed](const SweepRow& b, auto& out) {
                      Rng rng(seed);
                      SweepRow row = b;
                      FamilySpec spec;
                      std::optional<HomometricCertificate> cert;
                      switch (i % 8) {
                        case 0: {
                          spec.family = Family::random_graph;
                          const std::size_t n = 2 + rng.below(30);
                          spec.params = {{"n", std::to_string(n)}, {"p", n < 8 ? "0.5" : "0.2"},
                                         {"seed", std::to_string(rng.next() >> 1)}};
                          cert = shortest_path_halving(generate(spec));
                          break;
                        }
                        case 1: {
                          spec.family = Family::random_tree;
                          spec.params = {{"n", std::to_string(3 + rng.below(60))},
                                         {"seed", std::to_string(rng.next() >> 1)}};
                          const Graph t = generate(spec);
                          const auto input = random_sibling_set(t, rng);
                          if (!input) {
                            cert = shortest_path_halving(t);
                            row.note = "no sibling set drawn; halving";
                          } else {
                            cert = sibling_partition(t, root_order(t, input->first), input->second);
                            row.note = "root " + std::to_string(input->first);
                          }
                          break;
                        }
                        case 2: {
                          auto legs = random_legs(rng, 3, 30);
                          if (legs[0] < legs[1]) std::swap(legs[0], legs[1]);
                          spec.family = Family::spider;
                          spec.params["legs"] = legs_text(legs);
                          cert = construction_three_legs(SpiderSpec(legs));
                          break;
                        }
                        case 3: {
                          auto legs = random_legs(rng, 3, 30);
                          if (legs[0] == legs[1]) ++legs[0];
                          if (legs[0] < legs[1]) std::swap(legs[0], legs[1]);
                          if (legs[2] + 1 < legs[0] - legs[1]) legs[2] = legs[0] - legs[1] - 1 + rng.below(10);
                          if (legs[2] == 0) legs[2] = 1;
                          spec.family = Family::spider;
                          spec.params["legs"] = legs_text(legs);
                          cert = construction_three_legs_special(SpiderSpec(legs));
                          break;
                        }
                        case 4: {
                          const auto legs = random_legs(rng, 2 + rng.below(7), 30);
                          spec.family = Family::spider;
                          spec.params["legs"] = legs_text(legs);
                          cert = construction_k_legs(SpiderSpec(legs));
                          break;
                        }
                        case 5: {
                          spec.family = Family::random_tree;
                          spec.params = {{"n", std::to_string(2 + rng.below(80))},
                                         {"seed", std::to_string(rng.next() >> 1)}};
                          cert = level_gap_construction(generate(spec));
                          break;
                        }
                        case 6:
                          spec = random_caterpillar_spec(2 + rng.below(60), rng);
                          cert = caterpillar_construction(generate(spec));
                          break;
                        default:
                          spec = random_haircomb_spec(2 + rng.below(60), rng);
                          cert = haircomb_construction(generate(spec));
                          break;
                      }
                      row.instance = spec.str();
                      const Graph g = generate(spec);
                      row.n = g.vertex_count();
                      const bool ok = verify_homometric(g, cert->s1, cert->s2);
                      out.push_back(verdict(row, row.check, "homometric", ok ? "homometric" : "not homometric", ok,
                                            RowStatus::fail,
                                            row.note.empty() ? cert_brief(*cert) : row.note + "; " + cert_brief(*cert)));
                    }});
  }
  return jobs;
}

}  // namespace detail

/// Runs one battery. Row order is the instance order, whatever the thread
/// count.
inline SweepReport run_sweep(const SweepOptions& o) {
  std::vector<detail::SweepJob> jobs;
  if (o.thm == "T3") jobs = detail::battery_t3(o);
  else if (o.thm == "T4") jobs = detail::battery_t4(o);
  else if (o.thm == "T5") jobs = detail::battery_t5(o);
  else if (o.thm == "T6") jobs = detail::battery_t6(o);
  else if (o.thm == "T8") jobs = detail::battery_t8(o);
  else if (o.thm == "L1") jobs = detail::battery_l1(o);
  else if (o.thm == "L2") jobs = detail::battery_l2(o);
  else if (o.thm == "L4") jobs = detail::battery_l4(o);
  else if (o.thm == "RS") jobs = detail::battery_rs(o);
  else if (o.thm == "LSS") jobs = detail::battery_lss(o);
  else if (o.thm == "CERT") jobs = detail::battery_cert(o);
  else throw Error("unknown sweep tag '" + o.thm + "'");
  return SweepReport{o.thm, detail::run_jobs(jobs, o.threads)};
}

}  // namespace homoset
