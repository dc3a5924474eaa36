#include <catch_amalgamated.hpp>

#include "homoset/io.hpp"
#include "homoset/report.hpp"
#include "homoset/sweep.hpp"

using namespace homoset;

TEST_CASE("edge list parsing", "[io]") {
  const Graph g = parse_edge_list("# a path\n4 3\n0 1\n1 2  # middle\n\n2 3\n");
  CHECK(g == path_graph(4));
  CHECK(parse_edge_list(format_edge_list(petersen_graph())) == petersen_graph());
  CHECK(parse_edge_list("3 0\n").edge_count() == 0);
}

TEST_CASE("edge list errors", "[io]") {
  CHECK_THROWS_AS(parse_edge_list(""), Error);
  CHECK_THROWS_AS(parse_edge_list("3 2\n0 1\n"), Error);
  CHECK_THROWS_AS(parse_edge_list("3 1\n0 3\n"), Error);
  CHECK_THROWS_AS(parse_edge_list("3 1\n0 x\n"), Error);
  CHECK_THROWS_AS(parse_edge_list("3 1\n0 1 2\n"), Error);
  CHECK_THROWS_AS(parse_edge_list("3 1\n-1 1\n"), Error);
  CHECK_THROWS_AS(parse_edge_list("3 1\n1 1\n"), Error);
  CHECK_THROWS_AS(load_edge_list("/nonexistent/graph.el"), Error);
}

TEST_CASE("graph hash ignores edge order", "[io]") {
  const Graph a = build_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  const Graph b = build_graph(4, {{3, 2}, {0, 1}, {2, 1}});
  CHECK(graph_hash(a) == graph_hash(b));
  CHECK(graph_hash(a) != graph_hash(cycle_graph(4)));
  CHECK(graph_hash(path_graph(3)) != graph_hash(Graph(4, path_graph(3).edges())));
  CHECK(hash_hex(graph_hash(a)).size() == 16);
}

TEST_CASE("certificate records round-trip and are re-verified", "[io]") {
  const Graph g = cycle_graph(8);
  const auto r = max_homometric(g);
  const auto j = certificate_to_json(r.certificate, g, r.exact);
  CHECK(j["version"] == kCertificateVersion);
  CHECK(j["size"] == 4);
  CHECK(j["exact"] == true);
  const auto back = certificate_from_json(nlohmann::json::parse(j.dump()), g);
  CHECK(back.s1 == r.certificate.s1);
  CHECK(back.s2 == r.certificate.s2);
  CHECK(back.provenance == r.certificate.provenance);

  CHECK_THROWS_AS(certificate_from_json(nlohmann::json::parse(j.dump()), path_graph(8)), Error);
  auto tampered = nlohmann::json::parse(j.dump());
  tampered["s2"] = {0, 2, 4, 7};
  CHECK_THROWS_AS(certificate_from_json(tampered, g), Error);
  auto wrong_multiset = nlohmann::json::parse(j.dump());
  wrong_multiset["multiset"] = {1, 1, 1, 1, 1, 1};
  CHECK_THROWS_AS(certificate_from_json(wrong_multiset, g), Error);
  auto old = nlohmann::json::parse(j.dump());
  old["version"] = 0;
  CHECK_THROWS_AS(certificate_from_json(old, g), Error);
  CHECK_THROWS_AS(certificate_from_json(nlohmann::json::object(), g), Error);
}

TEST_CASE("bound report json", "[io]") {
  BoundsRequest req;
  req.spider = SpiderSpec({4, 1, 1, 1, 1, 1});
  const auto j = bounds_report_json(req.spider->graph(), req);
  CHECK(j["n"] == 10);
  CHECK(j["oracle"]["h"] == 3);
  CHECK(j["spider"]["exact_claim"]["pattern"] == "half_single_legs");
  CHECK(j["spider"]["exact_claim"]["oracle_agrees"] == true);
  CHECK(j["bounds"][0]["name"] == "diameter");
  CHECK(bound_json(Bound{"x", "2h >= 7/2", Rational(7, 2)})["h_ceil"] == 2);
}

TEST_CASE("size ranges", "[sweep]") {
  CHECK(parse_size_range("3..6") == std::vector<std::size_t>{3, 4, 5, 6});
  CHECK(parse_size_range("20,50") == std::vector<std::size_t>{20, 50});
  CHECK_THROWS_AS(parse_size_range("6..3"), Error);
  CHECK_THROWS_AS(parse_size_range("a..3"), Error);
}

TEST_CASE("every battery runs on a small configuration", "[sweep]") {
  for (const auto& tag : sweep_tags()) {
    SweepOptions o;
    o.thm = tag;
    o.trials = tag == "RS" || tag == "CERT" ? 40 : 2;
    if (tag == "T3" || tag == "T8") o.sizes = {6};
    if (tag == "T4" || tag == "L4") o.sizes = {20};
    if (tag == "T5") o.sizes = {12};
    if (tag == "T6" || tag == "L2") o.sizes = {7};
    if (tag == "L1") o.sizes = {6};
    if (tag == "LSS") o.sizes = {2, 3};
    const auto r = run_sweep(o);
    INFO(r.summary());
    CHECK_FALSE(r.rows.empty());
    for (std::size_t i = 0; i < r.rows.size(); ++i) CHECK(r.rows[i].index == i);
  }
  SweepOptions bad;
  bad.thm = "T9";
  CHECK_THROWS_AS(run_sweep(bad), Error);
}

TEST_CASE("instance strings regenerate the checked graph", "[sweep]") {
  SweepOptions o;
  o.thm = "T4";
  o.sizes = {30};
  o.trials = 5;
  for (const auto& row : run_sweep(o).rows) {
    const Graph g = generate(FamilySpec::parse(row.instance));
    CHECK(g.vertex_count() == row.n);
  }
}

TEST_CASE("rows do not depend on the thread count", "[sweep]") {
  for (const std::string tag : {"T4", "T6", "CERT", "L4"}) {
    SweepOptions o;
    o.thm = tag;
    o.trials = tag == "CERT" ? 200 : 5;
    if (tag == "T6") o.sizes = {9};
    if (tag == "T4" || tag == "L4") o.sizes = {20, 50};
    o.threads = 1;
    const auto one = run_sweep(o);
    o.threads = 4;
    const auto four = run_sweep(o);
    CHECK(one.csv() == four.csv());
  }
}

TEST_CASE("seeds change random instances", "[sweep]") {
  SweepOptions o;
  o.thm = "T4";
  o.sizes = {40};
  o.trials = 3;
  const auto a = run_sweep(o);
  o.seed = 2;
  const auto b = run_sweep(o);
  CHECK(a.rows[0].instance != b.rows[0].instance);
}

TEST_CASE("csv and json reports", "[sweep]") {
  SweepOptions o;
  o.thm = "LSS";
  o.sizes = {2, 3};
  const auto r = run_sweep(o);
  CHECK(r.ok());
  const auto csv = r.csv();
  CHECK(csv.rfind(std::string(kSweepCsvHeader) + "\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(r.rows.size() + 1));
  const auto j = r.json();
  CHECK(j["thm"] == "LSS");
  CHECK(j["summary"]["rows"] == r.rows.size());
  CHECK(j["rows"].size() == r.rows.size());
  CHECK(r.summary().rfind("LSS: 2 rows", 0) == 0);

  SweepReport quoted;
  quoted.thm = "X";
  quoted.rows.push_back(SweepRow{});
  quoted.rows[0].note = "a, \"b\"";
  CHECK(quoted.csv().find("\"a, \"\"b\"\"\"") != std::string::npos);
}

TEST_CASE("a throwing job becomes a failing row", "[sweep]") {
  std::vector<detail::SweepJob> jobs;
  jobs.push_back({SweepRow{}, [](const SweepRow& base, auto& out) {
                    (void)base;
                    (void)out;
                    throw Error("boom");
                  }});
  const auto rows = detail::run_jobs(jobs, 2);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].status == RowStatus::fail);
  CHECK(rows[0].note.find("boom") != std::string::npos);
}
