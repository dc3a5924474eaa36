#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "homoset/diam2.hpp"
#include "homoset/exact_search.hpp"
#include "homoset/families.hpp"
#include "homoset/io.hpp"
#include "homoset/report.hpp"
#include "homoset/spider.hpp"
#include "homoset/sweep.hpp"
#include "homoset/tree.hpp"

namespace {

using namespace homoset;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitCheckFailed = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned worker_threads() {
  if (const char* env = std::getenv("HOMOSET_THREADS")) {
    try {
      const auto v = std::stoul(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid HOMOSET_THREADS='" << env << "'\n";
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Graph input shared by the subcommands: a file, a one-line spec, or a
/// family name plus parameter flags.
struct GraphInput {
  std::string file;
  std::string spec;
  std::string family;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--file", file, "edge-list file (first line \"n m\", then \"u v\" per edge)");
    cmd->add_option("--spec", spec, "family one-liner, e.g. \"family=spider legs=3,2,2,1\"");
    cmd->add_option("--family", family, "family name: path cycle star spider caterpillar haircomb double_haircomb "
                                        "flower clique_flower random_tree random_graph catalog_tree");
    static const std::vector<std::pair<std::string, std::string>> flags{
        {"--n", "n"},         {"--legs", "legs"}, {"--leaves", "leaves"},     {"--sub", "sub"},
        {"--m", "m"},         {"--h-kind", "h"},  {"--h-n", "h_n"},         {"--p", "p"},
        {"--sizes", "sizes"}, {"--diameter", "diameter"}, {"--index", "index"}};
    for (const auto& [flag, key] : flags) cmd->add_option(flag, params[key], "family parameter " + key);
    cmd->add_option("--seed", seed, "seed for randomized families");
  }

  std::optional<FamilySpec> family_spec() const {
    if (!spec.empty()) return FamilySpec::parse(spec);
    if (family.empty()) return std::nullopt;
    FamilySpec fs;
    fs.family = parse_family(family);
    for (const auto& [k, v] : params)
      if (!v.empty()) fs.params[k] = v;
    return fs;
  }

  Graph load() const {
    const int sources = !file.empty() + !spec.empty() + !family.empty();
    if (sources != 1) throw UsageError("give exactly one of --file, --spec, --family");
    if (!file.empty()) return load_edge_list(file);
    return generate(*family_spec(), seed);
  }

  std::optional<SpiderSpec> spider() const {
    const auto fs = family_spec();
    if (!fs || fs->family != Family::spider) return std::nullopt;
    return SpiderSpec(fs->counts("legs"));
  }

  std::string describe() const {
    if (!file.empty()) return "file=" + file;
    auto s = family_spec()->str();
    if (seed != 0 && !family_spec()->has("seed")) s += " seed=" + std::to_string(seed);
    return s;
  }
};

void print_certificate(const HomometricCertificate& c) {
  auto list = [](const VertexSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + std::to_string(s[i]);
    return out + "}";
  };
  std::cout << "S1 = " << list(c.s1) << "\n"
            << "S2 = " << list(c.s2) << "\n"
            << "D  = " << c.multiset.str() << "\n"
            << "provenance: " << c.provenance << "\n";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

HomometricCertificate run_construction(const std::string& name, const Graph& g, const GraphInput& in) {
  if (name == "halving") return shortest_path_halving(g);
  if (name == "level_gap") return level_gap_construction(g);
  if (name == "caterpillar") return caterpillar_construction(g);
  if (name == "haircomb") return haircomb_construction(g);
  if (name == "degree_partition") {
    auto r = degree_class_partition(g);
    if (!r.certificate) throw Error("degree_partition: no balanced split exists for this graph");
    return *r.certificate;
  }
  const auto s = in.spider();
  if (!s) throw UsageError("construction '" + name + "' needs --family spider --legs ...");
  if (name == "three_legs") return construction_three_legs(*s);
  if (name == "three_legs_special") return construction_three_legs_special(*s);
  if (name == "k_legs") return construction_k_legs(*s);
  throw UsageError("unknown construction '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homoset: homometric vertex sets in graphs"};
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 success, 1 usage, 2 input error, 3 sweep check failure.\n"
      "HOMOSET_THREADS caps worker threads (default: hardware concurrency).\n"
      "Sweep CSV columns: thm,index,instance,seed,n,h,h_exact,check,expected,observed,status,note\n"
      "  instance  family one-liner that regenerates the input (or the integer sets for RS)\n"
      "  h         exact h, or a lower bound when h_exact=0; empty when not computed\n"
      "  status    pass | warn (flagged discrepancy) | fail (hard failure)");

  GraphInput h_in, b_in, c_in;
  std::uint64_t budget = SearchOptions{}.budget;
  std::string json_path, csv_path;

  auto* h_cmd = app.add_subcommand("h", "exact h(G) with a certificate");
  h_in.attach(h_cmd);
  h_cmd->add_option("--budget", budget, "cap on enumerated subsets before falling back to a lower bound");
  h_cmd->add_option("--json", json_path, "write the certificate record to this file");

  auto* b_cmd = app.add_subcommand("bounds", "closed-form lower bounds for a tree, as JSON");
  b_in.attach(b_cmd);
  std::size_t exact_up_to = 24;
  b_cmd->add_option("--exact-up-to", exact_up_to, "cross-check with exact search when n is at most this (0: never)");
  b_cmd->add_option("--budget", budget, "exact search budget");
  b_cmd->add_option("--json", json_path, "also write the report to this file");

  auto* c_cmd = app.add_subcommand("construct", "run one construction and print its certificate");
  c_in.attach(c_cmd);
  std::string construction;
  c_cmd->add_option("--name", construction,
                    "halving level_gap caterpillar haircomb degree_partition three_legs three_legs_special k_legs")
      ->required();
  c_cmd->add_option("--json", json_path, "write the certificate record to this file");

  auto* s_cmd = app.add_subcommand("sweep", "run one check battery over a family range");
  std::string thm, n_range, m_range;
  std::size_t max_n = 0, trials = 0;
  std::uint64_t sweep_seed = 1;
  s_cmd->add_option("--thm", thm, "T3 T4 T5 T6 T8 L1 L2 L4 RS LSS CERT")->required();
  s_cmd->add_option("--n", n_range, "sizes: a..b or a,b,c");
  s_cmd->add_option("--m", m_range, "cycle half-lengths for LSS: a..b or a,b,c");
  s_cmd->add_option("--max-n", max_n, "largest n for exhaustive batteries (T6, L1, L2)");
  s_cmd->add_option("--trials", trials, "instances per size (total for RS and CERT)");
  s_cmd->add_option("--seed", sweep_seed, "base seed");
  s_cmd->add_option("--budget", budget, "exact search budget per instance");
  s_cmd->add_option("--json", json_path, "write the JSON report here");
  s_cmd->add_option("--csv", csv_path, "write the CSV report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  auto report_time = [&] {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "runtime: " << s << " s\n";
  };
  const unsigned threads = worker_threads();

  try {
    if (h_cmd->parsed()) {
      const Graph g = h_in.load();
      const auto res = max_homometric(g, {budget, threads});
      std::cout << "input: " << h_in.describe() << "\n"
                << "n = " << g.vertex_count() << ", edges = " << g.edge_count() << "\n"
                << (res.exact ? "h = " : "h >= ") << res.certificate.size() << "\n";
      print_certificate(res.certificate);
      if (!json_path.empty()) write_file(json_path, certificate_to_json(res.certificate, g, res.exact).dump(2) + "\n");
      report_time();
      return kExitOk;
    }
    if (b_cmd->parsed()) {
      const Graph g = b_in.load();
      if (!g.is_tree()) throw Error("bounds needs a tree");
      BoundsRequest req;
      req.spider = b_in.spider();
      req.exact_up_to = exact_up_to;
      req.search = {budget, threads};
      const auto text = bounds_report_json(g, req).dump(2) + "\n";
      std::cout << text;
      if (!json_path.empty()) write_file(json_path, text);
      report_time();
      return kExitOk;
    }
    if (c_cmd->parsed()) {
      const Graph g = c_in.load();
      const auto cert = run_construction(construction, g, c_in);
      std::cout << "input: " << c_in.describe() << "\n"
                << "size = " << cert.size() << "\n";
      print_certificate(cert);
      if (!json_path.empty()) write_file(json_path, certificate_to_json(cert, g, false).dump(2) + "\n");
      report_time();
      return kExitOk;
    }
    if (s_cmd->parsed()) {
      const auto& tags = sweep_tags();
      if (std::find(tags.begin(), tags.end(), thm) == tags.end()) throw UsageError("unknown battery tag '" + thm + "'");
      SweepOptions o;
      o.thm = thm;
      o.trials = trials;
      o.seed = sweep_seed;
      o.threads = threads;
      o.budget = budget;
      if (!m_range.empty()) o.sizes = parse_size_range(m_range);
      if (!n_range.empty()) o.sizes = parse_size_range(n_range);
      if (max_n != 0) o.sizes = {max_n};
      const auto report = run_sweep(o);
      std::cout << report.summary() << "\n";
      for (const auto& row : report.rows)
        if (row.status != RowStatus::pass)
          std::cout << to_string(row.status) << " #" << row.index << " [" << row.instance << "] " << row.check
                    << ": expected " << row.expected << ", observed " << row.observed
                    << (row.note.empty() ? "" : " (" + row.note + ")") << "\n";
      if (!csv_path.empty()) write_file(csv_path, report.csv());
      if (!json_path.empty()) write_file(json_path, report.json().dump(2) + "\n");
      report_time();
      return report.ok() ? kExitOk : kExitCheckFailed;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
