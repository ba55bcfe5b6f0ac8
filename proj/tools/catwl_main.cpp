#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "catwl/hin.hpp"
#include "catwl/hypergraph.hpp"
#include "catwl/lifting.hpp"
#include "catwl/poset.hpp"
#include "catwl/wl.hpp"
#include "json.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

// Everything needed to reproduce a run byte for byte.
json make_manifest(const std::string& command, const std::vector<std::string>& argv,
                   const std::vector<std::string>& inputs, const json& config) {
  json m;
  m["tool"] = "catwl";
  m["version"] = kVersion;
  m["command"] = command;
  m["argv"] = argv;
  m["inputs"] = inputs;
  m["config"] = config;
  return m;
}

void emit(const std::string& content, const std::string& out_path,
          const json& manifest) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_file(out_path, content);
    write_file(out_path + ".manifest.json", manifest.dump(2) + "\n");
  }
}

struct TestFlags {
  std::string method;
  std::string semantics = "pair";
  std::string adjacency = "bclu";
  int iterations = 0;
  int tau = 20;
  std::optional<int> max_dim;
  std::optional<std::uint64_t> seed;
  double tol = 1e-6;
  int layers = 2;
  int width = 16;
};

catwl::AdjacencySemantics parse_semantics(const std::string& s) {
  if (s == "pair") return catwl::AdjacencySemantics::PairMultiset;
  if (s == "distinct") return catwl::AdjacencySemantics::DistinctNeighbor;
  throw std::runtime_error("unknown semantics '" + s + "'");
}

json histogram_json(const catwl::ColorHistogram& h) {
  json out = json::array();
  for (const auto& [color, count] : h) out.push_back({color, count});
  return out;
}

int run_test(const std::vector<std::string>& argv, const std::string& input_a,
             const std::string& input_b, const TestFlags& flags,
             const std::string& out_path) {
  catwl::Hypergraph a = catwl::parse_hypergraph(read_file(input_a));
  catwl::Hypergraph b = catwl::parse_hypergraph(read_file(input_b));

  catwl::LiftConfig lift_cfg;
  lift_cfg.cardinality_threshold = flags.tau;
  lift_cfg.max_dim = flags.max_dim;
  catwl::RefinementConfig refine_cfg;
  refine_cfg.adjacency = catwl::AdjacencySet::parse(flags.adjacency);
  refine_cfg.semantics = parse_semantics(flags.semantics);
  refine_cfg.max_iterations = flags.iterations;

  json config;
  config["method"] = flags.method;
  config["semantics"] = flags.semantics;
  config["adjacency"] = flags.adjacency;
  config["tau"] = flags.tau;
  if (flags.max_dim) config["max_dim"] = *flags.max_dim;
  if (flags.iterations > 0) config["iterations"] = flags.iterations;

  json result;
  if (flags.method == "hwl" || flags.method == "catwl-i" || flags.method == "catwl-s") {
    catwl::CompareResult res;
    if (flags.method == "hwl") {
      res = catwl::hwl_test(a, b, flags.iterations);
    } else {
      auto functor = flags.method == "catwl-i" ? catwl::FunctorId::Incidence
                                               : catwl::FunctorId::SymmetricSimplicial;
      res = catwl::catwl_test(a, b, functor, lift_cfg, refine_cfg);
    }
    result["verdict"] = res.verdict.distinguished ? "distinguished" : "not_distinguished";
    result["iteration"] = res.verdict.iteration;
    result["histograms"] = json::array();
    for (std::size_t t = 0; t < res.histograms.size(); ++t)
      result["histograms"].push_back({{"iteration", t},
                                      {"left", histogram_json(res.histograms[t].first)},
                                      {"right", histogram_json(res.histograms[t].second)}});
  } else if (flags.method == "hin-i" || flags.method == "hin-s") {
    if (!flags.seed)
      throw std::runtime_error("--seed is required for stochastic methods");
    catwl::MpnConfig mpn;
    mpn.adjacency = refine_cfg.adjacency;
    mpn.semantics = refine_cfg.semantics;
    mpn.layers = flags.layers;
    mpn.width = flags.width;
    auto functor = flags.method == "hin-i" ? catwl::FunctorId::Incidence
                                           : catwl::FunctorId::SymmetricSimplicial;
    catwl::HinParams params = catwl::init_params(mpn, *flags.seed);

    catwl::GradedPoset pa = catwl::lift(a, functor, lift_cfg);
    catwl::GradedPoset pb = catwl::lift(b, functor, lift_cfg);
    catwl::FeatureState fa = catwl::hin_run(pa, params, mpn);
    catwl::FeatureState fb = catwl::hin_run(pb, params, mpn);
    bool dist = catwl::hin_readout(fa, flags.tol) != catwl::hin_readout(fb, flags.tol);
    result["verdict"] = dist ? "distinguished" : "not_distinguished";
    result["iteration"] = dist ? mpn.layers : 0;

    auto dump = [](const catwl::GradedPoset& p, const catwl::FeatureState& f) {
      json out = json::object();
      for (int i = 0; i < p.size(); ++i) {
        json row = json::array();
        for (int j = 0; j < f.width; ++j) row.push_back(f.row(i)[j]);
        out[p.element(i).id] = row;
      }
      return out;
    };
    result["readouts"] = {{"left", dump(pa, fa)}, {"right", dump(pb, fb)}};
    config["seed"] = *flags.seed;
    config["tol"] = flags.tol;
    config["layers"] = flags.layers;
    config["width"] = flags.width;
  } else {
    throw std::runtime_error("unknown method '" + flags.method + "'");
  }

  result["manifest"] = make_manifest("test", argv, {input_a, input_b}, config);
  emit(result.dump(2) + "\n", out_path, result["manifest"]);
  return result["verdict"] == "distinguished" ? 1 : 0;
}

int run_lift(const std::vector<std::string>& argv, const std::string& input,
             const std::string& functor, int tau, std::optional<int> max_dim,
             const std::string& out_path, const std::string& dot_path) {
  catwl::Hypergraph h = catwl::parse_hypergraph(read_file(input));
  catwl::LiftConfig cfg;
  cfg.cardinality_threshold = tau;
  cfg.max_dim = max_dim;
  catwl::FunctorId f = functor == "i" ? catwl::FunctorId::Incidence
                                      : catwl::FunctorId::SymmetricSimplicial;
  catwl::LiftDiagnostics diag;
  catwl::GradedPoset p = catwl::lift(h, f, cfg, &diag);
  if (!diag.boundary_precondition)
    std::cerr << "warning: some dim>0 element has boundary size 1 "
                 "(adjacency-equivalence lemma preconditions fail)\n";

  json config;
  config["functor"] = functor;
  config["tau"] = tau;
  if (max_dim) config["max_dim"] = *max_dim;
  json manifest = make_manifest("lift", argv, {input}, config);

  json poset = json::parse(catwl::poset_to_json(p));
  poset["manifest"] = manifest;
  if (out_path.empty()) {
    std::cout << poset.dump(2) << "\n";
    std::cerr << "elements=" << p.size() << " covers=" << p.covers().size() << "\n";
  } else {
    emit(poset.dump(2) + "\n", out_path, manifest);
    std::cout << "elements=" << p.size() << " covers=" << p.covers().size() << "\n";
  }
  if (!dot_path.empty()) {
    std::string dot = catwl::hasse_dot(p);
    dot += "// manifest: " + manifest.dump() + "\n";
    write_file(dot_path, dot);
  }
  return 0;
}

int run_render(const std::vector<std::string>& argv, const std::string& input,
               const std::string& out_path) {
  catwl::GradedPoset p = catwl::poset_from_json(read_file(input));
  json manifest = make_manifest("render", argv, {input}, json::object());
  std::string dot = catwl::hasse_dot(p);
  dot += "// manifest: " + manifest.dump() + "\n";
  emit(dot, out_path, manifest);
  return 0;
}

struct BatteryFlags {
  int pairs = 0;
  int iso_pairs = 0;
  bool include_counterexample = false;
  std::uint64_t seed = 0;
  std::string configs = "hwl,catwl-i:distinct:bclu,catwl-s:distinct:bclu";
  bool oracle = false;
  int min_nodes = 4, max_nodes = 8, min_edges = 2, max_edges = 6;
  int min_card = 1, max_card = 3;
  int threads = 0;
  double tol = 1e-6;
};

int run_battery(const std::vector<std::string>& argv, const BatteryFlags& flags,
                const std::string& out_path) {
  std::vector<std::pair<catwl::Hypergraph, catwl::Hypergraph>> pairs;
  std::vector<std::string> ids;
  catwl::GeneratorParams gen;
  gen.min_nodes = flags.min_nodes;
  gen.max_nodes = flags.max_nodes;
  gen.min_edges = flags.min_edges;
  gen.max_edges = flags.max_edges;
  gen.min_cardinality = flags.min_card;
  gen.max_cardinality = flags.max_card;
  gen.require_cardinality_two = flags.min_card >= 2;

  for (int i = 0; i < flags.pairs; ++i) {
    gen.seed = flags.seed + 2 * i;
    catwl::Hypergraph a = catwl::random_hypergraph(gen);
    gen.seed = flags.seed + 2 * i + 1;
    catwl::Hypergraph b = catwl::random_hypergraph(gen);
    pairs.emplace_back(std::move(a), std::move(b));
    ids.push_back("rand" + std::to_string(i));
  }
  for (int i = 0; i < flags.iso_pairs; ++i) {
    gen.seed = flags.seed + 1000003 * (i + 1);
    catwl::Hypergraph a = catwl::random_hypergraph(gen);
    auto [b, phi] = catwl::random_permutation(a, gen.seed + 17);
    pairs.emplace_back(std::move(a), std::move(b));
    ids.push_back("iso" + std::to_string(i));
  }
  if (flags.include_counterexample) {
    pairs.push_back(catwl::counterexample_pair());
    ids.push_back("counterexample");
  }
  if (pairs.empty()) throw std::runtime_error("battery has no pairs to run");

  std::vector<catwl::BatteryConfig> configs;
  std::stringstream ss(flags.configs);
  std::string token;
  while (std::getline(ss, token, ',')) {
    catwl::BatteryConfig cfg = catwl::BatteryConfig::parse(token);
    cfg.hin_seed = flags.seed;
    cfg.hin_tol = flags.tol;
    configs.push_back(std::move(cfg));
  }

  catwl::BatteryReport report =
      catwl::run_battery(pairs, ids, configs, flags.oracle, flags.threads);

  json config;
  config["pairs"] = flags.pairs;
  config["iso_pairs"] = flags.iso_pairs;
  config["include_counterexample"] = flags.include_counterexample;
  config["seed"] = flags.seed;
  config["configs"] = flags.configs;
  config["oracle"] = flags.oracle;
  config["generator"] = {{"min_nodes", flags.min_nodes}, {"max_nodes", flags.max_nodes},
                         {"min_edges", flags.min_edges}, {"max_edges", flags.max_edges},
                         {"min_card", flags.min_card},   {"max_card", flags.max_card}};
  json manifest = make_manifest("battery", argv, {}, config);

  std::string csv = report.to_csv();
  csv += "# manifest " + manifest.dump() + "\n";
  emit(csv, out_path, manifest);
  return 0;
}

int run_counterexample(const std::vector<std::string>& argv, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto [h, hp] = catwl::counterexample_pair();
  write_file(dir + "/H.json", catwl::serialize_hypergraph(h));
  write_file(dir + "/H_prime.json", catwl::serialize_hypergraph(hp));

  auto names = [](const catwl::GradedPoset& p, const std::vector<catwl::AdjacencyEntry>& es) {
    std::string out = "{";
    for (std::size_t i = 0; i < es.size(); ++i) {
      if (i) out += ", ";
      out += p.element(es[i].neighbor).id;
    }
    return out + "}";
  };

  std::ostringstream w;
  w << "counterexample walkthrough\n";
  w << "==========================\n";
  w << "H : e1={v1,v2,v6} e2={v2,v3} e3={v3,v4,v5} e4={v5,v6}\n";
  w << "H': e1'={v1',v2',v3'} e2'={v2',v3'} e3'={v4',v5',v6'} e4'={v5',v6'}\n\n";

  catwl::GradedPoset pi = catwl::incidence_lift(h);
  catwl::GradedPoset qi = catwl::incidence_lift(hp);
  auto li = catwl::lower_adjacency(pi, pi.require("e:e2"),
                                   catwl::AdjacencySemantics::DistinctNeighbor);
  auto ri = catwl::lower_adjacency(qi, qi.require("e:e2'"),
                                   catwl::AdjacencySemantics::DistinctNeighbor);
  w << "incidence lift, distinct-neighbor semantics, iteration 1:\n";
  w << "  lower adjacency of e:e2  in I(H) : " << names(pi, li) << "  (size "
    << li.size() << ")\n";
  w << "  lower adjacency of e:e2' in I(H'): " << names(qi, ri) << "  (size "
    << ri.size() << ")\n";
  w << "  sizes differ, so e2 and e2' receive different colors at iteration 1\n\n";

  catwl::GradedPoset ps = catwl::symmetric_simplicial_lift(h);
  catwl::GradedPoset qs = catwl::symmetric_simplicial_lift(hp);
  auto ls = catwl::lower_adjacency(
      ps, ps.require(catwl::simplex_element_id({"v2", "v3"}, "e2")),
      catwl::AdjacencySemantics::DistinctNeighbor);
  auto rs = catwl::lower_adjacency(
      qs, qs.require(catwl::simplex_element_id({"v2'", "v3'"}, "e2'")),
      catwl::AdjacencySemantics::DistinctNeighbor);
  w << "simplicial lift, distinct-neighbor semantics, iteration 1:\n";
  w << "  lower adjacency of {v2,v3}@e2   in S(H) : " << names(ps, ls) << "  (size "
    << ls.size() << ")\n";
  w << "  lower adjacency of {v2',v3'}@e2' in S(H'): " << names(qs, rs) << "  (size "
    << rs.size() << ")\n";
  w << "  sizes differ, so the two 1-simplices receive different colors at iteration 1\n\n";

  catwl::RefinementConfig distinct;
  distinct.semantics = catwl::AdjacencySemantics::DistinctNeighbor;
  auto hwl = catwl::hwl_test(h, hp);
  auto ci = catwl::catwl_test(h, hp, catwl::FunctorId::Incidence, {}, distinct);
  auto cs = catwl::catwl_test(h, hp, catwl::FunctorId::SymmetricSimplicial, {}, distinct);
  w << "verdicts: hwl=" << (hwl.verdict.distinguished ? "distinguished" : "not_distinguished")
    << " catwl-i:distinct=distinguished@" << ci.verdict.iteration
    << " catwl-s:distinct=distinguished@" << cs.verdict.iteration << "\n";

  json manifest = make_manifest("counterexample", argv, {}, json::object());
  w << "\nmanifest: " << manifest.dump() << "\n";
  write_file(dir + "/walkthrough.txt", w.str());
  write_file(dir + "/walkthrough.txt.manifest.json", manifest.dump(2) + "\n");
  std::cout << "wrote " << dir << "/H.json, H_prime.json, walkthrough.txt\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> raw_args(argv + 1, argv + argc);
  CLI::App app{"Categorical Weisfeiler-Lehman toolkit"};
  app.require_subcommand(1);

  // lift
  auto* lift_cmd = app.add_subcommand("lift", "lift a hypergraph into a graded poset");
  std::string lift_input, lift_functor, lift_out, lift_dot;
  int lift_tau = 20;
  std::optional<int> lift_max_dim;
  lift_cmd->add_option("input", lift_input, "hypergraph JSON file")->required();
  lift_cmd->add_option("--functor", lift_functor, "i or s")
      ->required()
      ->check(CLI::IsMember({"i", "s"}));
  lift_cmd->add_option("--tau", lift_tau, "simplicial truncation threshold");
  int lift_max_dim_value = -1;
  lift_cmd->add_option("--max-dim", lift_max_dim_value, "cap on simplex dimension");
  lift_cmd->add_option("-o,--output", lift_out, "poset JSON output path");
  lift_cmd->add_option("--dot", lift_dot, "also write a DOT rendering");

  // test
  auto* test_cmd = app.add_subcommand("test", "compare two hypergraphs");
  std::string test_a, test_b, test_out;
  TestFlags tf;
  std::uint64_t seed_value = 0;
  test_cmd->add_option("a", test_a, "first hypergraph JSON")->required();
  test_cmd->add_option("b", test_b, "second hypergraph JSON")->required();
  test_cmd->add_option("--method", tf.method, "hwl|catwl-i|catwl-s|hin-i|hin-s")
      ->required()
      ->check(CLI::IsMember({"hwl", "catwl-i", "catwl-s", "hin-i", "hin-s"}));
  test_cmd->add_option("--semantics", tf.semantics, "pair|distinct")
      ->check(CLI::IsMember({"pair", "distinct"}));
  test_cmd->add_option("--adjacency", tf.adjacency, "subset of bclu");
  test_cmd->add_option("--iters", tf.iterations, "iteration budget (0 = |P|+1)");
  test_cmd->add_option("--tau", tf.tau, "simplicial truncation threshold");
  int test_max_dim_value = -1;
  test_cmd->add_option("--max-dim", test_max_dim_value, "cap on simplex dimension");
  auto* seed_opt = test_cmd->add_option("--seed", seed_value, "seed for hin methods");
  test_cmd->add_option("--tol", tf.tol, "readout quantization for hin methods");
  test_cmd->add_option("--layers", tf.layers, "hin layer count");
  test_cmd->add_option("--width", tf.width, "hin feature width");
  test_cmd->add_option("-o,--output", test_out, "verdict JSON output path");

  // battery
  auto* battery_cmd = app.add_subcommand("battery", "verdict table over generated pairs");
  BatteryFlags bf;
  std::string battery_out;
  battery_cmd->add_option("--pairs", bf.pairs, "number of independent random pairs");
  battery_cmd->add_option("--iso-pairs", bf.iso_pairs, "number of isomorphic pairs");
  battery_cmd->add_flag("--include-counterexample", bf.include_counterexample,
                        "append the canonical counterexample pair");
  battery_cmd->add_option("--seed", bf.seed, "master seed")->required();
  battery_cmd->add_option("--configs", bf.configs, "comma-separated config list");
  battery_cmd->add_flag("--oracle", bf.oracle, "add brute-force ground truth");
  battery_cmd->add_option("--min-nodes", bf.min_nodes);
  battery_cmd->add_option("--max-nodes", bf.max_nodes);
  battery_cmd->add_option("--min-edges", bf.min_edges);
  battery_cmd->add_option("--max-edges", bf.max_edges);
  battery_cmd->add_option("--min-card", bf.min_card);
  battery_cmd->add_option("--max-card", bf.max_card);
  battery_cmd->add_option("--threads", bf.threads, "worker pool size (0 = auto)");
  battery_cmd->add_option("--tol", bf.tol, "hin readout quantization");
  battery_cmd->add_option("-o,--output", battery_out, "CSV output path");

  // counterexample
  auto* ce_cmd = app.add_subcommand("counterexample", "emit the canonical pair");
  std::string ce_dir;
  ce_cmd->add_option("--emit", ce_dir, "output directory")->required();

  // render
  auto* render_cmd = app.add_subcommand("render", "poset JSON to DOT");
  std::string render_input, render_out;
  render_cmd->add_option("input", render_input, "poset JSON file")->required();
  render_cmd->add_option("-o,--output", render_out, "DOT output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*lift_cmd) {
      if (lift_cmd->count("--max-dim")) lift_max_dim = lift_max_dim_value;
      return run_lift(raw_args, lift_input, lift_functor, lift_tau, lift_max_dim,
                      lift_out, lift_dot);
    }
    if (*test_cmd) {
      if (test_cmd->count("--max-dim")) tf.max_dim = test_max_dim_value;
      if (seed_opt->count()) tf.seed = seed_value;
      return run_test(raw_args, test_a, test_b, tf, test_out);
    }
    if (*battery_cmd) return run_battery(raw_args, bf, battery_out);
    if (*ce_cmd) return run_counterexample(raw_args, ce_dir);
    if (*render_cmd) return run_render(raw_args, render_input, render_out);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}
