// sfest: estimators, exact baselines, instance generators and benchmarks
// for sublinear MIS-size and metric Steiner-Forest cost estimation under
// query-counting oracles.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sfest/sfest.hpp"

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw sfest::InputError("cannot open output file: " + out_path);
  out << text;
}

struct GenSpec {
  std::string kind;
  std::map<std::string, std::string> params;
};

GenSpec parse_gen_spec(const std::string& text) {
  GenSpec spec;
  auto colon = text.find(':');
  spec.kind = text.substr(0, colon);
  if (colon != std::string::npos)
    for (const auto& kv : split(text.substr(colon + 1), ',')) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw sfest::InputError("bad generator parameter: " + kv);
      spec.params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
  return spec;
}

double spec_num(const GenSpec& spec, const std::string& key, double fallback,
                bool required = false) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) {
    if (required) throw sfest::InputError("generator spec missing parameter: " + key);
    return fallback;
  }
  return std::stod(it->second);
}

sfest::MetricInstance instantiate(const GenSpec& spec, std::uint64_t seed) {
  if (spec.kind == "i1") return sfest::gen_i1(static_cast<int>(spec_num(spec, "L", 0, true)));
  if (spec.kind == "i2")
    return sfest::gen_i2(static_cast<int>(spec_num(spec, "L", 0, true)),
                         spec_num(spec, "gap", 0, true));
  if (spec.kind == "euclid")
    return sfest::gen_random_euclid(static_cast<int>(spec_num(spec, "n", 0, true)),
                                    static_cast<int>(spec_num(spec, "k", 0, true)),
                                    static_cast<int>(spec_num(spec, "dim", 2)),
                                    static_cast<std::uint64_t>(spec_num(spec, "seed", seed)));
  throw sfest::InputError("unknown metric generator kind: " + spec.kind);
}

json level_to_json(const sfest::LevelReport& lv) {
  return json{{"level", lv.level},
              {"tau", lv.tau},
              {"active_count", lv.active_count},
              {"mis_estimate", lv.mis_estimate},
              {"exact_prefix", lv.exact_prefix},
              {"queries", lv.queries}};
}

json sf_report_to_json(const sfest::SfEstimateReport& rep) {
  json levels = json::array();
  for (const auto& lv : rep.levels) levels.push_back(level_to_json(lv));
  json ignored = json::array();
  for (const auto& ig : rep.ignored)
    ignored.push_back(json{{"s", ig.pair.s}, {"t", ig.pair.t}, {"distance", ig.distance}});
  return json{{"sol_scaled", rep.sol_scaled},
              {"sol_original", rep.sol_original},
              {"scale", rep.scale},
              {"x_max", rep.x_max},
              {"k_eff", rep.k_eff},
              {"levels", levels},
              {"ignored", ignored},
              {"preprocessing_queries", rep.preprocessing_queries},
              {"total_queries", rep.total_queries},
              {"seed", rep.seed},
              {"epsilon", rep.epsilon}};
}

int run(int argc, char** argv) {
  CLI::App app{"sublinear MIS-size and metric Steiner-Forest cost estimation"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string format = "csv";
  int workers = 1;
  std::string cache = "off";
  app.add_option("--seed", seed, "seed for all randomness");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--workers", workers, "trial worker pool size")->check(CLI::PositiveNumber);
  app.add_option("--cache", cache, "cross-query oracle memoization")
      ->check(CLI::IsMember({"on", "off"}));

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance or graph file");
  std::string gen_kind, gen_out;
  int gen_L = 0, gen_n = 0, gen_k = 0, gen_dim = 2;
  double gen_gap = 0, gen_p = 0.5;
  gen->add_option("--kind", gen_kind, "i1|i2|euclid|gnp")->required();
  gen->add_option("--L", gen_L, "levels (i1, i2)");
  gen->add_option("--gap", gen_gap, "inter-cluster gap (i2)");
  gen->add_option("--n", gen_n, "vertex count (euclid, gnp)");
  gen->add_option("--k", gen_k, "pair count (euclid)");
  gen->add_option("--dim", gen_dim, "dimension (euclid)");
  gen->add_option("--p", gen_p, "edge probability (gnp)");
  gen->add_option("--out", gen_out, "output file")->required();

  // mis-estimate
  auto* mis = app.add_subcommand("mis-estimate", "estimate the RGMIS size of a graph");
  std::string mis_graph, mis_out;
  double mis_eps = 0.2;
  int mis_instances = 1;
  mis->add_option("--graph", mis_graph, "graph file")->required();
  mis->add_option("--eps", mis_eps, "accuracy parameter");
  mis->add_option("--instances", mis_instances,
                  "parallel restarts with interleaved query budgets (0 = ceil(3 ln n))");
  mis->add_option("--out", mis_out, "output file (default stdout)");

  // sf-estimate
  auto* sfe = app.add_subcommand("sf-estimate", "estimate the Steiner-Forest cost");
  std::string sfe_instance, sfe_report, sfe_out;
  double sfe_eps = 0.01;
  sfe->add_option("--instance", sfe_instance, "instance file")->required();
  sfe->add_option("--eps", sfe_eps, "accuracy parameter");
  sfe->add_option("--report", sfe_report, "report format for this command")
      ->check(CLI::IsMember({"csv", "json"}));
  sfe->add_option("--out", sfe_out, "output file (default stdout)");

  // verify
  auto* ver = app.add_subcommand("verify", "build and check a connectivity certificate");
  std::string ver_instance, ver_out;
  ver->add_option("--instance", ver_instance, "instance file")->required();
  ver->add_option("--out", ver_out, "output file (default stdout)");

  // bench-mis
  auto* bm = app.add_subcommand("bench-mis", "MIS estimator benchmark over G(n,p)");
  std::string bm_sizes, bm_out;
  double bm_p = 0.5, bm_eps = 0.2;
  int bm_trials = 1, bm_exact_max = 2000;
  bm->add_option("--sizes", bm_sizes, "comma-separated n values")->required();
  bm->add_option("--p", bm_p, "edge probability");
  bm->add_option("--eps", bm_eps, "accuracy parameter");
  bm->add_option("--trials", bm_trials, "trials per size");
  bm->add_option("--exact-max", bm_exact_max, "record exact RGMIS size up to this n");
  bm->add_option("--out", bm_out, "output file (default stdout)");

  // bench-sf
  auto* bs = app.add_subcommand("bench-sf", "Steiner-Forest estimator benchmark");
  std::vector<std::string> bs_instances, bs_gens;
  std::string bs_out, bs_levels_out;
  double bs_eps = 0.01;
  int bs_trials = 1;
  bs->add_option("--instance", bs_instances, "instance file (repeatable)");
  bs->add_option("--gen", bs_gens, "generator spec kind:key=val,... (repeatable)");
  bs->add_option("--eps", bs_eps, "accuracy parameter");
  bs->add_option("--trials", bs_trials, "trials per instance");
  bs->add_option("--out", bs_out, "output file (default stdout)");
  bs->add_option("--levels-out", bs_levels_out, "write the per-level breakdown CSV here");

  // fit
  auto* fit = app.add_subcommand("fit", "log-log scaling exponent from a bench CSV");
  std::string fit_input, fit_x = "n", fit_y = "queries", fit_xy_out;
  fit->add_option("--input", fit_input, "bench CSV file")->required();
  fit->add_option("--x", fit_x, "size column name");
  fit->add_option("--y", fit_y, "cost column name");
  fit->add_option("--xy-out", fit_xy_out, "write gnuplot-ready two-column means to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  sfest::MisOracleConfig oracle_cfg;
  oracle_cfg.cache = (cache == "on");

  if (gen->parsed()) {
    if (gen_kind == "gnp") {
      if (gen_n < 1) throw sfest::InputError("gen gnp requires --n >= 1");
      sfest::write_graph_file(gen_out, sfest::gen_gnp(gen_n, gen_p, seed));
    } else if (gen_kind == "i1") {
      sfest::write_instance_file(gen_out, sfest::gen_i1(gen_L));
    } else if (gen_kind == "i2") {
      sfest::write_instance_file(gen_out, sfest::gen_i2(gen_L, gen_gap));
    } else if (gen_kind == "euclid") {
      sfest::write_instance_file(gen_out, sfest::gen_random_euclid(gen_n, gen_k, gen_dim, seed));
    } else {
      throw sfest::InputError("unknown --kind: " + gen_kind);
    }
    return 0;
  }

  if (mis->parsed()) {
    sfest::Graph g = sfest::parse_graph_file(mis_graph);
    sfest::MisEstimate est;
    if (mis_instances == 1) {
      sfest::EdgeSetOracle oracle(g);
      est = sfest::alg_mul(oracle, mis_eps, seed, oracle_cfg);
    } else {
      int instances =
          mis_instances > 0 ? mis_instances : sfest::default_hp_instances(g.n());
      est = sfest::alg_mul_hp([&g] { return sfest::EdgeSetOracle(g); }, mis_eps, seed, instances,
                              oracle_cfg);
    }
    if (format == "json") {
      json row{{"value", est.value},
               {"exact_prefix", est.exact_prefix.size()},
               {"queries", est.queries},
               {"seed", est.seed},
               {"epsilon", est.epsilon}};
      emit(row.dump() + "\n", mis_out);
    } else {
      std::ostringstream out;
      out << "value,exact_prefix,queries,seed,epsilon\n"
          << sfest::detail::fmt_double(est.value) << ',' << est.exact_prefix.size() << ','
          << est.queries << ',' << est.seed << ',' << sfest::detail::fmt_double(est.epsilon)
          << '\n';
      emit(out.str(), mis_out);
    }
    return 0;
  }

  if (sfe->parsed()) {
    sfest::MetricInstance inst = sfest::parse_instance_file(sfe_instance);
    sfest::SfParams params;
    params.epsilon = sfe_eps;
    params.seed = seed;
    params.oracle = oracle_cfg;
    sfest::SfEstimateReport rep = sfest::estimate_sf(inst, params);
    std::string fmt = sfe_report.empty() ? format : sfe_report;
    if (fmt == "json") {
      emit(sf_report_to_json(rep).dump() + "\n", sfe_out);
    } else {
      std::ostringstream out;
      out << sfest::to_csv(rep);
      out << "# sol_scaled=" << sfest::detail::fmt_double(rep.sol_scaled)
          << " sol_original=" << sfest::detail::fmt_double(rep.sol_original)
          << " scale=" << sfest::detail::fmt_double(rep.scale) << " k_eff=" << rep.k_eff
          << " ignored=" << rep.ignored.size() << " total_queries=" << rep.total_queries
          << " seed=" << rep.seed << '\n';
      emit(out.str(), sfe_out);
    }
    return 0;
  }

  if (ver->parsed()) {
    sfest::MetricInstance inst = sfest::parse_instance_file(ver_instance);
    sfest::CountingDistanceOracle oracle(inst);
    sfest::PreprocessedInstance pre = sfest::preprocess(oracle, inst.pairs());
    json report;
    report["instance"] = ver_instance;
    report["seed"] = seed;
    report["k_eff"] = pre.k_eff;
    bool all_ok = true;
    if (pre.k_eff == 0) {
      report["levels"] = json::array();
      report["all_ok"] = true;
      emit(report.dump(2) + "\n", ver_out);
      return 0;
    }
    sfest::MetricView scaled = sfest::scaled_view(inst, pre);
    sfest::MatchMap match(pre.kept, inst.n());
    std::vector<double> taus = sfest::levels(pre.k_eff);
    sfest::Permutation pi = sfest::random_permutation(inst.n(), seed);
    sfest::Certificate cert = sfest::build_certificate(scaled, match, pre.kept, taus, pi);
    sfest::CertReport check = sfest::verify_certificate(scaled, inst.n(), pre.kept, cert);
    all_ok = check.all_ok;

    json levels = json::array();
    for (int i = 0; i < static_cast<int>(taus.size()); ++i) {
      double cost_f = sfest::edge_cost(cert.f_levels[i]);
      double cost_j = sfest::edge_cost(cert.j_levels[i]);
      bool f_ok = i == 0 ? cost_f == 0.0
                         : cost_f <= 4.0 * cert.mis_sizes[i - 1] * cert.taus[i - 1];
      bool j_ok = cost_j <= 2.0 * cert.mis_sizes[i] * cert.taus[i];
      levels.push_back(json{{"level", i},
                            {"tau", taus[i]},
                            {"M", cert.mis_sizes[i]},
                            {"cost_F", cost_f},
                            {"cost_J", cost_j},
                            {"bound_ok", f_ok && j_ok}});
    }
    report["levels"] = levels;
    report["total_cost"] = check.total_cost;
    report["mis_tau_sum"] = check.mis_tau_sum;
    json pairs = json::array();
    for (const auto& [p, connected] : check.pair_connected)
      pairs.push_back(json{{"s", p.s}, {"t", p.t}, {"connected", connected}});
    report["pairs"] = pairs;

    if (static_cast<int>(pre.kept.size()) <= sfest::kExactOptMaxPairs &&
        inst.n() <= sfest::kExactOptMaxVertices) {
      double opt_scaled = pre.scale * sfest::exact_opt_sf(inst, pre.kept);
      double max_level = 0;
      for (int i = 0; i < static_cast<int>(taus.size()); ++i)
        max_level = std::max(max_level, cert.mis_sizes[i] * taus[i]);
      bool lower_ok = max_level <= opt_scaled;
      bool upper_ok = opt_scaled <= 6.0 * check.mis_tau_sum;
      report["opt_scaled"] = opt_scaled;
      report["sandwich"] = json{{"lower_ok", lower_ok}, {"upper_ok", upper_ok}};
      all_ok = all_ok && lower_ok && upper_ok;
    } else {
      report["opt_scaled"] = nullptr;
    }
    report["all_ok"] = all_ok;
    emit(report.dump(2) + "\n", ver_out);
    return all_ok ? 0 : 2;
  }

  if (bm->parsed()) {
    sfest::MisBenchParams params;
    for (const auto& tok : split(bm_sizes, ',')) params.sizes.push_back(std::stoi(tok));
    params.p = bm_p;
    params.epsilon = bm_eps;
    params.trials = bm_trials;
    params.seed = seed;
    params.exact_max = bm_exact_max;
    params.workers = workers;
    params.oracle = oracle_cfg;
    auto rows = sfest::run_mis_bench(params);
    if (format == "json") {
      std::ostringstream out;
      for (const auto& r : rows) {
        json row{{"n", r.n},          {"k_or_p", r.k_or_p}, {"epsilon", r.epsilon},
                 {"seed", r.seed},    {"estimate", r.estimate}, {"queries", r.queries},
                 {"wall_time_ms", r.wall_time_ms}};
        if (r.exact_reference) row["exact_reference"] = *r.exact_reference;
        out << row.dump() << '\n';
      }
      emit(out.str(), bm_out);
    } else {
      emit(sfest::to_csv(rows), bm_out);
    }
    return 0;
  }

  if (bs->parsed()) {
    std::vector<sfest::NamedInstance> instances;
    for (const auto& path : bs_instances)
      instances.push_back({path, sfest::parse_instance_file(path)});
    for (const auto& text : bs_gens) {
      sfest::MetricInstance inst = instantiate(parse_gen_spec(text), seed);
      sfest::ensure_disjoint_pairs(inst);
      instances.push_back({text, std::move(inst)});
    }
    if (instances.empty()) {
      emit(sfest::to_csv(std::vector<sfest::SfBenchRow>{}), bs_out);
      return 0;
    }
    sfest::SfBenchParams params;
    params.epsilon = bs_eps;
    params.trials = bs_trials;
    params.seed = seed;
    params.workers = workers;
    params.oracle = oracle_cfg;
    auto rows = sfest::run_sf_bench(instances, params);
    if (format == "json") {
      std::ostringstream out;
      for (const auto& r : rows) {
        json row{{"instance", r.instance},   {"n", r.n},
                 {"k", r.k},                 {"epsilon", r.epsilon},
                 {"seed", r.seed},           {"sol_scaled", r.sol_scaled},
                 {"sol_original", r.sol_original}, {"exact_mis_sum", r.exact_mis_sum},
                 {"queries", r.queries},     {"wall_time_ms", r.wall_time_ms}};
        if (r.opt_original) row["opt_original"] = *r.opt_original;
        json levels = json::array();
        for (const auto& lv : r.levels) levels.push_back(level_to_json(lv));
        row["levels"] = levels;
        out << row.dump() << '\n';
      }
      emit(out.str(), bs_out);
    } else {
      emit(sfest::to_csv(rows), bs_out);
    }
    if (!bs_levels_out.empty()) emit(sfest::to_levels_csv(rows), bs_levels_out);
    return 0;
  }

  if (fit->parsed()) {
    std::ifstream in(fit_input);
    if (!in) throw sfest::InputError("cannot open input file: " + fit_input);
    std::string header;
    if (!std::getline(in, header)) throw sfest::InputError("empty input file");
    auto cols = split(header, ',');
    int xi = -1, yi = -1;
    for (int i = 0; i < static_cast<int>(cols.size()); ++i) {
      if (cols[i] == fit_x) xi = i;
      if (cols[i] == fit_y) yi = i;
    }
    if (xi < 0 || yi < 0)
      throw sfest::InputError("columns '" + fit_x + "'/'" + fit_y + "' not found in header");
    std::vector<std::pair<double, double>> points;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      auto fields = split(line, ',');
      if (static_cast<int>(fields.size()) <= std::max(xi, yi)) continue;
      points.emplace_back(std::stod(fields[xi]), std::stod(fields[yi]));
    }
    // average y per distinct x before fitting
    std::vector<std::pair<double, double>> agg;
    std::vector<int> counts;
    for (const auto& [x, y] : points) {
      bool found = false;
      for (std::size_t i = 0; i < agg.size(); ++i)
        if (agg[i].first == x) {
          agg[i].second += y;
          ++counts[i];
          found = true;
        }
      if (!found) {
        agg.emplace_back(x, y);
        counts.push_back(1);
      }
    }
    for (std::size_t i = 0; i < agg.size(); ++i) agg[i].second /= counts[i];
    if (!fit_xy_out.empty()) {
      std::ostringstream xy;
      for (const auto& [x, y] : agg)
        xy << sfest::detail::fmt_double(x) << ' ' << sfest::detail::fmt_double(y) << '\n';
      emit(xy.str(), fit_xy_out);
    }
    std::cout << sfest::detail::fmt_double(sfest::fit_scaling_exponent(agg)) << '\n';
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const sfest::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
