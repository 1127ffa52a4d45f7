// specc: sparse principal-subspace estimation of overlapping communities.
// Subcommands: simulate, fit, path, select-k, evaluate, reproduce.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "specc/experiments.hpp"
#include "specc/graph.hpp"
#include "specc/io_util.hpp"
#include "specc/metrics.hpp"
#include "specc/model_select.hpp"
#include "specc/occam.hpp"
#include "specc/spca.hpp"

using ordered_json = nlohmann::ordered_json;
using namespace specc;

namespace {

Algorithm parse_algorithm(const std::string& name) {
  if (name == "eig") return Algorithm::Eig;
  if (name == "cd") return Algorithm::Cd;
  throw CLI::ValidationError("--algorithm", "must be 'eig' or 'cd'");
}

Criterion parse_criterion(const std::string& name) {
  if (name == "bic") return Criterion::Bic;
  if (name == "ecv") return Criterion::Ecv;
  throw CLI::ValidationError("--criterion", "must be 'bic' or 'ecv'");
}

struct FitFlags {
  std::string init = "score";
  int starts = 5;
  double epsilon = 1e-6;
  int max_iter = 200;
  std::uint64_t seed = 1;
};

void add_fit_flags(CLI::App* cmd, FitFlags& flags) {
  cmd->add_option("--init", flags.init, "Initialization: score | random")
      ->check(CLI::IsMember({"score", "random"}));
  cmd->add_option("--starts", flags.starts, "Random starts when --init random");
  cmd->add_option("--epsilon", flags.epsilon, "Convergence tolerance");
  cmd->add_option("--max-iter", flags.max_iter, "Iteration cap per fit");
  cmd->add_option("--seed", flags.seed, "RNG seed");
}

FitConfig make_fit_config(const FitFlags& flags) {
  FitConfig cfg;
  cfg.epsilon = flags.epsilon;
  cfg.max_iter = flags.max_iter;
  cfg.seed = flags.seed;
  cfg.init = flags.init == "random" ? InitStrategy::random_multi_start(flags.starts)
                                    : InitStrategy::score();
  return cfg;
}

struct GridFlags {
  double start = 0.05;
  double stop = 0.95;
  double step = 0.05;
};

void add_grid_flags(CLI::App* cmd, GridFlags& flags) {
  cmd->add_option("--grid-start", flags.start, "First lambda of the grid");
  cmd->add_option("--grid-stop", flags.stop, "Last lambda of the grid");
  cmd->add_option("--grid-step", flags.step, "Lambda grid spacing");
}

std::vector<double> build_grid(const GridFlags& flags) {
  if (flags.step <= 0.0) throw CLI::ValidationError("--grid-step", "must be positive");
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double v = flags.start + i * flags.step;
    if (v > flags.stop + 1e-12) break;
    grid.push_back(v);
  }
  return grid;
}

SparseGraph load_graph(const std::string& path, bool lcc) {
  SparseGraph g = load_edge_list_file(path);
  return lcc ? largest_connected_component(g) : g;
}

const PathEntry& entry_at(const LambdaSelection& sel, double lambda) {
  for (const PathEntry& e : sel.path.entries)
    if (e.lambda == lambda) return e;
  throw std::logic_error("selected lambda missing from path");
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

// ---------------------------------------------------------------------------
// --config support: a flat JSON object of long-option values, injected ahead
// of the explicit command-line flags so those still win.
// ---------------------------------------------------------------------------

std::vector<std::string> inject_config(const std::vector<std::string>& args) {
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  if (config_path.empty()) return args;

  std::ifstream in(config_path);
  if (!in) throw std::runtime_error("cannot open config file: " + config_path);
  ordered_json obj = ordered_json::parse(in);
  if (!obj.is_object()) throw std::runtime_error("config file must hold a JSON object");

  std::vector<std::string> injected;
  for (const auto& [key, value] : obj.items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) injected.push_back("--" + key);
    } else if (value.is_string()) {
      injected.push_back("--" + key + "=" + value.get<std::string>());
    } else if (value.is_number() || value.is_number_integer()) {
      injected.push_back("--" + key + "=" + value.dump());
    } else {
      throw std::runtime_error("config key '" + key + "' has an unsupported value type");
    }
  }

  // Place config-derived flags right after the subcommand token.
  std::vector<std::string> out;
  bool placed = false;
  for (const std::string& a : args) {
    out.push_back(a);
    if (!placed && !a.empty() && a[0] != '-') {
      out.insert(out.end(), injected.begin(), injected.end());
      placed = true;
    }
  }
  if (!placed) throw std::runtime_error("--config requires a subcommand");
  return out;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int cmd_simulate(const ScenarioSpec& spec, const std::string& out_dir) {
  OccamParams params = build_scenario(spec);
  SparseGraph g = sample_adjacency(params, spec.seed);

  std::filesystem::create_directories(out_dir);
  std::ofstream edges(join_path(out_dir, "graph.edges"));
  write_edge_list(edges, g);
  write_membership_csv(join_path(out_dir, "truth.csv"), g.labels(), params.z);

  ordered_json report;
  report["n"] = params.n;
  report["k"] = params.k;
  report["overlap_fraction"] = spec.overlap_fraction;
  report["rho"] = spec.rho;
  report["target_degree"] = spec.target_degree;
  report["hub_probability"] = spec.hub_probability;
  report["hub_theta"] = spec.hub_theta;
  report["seed"] = spec.seed;
  report["alpha"] = params.alpha;
  report["theta"] = std::vector<double>(params.theta.data(), params.theta.data() + params.n);
  std::vector<std::vector<double>> b_rows;
  for (int r = 0; r < params.k; ++r)
    b_rows.emplace_back(params.b.row(r).begin(), params.b.row(r).end());
  report["b"] = b_rows;
  write_text_file(join_path(out_dir, "params.json"), report.dump(2) + "\n");

  DegreeSummary deg = degree_summary(g);
  std::cout << "simulated n=" << g.node_count() << " k=" << params.k
            << " edges=" << g.edge_count() << " mean_degree=" << format_double(deg.mean_degree)
            << "\nwrote " << out_dir << "/{graph.edges,truth.csv,params.json}\n";
  return 0;
}

int cmd_fit(const std::string& input, bool lcc, Algorithm alg, std::optional<int> k_opt,
            bool select_k_flag, int k_min, int k_max, std::optional<double> lambda,
            Criterion criterion, const GridFlags& grid_flags, int folds, bool folds_given,
            double clamp_eps, const FitFlags& flags, const std::string& out_dir) {
  SparseGraph g = load_graph(input, lcc);
  FitConfig cfg = make_fit_config(flags);

  ordered_json report;
  report["input"] = input;
  report["n"] = g.node_count();
  report["edges"] = g.edge_count();
  report["algorithm"] = alg == Algorithm::Eig ? "eig" : "cd";

  int k;
  if (select_k_flag) {
    int hi = k_max > 0 ? k_max : std::min(12, std::max(2, g.node_count() / 10));
    std::vector<int> k_grid;
    for (int kk = k_min; kk <= hi; ++kk) k_grid.push_back(kk);
    FoldPlan plan = make_folds(g.node_count(), folds_given ? folds : 20, cfg.seed);
    KSelection ksel = select_k(g, k_grid, build_grid(grid_flags), plan, alg, cfg);
    k = ksel.best_k;
    write_k_scores_csv(join_path(out_dir, "k_selection.csv"), ksel);
    ordered_json scores = ordered_json::array();
    for (const KScore& s : ksel.scores)
      scores.push_back({{"k", s.k},
                        {"mean_mse", s.mean_mse},
                        {"se", s.se},
                        {"best_lambda", s.best_lambda}});
    report["k_selection"] = {{"best_k", ksel.best_k}, {"folds", plan.fold_count()},
                             {"scores", scores}};
  } else if (k_opt) {
    k = *k_opt;
  } else {
    throw CLI::ValidationError("--k", "give --k or use --select-k");
  }
  report["k"] = k;

  MembershipBasis basis;
  if (lambda) {
    cfg.lambda = *lambda;
    basis = fit_membership(alg, g, k, cfg);
    report["criterion"] = "fixed";
    report["lambda"] = *lambda;
    report["bic"] = bic_score(g, basis, clamp_eps);
  } else {
    LambdaSelection sel =
        select_lambda(g, k, build_grid(grid_flags), criterion, alg, cfg, folds, clamp_eps);
    const PathEntry& e = entry_at(sel, sel.best_lambda);
    basis = e.basis;
    report["criterion"] = criterion == Criterion::Bic ? "bic" : "ecv";
    report["lambda"] = sel.best_lambda;
    report["bic"] = e.bic;
    if (e.cv_mse) report["cv_mse"] = *e.cv_mse;
  }

  report["iterations"] = basis.iterations;
  report["converged"] = basis.converged;
  report["support_size"] = support_size(basis.v);
  report["overlap_count"] = overlap_count(binarize(basis, BinarizeRule::Support));
  report["seed"] = flags.seed;

  write_membership_csv(join_path(out_dir, "membership.csv"), g.labels(), basis.v);
  write_text_file(join_path(out_dir, "fit_report.json"), report.dump(2) + "\n");

  std::cout << "fit " << report["algorithm"].get<std::string>() << " k=" << k
            << " lambda=" << format_double(report["lambda"].get<double>())
            << " support=" << report["support_size"].get<std::int64_t>()
            << " overlaps=" << report["overlap_count"].get<int>()
            << " converged=" << (basis.converged ? "yes" : "no") << "\nwrote " << out_dir
            << "/{membership.csv,fit_report.json}\n";
  return 0;
}

int cmd_path(const std::string& input, bool lcc, Algorithm alg, int k, Criterion criterion,
             const GridFlags& grid_flags, int folds, double clamp_eps, const FitFlags& flags,
             const std::string& out_dir) {
  SparseGraph g = load_graph(input, lcc);
  FitConfig cfg = make_fit_config(flags);
  LambdaSelection sel =
      select_lambda(g, k, build_grid(grid_flags), criterion, alg, cfg, folds, clamp_eps);
  write_path_scores_csv(join_path(out_dir, "path_scores.csv"), sel.path, sel.best_lambda);
  write_membership_paths_csv(join_path(out_dir, "membership_paths.csv"), g.labels(), sel.path);
  std::cout << "path over " << sel.path.entries.size() << " lambdas, selected "
            << format_double(sel.best_lambda) << " by "
            << (criterion == Criterion::Bic ? "bic" : "ecv") << "\nwrote " << out_dir
            << "/{path_scores.csv,membership_paths.csv}\n";
  return 0;
}

int cmd_select_k(const std::string& input, bool lcc, Algorithm alg, int k_min, int k_max,
                 const GridFlags& grid_flags, int folds, const FitFlags& flags,
                 const std::string& out_dir) {
  SparseGraph g = load_graph(input, lcc);
  FitConfig cfg = make_fit_config(flags);
  int hi = k_max > 0 ? k_max : std::min(12, std::max(2, g.node_count() / 10));
  std::vector<int> k_grid;
  for (int kk = k_min; kk <= hi; ++kk) k_grid.push_back(kk);
  FoldPlan plan = make_folds(g.node_count(), folds, cfg.seed);
  KSelection ksel = select_k(g, k_grid, build_grid(grid_flags), plan, alg, cfg);
  write_k_scores_csv(join_path(out_dir, "k_selection.csv"), ksel);
  std::cout << "selected k=" << ksel.best_k << " over {" << k_min << ".." << hi << "} with "
            << folds << "-fold edge CV\nwrote " << out_dir << "/k_selection.csv\n";
  return 0;
}

int cmd_evaluate(const std::string& estimate_path, const std::string& truth_path,
                 const std::string& rule_name, const std::string& out_dir) {
  MembershipTable estimate = read_membership_csv(estimate_path);
  MembershipTable truth_table = read_membership_csv(truth_path);
  Eigen::MatrixXd truth_values = align_membership(truth_table, estimate.labels);

  const BinarizeRule rule =
      rule_name == "threshold" ? BinarizeRule::ThresholdOverK : BinarizeRule::Support;
  BinaryMembership est = binarize(estimate.values, rule);
  BinaryMembership truth = binarize(truth_values, BinarizeRule::Support);

  ordered_json report;
  report["estimate"] = estimate_path;
  report["truth"] = truth_path;
  report["rule"] = rule_name;
  report["nvi"] = nvi(est, truth);
  bool truth_is_partition = true;
  for (int i = 0; i < truth.node_count(); ++i)
    if (truth.zb.row(i).sum() != 1) truth_is_partition = false;
  if (truth_is_partition)
    report["misclustering"] = misclustering(estimate.values, truth);
  else
    report["misclustering"] = nullptr;
  report["overlap_count"] = overlap_count(est);
  report["support_size"] = support_size(estimate.values);
  if (est.community_count() != truth.community_count())
    report["padded_columns"] = true;

  write_text_file(join_path(out_dir, "metrics.json"), report.dump(2) + "\n");
  std::cout << report.dump(2) << "\nwrote " << out_dir << "/metrics.json\n";
  return 0;
}

int cmd_reproduce(const std::string& name, const std::string& data_dir, int seeds, int trials,
                  std::uint64_t seed, const std::string& out_dir) {
  std::vector<CheckResult> checks;
  if (name == "fixed-point") {
    checks.push_back(fixed_point_check(5, 200, 3, seed));
  } else if (name == "theorem1") {
    checks.push_back(theorem1_check(trials, seed));
  } else if (name == "karate") {
    checks.push_back(karate_check(data_dir));
  } else if (name == "polblogs") {
    checks.push_back(polblogs_check(data_dir));
  } else if (name == "rho-sweep") {
    SweepResult sweep = rho_sweep(seeds, seed);
    checks = sweep.checks;
    std::ostringstream csv;
    csv << "algorithm,rho,overlap_fraction,mean_nvi\n";
    for (const SweepPoint& p : sweep.points)
      csv << (p.alg == Algorithm::Eig ? "eig" : "cd") << ',' << format_double(p.rho) << ','
          << format_double(p.overlap_fraction) << ',' << format_double(p.mean_nvi) << "\n";
    write_text_file(join_path(out_dir, "rho_sweep.csv"), csv.str());
    // Trend note: NVI should not improve as mixing increases.
    for (Algorithm alg : {Algorithm::Eig, Algorithm::Cd}) {
      double prev = 2.0;
      bool monotone = true;
      for (const SweepPoint& p : sweep.points)
        if (p.alg == alg) {
          if (p.mean_nvi > prev + 1e-9) monotone = false;
          prev = p.mean_nvi;
        }
      std::cout << "trend " << (alg == Algorithm::Eig ? "eig" : "cd") << ": mean NVI "
                << (monotone ? "non-increasing" : "not monotone") << " in rho\n";
    }
  } else {
    throw CLI::ValidationError(
        "name", "must be one of karate, polblogs, fixed-point, theorem1, rho-sweep");
  }

  bool all_pass = true;
  for (const CheckResult& c : checks) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
    all_pass = all_pass && c.pass;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"specc: sparse principal-subspace estimation of overlapping communities"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  // simulate --------------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "Draw a synthetic network from the generative model");
  std::string sim_out = "out/simulate", sim_scenario, sim_config;
  ScenarioSpec spec;
  sim->add_option("--config", sim_config, "JSON config merged under explicit flags");
  sim->add_option("--scenario", sim_scenario, "Scenario file (key=value or JSON)");
  auto* opt_n = sim->add_option("--n", spec.n, "Nodes");
  auto* opt_k = sim->add_option("--k", spec.k, "Communities");
  auto* opt_ov = sim->add_option("--overlap", spec.overlap_fraction, "Overlapping-node fraction");
  auto* opt_rho = sim->add_option("--rho", spec.rho, "Between-community mixing");
  auto* opt_deg = sim->add_option("--degree", spec.target_degree, "Expected average degree");
  auto* opt_hp = sim->add_option("--hub-prob", spec.hub_probability, "Hub probability");
  auto* opt_ht = sim->add_option("--hub-theta", spec.hub_theta, "Hub degree multiplier");
  auto* opt_seed = sim->add_option("--seed", spec.seed, "RNG seed");
  sim->add_option("--out-dir,-o", sim_out, "Output directory");

  // fit ---------------------------------------------------------------------
  auto* fit = app.add_subcommand("fit", "Fit sparse memberships to a network");
  std::string fit_input, fit_alg = "eig", fit_criterion = "bic", fit_out = "out/fit", fit_config;
  bool fit_lcc = false, fit_select_k = false;
  int fit_k = 0, fit_kmin = 2, fit_kmax = 0, fit_folds = 5;
  double fit_clamp = kDefaultClampEps;
  std::optional<double> fit_lambda;
  double fit_lambda_raw = 0.0;
  FitFlags fit_flags;
  GridFlags fit_grid;
  fit->add_option("--config", fit_config, "JSON config merged under explicit flags");
  fit->add_option("--input,-i", fit_input, "Edge-list file")->required();
  fit->add_flag("--lcc", fit_lcc, "Restrict to the largest connected component");
  fit->add_option("--algorithm,-a", fit_alg, "eig | cd")->check(CLI::IsMember({"eig", "cd"}));
  auto* fit_k_opt = fit->add_option("--k,-k", fit_k, "Number of communities");
  auto* fit_lambda_opt = fit->add_option("--lambda", fit_lambda_raw, "Fixed threshold (skips selection)");
  fit->add_option("--criterion", fit_criterion, "bic | ecv")->check(CLI::IsMember({"bic", "ecv"}));
  fit->add_flag("--select-k", fit_select_k, "Choose K by edge cross-validation first");
  fit->add_option("--k-min", fit_kmin, "Smallest K for --select-k");
  fit->add_option("--k-max", fit_kmax, "Largest K for --select-k (default min(12, n/10))");
  auto* fit_folds_opt = fit->add_option("--folds", fit_folds, "CV folds (5 for lambda, 20 for K)");
  fit->add_option("--clamp-eps", fit_clamp, "Probability clamp for the likelihood");
  add_grid_flags(fit, fit_grid);
  add_fit_flags(fit, fit_flags);
  fit->add_option("--out-dir,-o", fit_out, "Output directory");

  // path ----------------------------------------------------------------------
  auto* path = app.add_subcommand("path", "Fit the whole lambda path and export it");
  std::string path_input, path_alg = "eig", path_criterion = "bic", path_out = "out/path",
              path_config;
  bool path_lcc = false;
  int path_k = 2, path_folds = 5;
  double path_clamp = kDefaultClampEps;
  FitFlags path_flags;
  GridFlags path_grid;
  path->add_option("--config", path_config, "JSON config merged under explicit flags");
  path->add_option("--input,-i", path_input, "Edge-list file")->required();
  path->add_flag("--lcc", path_lcc, "Restrict to the largest connected component");
  path->add_option("--algorithm,-a", path_alg, "eig | cd")->check(CLI::IsMember({"eig", "cd"}));
  path->add_option("--k,-k", path_k, "Number of communities")->required();
  path->add_option("--criterion", path_criterion, "bic | ecv (flags the selected row)")
      ->check(CLI::IsMember({"bic", "ecv"}));
  path->add_option("--folds", path_folds, "CV folds for ecv");
  path->add_option("--clamp-eps", path_clamp, "Probability clamp for the likelihood");
  add_grid_flags(path, path_grid);
  add_fit_flags(path, path_flags);
  path->add_option("--out-dir,-o", path_out, "Output directory");

  // select-k ------------------------------------------------------------------
  auto* selk = app.add_subcommand("select-k", "Choose the number of communities by edge CV");
  std::string selk_input, selk_alg = "eig", selk_out = "out/select_k", selk_config;
  bool selk_lcc = false;
  int selk_kmin = 2, selk_kmax = 0, selk_folds = 20;
  FitFlags selk_flags;
  GridFlags selk_grid;
  selk->add_option("--config", selk_config, "JSON config merged under explicit flags");
  selk->add_option("--input,-i", selk_input, "Edge-list file")->required();
  selk->add_flag("--lcc", selk_lcc, "Restrict to the largest connected component");
  selk->add_option("--algorithm,-a", selk_alg, "eig | cd")->check(CLI::IsMember({"eig", "cd"}));
  selk->add_option("--k-min", selk_kmin, "Smallest K");
  selk->add_option("--k-max", selk_kmax, "Largest K (default min(12, n/10))");
  selk->add_option("--folds", selk_folds, "CV folds");
  add_grid_flags(selk, selk_grid);
  add_fit_flags(selk, selk_flags);
  selk->add_option("--out-dir,-o", selk_out, "Output directory");

  // evaluate --------------------------------------------------------------------
  auto* eval = app.add_subcommand("evaluate", "Score an estimated membership against a truth CSV");
  std::string eval_estimate, eval_truth, eval_rule = "support", eval_out = "out/evaluate",
              eval_config;
  eval->add_option("--config", eval_config, "JSON config merged under explicit flags");
  eval->add_option("--estimate", eval_estimate, "Estimated membership CSV")->required();
  eval->add_option("--truth", eval_truth, "Ground-truth membership CSV")->required();
  eval->add_option("--rule", eval_rule, "Binarization for the estimate: support | threshold")
      ->check(CLI::IsMember({"support", "threshold"}));
  eval->add_option("--out-dir,-o", eval_out, "Output directory");

  // reproduce ---------------------------------------------------------------------
  auto* rep = app.add_subcommand("reproduce", "Run a named reproduction experiment");
  std::string rep_name, rep_data = "data", rep_out = "out/reproduce", rep_config;
  int rep_seeds = 20, rep_trials = 50;
  std::uint64_t rep_seed = 1;
  rep->add_option("--config", rep_config, "JSON config merged under explicit flags");
  rep->add_option("name", rep_name,
                  "karate | polblogs | fixed-point | theorem1 | rho-sweep")
      ->required();
  rep->add_option("--data-dir", rep_data, "Fixture directory");
  rep->add_option("--seeds", rep_seeds, "Monte Carlo draws for rho-sweep");
  rep->add_option("--trials", rep_trials, "Trials for theorem1");
  rep->add_option("--seed", rep_seed, "Base RNG seed");
  rep->add_option("--out-dir,-o", rep_out, "Output directory");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = inject_config(args);
    std::vector<const char*> cargs{argv[0]};
    for (const std::string& a : args) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());

    if (sim->parsed()) {
      ScenarioSpec merged = spec;
      if (!sim_scenario.empty()) {
        merged = scenario_from_file(sim_scenario);
        if (opt_n->count()) merged.n = spec.n;
        if (opt_k->count()) merged.k = spec.k;
        if (opt_ov->count()) merged.overlap_fraction = spec.overlap_fraction;
        if (opt_rho->count()) merged.rho = spec.rho;
        if (opt_deg->count()) merged.target_degree = spec.target_degree;
        if (opt_hp->count()) merged.hub_probability = spec.hub_probability;
        if (opt_ht->count()) merged.hub_theta = spec.hub_theta;
        if (opt_seed->count()) merged.seed = spec.seed;
      }
      return cmd_simulate(merged, sim_out);
    }
    if (fit->parsed()) {
      if (fit_lambda_opt->count()) fit_lambda = fit_lambda_raw;
      return cmd_fit(fit_input, fit_lcc, parse_algorithm(fit_alg),
                     fit_k_opt->count() ? std::optional<int>(fit_k) : std::nullopt, fit_select_k,
                     fit_kmin, fit_kmax, fit_lambda, parse_criterion(fit_criterion), fit_grid,
                     fit_folds, fit_folds_opt->count() > 0, fit_clamp, fit_flags, fit_out);
    }
    if (path->parsed())
      return cmd_path(path_input, path_lcc, parse_algorithm(path_alg), path_k,
                      parse_criterion(path_criterion), path_grid, path_folds, path_clamp,
                      path_flags, path_out);
    if (selk->parsed())
      return cmd_select_k(selk_input, selk_lcc, parse_algorithm(selk_alg), selk_kmin, selk_kmax,
                          selk_grid, selk_folds, selk_flags, selk_out);
    if (eval->parsed()) return cmd_evaluate(eval_estimate, eval_truth, eval_rule, eval_out);
    if (rep->parsed())
      return cmd_reproduce(rep_name, rep_data, rep_seeds, rep_trials, rep_seed, rep_out);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
