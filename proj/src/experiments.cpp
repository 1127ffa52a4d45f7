#include "specc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "specc/graph.hpp"
#include "specc/io_util.hpp"
#include "specc/metrics.hpp"
#include "specc/model_select.hpp"
#include "specc/occam.hpp"
#include "specc/parallel.hpp"

namespace specc {

namespace {

std::string fmt(double v) { return format_double(v); }

// Random pure-row instance: non-negative memberships with at least one pure
// row per community, mixing B = (1 - rho) I + rho 11', degree corrections in
// [0.5, 1.5], and alpha scaled so the largest edge probability is 0.5.
OccamParams random_pure_row_instance(int n, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.2, 1.0);
  std::uniform_int_distribution<int> community(0, k - 1);

  OccamParams params;
  params.n = n;
  params.k = k;
  params.z = Eigen::MatrixXd::Zero(n, k);
  for (int i = 0; i < n; ++i) {
    if (i < k) {
      params.z(i, i) = 1.0;  // guaranteed pure rows
      continue;
    }
    const double roll = unif(rng);
    if (roll < 0.6) {
      params.z(i, community(rng)) = 1.0;
    } else {
      const int size = roll < 0.9 ? 2 : std::min(3, k);
      std::vector<int> cols(k);
      std::iota(cols.begin(), cols.end(), 0);
      std::shuffle(cols.begin(), cols.end(), rng);
      for (int c = 0; c < size; ++c) params.z(i, cols[c]) = weight(rng);
      params.z.row(i) /= params.z.row(i).norm();
    }
  }

  const double rho = 0.1 + 0.4 * unif(rng);
  params.b = (1.0 - rho) * Eigen::MatrixXd::Identity(k, k) + rho * Eigen::MatrixXd::Ones(k, k);

  params.theta.resize(n);
  for (int i = 0; i < n; ++i) params.theta[i] = 0.5 + unif(rng);
  params.theta *= static_cast<double>(n) / params.theta.sum();

  params.alpha = 1.0;
  const Eigen::MatrixXd w = params.theta.asDiagonal() * params.z;
  Eigen::MatrixXd p = w * params.b * w.transpose();
  p.diagonal().setZero();
  params.alpha = 0.5 / p.maxCoeff();
  return params;
}

Eigen::MatrixXd column_normalized(Eigen::MatrixXd v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) v.col(c) /= v.col(c).norm();
  return v;
}

void sort_by_column_mass(Eigen::MatrixXd& v) {
  std::vector<int> order(v.cols());
  std::iota(order.begin(), order.end(), 0);
  Eigen::VectorXd mass = v.cwiseAbs().colwise().sum();
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return mass[a] > mass[b]; });
  Eigen::MatrixXd sorted(v.rows(), v.cols());
  for (Eigen::Index c = 0; c < v.cols(); ++c) sorted.col(c) = v.col(order[c]);
  v = std::move(sorted);
}

}  // namespace

CheckResult fixed_point_check(int instances, int n, int k, std::uint64_t seed) {
  CheckResult res;
  res.name = "fixed-point";
  double worst = 0.0;
  for (int inst = 0; inst < instances; ++inst) {
    OccamParams params = random_pure_row_instance(n, k, seed + inst);
    const Eigen::MatrixXd basis_v = params.theta.asDiagonal() * params.z;
    Eigen::MatrixXd p = params.alpha * (basis_v * params.b * basis_v.transpose());

    // Fixed-point margin: smallest support entry relative to its row max.
    double v_star = 1.0;
    for (int i = 0; i < n; ++i) {
      const double row_max = basis_v.row(i).maxCoeff();
      for (int c = 0; c < k; ++c)
        if (basis_v(i, c) > 0.0) v_star = std::min(v_star, basis_v(i, c) / row_max);
    }

    Eigen::MatrixXd start = column_normalized(basis_v);
    sort_by_column_mass(start);

    FitConfig cfg;
    cfg.lambda = 0.5 * v_star;
    cfg.max_iter = 1;
    cfg.init = InitStrategy::provided(start);
    MembershipBasis out = spca_eig_fit(p, k, cfg);
    worst = std::max(worst, (out.v - start).cwiseAbs().maxCoeff());
  }
  res.pass = worst <= 1e-10;
  res.detail = "max deviation " + fmt(worst) + " over " + std::to_string(instances) +
               " instances (tolerance 1e-10)";
  return res;
}

CheckResult theorem1_check(int trials, std::uint64_t seed) {
  CheckResult res;
  res.name = "theorem1";
  std::vector<int> exact(trials, 0);
  parallel_for(trials, [&](int t) {
    PlantedPartition pp = planted_partition(900, 3, 0.9, 0.05, {300, 300, 300}, seed + t);
    FitConfig cfg;
    cfg.lambda = 0.6;
    cfg.max_iter = 1;
    cfg.init = InitStrategy::provided(pp.z_true);
    MembershipBasis out = spca_cd_fit(pp.graph, 3, cfg);
    exact[t] = (out.v - pp.z_true).cwiseAbs().maxCoeff() <= 1e-12 ? 1 : 0;
  });
  const int hits = std::accumulate(exact.begin(), exact.end(), 0);
  res.pass = hits >= trials - 1;
  res.detail = std::to_string(hits) + "/" + std::to_string(trials) +
               " trials returned the truth exactly (need >= " + std::to_string(trials - 1) + ")";
  return res;
}

CheckResult karate_check(const std::string& data_dir) {
  CheckResult res;
  res.name = "karate";
  const std::string edges = data_dir + "/karate.edges";
  const std::string factions = data_dir + "/karate_factions.csv";
  if (!std::filesystem::exists(edges) || !std::filesystem::exists(factions)) {
    res.detail = "fixture missing under " + data_dir;
    return res;
  }

  SparseGraph g = load_edge_list_file(edges);
  FitConfig cfg;
  cfg.seed = 1;
  LambdaSelection sel = select_lambda(g, 2, default_lambda_grid(), Criterion::Bic, Algorithm::Eig,
                                      cfg);
  const PathEntry* best = nullptr;
  for (const PathEntry& e : sel.path.entries)
    if (e.lambda == sel.best_lambda) best = &e;

  BinaryMembership estimate = binarize(best->basis, BinarizeRule::Support);
  MembershipTable truth_table = read_membership_csv(factions);
  BinaryMembership truth = binarize(align_membership(truth_table, g.labels()),
                                    BinarizeRule::Support);
  const int overlaps = overlap_count(estimate);
  const double score = nvi(estimate, truth);
  res.pass = overlaps == 0 && score >= 1.0 - 1e-12;
  res.detail = "lambda " + fmt(sel.best_lambda) + ", overlap_count " + std::to_string(overlaps) +
               " (need 0), NVI " + fmt(score) + " (need 1)";
  return res;
}

CheckResult polblogs_check(const std::string& data_dir) {
  CheckResult res;
  res.name = "polblogs";
  const std::string edges = data_dir + "/polblogs.edges";
  const std::string labels = data_dir + "/polblogs_labels.csv";
  if (!std::filesystem::exists(edges) || !std::filesystem::exists(labels)) {
    res.detail = "fixture missing: expected " + edges + " and " + labels +
                 " (see data/polblogs/README.md for how to obtain the public dataset)";
    return res;
  }

  SparseGraph lcc = largest_connected_component(load_edge_list_file(edges));
  FitConfig cfg;
  cfg.seed = 1;
  LambdaSelection sel = select_lambda(lcc, 2, default_lambda_grid(), Criterion::Bic, Algorithm::Cd,
                                      cfg);
  const PathEntry* best = nullptr;
  for (const PathEntry& e : sel.path.entries)
    if (e.lambda == sel.best_lambda) best = &e;

  MembershipTable truth_table = read_membership_csv(labels);
  BinaryMembership truth = binarize(align_membership(truth_table, lcc.labels()),
                                    BinarizeRule::Support);
  const int overlaps = overlap_count(binarize(best->basis, BinarizeRule::Support));
  const int wrong = misclustering(best->basis, truth);
  res.pass = lcc.node_count() == 1222 && overlaps <= 60 && wrong <= 80;
  res.detail = "component " + std::to_string(lcc.node_count()) + " nodes (need 1222), lambda " +
               fmt(sel.best_lambda) + ", overlap_count " + std::to_string(overlaps) +
               " (need <= 60, reference 29), misclustered " + std::to_string(wrong) +
               " (need <= 80, reference 52)";
  return res;
}

namespace {

SweepResult sweep(const std::vector<double>& rhos, const std::vector<double>& overlaps, int seeds,
                  std::uint64_t seed, double required_nvi, bool require_all_points) {
  SweepResult out;
  for (Algorithm alg : {Algorithm::Eig, Algorithm::Cd}) {
    for (double overlap : overlaps) {
      for (double rho : rhos) {
        std::vector<double> scores(seeds, 0.0);
        parallel_for(seeds, [&](int s) {
          ScenarioSpec spec;
          spec.n = 500;
          spec.k = 3;
          spec.target_degree = 50.0;
          spec.rho = rho;
          spec.overlap_fraction = overlap;
          spec.seed = seed + s;
          OccamParams params = build_scenario(spec);
          SparseGraph g = sample_adjacency(params, spec.seed);

          FitConfig cfg;
          cfg.seed = spec.seed;
          LambdaSelection sel =
              select_lambda(g, 3, default_lambda_grid(), Criterion::Bic, alg, cfg);
          const PathEntry* best = nullptr;
          for (const PathEntry& e : sel.path.entries)
            if (e.lambda == sel.best_lambda) best = &e;
          scores[s] = nvi(binarize(best->basis, BinarizeRule::Support),
                          binarize(params.z, BinarizeRule::Support));
        });
        SweepPoint point;
        point.alg = alg;
        point.rho = rho;
        point.overlap_fraction = overlap;
        point.mean_nvi = std::accumulate(scores.begin(), scores.end(), 0.0) / seeds;
        out.points.push_back(point);
      }
    }
  }

  for (const SweepPoint& point : out.points) {
    if (!require_all_points && point.rho != 0.0) continue;
    CheckResult check;
    std::ostringstream name;
    name << (point.alg == Algorithm::Eig ? "spca-eig" : "spca-cd") << " rho=" << point.rho
         << " overlap=" << point.overlap_fraction;
    check.name = name.str();
    check.pass = point.mean_nvi >= required_nvi;
    check.detail = "mean NVI " + fmt(point.mean_nvi) + " over " + std::to_string(seeds) +
                   " seeds (need >= " + fmt(required_nvi) + ")";
    out.checks.push_back(check);
  }
  return out;
}

}  // namespace

SweepResult recovery_check(int seeds, std::uint64_t seed) {
  return sweep({0.0}, {0.0, 0.1}, seeds, seed, 0.95, true);
}

SweepResult rho_sweep(int seeds, std::uint64_t seed) {
  return sweep({0.0, 0.1, 0.2}, {0.1}, seeds, seed, 0.95, false);
}

}  // namespace specc
