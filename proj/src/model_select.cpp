#include "specc/model_select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "specc/linalg.hpp"
#include "specc/metrics.hpp"
#include "specc/parallel.hpp"

namespace specc {

std::vector<std::pair<int, int>> FoldPlan::fold_pairs(int fold) const {
  std::vector<std::pair<int, int>> pairs;
  std::int64_t rank = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j, ++rank)
      if (assignment_[rank] == fold) pairs.emplace_back(i, j);
  return pairs;
}

std::int64_t FoldPlan::fold_size(int fold) const {
  return std::count(assignment_.begin(), assignment_.end(), fold);
}

FoldPlan make_folds(int n, int fold_count, std::uint64_t seed) {
  const std::int64_t pairs = FoldPlan::pair_count(n);
  if (fold_count < 2) throw std::invalid_argument("make_folds: need at least 2 folds");
  if (fold_count > pairs) throw std::invalid_argument("make_folds: more folds than node pairs");
  std::vector<int> assignment(pairs);
  for (std::int64_t i = 0; i < pairs; ++i) assignment[i] = static_cast<int>(i % fold_count);
  std::mt19937_64 rng(seed);
  std::shuffle(assignment.begin(), assignment.end(), rng);
  return FoldPlan(n, fold_count, seed, std::move(assignment));
}

namespace {

Eigen::MatrixXd project_onto(const Eigen::MatrixXd& q, const Eigen::MatrixXd& aq) {
  Eigen::MatrixXd s = q.transpose() * aq;
  return q * s * q.transpose();
}

}  // namespace

Eigen::MatrixXd project_p(const SparseGraph& a, const Eigen::MatrixXd& v) {
  QrResult qr = thin_qr(v);
  return project_onto(qr.q, spmm(a, qr.q));
}

Eigen::MatrixXd project_p(const Eigen::MatrixXd& a, const Eigen::MatrixXd& v) {
  if (a.rows() != a.cols() || a.rows() != v.rows())
    throw std::invalid_argument("project_p: dimension mismatch");
  QrResult qr = thin_qr(v);
  return project_onto(qr.q, a * qr.q);
}

double log_likelihood(const SparseGraph& g, const Eigen::MatrixXd& p_hat, double clamp_eps) {
  if (clamp_eps <= 0.0 || clamp_eps >= 0.5)
    throw std::invalid_argument("log_likelihood: clamp_eps must lie in (0, 0.5)");
  const int n = g.node_count();
  if (p_hat.rows() != n || p_hat.cols() != n)
    throw std::invalid_argument("log_likelihood: matrix shape mismatch");

  double ll = 0.0;
  for (int i = 0; i < n; ++i) {
    auto nb = g.neighbors(i);
    auto it = std::lower_bound(nb.begin(), nb.end(), i + 1);
    for (int j = i + 1; j < n; ++j) {
      const bool edge = it != nb.end() && *it == j;
      if (edge) ++it;
      const double p = std::clamp(p_hat(i, j), clamp_eps, 1.0 - clamp_eps);
      ll += edge ? std::log(p) : std::log1p(-p);
    }
  }
  return ll;
}

double bic_score(const SparseGraph& g, const MembershipBasis& basis, double clamp_eps) {
  const double ll = log_likelihood(g, project_p(g, basis.v), clamp_eps);
  const double pairs = static_cast<double>(FoldPlan::pair_count(g.node_count()));
  return -2.0 * ll + static_cast<double>(support_size(basis.v)) * std::log(pairs);
}

Eigen::MatrixXd complete_matrix(const SparseGraph& g,
                                const std::vector<std::pair<int, int>>& heldout, int k) {
  const int n = g.node_count();
  const std::int64_t total = FoldPlan::pair_count(n);
  const double p_obs = 1.0 - static_cast<double>(heldout.size()) / static_cast<double>(total);
  if (p_obs <= 0.0) throw std::invalid_argument("complete_matrix: no observed pairs");

  Eigen::MatrixXd star = Eigen::MatrixXd::Zero(n, n);
  const double w = 1.0 / p_obs;
  for (int i = 0; i < n; ++i)
    for (int j : g.neighbors(i)) star(i, j) = w;
  for (auto [i, j] : heldout) {
    star(i, j) = 0.0;
    star(j, i) = 0.0;
  }

  Eigen::MatrixXd m = truncated_svd(star, k);
  m = 0.5 * (m + m.transpose());
  return m.cwiseMax(0.0).cwiseMin(1.0);
}

Eigen::MatrixXd complete_matrix(const SparseGraph& g, const FoldPlan& plan, int fold, int k) {
  return complete_matrix(g, plan.fold_pairs(fold), k);
}

namespace {

double heldout_mse(const SparseGraph& g, const Eigen::MatrixXd& p_hat,
                   const std::vector<std::pair<int, int>>& pairs) {
  double sum = 0.0;
  for (auto [i, j] : pairs) {
    const double a = g.has_edge(i, j) ? 1.0 : 0.0;
    const double d = a - p_hat(i, j);
    sum += d * d;
  }
  return sum / static_cast<double>(pairs.size());
}

// A collapsed basis (near-identical columns) is a fixed point of the fits at
// every lambda, so warm-starting from one would poison the rest of the path.
bool warm_start_ok(const Eigen::MatrixXd& v) {
  try {
    QrResult qr = thin_qr(v);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(qr.r);
    const double smin = svd.singularValues().minCoeff();
    return smin > 0.0 && svd.singularValues().maxCoeff() / smin < 1e4;
  } catch (const std::exception&) {
    return false;
  }
}

// Held-out MSE for every (fold, lambda) combination. Completions are done
// once per fold; within a fold the lambda chain is warm-started ascending,
// and folds run concurrently. A failed fit leaves NaN in its slot.
Eigen::MatrixXd cv_mse_table(const SparseGraph& g, int k, const std::vector<double>& grid,
                             const FoldPlan& plan, Algorithm alg, const FitConfig& cfg,
                             std::vector<std::string>* fold_errors) {
  const int folds = plan.fold_count();
  const int nl = static_cast<int>(grid.size());
  Eigen::MatrixXd mse = Eigen::MatrixXd::Constant(folds, nl, std::numeric_limits<double>::quiet_NaN());
  if (fold_errors) fold_errors->assign(folds, "");

  parallel_for(folds, [&](int fold) {
    std::vector<std::pair<int, int>> pairs = plan.fold_pairs(fold);
    Eigen::MatrixXd completed = complete_matrix(g, pairs, k);
    std::optional<Eigen::MatrixXd> warm;
    for (int li = 0; li < nl; ++li) {
      FitConfig local = cfg;
      local.lambda = grid[li];
      if (warm) local.init = InitStrategy::provided(*warm);
      try {
        MembershipBasis basis = fit_membership(alg, completed, k, local);
        mse(fold, li) = heldout_mse(g, project_p(completed, basis.v), pairs);
        warm.reset();
        if (warm_start_ok(basis.v)) warm = basis.v;
      } catch (const std::exception& e) {
        warm.reset();
        if (fold_errors && (*fold_errors)[fold].empty()) (*fold_errors)[fold] = e.what();
      }
    }
  });
  return mse;
}

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("lambda grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0 || grid[i] >= 1.0)
      throw std::invalid_argument("lambda grid values must lie in [0, 1)");
    if (i > 0 && grid[i] <= grid[i - 1])
      throw std::invalid_argument("lambda grid must be strictly increasing");
  }
}

}  // namespace

double ecv_score(const SparseGraph& g, int k, double lambda, const FoldPlan& plan, Algorithm alg,
                 const FitConfig& cfg) {
  std::vector<std::string> fold_errors;
  Eigen::MatrixXd mse = cv_mse_table(g, k, {lambda}, plan, alg, cfg, &fold_errors);
  for (int fold = 0; fold < plan.fold_count(); ++fold)
    if (std::isnan(mse(fold, 0)))
      throw std::runtime_error("ecv_score: fold " + std::to_string(fold) +
                               " failed: " + fold_errors[fold]);
  return mse.col(0).mean();
}

LambdaSelection select_lambda(const SparseGraph& g, int k, const std::vector<double>& grid,
                              Criterion criterion, Algorithm alg, const FitConfig& cfg,
                              int cv_folds, double clamp_eps) {
  check_grid(grid);

  Eigen::MatrixXd cv;
  if (criterion == Criterion::Ecv) {
    FoldPlan plan = make_folds(g.node_count(), cv_folds, cfg.seed);
    cv = cv_mse_table(g, k, grid, plan, alg, cfg, nullptr);
  }

  LambdaSelection out;
  LambdaPath& path = out.path;
  std::optional<Eigen::MatrixXd> warm;
  std::string last_error = "no lambda value could be fit";
  std::vector<int> grid_index;  // grid position of each path entry

  for (std::size_t li = 0; li < grid.size(); ++li) {
    FitConfig local = cfg;
    local.lambda = grid[li];
    if (warm) local.init = InitStrategy::provided(*warm);
    try {
      PathEntry entry;
      entry.lambda = grid[li];
      entry.basis = fit_membership(alg, g, k, local);
      entry.bic = bic_score(g, entry.basis, clamp_eps);
      entry.support_size = support_size(entry.basis.v);
      entry.overlap_count = overlap_count(binarize(entry.basis, BinarizeRule::Support));
      if (criterion == Criterion::Ecv) {
        const auto col = cv.col(li);
        double sum = 0.0;
        int got = 0;
        for (int f = 0; f < col.size(); ++f)
          if (!std::isnan(col[f])) {
            sum += col[f];
            ++got;
          }
        if (got == col.size()) entry.cv_mse = sum / got;
      }
      warm.reset();
      if (warm_start_ok(entry.basis.v)) warm = entry.basis.v;
      path.entries.push_back(std::move(entry));
      grid_index.push_back(static_cast<int>(li));
    } catch (const std::exception& e) {
      last_error = e.what();
      warm.reset();
    }
  }
  if (path.entries.empty()) throw std::runtime_error("select_lambda: " + last_error);

  int best = -1;
  for (std::size_t e = 0; e < path.entries.size(); ++e) {
    const PathEntry& entry = path.entries[e];
    if (criterion == Criterion::Ecv && !entry.cv_mse) continue;
    const double score = criterion == Criterion::Bic ? entry.bic : *entry.cv_mse;
    if (best == -1 ||
        score <= (criterion == Criterion::Bic ? path.entries[best].bic
                                              : *path.entries[best].cv_mse))
      best = static_cast<int>(e);
  }
  if (best == -1) throw std::runtime_error("select_lambda: no lambda has a complete CV score");
  out.best_lambda = path.entries[best].lambda;
  return out;
}

KSelection select_k(const SparseGraph& g, const std::vector<int>& k_grid,
                    const std::vector<double>& lambda_grid, const FoldPlan& plan, Algorithm alg,
                    const FitConfig& cfg) {
  if (k_grid.empty()) throw std::invalid_argument("select_k: empty K grid");
  check_grid(lambda_grid);
  for (int k : k_grid)
    if (k < 1 || k >= g.node_count())
      throw std::invalid_argument("select_k: K values must satisfy 1 <= K < n");

  KSelection out;
  out.scores.resize(k_grid.size());
  const int nl = static_cast<int>(lambda_grid.size());

  for (std::size_t ki = 0; ki < k_grid.size(); ++ki) {
    const int k = k_grid[ki];
    Eigen::MatrixXd mse = cv_mse_table(g, k, lambda_grid, plan, alg, cfg, nullptr);

    int best_li = -1;
    double best_mean = 0.0;
    for (int li = 0; li < nl; ++li) {
      if (mse.col(li).hasNaN()) continue;
      const double mean = mse.col(li).mean();
      if (best_li == -1 || mean <= best_mean) {
        best_li = li;
        best_mean = mean;
      }
    }
    if (best_li == -1)
      throw std::runtime_error("select_k: every lambda failed for K=" + std::to_string(k));

    KScore score;
    score.k = k;
    score.mean_mse = best_mean;
    score.best_lambda = lambda_grid[best_li];
    const int folds = plan.fold_count();
    double var = 0.0;
    for (int f = 0; f < folds; ++f) {
      const double d = mse(f, best_li) - best_mean;
      var += d * d;
    }
    var /= folds > 1 ? folds - 1 : 1;
    score.se = std::sqrt(var / folds);
    out.scores[ki] = score;
  }

  int best = 0;
  for (std::size_t ki = 1; ki < k_grid.size(); ++ki)
    if (out.scores[ki].mean_mse < out.scores[best].mean_mse) best = static_cast<int>(ki);
  out.best_k = out.scores[best].k;
  return out;
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 19; ++i) grid.push_back(0.05 * i);
  return grid;
}

}  // namespace specc
