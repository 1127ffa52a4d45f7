#ifndef SPECC_MODEL_SELECT_HPP
#define SPECC_MODEL_SELECT_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "specc/graph.hpp"
#include "specc/spca.hpp"

namespace specc {

constexpr double kDefaultClampEps = 1e-6;

struct PathEntry {
  double lambda = 0.0;
  MembershipBasis basis;
  double bic = 0.0;
  std::optional<double> cv_mse;
  std::int64_t support_size = 0;
  int overlap_count = 0;
};

struct LambdaPath {
  std::vector<PathEntry> entries;
};

// Balanced random partition of the n(n-1)/2 unordered node pairs into
// fold_count folds; fold sizes differ by at most one.
class FoldPlan {
public:
  FoldPlan() = default;
  FoldPlan(int n, int fold_count, std::uint64_t seed, std::vector<int> assignment)
      : n_(n), fold_count_(fold_count), seed_(seed), assignment_(std::move(assignment)) {}

  static std::int64_t pair_count(int n) { return static_cast<std::int64_t>(n) * (n - 1) / 2; }
  std::int64_t pair_rank(int i, int j) const {  // requires i < j
    return static_cast<std::int64_t>(i) * (2 * n_ - i - 1) / 2 + (j - i - 1);
  }

  int n() const { return n_; }
  int fold_count() const { return fold_count_; }
  std::uint64_t seed() const { return seed_; }
  int fold_of(int i, int j) const {
    return assignment_[pair_rank(std::min(i, j), std::max(i, j))];
  }
  std::vector<std::pair<int, int>> fold_pairs(int fold) const;
  std::int64_t fold_size(int fold) const;

private:
  int n_ = 0;
  int fold_count_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<int> assignment_;
};

FoldPlan make_folds(int n, int fold_count, std::uint64_t seed);

// Least-squares projection of A onto the subspace spanned by v:
// P_hat = Q (Q'AQ) Q' with Q from the thin QR of v.
Eigen::MatrixXd project_p(const SparseGraph& a, const Eigen::MatrixXd& v);
Eigen::MatrixXd project_p(const Eigen::MatrixXd& a, const Eigen::MatrixXd& v);

// Bernoulli log-likelihood of the graph under p_hat, clamped entrywise to
// [clamp_eps, 1 - clamp_eps], summed over the upper triangle.
double log_likelihood(const SparseGraph& g, const Eigen::MatrixXd& p_hat,
                      double clamp_eps = kDefaultClampEps);

// -2 log-likelihood of the projection estimate plus ||V||_0 log(n(n-1)/2).
double bic_score(const SparseGraph& g, const MembershipBasis& basis,
                 double clamp_eps = kDefaultClampEps);

// Inverse-probability-weighted adjacency with held-out pairs and diagonal
// zeroed, completed by rank-k truncated SVD and clipped to [0, 1].
Eigen::MatrixXd complete_matrix(const SparseGraph& g,
                                const std::vector<std::pair<int, int>>& heldout, int k);
Eigen::MatrixXd complete_matrix(const SparseGraph& g, const FoldPlan& plan, int fold, int k);

// Mean held-out squared error over folds: each fold fits on the completed
// matrix and scores (A_ij - P_hat_ij)^2 on its held-out pairs.
double ecv_score(const SparseGraph& g, int k, double lambda, const FoldPlan& plan, Algorithm alg,
                 const FitConfig& cfg);

enum class Criterion { Bic, Ecv };

struct LambdaSelection {
  double best_lambda = 0.0;
  LambdaPath path;
};

// Fits every grid value ascending (warm-started from the previous basis),
// scores by the criterion, and returns the argmin with the full path. Ties
// go to the larger (sparser) lambda. Grid values that fail to fit are
// skipped; throws only when every value fails.
LambdaSelection select_lambda(const SparseGraph& g, int k, const std::vector<double>& grid,
                              Criterion criterion, Algorithm alg, const FitConfig& cfg,
                              int cv_folds = 5, double clamp_eps = kDefaultClampEps);

struct KScore {
  int k = 0;
  double mean_mse = 0.0;
  double se = 0.0;  // across-fold standard error at the best lambda
  double best_lambda = 0.0;
};

struct KSelection {
  int best_k = 0;
  std::vector<KScore> scores;
};

// Per candidate K, minimizes the cross-validation error over the lambda
// grid; returns the K minimizing the per-K minimum (ties to the smaller K).
KSelection select_k(const SparseGraph& g, const std::vector<int>& k_grid,
                    const std::vector<double>& lambda_grid, const FoldPlan& plan, Algorithm alg,
                    const FitConfig& cfg);

// The grid {0.05, 0.10, ..., 0.95}.
std::vector<double> default_lambda_grid();

}  // namespace specc

#endif
