#ifndef SPECC_SPCA_HPP
#define SPECC_SPCA_HPP

#include <cstdint>

#include <Eigen/Core>

#include "specc/graph.hpp"

namespace specc {

enum class NormMode { ColumnL2, RowL1 };
enum class Algorithm { Eig, Cd };

// A fitted sparse non-negative eigenbasis. ColumnL2 mode keeps every nonzero
// column at unit L2 norm; RowL1 mode keeps every nonzero row at unit L1 norm.
// Columns are ordered by descending L1 mass.
struct MembershipBasis {
  Eigen::MatrixXd v;
  NormMode mode = NormMode::ColumnL2;
  double lambda = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct InitStrategy {
  enum class Kind { Score, RandomMultiStart, Provided };
  Kind kind = Kind::Score;
  int count = 5;       // RandomMultiStart
  Eigen::MatrixXd v0;  // Provided

  static InitStrategy score() { return {}; }
  static InitStrategy random_multi_start(int count) {
    InitStrategy s;
    s.kind = Kind::RandomMultiStart;
    s.count = count;
    return s;
  }
  static InitStrategy provided(Eigen::MatrixXd v0) {
    InitStrategy s;
    s.kind = Kind::Provided;
    s.v0 = std::move(v0);
    return s;
  }
};

struct FitConfig {
  double lambda = 0.0;  // in [0, 1)
  double epsilon = 1e-6;
  int max_iter = 200;
  InitStrategy init;
  std::uint64_t seed = 0;
};

// Row-wise hard threshold: keeps entry (i, k) iff it exceeds lambda times
// the largest absolute entry of row i; everything else becomes zero. Kept
// entries are therefore strictly positive.
Eigen::MatrixXd threshold_rows(const Eigen::MatrixXd& t, double lambda);

// Sparse eigenbasis fit with the degree-corrected column-L2 normalization.
// Iterates multiply, linear back-transform, threshold, column normalization
// until the relative spectral-norm change drops below cfg.epsilon.
MembershipBasis spca_eig_fit(const SparseGraph& g, int k, const FitConfig& cfg);
MembershipBasis spca_eig_fit(const Eigen::MatrixXd& sym, int k, const FitConfig& cfg);

// Homogeneous-degree variant: multiply, column-L1 normalization, threshold,
// row-L1 normalization.
MembershipBasis spca_cd_fit(const SparseGraph& g, int k, const FitConfig& cfg);
MembershipBasis spca_cd_fit(const Eigen::MatrixXd& sym, int k, const FitConfig& cfg);

MembershipBasis fit_membership(Algorithm alg, const SparseGraph& g, int k, const FitConfig& cfg);
MembershipBasis fit_membership(Algorithm alg, const Eigen::MatrixXd& sym, int k,
                               const FitConfig& cfg);

// Non-overlapping spectral initializer: k-means on the rows of the
// eigenvector ratio matrix, entries clipped at log(n). Returns the n x k
// binary cluster indicator.
Eigen::MatrixXd score_init(const SparseGraph& g, int k, std::uint64_t seed);
Eigen::MatrixXd score_init(const Eigen::MatrixXd& sym, int k, std::uint64_t seed);

// Runs `count` fits from random single-membership starts and keeps the one
// with the smallest projection residual ||A - P_hat||_F^2.
MembershipBasis random_multistart(const SparseGraph& g, int k, int count, Algorithm alg,
                                  const FitConfig& cfg);
MembershipBasis random_multistart(const Eigen::MatrixXd& sym, int k, int count, Algorithm alg,
                                  const FitConfig& cfg);

// Maps a non-negative eigenbasis back to generative parameters:
// theta_i = ||V_i.||_2, Z = Theta^{-1} V, B = (V'V)^{-1} V' P V (V'V)^{-1},
// so that Theta Z B Z' Theta reconstructs P when P has rank k spanned by V.
struct OccamDecomposition {
  Eigen::VectorXd theta;
  Eigen::MatrixXd z;
  Eigen::MatrixXd b;
};
OccamDecomposition v_to_occam(const MembershipBasis& basis, const SparseGraph& g);
OccamDecomposition v_to_occam(const MembershipBasis& basis, const Eigen::MatrixXd& p);

// Number of nonzero entries (exact zero test).
std::int64_t support_size(const Eigen::MatrixXd& v);

}  // namespace specc

#endif
