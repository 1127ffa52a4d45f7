#ifndef SPECC_LINALG_HPP
#define SPECC_LINALG_HPP

#include <cstdint>

#include <Eigen/Core>

#include "specc/graph.hpp"

namespace specc {

// Leading eigenpairs of a symmetric operator, ordered by descending |value|.
// Columns of `vectors` are orthonormal.
struct EigenPair {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

struct QrResult {
  Eigen::MatrixXd q;  // n x k, orthonormal columns
  Eigen::MatrixXd r;  // k x k, upper triangular, positive diagonal
};

// T = A * m for the 0/1 adjacency of g. Throws on row-count mismatch.
Eigen::MatrixXd spmm(const SparseGraph& g, const Eigen::MatrixXd& m);

// Block orthogonal iteration with Rayleigh-Ritz extraction. Converges on the
// per-pair residual ||A v - lambda v|| <= tol * max|lambda|; throws after
// max_iter non-converged sweeps (message carries the last residual). The
// start block is Gaussian, deterministic per seed.
EigenPair top_k_eigen(const SparseGraph& g, int k, double tol = 1e-8, int max_iter = 1000,
                      std::uint64_t seed = 0);
EigenPair top_k_eigen(const Eigen::MatrixXd& sym, int k, double tol = 1e-8, int max_iter = 1000,
                      std::uint64_t seed = 0);

// Thin Householder QR with the positive-diagonal sign convention.
// Throws when |R_kk| falls below 1e-12 times the k-th input column norm.
QrResult thin_qr(const Eigen::MatrixXd& m);

// Spectral norm of the difference of orthogonal projectors onto the column
// spaces of u and v, computed through principal angles (no n x n projector
// is formed). Value in [0, 1]; invariant to right-multiplication by any
// invertible k x k matrix. Throws on rank-deficient input.
double subspace_distance(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v);

// Best rank-k approximation of a square matrix via its top-k singular
// triplets. Throws when k < 1 or k >= n.
Eigen::MatrixXd truncated_svd(const Eigen::MatrixXd& m, int k);

// Largest singular value, via the Gram form when the matrix is tall.
double spectral_norm(const Eigen::MatrixXd& m);

}  // namespace specc

#endif
