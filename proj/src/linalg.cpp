#include "specc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "specc/parallel.hpp"

namespace specc {

Eigen::MatrixXd spmm(const SparseGraph& g, const Eigen::MatrixXd& m) {
  const int n = g.node_count();
  if (m.rows() != n) throw std::invalid_argument("spmm: matrix has wrong row count");
  const int k = static_cast<int>(m.cols());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, k);

  auto run_rows = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i)
      for (int j : g.neighbors(i)) t.row(i) += m.row(j);
  };
  // Row-parallel only when there is enough work to amortize thread startup.
  const std::int64_t work = 2 * g.edge_count() * k;
  const int workers = worker_count();
  if (work > 2'000'000 && workers > 1 && n >= 2 * workers) {
    const int chunk = (n + workers - 1) / workers;
    parallel_for(workers, [&](int w) {
      run_rows(w * chunk, std::min(n, (w + 1) * chunk));
    });
  } else {
    run_rows(0, n);
  }
  return t;
}

namespace {

// Sort eigenvalues by descending magnitude; deterministic on ties.
std::vector<int> order_by_abs(const Eigen::VectorXd& w) {
  std::vector<int> idx(w.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return std::abs(w[a]) > std::abs(w[b]); });
  return idx;
}

void fix_column_signs(Eigen::MatrixXd& x) {
  for (int k = 0; k < x.cols(); ++k) {
    int imax = 0;
    x.col(k).cwiseAbs().maxCoeff(&imax);
    if (x(imax, k) < 0) x.col(k) = -x.col(k);
  }
}

Eigen::MatrixXd orthonormal_start(int n, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd v(n, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) v(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(v);
  return qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
}

template <typename Apply>
EigenPair orthogonal_iteration(int n, const Apply& apply, int k, double tol, int max_iter,
                               std::uint64_t seed) {
  if (k < 1 || k >= n) throw std::invalid_argument("top_k_eigen: need 1 <= k < n");
  Eigen::MatrixXd q = orthonormal_start(n, k, seed);
  double last_residual = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < max_iter; ++iter) {
    Eigen::MatrixXd y = apply(q);

    // Rayleigh-Ritz on the current block.
    Eigen::MatrixXd h = q.transpose() * y;
    h = 0.5 * (h + h.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    auto order = order_by_abs(es.eigenvalues());
    Eigen::VectorXd w(k);
    Eigen::MatrixXd s(k, k);
    for (int j = 0; j < k; ++j) {
      w[j] = es.eigenvalues()[order[j]];
      s.col(j) = es.eigenvectors().col(order[j]);
    }
    Eigen::MatrixXd ritz = q * s;
    Eigen::MatrixXd resid = y * s - ritz * w.asDiagonal();
    last_residual = resid.colwise().norm().maxCoeff();
    const double scale = std::max(w.cwiseAbs().maxCoeff(), 1e-300);
    if (last_residual <= tol * scale) {
      fix_column_signs(ritz);
      return {std::move(w), std::move(ritz)};
    }
    // Subspace update; QR keeps the block orthonormal.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
    q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
  }
  throw std::runtime_error("top_k_eigen: no convergence after " + std::to_string(max_iter) +
                           " iterations (last residual " + std::to_string(last_residual) + ")");
}

}  // namespace

EigenPair top_k_eigen(const SparseGraph& g, int k, double tol, int max_iter, std::uint64_t seed) {
  return orthogonal_iteration(
      g.node_count(), [&](const Eigen::MatrixXd& v) { return spmm(g, v); }, k, tol, max_iter,
      seed);
}

EigenPair top_k_eigen(const Eigen::MatrixXd& sym, int k, double tol, int max_iter,
                      std::uint64_t seed) {
  if (sym.rows() != sym.cols()) throw std::invalid_argument("top_k_eigen: matrix not square");
  return orthogonal_iteration(
      static_cast<int>(sym.rows()), [&](const Eigen::MatrixXd& v) { return sym * v; }, k, tol,
      max_iter, seed);
}

QrResult thin_qr(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  const int k = static_cast<int>(m.cols());
  if (n < k) throw std::invalid_argument("thin_qr: more columns than rows");

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
  Eigen::MatrixXd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();

  for (int j = 0; j < k; ++j) {
    if (std::abs(r(j, j)) <= 1e-12 * m.col(j).norm())
      throw std::runtime_error("thin_qr: rank-deficient input (column " + std::to_string(j) + ")");
    if (r(j, j) < 0) {
      r.row(j) = -r.row(j);
      q.col(j) = -q.col(j);
    }
  }
  return {std::move(q), std::move(r)};
}

double subspace_distance(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw std::invalid_argument("subspace_distance: dimension mismatch");
  Eigen::MatrixXd qu = thin_qr(u).q;
  Eigen::MatrixXd qv = thin_qr(v).q;
  // Singular values of Qu' Qv are the cosines of the principal angles;
  // the projector-difference spectral norm is the largest sine.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(qu.transpose() * qv);
  double cos_min = std::clamp(svd.singularValues().minCoeff(), 0.0, 1.0);
  return std::sqrt(std::max(0.0, 1.0 - cos_min * cos_min));
}

Eigen::MatrixXd truncated_svd(const Eigen::MatrixXd& m, int k) {
  if (m.rows() != m.cols()) throw std::invalid_argument("truncated_svd: matrix not square");
  const int n = static_cast<int>(m.rows());
  if (k < 1 || k >= n) throw std::invalid_argument("truncated_svd: need 1 <= k < n");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU().leftCols(k) * svd.singularValues().head(k).asDiagonal() *
         svd.matrixV().leftCols(k).transpose();
}

double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  const Eigen::MatrixXd& thin = m;
  if (m.rows() >= m.cols()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(thin.transpose() * thin);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(thin * thin.transpose());
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace specc
