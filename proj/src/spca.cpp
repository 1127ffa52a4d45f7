#include "specc/spca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specc/linalg.hpp"
#include "specc/parallel.hpp"

namespace specc {

Eigen::MatrixXd threshold_rows(const Eigen::MatrixXd& t, double lambda) {
  if (lambda < 0.0 || lambda >= 1.0)
    throw std::invalid_argument("threshold_rows: lambda must lie in [0, 1)");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(t.rows(), t.cols());
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    const double bound = lambda * t.row(i).cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < t.cols(); ++k)
      if (t(i, k) > bound) out(i, k) = t(i, k);
  }
  return out;
}

std::int64_t support_size(const Eigen::MatrixXd& v) {
  std::int64_t count = 0;
  for (Eigen::Index j = 0; j < v.cols(); ++j)
    for (Eigen::Index i = 0; i < v.rows(); ++i)
      if (v(i, j) != 0.0) ++count;
  return count;
}

namespace {

// Operator abstraction: the fits only need y = A x and the squared
// Frobenius norm of A, so they run unchanged on an adjacency structure or
// on a dense symmetric matrix (expected or completed adjacency).
struct GraphOp {
  const SparseGraph* g;
  int rows() const { return g->node_count(); }
  Eigen::MatrixXd apply(const Eigen::MatrixXd& v) const { return spmm(*g, v); }
  double frob_sq() const { return 2.0 * static_cast<double>(g->edge_count()); }
  EigenPair top_eigen(int k, std::uint64_t seed) const {
    return top_k_eigen(*g, k, 1e-8, 1000, seed);
  }
};

struct DenseOp {
  const Eigen::MatrixXd* a;
  int rows() const { return static_cast<int>(a->rows()); }
  Eigen::MatrixXd apply(const Eigen::MatrixXd& v) const { return (*a) * v; }
  double frob_sq() const { return a->squaredNorm(); }
  EigenPair top_eigen(int k, std::uint64_t seed) const {
    return top_k_eigen(*a, k, 1e-8, 1000, seed);
  }
};

void normalize_columns_l2(Eigen::MatrixXd& v, const char* who) {
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    const double norm = v.col(k).norm();
    if (norm == 0.0)
      throw std::runtime_error(std::string(who) + ": column " + std::to_string(k) +
                               " is entirely zero; try a smaller lambda");
    v.col(k) /= norm;
  }
}

void normalize_rows_l1(Eigen::MatrixXd& v) {
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    const double norm = v.row(i).lpNorm<1>();
    if (norm > 0.0) v.row(i) /= norm;
  }
}

void sort_columns_by_mass(Eigen::MatrixXd& v) {
  const int k = static_cast<int>(v.cols());
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  Eigen::VectorXd mass = v.cwiseAbs().colwise().sum();
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return mass[a] > mass[b]; });
  Eigen::MatrixXd sorted(v.rows(), k);
  for (int j = 0; j < k; ++j) sorted.col(j) = v.col(order[j]);
  v = std::move(sorted);
}

double relative_change(const Eigen::MatrixXd& v_new, const Eigen::MatrixXd& v_old) {
  return spectral_norm(v_new - v_old) / spectral_norm(v_old);
}

Eigen::MatrixXd random_indicator(int n, int k, std::uint64_t seed) {
  if (n < k) throw std::invalid_argument("random init: fewer nodes than communities");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, k - 1);
  std::vector<int> labels(n);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<int> counts(k, 0);
    for (int i = 0; i < n; ++i) ++counts[labels[i] = pick(rng)];
    if (std::all_of(counts.begin(), counts.end(), [](int c) { return c > 0; })) {
      Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, k);
      for (int i = 0; i < n; ++i) v(i, labels[i]) = 1.0;
      return v;
    }
  }
  throw std::runtime_error("random init: failed to cover every community");
}

// ---------------------------------------------------------------------------
// k-means (used by the spectral initializer)
// ---------------------------------------------------------------------------

struct KmeansResult {
  std::vector<int> labels;
  double inertia = std::numeric_limits<double>::infinity();
  bool ok = false;  // false when a cluster came out empty
};

KmeansResult kmeans_once(const Eigen::MatrixXd& x, int k, std::uint64_t seed, int max_iter) {
  const int n = static_cast<int>(x.rows());
  std::mt19937_64 rng(seed);
  KmeansResult res;
  res.labels.assign(n, 0);

  // k-means++ seeding.
  Eigen::MatrixXd centers(k, x.cols());
  std::uniform_int_distribution<int> first(0, n - 1);
  centers.row(0) = x.row(first(rng));
  Eigen::VectorXd d2 = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    if (total <= 0.0) return res;  // fewer distinct rows than clusters
    std::uniform_real_distribution<double> unif(0.0, total);
    double target = unif(rng);
    int chosen = n - 1;
    for (int i = 0; i < n; ++i) {
      target -= d2[i];
      if (target <= 0.0) {
        chosen = i;
        break;
      }
    }
    centers.row(c) = x.row(chosen);
    d2 = d2.cwiseMin((x.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }

  for (int iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (x.row(i) - centers.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double d = (x.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (res.labels[i] != best) {
        res.labels[i] = best;
        changed = true;
      }
    }
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, x.cols());
    std::vector<int> counts(k, 0);
    for (int i = 0; i < n; ++i) {
      sums.row(res.labels[i]) += x.row(i);
      ++counts[res.labels[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) return res;  // empty cluster: caller restarts
      centers.row(c) = sums.row(c) / counts[c];
    }
    if (!changed && iter > 0) break;
  }

  res.inertia = 0.0;
  for (int i = 0; i < n; ++i) res.inertia += (x.row(i) - centers.row(res.labels[i])).squaredNorm();
  res.ok = true;
  return res;
}

std::vector<int> kmeans(const Eigen::MatrixXd& x, int k, std::uint64_t seed, int restarts = 10) {
  KmeansResult best;
  int failures = 0;
  std::uint64_t next_seed = seed;
  for (int r = 0; r < restarts; ++r) {
    KmeansResult run = kmeans_once(x, k, next_seed++, 100);
    while (!run.ok) {
      if (++failures >= 10)
        throw std::runtime_error("score_init: k-means produced empty clusters in 10 restarts");
      run = kmeans_once(x, k, next_seed++, 100);
    }
    if (run.inertia < best.inertia || !best.ok) best = std::move(run);
  }
  return best.labels;
}

template <typename Op>
Eigen::MatrixXd score_init_impl(const Op& op, int k, std::uint64_t seed) {
  const int n = op.rows();
  if (k == 1) return Eigen::MatrixXd::Ones(n, 1);
  if (k >= n) throw std::invalid_argument("score_init: need k < n");

  EigenPair ep = op.top_eigen(k, seed);
  const double clip = std::log(static_cast<double>(n));
  Eigen::MatrixXd ratios(n, k - 1);
  for (int i = 0; i < n; ++i) {
    const double lead = ep.vectors(i, 0);
    for (int j = 1; j < k; ++j) {
      const double num = ep.vectors(i, j);
      double r;
      if (lead == 0.0) {
        r = num > 0.0 ? clip : (num < 0.0 ? -clip : 0.0);
      } else {
        r = std::clamp(num / lead, -clip, clip);
      }
      ratios(i, j - 1) = r;
    }
  }
  std::vector<int> labels = kmeans(ratios, k, seed);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, k);
  for (int i = 0; i < n; ++i) v(i, labels[i]) = 1.0;
  return v;
}

// ---------------------------------------------------------------------------
// Fit cores
// ---------------------------------------------------------------------------

template <typename Op>
Eigen::MatrixXd resolve_init(const Op& op, int k, const FitConfig& cfg) {
  switch (cfg.init.kind) {
    case InitStrategy::Kind::Score:
      return score_init_impl(op, k, cfg.seed);
    case InitStrategy::Kind::Provided:
      if (cfg.init.v0.rows() != op.rows() || cfg.init.v0.cols() != k)
        throw std::invalid_argument("fit: provided initial basis has wrong shape");
      return cfg.init.v0;
    case InitStrategy::Kind::RandomMultiStart:
      break;  // handled by the dispatcher
  }
  throw std::logic_error("fit: unresolved init strategy");
}

void check_fit_args(int n, int k, const FitConfig& cfg) {
  if (k < 1 || k >= n) throw std::invalid_argument("fit: need 1 <= k < n");
  if (cfg.lambda < 0.0 || cfg.lambda >= 1.0)
    throw std::invalid_argument("fit: lambda must lie in [0, 1)");
  if (cfg.epsilon <= 0.0) throw std::invalid_argument("fit: epsilon must be positive");
  if (cfg.max_iter < 1) throw std::invalid_argument("fit: max_iter must be positive");
}

template <typename Op>
MembershipBasis eig_fit_core(const Op& op, int k, const FitConfig& cfg) {
  check_fit_args(op.rows(), k, cfg);
  Eigen::MatrixXd v = resolve_init(op, k, cfg);
  normalize_columns_l2(v, "spca_eig_fit");

  MembershipBasis basis;
  basis.mode = NormMode::ColumnL2;
  basis.lambda = cfg.lambda;

  for (int t = 1; t <= cfg.max_iter; ++t) {
    Eigen::MatrixXd prod = op.apply(v);

    // Back-transform T Gamma^{-1} with Gamma = (V'V)^{-1} V'T, through the
    // thin QR of V: Gamma = R^{-1} Q'T.
    QrResult qr = thin_qr(v);
    Eigen::MatrixXd qt = qr.q.transpose() * prod;
    Eigen::MatrixXd vt_t = qr.r.transpose() * qt;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(vt_t);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (!(smin > 0.0) || smax / smin > 1e12)
      throw std::runtime_error(
          "spca_eig_fit: V'T is numerically singular; try a smaller lambda or a different "
          "initialization");
    Eigen::MatrixXd gamma = qr.r.triangularView<Eigen::Upper>().solve(qt);
    Eigen::MatrixXd transformed =
        gamma.transpose().partialPivLu().solve(prod.transpose()).transpose();

    Eigen::MatrixXd u = threshold_rows(transformed, cfg.lambda);
    normalize_columns_l2(u, "spca_eig_fit");

    const double change = relative_change(u, v);
    v = std::move(u);
    basis.iterations = t;
    if (change < cfg.epsilon) {
      basis.converged = true;
      break;
    }
  }

  basis.v = std::move(v);
  sort_columns_by_mass(basis.v);
  return basis;
}

template <typename Op>
MembershipBasis cd_fit_core(const Op& op, int k, const FitConfig& cfg) {
  check_fit_args(op.rows(), k, cfg);
  Eigen::MatrixXd v = resolve_init(op, k, cfg);
  normalize_rows_l1(v);

  MembershipBasis basis;
  basis.mode = NormMode::RowL1;
  basis.lambda = cfg.lambda;

  for (int t = 1; t <= cfg.max_iter; ++t) {
    Eigen::MatrixXd prod = op.apply(v);

    for (Eigen::Index c = 0; c < prod.cols(); ++c) {
      const double norm = prod.col(c).lpNorm<1>();
      if (norm == 0.0)
        throw std::runtime_error("spca_cd_fit: column " + std::to_string(c) +
                                 " has zero norm after the multiplication step; try a smaller "
                                 "lambda");
      prod.col(c) /= norm;
    }

    Eigen::MatrixXd u = threshold_rows(prod, cfg.lambda);
    // A node is never left without a community: a fully thresholded row
    // keeps its largest (positive) entry.
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      if (u.row(i).cwiseAbs().maxCoeff() > 0.0) continue;
      Eigen::Index jmax = 0;
      prod.row(i).maxCoeff(&jmax);
      if (prod(i, jmax) > 0.0) u(i, jmax) = prod(i, jmax);
    }
    for (Eigen::Index c = 0; c < u.cols(); ++c)
      if (u.col(c).cwiseAbs().maxCoeff() == 0.0)
        throw std::runtime_error("spca_cd_fit: column " + std::to_string(c) +
                                 " lost every member after thresholding; try a smaller lambda");
    normalize_rows_l1(u);

    const double change = relative_change(u, v);
    v = std::move(u);
    basis.iterations = t;
    if (change < cfg.epsilon) {
      basis.converged = true;
      break;
    }
  }

  basis.v = std::move(v);
  sort_columns_by_mass(basis.v);
  return basis;
}

// ||A - P_hat||_F^2 for P_hat = Q (Q'AQ) Q', without forming P_hat:
// the projection leaves ||A||_F^2 - ||Q'AQ||_F^2.
template <typename Op>
double projection_residual(const Op& op, const Eigen::MatrixXd& v) {
  QrResult qr = thin_qr(v);
  Eigen::MatrixXd s = qr.q.transpose() * op.apply(qr.q);
  return op.frob_sq() - s.squaredNorm();
}

template <typename Op>
MembershipBasis multistart_core(const Op& op, int k, int count, Algorithm alg,
                                const FitConfig& cfg) {
  if (count < 1) throw std::invalid_argument("random_multistart: count must be >= 1");

  std::vector<std::optional<MembershipBasis>> fits(count);
  std::vector<double> residuals(count, std::numeric_limits<double>::infinity());
  std::vector<std::string> errors(count);

  parallel_for(count, [&](int s) {
    FitConfig local = cfg;
    local.seed = cfg.seed + static_cast<std::uint64_t>(s);
    local.init = InitStrategy::provided(random_indicator(op.rows(), k, local.seed));
    try {
      MembershipBasis basis = alg == Algorithm::Eig ? eig_fit_core(op, k, local)
                                                    : cd_fit_core(op, k, local);
      residuals[s] = projection_residual(op, basis.v);
      fits[s] = std::move(basis);
    } catch (const std::exception& e) {
      errors[s] = e.what();
    }
  });

  int best = -1;
  for (int s = 0; s < count; ++s)
    if (fits[s] && (best == -1 || residuals[s] < residuals[best])) best = s;
  if (best == -1) {
    for (int s = count - 1; s >= 0; --s)
      if (!errors[s].empty()) throw std::runtime_error("random_multistart: " + errors[s]);
    throw std::runtime_error("random_multistart: every start failed");
  }
  return *fits[best];
}

template <typename Op>
MembershipBasis fit_dispatch(const Op& op, int k, Algorithm alg, const FitConfig& cfg) {
  if (cfg.init.kind == InitStrategy::Kind::RandomMultiStart)
    return multistart_core(op, k, cfg.init.count, alg, cfg);
  return alg == Algorithm::Eig ? eig_fit_core(op, k, cfg) : cd_fit_core(op, k, cfg);
}

template <typename Op>
OccamDecomposition v_to_occam_core(const Eigen::MatrixXd& v, const Op& op) {
  if (v.rows() != op.rows()) throw std::invalid_argument("v_to_occam: dimension mismatch");
  thin_qr(v);  // rank check

  OccamDecomposition out;
  out.theta = v.rowwise().norm();
  out.z = Eigen::MatrixXd::Zero(v.rows(), v.cols());
  for (Eigen::Index i = 0; i < v.rows(); ++i)
    if (out.theta[i] > 0.0) out.z.row(i) = v.row(i) / out.theta[i];

  const Eigen::MatrixXd gram = v.transpose() * v;
  const Eigen::MatrixXd m = v.transpose() * op.apply(v);
  auto ldlt = gram.ldlt();
  Eigen::MatrixXd half = ldlt.solve(m);
  out.b = ldlt.solve(half.transpose()).transpose();
  return out;
}

}  // namespace

MembershipBasis spca_eig_fit(const SparseGraph& g, int k, const FitConfig& cfg) {
  return fit_dispatch(GraphOp{&g}, k, Algorithm::Eig, cfg);
}
MembershipBasis spca_eig_fit(const Eigen::MatrixXd& sym, int k, const FitConfig& cfg) {
  return fit_dispatch(DenseOp{&sym}, k, Algorithm::Eig, cfg);
}
MembershipBasis spca_cd_fit(const SparseGraph& g, int k, const FitConfig& cfg) {
  return fit_dispatch(GraphOp{&g}, k, Algorithm::Cd, cfg);
}
MembershipBasis spca_cd_fit(const Eigen::MatrixXd& sym, int k, const FitConfig& cfg) {
  return fit_dispatch(DenseOp{&sym}, k, Algorithm::Cd, cfg);
}

MembershipBasis fit_membership(Algorithm alg, const SparseGraph& g, int k, const FitConfig& cfg) {
  return fit_dispatch(GraphOp{&g}, k, alg, cfg);
}
MembershipBasis fit_membership(Algorithm alg, const Eigen::MatrixXd& sym, int k,
                               const FitConfig& cfg) {
  return fit_dispatch(DenseOp{&sym}, k, alg, cfg);
}

Eigen::MatrixXd score_init(const SparseGraph& g, int k, std::uint64_t seed) {
  return score_init_impl(GraphOp{&g}, k, seed);
}
Eigen::MatrixXd score_init(const Eigen::MatrixXd& sym, int k, std::uint64_t seed) {
  return score_init_impl(DenseOp{&sym}, k, seed);
}

MembershipBasis random_multistart(const SparseGraph& g, int k, int count, Algorithm alg,
                                  const FitConfig& cfg) {
  return multistart_core(GraphOp{&g}, k, count, alg, cfg);
}
MembershipBasis random_multistart(const Eigen::MatrixXd& sym, int k, int count, Algorithm alg,
                                  const FitConfig& cfg) {
  return multistart_core(DenseOp{&sym}, k, count, alg, cfg);
}

OccamDecomposition v_to_occam(const MembershipBasis& basis, const SparseGraph& g) {
  return v_to_occam_core(basis.v, GraphOp{&g});
}
OccamDecomposition v_to_occam(const MembershipBasis& basis, const Eigen::MatrixXd& p) {
  if (p.rows() != p.cols()) throw std::invalid_argument("v_to_occam: matrix not square");
  return v_to_occam_core(basis.v, DenseOp{&p});
}

}  // namespace specc
