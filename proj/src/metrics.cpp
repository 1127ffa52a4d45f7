#include "specc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace specc {

BinaryMembership binarize(const Eigen::MatrixXd& v, BinarizeRule rule) {
  if (v.size() > 0 && v.minCoeff() < 0.0)
    throw std::invalid_argument("binarize: input must be non-negative");
  BinaryMembership out;
  out.zb.resize(v.rows(), v.cols());
  const double cut = rule == BinarizeRule::ThresholdOverK ? 1.0 / static_cast<double>(v.cols()) : 0.0;
  for (Eigen::Index i = 0; i < v.rows(); ++i)
    for (Eigen::Index k = 0; k < v.cols(); ++k)
      out.zb(i, k) = (rule == BinarizeRule::Support ? v(i, k) != 0.0 : v(i, k) >= cut) ? 1 : 0;
  return out;
}

BinaryMembership binarize(const MembershipBasis& basis, BinarizeRule rule) {
  return binarize(basis.v, rule);
}

int overlap_count(const BinaryMembership& b) {
  int count = 0;
  for (Eigen::Index i = 0; i < b.zb.rows(); ++i)
    if (b.zb.row(i).sum() >= 2) ++count;
  return count;
}

namespace {

constexpr double kEntropyTiny = 1e-12;

double entropy_term(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

// Minimal-cost assignment (rows to columns) for a square cost matrix,
// O(k^3) shortest augmenting paths with potentials.
std::vector<int> hungarian(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> assign(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) assign[p[j] - 1] = j - 1;
  return assign;
}

Eigen::MatrixXi pad_columns(const Eigen::MatrixXi& m, int k) {
  if (m.cols() == k) return m;
  Eigen::MatrixXi out = Eigen::MatrixXi::Zero(m.rows(), k);
  out.leftCols(m.cols()) = m;
  return out;
}

// Normalized conditional-entropy ratio H(X|Y)/H(X) for a pair of binary
// columns, with the degenerate-column convention: when H(X) vanishes the
// ratio is 0 if H(X|Y) also vanishes and 1 otherwise.
double conditional_ratio(int n, int n_x, int n_y, int n_xy) {
  const double inv = 1.0 / n;
  const double hx = entropy_term(n_x * inv) + entropy_term((n - n_x) * inv);
  const double hy = entropy_term(n_y * inv) + entropy_term((n - n_y) * inv);
  const double hxy = entropy_term(n_xy * inv) + entropy_term((n_x - n_xy) * inv) +
                     entropy_term((n_y - n_xy) * inv) + entropy_term((n - n_x - n_y + n_xy) * inv);
  const double hx_given_y = std::max(0.0, hxy - hy);
  if (hx < kEntropyTiny) return hx_given_y < kEntropyTiny ? 0.0 : 1.0;
  return hx_given_y / hx;
}

}  // namespace

namespace detail {

double nvi_min_cost(const BinaryMembership& x, const BinaryMembership& y, bool use_assignment) {
  if (x.zb.rows() != y.zb.rows()) throw std::invalid_argument("nvi: node counts differ");
  const int n = x.node_count();
  if (n == 0) throw std::invalid_argument("nvi: empty membership");
  const int k = std::max(x.community_count(), y.community_count());
  const Eigen::MatrixXi xz = pad_columns(x.zb, k);
  const Eigen::MatrixXi yz = pad_columns(y.zb, k);

  Eigen::VectorXi ones_x = xz.colwise().sum();
  Eigen::VectorXi ones_y = yz.colwise().sum();

  // cost(l, m): pairing X column l with Y column m contributes
  // H(X_l|Y_m)/H(X_l) + H(Y_m|X_l)/H(Y_m).
  Eigen::MatrixXd cost(k, k);
  for (int l = 0; l < k; ++l) {
    for (int m = 0; m < k; ++m) {
      int both = 0;
      for (int i = 0; i < n; ++i) both += xz(i, l) & yz(i, m);
      cost(l, m) = conditional_ratio(n, ones_x[l], ones_y[m], both) +
                   conditional_ratio(n, ones_y[m], ones_x[l], both);
    }
  }

  if (!use_assignment) {
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      double total = 0.0;
      for (int m = 0; m < k; ++m) total += cost(perm[m], m);
      best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  std::vector<int> assign = hungarian(cost);
  double best = 0.0;
  for (int l = 0; l < k; ++l) best += cost(l, assign[l]);
  return best;
}

}  // namespace detail

double nvi(const BinaryMembership& x, const BinaryMembership& y) {
  const int k = std::max(x.community_count(), y.community_count());
  const double best = detail::nvi_min_cost(x, y, k > 8);
  return 1.0 - best / (2.0 * k);
}

int misclustering(const Eigen::MatrixXd& zhat, const BinaryMembership& z_true) {
  const int n = static_cast<int>(zhat.rows());
  if (n != z_true.node_count()) throw std::invalid_argument("misclustering: node counts differ");

  std::vector<int> truth(n);
  for (int i = 0; i < n; ++i) {
    if (z_true.zb.row(i).sum() != 1)
      throw std::invalid_argument("misclustering: truth must have exactly one membership per row");
    for (int c = 0; c < z_true.community_count(); ++c)
      if (z_true.zb(i, c) == 1) truth[i] = c;
  }

  std::vector<int> hat(n);
  for (int i = 0; i < n; ++i) {
    int best = 0;
    for (int c = 1; c < zhat.cols(); ++c)
      if (zhat(i, c) > zhat(i, best)) best = c;  // ties keep the lowest index
    hat[i] = best;
  }

  const int k = std::max(static_cast<int>(zhat.cols()), z_true.community_count());
  Eigen::MatrixXd agree = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < n; ++i) agree(hat[i], truth[i]) += 1.0;

  double matched = 0.0;
  if (k <= 8) {
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      double total = 0.0;
      for (int a = 0; a < k; ++a) total += agree(a, perm[a]);
      matched = std::max(matched, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    std::vector<int> assign = hungarian(-agree);
    for (int a = 0; a < k; ++a) matched += agree(a, assign[a]);
  }
  return n - static_cast<int>(matched);
}

int misclustering(const MembershipBasis& zhat, const BinaryMembership& z_true) {
  return misclustering(zhat.v, z_true);
}

}  // namespace specc
