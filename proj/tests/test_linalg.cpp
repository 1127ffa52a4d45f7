#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "specc/graph.hpp"
#include "specc/linalg.hpp"
#include "specc/occam.hpp"

using namespace specc;

namespace {

Eigen::MatrixXd random_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = gauss(rng);
  return m;
}

SparseGraph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return SparseGraph::from_edges(n, edges);
}

// Dense projector-difference oracle for the subspace distance.
double dense_projector_distance(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v) {
  auto projector = [](const Eigen::MatrixXd& m) {
    return m * (m.transpose() * m).inverse() * m.transpose();
  };
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(projector(u) - projector(v));
  return svd.singularValues().maxCoeff();
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("spmm on empty graph is zero") {
  SparseGraph g = SparseGraph::from_edges(4, {});
  Eigen::MatrixXd m = random_matrix(4, 2, 1);
  CHECK(spmm(g, m).isZero(0.0));
}

TEST_CASE("spmm with identity recovers the adjacency") {
  SparseGraph g = SparseGraph::from_edges(3, {{0, 1}, {1, 2}});
  Eigen::MatrixXd t = spmm(g, Eigen::MatrixXd::Identity(3, 3));
  CHECK((t - g.to_dense()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("spmm matches the dense product") {
  PlantedPartition pp = planted_partition(80, 2, 0.4, 0.1, {40, 40}, 5);
  Eigen::MatrixXd m = random_matrix(80, 4, 2);
  Eigen::MatrixXd direct = pp.graph.to_dense() * m;
  CHECK((spmm(pp.graph, m) - direct).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("spmm rejects a shape mismatch") {
  SparseGraph g = SparseGraph::from_edges(3, {{0, 1}});
  CHECK_THROWS_AS(spmm(g, random_matrix(4, 2, 3)), std::invalid_argument);
}

TEST_CASE("complete graph spectrum") {
  EigenPair ep = top_k_eigen(complete_graph(4), 1);
  CHECK(ep.values[0] == doctest::Approx(3.0).epsilon(1e-10));
  Eigen::VectorXd ones = Eigen::VectorXd::Constant(4, 0.5);
  CHECK((ep.vectors.col(0) - ones).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("two disjoint triangles share the leading eigenvalue") {
  SparseGraph g =
      SparseGraph::from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  EigenPair ep = top_k_eigen(g, 2);
  CHECK(ep.values[0] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(ep.values[1] == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("eigenpairs match the dense solver on an SBM draw") {
  PlantedPartition pp = planted_partition(200, 3, 0.5, 0.05, {70, 70, 60}, 11);
  EigenPair ep = top_k_eigen(pp.graph, 3, 1e-10, 5000, 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dense(pp.graph.to_dense());
  // dense eigenvalues sorted ascending; take the top three by magnitude
  Eigen::VectorXd all = dense.eigenvalues();
  std::vector<int> idx(all.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return std::abs(all[a]) > std::abs(all[b]); });
  Eigen::MatrixXd oracle_vecs(200, 3);
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(ep.values[j] - all[idx[j]]) <= 1e-8);
    oracle_vecs.col(j) = dense.eigenvectors().col(idx[j]);
  }
  CHECK(subspace_distance(ep.vectors, oracle_vecs) <= 1e-6);

  // residuals below the requested tolerance
  Eigen::MatrixXd av = spmm(pp.graph, ep.vectors);
  for (int j = 0; j < 3; ++j) {
    const double resid = (av.col(j) - ep.values[j] * ep.vectors.col(j)).norm();
    CHECK(resid <= 1e-10 * ep.values.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("orthonormal input passes through thin QR") {
  Eigen::MatrixXd q0 = thin_qr(random_matrix(20, 3, 7)).q;
  QrResult qr = thin_qr(q0);
  CHECK((qr.q - q0).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((qr.r - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("single column QR normalizes") {
  Eigen::MatrixXd v = random_matrix(10, 1, 9);
  QrResult qr = thin_qr(v);
  CHECK(qr.r(0, 0) == doctest::Approx(v.norm()).epsilon(1e-12));
  CHECK((qr.q * qr.r - v).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("thin QR reconstructs and keeps a positive diagonal") {
  Eigen::MatrixXd m = random_matrix(50, 3, 13);
  QrResult qr = thin_qr(m);
  CHECK((qr.q * qr.r - m).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((qr.q.transpose() * qr.q - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <=
        1e-10);
  for (int j = 0; j < 3; ++j) CHECK(qr.r(j, j) > 0.0);
}

TEST_CASE("thin QR rejects rank-deficient input") {
  Eigen::MatrixXd m = random_matrix(10, 2, 17);
  Eigen::MatrixXd bad(10, 3);
  bad << m, m.col(0) + m.col(1);
  CHECK_THROWS_AS(thin_qr(bad), std::runtime_error);
}

TEST_CASE("subspace distance basics") {
  Eigen::MatrixXd u = random_matrix(30, 3, 19);
  CHECK(subspace_distance(u, u) <= 1e-12);

  Eigen::MatrixXd e1 = Eigen::MatrixXd::Zero(4, 1), e2 = Eigen::MatrixXd::Zero(4, 1);
  e1(0, 0) = 1.0;
  e2(1, 0) = 1.0;
  CHECK(subspace_distance(e1, e2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("subspace distance equals the dense projector oracle") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Eigen::MatrixXd u = random_matrix(40, 3, seed);
    Eigen::MatrixXd v = random_matrix(40, 3, seed + 100);
    CHECK(std::abs(subspace_distance(u, v) - dense_projector_distance(u, v)) <= 1e-10);
  }
}

TEST_CASE("subspace distance ignores the basis") {
  Eigen::MatrixXd u = random_matrix(25, 3, 23);
  Eigen::MatrixXd g = random_matrix(3, 3, 29);
  g += 3.0 * Eigen::MatrixXd::Identity(3, 3);  // keep it invertible
  CHECK(subspace_distance(u, u * g) <= 1e-10);
}

TEST_CASE("multiplication step contracts toward the leading subspace") {
  // Noiseless rank-3 operator with a clear eigengap.
  Eigen::MatrixXd basis = thin_qr(random_matrix(60, 3, 31)).q;
  Eigen::Vector3d gaps(7.0, 5.0, 3.0);
  Eigen::MatrixXd p = basis * gaps.asDiagonal() * basis.transpose();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Eigen::MatrixXd v = thin_qr(random_matrix(60, 3, seed + 40)).q;
    const double before = subspace_distance(v, basis);
    Eigen::MatrixXd moved = thin_qr(p * v).q;
    CHECK(subspace_distance(moved, basis) <= before + 1e-12);
  }
}

TEST_CASE("rank-1 matrix is its own rank-1 truncation") {
  Eigen::MatrixXd u = random_matrix(12, 1, 37);
  Eigen::MatrixXd m = u * u.transpose();
  CHECK((truncated_svd(m, 1) - m).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("identity truncation drops exactly one singular value") {
  Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(5, 5);
  CHECK_THROWS_AS(truncated_svd(eye, 5), std::invalid_argument);
  const double frob = (truncated_svd(eye, 4) - eye).norm();
  CHECK(frob == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("truncation error matches the dense SVD oracle") {
  Eigen::MatrixXd m = random_matrix(100, 100, 41);
  const double got = (truncated_svd(m, 3) - m).norm();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  double expect_sq = 0.0;
  for (int i = 3; i < 100; ++i) expect_sq += svd.singularValues()[i] * svd.singularValues()[i];
  CHECK(std::abs(got - std::sqrt(expect_sq)) <= 1e-8);
}

TEST_CASE("symmetric input yields symmetric truncation") {
  Eigen::MatrixXd m = random_matrix(30, 30, 43);
  m = 0.5 * (m + m.transpose());
  Eigen::MatrixXd t = truncated_svd(m, 4);
  CHECK((t - t.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
}

}  // TEST_SUITE
