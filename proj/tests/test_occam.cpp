#include <doctest.h>

#include <map>
#include <set>
#include <vector>

#include "specc/graph.hpp"
#include "specc/occam.hpp"

using namespace specc;

TEST_SUITE("occam") {

TEST_CASE("pure planted partition scenario") {
  ScenarioSpec spec;
  spec.n = 300;
  spec.k = 3;
  spec.overlap_fraction = 0.0;
  spec.rho = 0.0;
  spec.target_degree = 20.0;
  OccamParams params = build_scenario(spec);

  CHECK((params.b - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
  for (int i = 0; i < 300; ++i) {
    CHECK(params.z.row(i).lpNorm<1>() == 1.0);
    int nonzeros = 0;
    for (int c = 0; c < 3; ++c)
      if (params.z(i, c) != 0.0) ++nonzeros;
    CHECK(nonzeros == 1);
  }
  CHECK(params.z.colwise().sum().minCoeff() == 100.0);
}

TEST_CASE("overlap layout at 40 percent") {
  ScenarioSpec spec;
  spec.n = 500;
  spec.k = 3;
  spec.overlap_fraction = 0.4;
  spec.rho = 0.1;
  spec.target_degree = 30.0;
  OccamParams params = build_scenario(spec);

  int triples = 0;
  std::map<std::pair<int, int>, int> pairs;
  int pure = 0;
  for (int i = 0; i < 500; ++i) {
    std::vector<int> supp;
    for (int c = 0; c < 3; ++c)
      if (params.z(i, c) != 0.0) supp.push_back(c);
    if (supp.size() == 3) ++triples;
    else if (supp.size() == 2) ++pairs[{supp[0], supp[1]}];
    else ++pure;
    CHECK(params.z.row(i).lpNorm<1>() == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(triples == 50);
  CHECK(pure == 300);
  for (auto& [key, count] : pairs) CHECK(count == 50);
  CHECK(pairs.size() == 3);
}

TEST_CASE("rho = 1 gives the all-ones mixing matrix") {
  ScenarioSpec spec;
  spec.n = 100;
  spec.k = 3;
  spec.overlap_fraction = 0.0;
  spec.rho = 1.0;
  spec.target_degree = 10.0;
  OccamParams params = build_scenario(spec);
  CHECK((params.b - Eigen::MatrixXd::Ones(3, 3)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("alpha calibration closed form") {
  // Planted partition, K=2, equal blocks of 50, B = I, theta = 1:
  // sum_{i!=j} z_i' B z_j = 2 * (50*49/2) * 2 = 4900.
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(100, 2);
  for (int i = 0; i < 100; ++i) z(i, i < 50 ? 0 : 1) = 1.0;
  Eigen::VectorXd theta = Eigen::VectorXd::Ones(100);
  Eigen::MatrixXd b = Eigen::MatrixXd::Identity(2, 2);
  const double alpha = calibrate_alpha(theta, z, b, 10.0);
  CHECK(alpha == doctest::Approx(10.0 * 100.0 / 4900.0).epsilon(1e-12));

  OccamParams params{100, 2, alpha, theta, z, b};
  Eigen::MatrixXd p = expected_adjacency(params);
  CHECK(p.sum() / 100.0 == doctest::Approx(10.0).epsilon(1e-10));
}

TEST_CASE("alpha for the rank-1 mixing case") {
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(40, 2);
  for (int i = 0; i < 40; ++i) z(i, i % 2) = 1.0;
  const double alpha =
      calibrate_alpha(Eigen::VectorXd::Ones(40), z, Eigen::MatrixXd::Ones(2, 2), 5.0);
  CHECK(alpha == doctest::Approx(5.0 / 39.0).epsilon(1e-12));
}

TEST_CASE("alpha self-consistency on random scenarios") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    ScenarioSpec spec;
    spec.n = 200;
    spec.k = 4;
    spec.overlap_fraction = 0.2;
    spec.rho = 0.3;
    spec.target_degree = 15.0;
    spec.hub_probability = 0.1;
    spec.seed = seed;
    OccamParams params = build_scenario(spec);
    Eigen::MatrixXd p = expected_adjacency(params);
    CHECK(p.sum() / spec.n == doctest::Approx(15.0).epsilon(1e-10));
    CHECK((p - p.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(p.diagonal().cwiseAbs().maxCoeff() == 0.0);
    CHECK(p.minCoeff() >= 0.0);
    CHECK(p.maxCoeff() <= 1.0);
  }
}

TEST_CASE("degenerate sampling cases") {
  OccamParams zero;
  zero.n = 6;
  zero.k = 1;
  zero.alpha = 0.0;
  zero.theta = Eigen::VectorXd::Ones(6);
  zero.z = Eigen::MatrixXd::Ones(6, 1);
  zero.b = Eigen::MatrixXd::Ones(1, 1);
  CHECK(sample_adjacency(zero, 1).edge_count() == 0);

  OccamParams full = zero;
  full.alpha = 1.0;
  CHECK(sample_adjacency(full, 1).edge_count() == 15);
}

TEST_CASE("sampled mean degree concentrates on the target") {
  ScenarioSpec spec;
  spec.n = 500;
  spec.k = 3;
  spec.overlap_fraction = 0.1;
  spec.rho = 0.1;
  spec.target_degree = 50.0;
  OccamParams params = build_scenario(spec);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const double mean = degree_summary(sample_adjacency(params, seed)).mean_degree;
    CHECK(mean >= 47.0);
    CHECK(mean <= 53.0);
  }
}

TEST_CASE("sampling is reproducible per seed") {
  ScenarioSpec spec;
  spec.n = 120;
  spec.k = 3;
  spec.target_degree = 12.0;
  OccamParams params = build_scenario(spec);
  SparseGraph a = sample_adjacency(params, 99);
  SparseGraph b = sample_adjacency(params, 99);
  CHECK(a.col_idx() == b.col_idx());
  CHECK(a.row_ptr() == b.row_ptr());
  CHECK(sample_adjacency(params, 100).col_idx() != a.col_idx());
}

TEST_CASE("planted partition produces cliques at p=1, q=0") {
  PlantedPartition pp = planted_partition(10, 2, 1.0, 0.0, {5, 5}, 1);
  CHECK(pp.graph.edge_count() == 20);  // two K5 blocks
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) CHECK(pp.graph.has_edge(i, j));
  CHECK_FALSE(pp.graph.has_edge(0, 9));
  CHECK(pp.z_true.col(0).sum() == 5.0);
}

TEST_CASE("planted partition accepts p = q") {
  PlantedPartition pp = planted_partition(50, 2, 0.2, 0.2, {25, 25}, 3);
  CHECK(pp.graph.node_count() == 50);
}

TEST_CASE("within-block density concentrates") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    PlantedPartition pp = planted_partition(900, 3, 0.9, 0.05, {300, 300, 300}, seed);
    std::int64_t within = 0;
    for (int i = 0; i < 300; ++i)
      for (int j = i + 1; j < 300; ++j)
        if (pp.graph.has_edge(i, j)) ++within;
    const double density = static_cast<double>(within) / (300.0 * 299.0 / 2.0);
    CHECK(density >= 0.88);
    CHECK(density <= 0.92);
  }
}

TEST_CASE("hub thetas rescale to sum n") {
  ScenarioSpec spec;
  spec.n = 400;
  spec.k = 3;
  spec.overlap_fraction = 0.1;
  spec.target_degree = 20.0;
  spec.hub_probability = 0.1;
  spec.hub_theta = 5.0;
  spec.seed = 2;
  OccamParams params = build_scenario(spec);
  CHECK(params.theta.sum() == doctest::Approx(400.0).epsilon(1e-12));
  std::set<double> distinct(params.theta.data(), params.theta.data() + 400);
  CHECK(distinct.size() == 2);  // rescaled {1, 5}
  const double ratio = *distinct.rbegin() / *distinct.begin();
  CHECK(ratio == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("infeasible scenarios are rejected with the alpha value") {
  ScenarioSpec spec;
  spec.n = 30;
  spec.k = 2;
  spec.overlap_fraction = 0.0;
  spec.rho = 0.0;
  spec.target_degree = 25.0;
  spec.hub_probability = 0.2;
  spec.hub_theta = 5.0;
  spec.seed = 1;
  CHECK_THROWS_WITH_AS(build_scenario(spec), doctest::Contains("alpha"), std::invalid_argument);
}

TEST_CASE("scenario files parse both formats and reject unknown keys") {
  ScenarioSpec kv = scenario_from_string("n = 80\nk = 4\nrho = 0.25\nseed = 9\n# comment\n");
  CHECK(kv.n == 80);
  CHECK(kv.k == 4);
  CHECK(kv.rho == 0.25);
  CHECK(kv.seed == 9);

  ScenarioSpec js = scenario_from_string(R"({"n": 64, "overlap_fraction": 0.2})");
  CHECK(js.n == 64);
  CHECK(js.overlap_fraction == 0.2);

  CHECK_THROWS_WITH_AS(scenario_from_string(R"({"frobulate": 3})"), doctest::Contains("frobulate"),
                       std::invalid_argument);
}

}  // TEST_SUITE
