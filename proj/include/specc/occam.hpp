#ifndef SPECC_OCCAM_HPP
#define SPECC_OCCAM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "specc/graph.hpp"

namespace specc {

// Generative parameters: edge probabilities P = alpha * Theta Z B Z' Theta
// with zero diagonal. theta sums to n; simulator rows of z are L1-normalized.
struct OccamParams {
  int n = 0;
  int k = 0;
  double alpha = 0.0;
  Eigen::VectorXd theta;  // length n, positive
  Eigen::MatrixXd z;      // n x k, non-negative
  Eigen::MatrixXd b;      // k x k, symmetric non-negative
};

struct ScenarioSpec {
  int n = 500;
  int k = 3;
  double overlap_fraction = 0.1;  // fraction of nodes in overlaps
  double rho = 0.1;               // between-community mixing
  double target_degree = 50.0;    // expected average degree
  double hub_probability = 0.0;
  double hub_theta = 5.0;
  std::uint64_t seed = 1;
};

// Membership layout: ceil(overlap_fraction * n) overlap rows first (for k=3,
// a quarter of them get equal weight on all three communities, the rest are
// split over community pairs; for other k only pair overlaps are used), then
// pure rows split equally across communities. B = (1-rho) I + rho 11'.
// Hub thetas are sampled then rescaled to sum n; alpha is calibrated to the
// target degree. Throws when any implied edge probability exceeds 1.
OccamParams build_scenario(const ScenarioSpec& spec);

// alpha such that the expected average degree (1/n) 1' E[A] 1 equals
// target_degree, in closed form. Throws on a zero denominator.
double calibrate_alpha(const Eigen::VectorXd& theta, const Eigen::MatrixXd& z,
                       const Eigen::MatrixXd& b, double target_degree);

// E[A]: symmetric, zero diagonal, entries validated to lie in [0, 1].
Eigen::MatrixXd expected_adjacency(const OccamParams& params);

// Independent Bernoulli(P_ij) upper-triangle draw; deterministic per seed.
SparseGraph sample_adjacency(const OccamParams& params, std::uint64_t seed);

struct PlantedPartition {
  SparseGraph graph;
  Eigen::MatrixXd z_true;  // n x k binary block indicator
};

// SBM with within-block probability p and between-block probability q.
PlantedPartition planted_partition(int n, int k, double p, double q,
                                   const std::vector<int>& block_sizes, std::uint64_t seed);

// Scenario specs from "key=value" lines or a JSON object; unknown keys are
// rejected. File contents starting with '{' are parsed as JSON.
ScenarioSpec scenario_from_string(const std::string& text);
ScenarioSpec scenario_from_file(const std::string& path);

}  // namespace specc

#endif
