#ifndef SPECC_EXPERIMENTS_HPP
#define SPECC_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "specc/spca.hpp"

namespace specc {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// One SPCA-eig iteration on the exact expected matrix of random pure-row
// instances, started from the column-normalized truth with lambda at half
// the fixed-point margin. Passes when every instance returns its input to
// within 1e-10.
CheckResult fixed_point_check(int instances = 5, int n = 200, int k = 3, std::uint64_t seed = 1);

// One SPCA-CD iteration from the true blocks of planted partitions
// (n = 900, three blocks of 300, p = 0.9, q = 0.05, lambda = 0.6). Passes
// when at least trials - 1 of the seeded draws return the truth exactly.
CheckResult theorem1_check(int trials = 50, std::uint64_t seed = 1);

// BIC-selected SPCA-eig on the karate fixture: two pure communities that
// match the recorded factions (overlap 0, NVI 1).
CheckResult karate_check(const std::string& data_dir);

// BIC-selected SPCA-CD on the 1222-node political-blogs component:
// overlap count <= 60 and hard-assignment misclustering <= 80.
CheckResult polblogs_check(const std::string& data_dir);

struct SweepPoint {
  Algorithm alg = Algorithm::Eig;
  double rho = 0.0;
  double overlap_fraction = 0.0;
  double mean_nvi = 0.0;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::vector<CheckResult> checks;
};

// Scenario recovery at rho = 0 with overlap fractions {0, 0.1}: mean NVI of
// BIC-selected fits over seeded draws must reach 0.95 for both algorithms.
SweepResult recovery_check(int seeds = 20, std::uint64_t seed = 1);

// Mean NVI against rho in {0, 0.1, 0.2} at 10% overlap for both algorithms;
// the pass condition applies to the rho = 0 point, the trend is reported.
SweepResult rho_sweep(int seeds = 20, std::uint64_t seed = 1);

}  // namespace specc

#endif
