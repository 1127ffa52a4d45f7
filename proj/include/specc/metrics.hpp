#ifndef SPECC_METRICS_HPP
#define SPECC_METRICS_HPP

#include <Eigen/Core>

#include "specc/spca.hpp"

namespace specc {

// Binary (0/1) membership indicator, one row per node.
struct BinaryMembership {
  Eigen::MatrixXi zb;

  int node_count() const { return static_cast<int>(zb.rows()); }
  int community_count() const { return static_cast<int>(zb.cols()); }
};

enum class BinarizeRule {
  Support,         // indicator of nonzero entries
  ThresholdOverK,  // indicator of entries >= 1/K
};

BinaryMembership binarize(const Eigen::MatrixXd& v, BinarizeRule rule);
BinaryMembership binarize(const MembershipBasis& basis, BinarizeRule rule);

// Normalized variation of information for overlapping binary memberships:
// per-column conditional entropies, normalized, averaged, and minimized over
// column permutations (exhaustively up to K = 8, by optimal assignment
// beyond). 1 when x equals y up to a column permutation. Membership
// matrices with different column counts are zero-padded.
double nvi(const BinaryMembership& x, const BinaryMembership& y);

// Hard-assignment disagreement count: rows of zhat are assigned to their
// largest entry (ties to the lowest index) and compared with the single-
// membership truth, minimized over column permutations.
int misclustering(const Eigen::MatrixXd& zhat, const BinaryMembership& z_true);
int misclustering(const MembershipBasis& zhat, const BinaryMembership& z_true);

// Number of rows with two or more memberships.
int overlap_count(const BinaryMembership& b);

namespace detail {
// Minimized column-matching cost behind nvi, selectable between exhaustive
// permutation search and the assignment solver (they must agree).
double nvi_min_cost(const BinaryMembership& x, const BinaryMembership& y, bool use_assignment);
}  // namespace detail

}  // namespace specc

#endif
