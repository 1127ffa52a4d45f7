#ifndef SPECC_IO_UTIL_HPP
#define SPECC_IO_UTIL_HPP

#include <string>
#include <vector>

#include <Eigen/Core>

#include "specc/model_select.hpp"

namespace specc {

// Deterministic shortest-ish decimal rendering used by every CSV writer.
std::string format_double(double v);

struct MembershipTable {
  std::vector<std::string> labels;
  Eigen::MatrixXd values;
};

// CSV with header "node,c1,...,cK".
void write_membership_csv(const std::string& path, const std::vector<std::string>& labels,
                          const Eigen::MatrixXd& v);
MembershipTable read_membership_csv(const std::string& path);

// Rows of `table` reordered to the given label order; throws when a label
// has no row.
Eigen::MatrixXd align_membership(const MembershipTable& table,
                                 const std::vector<std::string>& labels);

// One row per path entry: lambda, bic, cv_mse (empty when not computed),
// support_size, overlap_count, selected flag.
void write_path_scores_csv(const std::string& path, const LambdaPath& lp, double best_lambda);

// Long-format per-node membership series: node, lambda, k, value.
void write_membership_paths_csv(const std::string& path, const std::vector<std::string>& labels,
                                const LambdaPath& lp);

// K-selection export: k, mean_mse, se, best_lambda.
void write_k_scores_csv(const std::string& path, const KSelection& sel);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace specc

#endif
