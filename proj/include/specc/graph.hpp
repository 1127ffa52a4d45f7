#ifndef SPECC_GRAPH_HPP
#define SPECC_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace specc {

// Symmetric binary adjacency structure in CSR form. Immutable after
// construction; no self-loops, no duplicate edges, indices in [0, n).
class SparseGraph {
public:
  SparseGraph() = default;

  // Builds from a list of (i, j) pairs. Self-loops are dropped, duplicates
  // collapsed, and both directions stored. Labels, when given, must have
  // size n; otherwise nodes are labeled by their index.
  static SparseGraph from_edges(int n, std::vector<std::pair<int, int>> edges,
                                std::vector<std::string> labels = {});

  int node_count() const { return n_; }
  std::int64_t edge_count() const { return m_; }  // unordered pairs

  int degree(int i) const { return static_cast<int>(row_ptr_[i + 1] - row_ptr_[i]); }
  std::span<const int> neighbors(int i) const {
    return {col_idx_.data() + row_ptr_[i], col_idx_.data() + row_ptr_[i + 1]};
  }
  bool has_edge(int i, int j) const;

  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::int64_t>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }

  Eigen::MatrixXd to_dense() const;

private:
  int n_ = 0;
  std::int64_t m_ = 0;
  std::vector<std::int64_t> row_ptr_{0};
  std::vector<int> col_idx_;
  std::vector<std::string> labels_;
};

struct DegreeSummary {
  std::vector<int> degrees;
  double mean_degree = 0.0;
  int max_degree = 0;
};

enum class EdgeListFormat { Auto, Whitespace, Comma };

// Parses "u v" (or "u,v") lines into a graph. Node tokens are arbitrary
// strings compacted to dense indices in order of first appearance; lines
// starting with '#' are skipped. Directed input is symmetrized by union.
// Throws std::runtime_error on malformed lines (with line number) and on
// input containing no edges.
SparseGraph load_edge_list(std::istream& in, EdgeListFormat format = EdgeListFormat::Auto);
SparseGraph load_edge_list_file(const std::string& path, EdgeListFormat format = EdgeListFormat::Auto);

// Writes one "label_i label_j" line per unordered edge, i < j, ascending.
void write_edge_list(std::ostream& out, const SparseGraph& g);

// Induced subgraph on the largest connected component, reindexed to
// [0, n'). Ties between equal-sized components go to the one containing
// the smallest original index.
SparseGraph largest_connected_component(const SparseGraph& g);

DegreeSummary degree_summary(const SparseGraph& g);

}  // namespace specc

#endif
