#include "specc/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace specc {

SparseGraph SparseGraph::from_edges(int n, std::vector<std::pair<int, int>> edges,
                                    std::vector<std::string> labels) {
  if (n < 0) throw std::invalid_argument("SparseGraph: negative node count");
  if (!labels.empty() && static_cast<int>(labels.size()) != n)
    throw std::invalid_argument("SparseGraph: label count does not match node count");

  // Canonicalize: drop self-loops, order endpoints, dedupe.
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(edges.size());
  for (auto [i, j] : edges) {
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw std::invalid_argument("SparseGraph: edge index out of range");
    if (i == j) continue;
    pairs.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  SparseGraph g;
  g.n_ = n;
  g.m_ = static_cast<std::int64_t>(pairs.size());
  if (labels.empty()) {
    g.labels_.reserve(n);
    for (int i = 0; i < n; ++i) g.labels_.push_back(std::to_string(i));
  } else {
    g.labels_ = std::move(labels);
  }

  std::vector<std::int64_t> deg(n, 0);
  for (auto [i, j] : pairs) {
    ++deg[i];
    ++deg[j];
  }
  g.row_ptr_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) g.row_ptr_[i + 1] = g.row_ptr_[i] + deg[i];
  g.col_idx_.resize(static_cast<std::size_t>(2) * pairs.size());
  std::vector<std::int64_t> cursor(g.row_ptr_.begin(), g.row_ptr_.end() - 1);
  for (auto [i, j] : pairs) {
    g.col_idx_[cursor[i]++] = j;
    g.col_idx_[cursor[j]++] = i;
  }
  for (int i = 0; i < n; ++i)
    std::sort(g.col_idx_.begin() + g.row_ptr_[i], g.col_idx_.begin() + g.row_ptr_[i + 1]);
  return g;
}

bool SparseGraph::has_edge(int i, int j) const {
  auto nb = neighbors(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

Eigen::MatrixXd SparseGraph::to_dense() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j : neighbors(i)) a(i, j) = 1.0;
  return a;
}

namespace {

std::vector<std::string> split_line(const std::string& line, EdgeListFormat format) {
  std::vector<std::string> tokens;
  const bool comma = format == EdgeListFormat::Comma ||
                     (format == EdgeListFormat::Auto && line.find(',') != std::string::npos);
  std::string token;
  auto flush = [&] {
    if (!token.empty()) {
      tokens.push_back(token);
      token.clear();
    }
  };
  for (char c : line) {
    if ((comma && c == ',') || c == ' ' || c == '\t' || c == '\r') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return tokens;
}

}  // namespace

SparseGraph load_edge_list(std::istream& in, EdgeListFormat format) {
  std::unordered_map<std::string, int> index;
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> edges;

  auto intern = [&](const std::string& tok) {
    auto [it, inserted] = index.emplace(tok, static_cast<int>(labels.size()));
    if (inserted) labels.push_back(tok);
    return it->second;
  };

  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '#') continue;
    auto tokens = split_line(line, format);
    if (tokens.empty()) continue;
    if (tokens.size() != 2)
      throw std::runtime_error("edge list parse error at line " + std::to_string(lineno) +
                               ": expected 2 tokens, got " + std::to_string(tokens.size()));
    edges.emplace_back(intern(tokens[0]), intern(tokens[1]));
  }
  if (edges.empty()) throw std::runtime_error("edge list contains no edges");
  const int n = static_cast<int>(labels.size());
  return SparseGraph::from_edges(n, std::move(edges), std::move(labels));
}

SparseGraph load_edge_list_file(const std::string& path, EdgeListFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list file: " + path);
  return load_edge_list(in, format);
}

void write_edge_list(std::ostream& out, const SparseGraph& g) {
  for (int i = 0; i < g.node_count(); ++i)
    for (int j : g.neighbors(i))
      if (i < j) out << g.labels()[i] << ' ' << g.labels()[j] << '\n';
}

SparseGraph largest_connected_component(const SparseGraph& g) {
  const int n = g.node_count();
  std::vector<int> comp(n, -1);
  int comp_count = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = comp_count;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : g.neighbors(u)) {
        if (comp[v] == -1) {
          comp[v] = comp_count;
          stack.push_back(v);
        }
      }
    }
    ++comp_count;
  }

  // Pick the largest component; components are discovered in order of their
  // minimum index, so the first maximum realizes the tie-break rule.
  std::vector<int> sizes(comp_count, 0);
  for (int i = 0; i < n; ++i) ++sizes[comp[i]];
  int best = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  std::vector<int> new_index(n, -1);
  std::vector<std::string> labels;
  int n2 = 0;
  for (int i = 0; i < n; ++i) {
    if (comp[i] == best) {
      new_index[i] = n2++;
      labels.push_back(g.labels()[i]);
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    if (comp[i] != best) continue;
    for (int j : g.neighbors(i))
      if (i < j) edges.emplace_back(new_index[i], new_index[j]);
  }
  return SparseGraph::from_edges(n2, std::move(edges), std::move(labels));
}

DegreeSummary degree_summary(const SparseGraph& g) {
  DegreeSummary s;
  s.degrees.resize(g.node_count());
  for (int i = 0; i < g.node_count(); ++i) {
    s.degrees[i] = g.degree(i);
    s.max_degree = std::max(s.max_degree, s.degrees[i]);
  }
  s.mean_degree =
      g.node_count() == 0 ? 0.0 : 2.0 * static_cast<double>(g.edge_count()) / g.node_count();
  return s;
}

}  // namespace specc
