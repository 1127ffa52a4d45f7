#include "specc/occam.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace specc {

namespace {

void validate_scenario(const ScenarioSpec& s) {
  if (s.n < 1) throw std::invalid_argument("scenario: n must be positive");
  if (s.k < 1) throw std::invalid_argument("scenario: k must be positive");
  if (s.overlap_fraction < 0.0 || s.overlap_fraction >= 1.0)
    throw std::invalid_argument("scenario: overlap_fraction must lie in [0, 1)");
  if (s.overlap_fraction > 0.0 && s.k < 2)
    throw std::invalid_argument("scenario: overlaps require k >= 2");
  if (s.rho < 0.0 || s.rho > 1.0)
    throw std::invalid_argument("scenario: rho must lie in [0, 1]");
  if (s.target_degree <= 0.0)
    throw std::invalid_argument("scenario: target_degree must be positive");
  if (s.hub_probability < 0.0 || s.hub_probability > 1.0)
    throw std::invalid_argument("scenario: hub_probability must lie in [0, 1]");
  if (s.hub_theta < 1.0) throw std::invalid_argument("scenario: hub_theta must be >= 1");
}

// ceil with a guard against p*n landing epsilon above an integer.
int ceil_count(double x) { return static_cast<int>(std::ceil(x - 1e-9)); }

}  // namespace

OccamParams build_scenario(const ScenarioSpec& spec) {
  validate_scenario(spec);
  const int n = spec.n;
  const int k = spec.k;

  OccamParams params;
  params.n = n;
  params.k = k;
  params.z = Eigen::MatrixXd::Zero(n, k);

  const int n_over = ceil_count(spec.overlap_fraction * n);
  int row = 0;

  // Overlap rows: the equal-weight triple pattern only exists for k = 3;
  // every other overlap row is split over one community pair.
  if (k == 3) {
    const int n_triple = n_over / 4;
    for (int i = 0; i < n_triple; ++i, ++row) params.z.row(row).setConstant(1.0 / 3.0);
  }
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) pairs.emplace_back(a, b);
  const int n_pair = n_over - row;
  if (n_pair > 0) {
    const int npairs = static_cast<int>(pairs.size());
    const int base = n_pair / npairs;
    const int extra = n_pair % npairs;
    for (int p = 0; p < npairs; ++p) {
      const int count = base + (p < extra ? 1 : 0);
      for (int i = 0; i < count; ++i, ++row) {
        params.z(row, pairs[p].first) = 0.5;
        params.z(row, pairs[p].second) = 0.5;
      }
    }
  }

  // Pure rows, split equally across communities.
  const int n_pure = n - n_over;
  const int pure_base = n_pure / k;
  const int pure_extra = n_pure % k;
  for (int c = 0; c < k; ++c) {
    const int count = pure_base + (c < pure_extra ? 1 : 0);
    for (int i = 0; i < count; ++i, ++row) params.z(row, c) = 1.0;
  }

  params.b = (1.0 - spec.rho) * Eigen::MatrixXd::Identity(k, k) +
             spec.rho * Eigen::MatrixXd::Ones(k, k);

  params.theta = Eigen::VectorXd::Ones(n);
  if (spec.hub_probability > 0.0) {
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < n; ++i)
      if (unif(rng) < spec.hub_probability) params.theta[i] = spec.hub_theta;
    params.theta *= static_cast<double>(n) / params.theta.sum();
  }

  params.alpha = calibrate_alpha(params.theta, params.z, params.b, spec.target_degree);

  // Feasibility: every implied edge probability must be a probability.
  const Eigen::MatrixXd w = params.theta.asDiagonal() * params.z;
  const Eigen::MatrixXd wb = w * params.b;
  double max_p = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) max_p = std::max(max_p, params.alpha * wb.row(i).dot(w.row(j)));
  if (max_p > 1.0 + 1e-12)
    throw std::invalid_argument("scenario infeasible: alpha=" + std::to_string(params.alpha) +
                                " gives max edge probability " + std::to_string(max_p));
  return params;
}

double calibrate_alpha(const Eigen::VectorXd& theta, const Eigen::MatrixXd& z,
                       const Eigen::MatrixXd& b, double target_degree) {
  if (target_degree <= 0.0) throw std::invalid_argument("calibrate_alpha: degree must be positive");
  const int n = static_cast<int>(theta.size());
  const Eigen::MatrixXd w = theta.asDiagonal() * z;
  const Eigen::VectorXd u = w.colwise().sum();
  const Eigen::MatrixXd wb = w * b;
  // sum_{i != j} theta_i theta_j z_i' B z_j, via the full sum minus diagonal.
  double total = u.dot(b * u);
  for (int i = 0; i < n; ++i) total -= wb.row(i).dot(w.row(i));
  if (total <= 0.0) throw std::invalid_argument("calibrate_alpha: zero expected-degree denominator");
  return target_degree * n / total;
}

Eigen::MatrixXd expected_adjacency(const OccamParams& params) {
  const Eigen::MatrixXd w = params.theta.asDiagonal() * params.z;
  Eigen::MatrixXd p = params.alpha * (w * params.b * w.transpose());
  p.diagonal().setZero();
  const double lo = p.minCoeff(), hi = p.maxCoeff();
  if (lo < -1e-12 || hi > 1.0 + 1e-12)
    throw std::invalid_argument("expected_adjacency: entries outside [0, 1]");
  return p;
}

SparseGraph sample_adjacency(const OccamParams& params, std::uint64_t seed) {
  const int n = params.n;
  const Eigen::MatrixXd w = params.theta.asDiagonal() * params.z;
  const Eigen::MatrixXd wb = w * params.b;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double pij = params.alpha * wb.row(i).dot(w.row(j));
      if (pij < -1e-12 || pij > 1.0 + 1e-12)
        throw std::invalid_argument("sample_adjacency: edge probability " + std::to_string(pij) +
                                    " outside [0, 1]");
      if (unif(rng) < pij) edges.emplace_back(i, j);
    }
  }
  return SparseGraph::from_edges(n, std::move(edges));
}

PlantedPartition planted_partition(int n, int k, double p, double q,
                                   const std::vector<int>& block_sizes, std::uint64_t seed) {
  if (static_cast<int>(block_sizes.size()) != k)
    throw std::invalid_argument("planted_partition: need one block size per community");
  int total = 0;
  for (int s : block_sizes) {
    if (s <= 0) throw std::invalid_argument("planted_partition: block sizes must be positive");
    total += s;
  }
  if (total != n) throw std::invalid_argument("planted_partition: block sizes must sum to n");
  if (q < 0.0 || p > 1.0 || q > p)
    throw std::invalid_argument("planted_partition: need 0 <= q <= p <= 1");

  std::vector<int> block(n);
  int at = 0;
  for (int c = 0; c < k; ++c)
    for (int i = 0; i < block_sizes[c]; ++i) block[at++] = c;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (unif(rng) < (block[i] == block[j] ? p : q)) edges.emplace_back(i, j);

  PlantedPartition out;
  out.graph = SparseGraph::from_edges(n, std::move(edges));
  out.z_true = Eigen::MatrixXd::Zero(n, k);
  for (int i = 0; i < n; ++i) out.z_true(i, block[i]) = 1.0;
  return out;
}

namespace {

ScenarioSpec scenario_apply(const nlohmann::json& obj) {
  ScenarioSpec s;
  for (const auto& [key, value] : obj.items()) {
    if (key == "n") s.n = value.get<int>();
    else if (key == "k") s.k = value.get<int>();
    else if (key == "overlap_fraction") s.overlap_fraction = value.get<double>();
    else if (key == "rho") s.rho = value.get<double>();
    else if (key == "target_degree") s.target_degree = value.get<double>();
    else if (key == "hub_probability") s.hub_probability = value.get<double>();
    else if (key == "hub_theta") s.hub_theta = value.get<double>();
    else if (key == "seed") s.seed = value.get<std::uint64_t>();
    else throw std::invalid_argument("scenario: unknown key '" + key + "'");
  }
  validate_scenario(s);
  return s;
}

}  // namespace

ScenarioSpec scenario_from_string(const std::string& text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    return scenario_apply(nlohmann::json::parse(text));

  // key=value lines; '#' starts a comment.
  nlohmann::json obj = nlohmann::json::object();
  std::istringstream in(text);
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("scenario parse error at line " + std::to_string(lineno) +
                               ": expected key=value");
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::runtime_error("scenario parse error at line " + std::to_string(lineno));
    if (key == "n" || key == "k") obj[key] = std::stoi(value);
    else if (key == "seed") obj[key] = std::stoull(value);
    else obj[key] = std::stod(value);
  }
  return scenario_apply(obj);
}

ScenarioSpec scenario_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_string(buf.str());
}

}  // namespace specc
