#include "specc/io_util.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace specc {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

std::ofstream open_for_write(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  return out;
}

}  // namespace

void write_membership_csv(const std::string& path, const std::vector<std::string>& labels,
                          const Eigen::MatrixXd& v) {
  if (static_cast<Eigen::Index>(labels.size()) != v.rows())
    throw std::invalid_argument("write_membership_csv: label count mismatch");
  std::ofstream out = open_for_write(path);
  out << "node";
  for (Eigen::Index k = 0; k < v.cols(); ++k) out << ",c" << (k + 1);
  out << "\n";
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    out << labels[i];
    for (Eigen::Index k = 0; k < v.cols(); ++k) out << ',' << format_double(v(i, k));
    out << "\n";
  }
}

MembershipTable read_membership_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open membership CSV: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty membership CSV: " + path);

  auto split = [](const std::string& s) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(s);
    while (std::getline(ss, field, ',')) {
      if (!field.empty() && field.back() == '\r') field.pop_back();
      fields.push_back(field);
    }
    return fields;
  };

  const auto header = split(line);
  if (header.size() < 2 || header[0] != "node")
    throw std::runtime_error("membership CSV must start with a 'node,...' header: " + path);
  const int k = static_cast<int>(header.size()) - 1;

  MembershipTable table;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line);
    if (static_cast<int>(fields.size()) != k + 1)
      throw std::runtime_error("membership CSV row with wrong field count: " + path);
    table.labels.push_back(fields[0]);
    std::vector<double> row(k);
    for (int c = 0; c < k; ++c) row[c] = std::stod(fields[c + 1]);
    rows.push_back(std::move(row));
  }
  table.values.resize(static_cast<Eigen::Index>(rows.size()), k);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int c = 0; c < k; ++c) table.values(static_cast<Eigen::Index>(i), c) = rows[i][c];
  return table;
}

Eigen::MatrixXd align_membership(const MembershipTable& table,
                                 const std::vector<std::string>& labels) {
  std::unordered_map<std::string, Eigen::Index> where;
  for (std::size_t i = 0; i < table.labels.size(); ++i)
    where.emplace(table.labels[i], static_cast<Eigen::Index>(i));
  Eigen::MatrixXd out(static_cast<Eigen::Index>(labels.size()), table.values.cols());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = where.find(labels[i]);
    if (it == where.end())
      throw std::runtime_error("label mismatch: node '" + labels[i] + "' has no membership row");
    out.row(static_cast<Eigen::Index>(i)) = table.values.row(it->second);
  }
  return out;
}

void write_path_scores_csv(const std::string& path, const LambdaPath& lp, double best_lambda) {
  std::ofstream out = open_for_write(path);
  out << "lambda,bic,cv_mse,support_size,overlap_count,selected\n";
  for (const PathEntry& e : lp.entries) {
    out << format_double(e.lambda) << ',' << format_double(e.bic) << ',';
    if (e.cv_mse) out << format_double(*e.cv_mse);
    out << ',' << e.support_size << ',' << e.overlap_count << ','
        << (e.lambda == best_lambda ? 1 : 0) << "\n";
  }
}

void write_membership_paths_csv(const std::string& path, const std::vector<std::string>& labels,
                                const LambdaPath& lp) {
  std::ofstream out = open_for_write(path);
  out << "node,lambda,k,value\n";
  for (const PathEntry& e : lp.entries) {
    const Eigen::MatrixXd& v = e.basis.v;
    for (Eigen::Index i = 0; i < v.rows(); ++i)
      for (Eigen::Index k = 0; k < v.cols(); ++k)
        out << labels[i] << ',' << format_double(e.lambda) << ',' << (k + 1) << ','
            << format_double(v(i, k)) << "\n";
  }
}

void write_k_scores_csv(const std::string& path, const KSelection& sel) {
  std::ofstream out = open_for_write(path);
  out << "k,mean_mse,se,best_lambda\n";
  for (const KScore& s : sel.scores)
    out << s.k << ',' << format_double(s.mean_mse) << ',' << format_double(s.se) << ','
        << format_double(s.best_lambda) << "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out = open_for_write(path);
  out << content;
}

}  // namespace specc
