#pragma once

// Shared helpers for the unit and acceptance suites. Reference computations
// here are written as independent straight-line code on plain containers;
// they must not call back into the library paths they check.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <Eigen/Dense>

namespace testutil {

// Straight-line LMS: error via left-to-right dot, one scale, coordinate-wise
// correction. Same operation order as the library states for its update, so
// matching runs must agree bit for bit.
inline std::vector<double> lms_step(const std::vector<double>& w,
                                    const std::vector<double>& u, double d,
                                    double mu) {
  double acc = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) acc += u[j] * w[j];
  const double err = d - acc;
  const double scale = mu * err;
  std::vector<double> out = w;
  for (std::size_t j = 0; j < w.size(); ++j) out[j] += scale * u[j];
  return out;
}

// Central finite differences of the instantaneous cost (d - u x)^2.
inline Eigen::VectorXd finite_diff_gradient(const Eigen::VectorXd& psi,
                                            const Eigen::RowVectorXd& u, double d,
                                            double h = 1e-5) {
  const auto cost = [&](const Eigen::VectorXd& x) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) acc += u[j] * x[j];
    const double e = d - acc;
    return e * e;
  };
  Eigen::VectorXd grad(psi.size());
  for (Eigen::Index j = 0; j < psi.size(); ++j) {
    Eigen::VectorXd hi = psi;
    Eigen::VectorXd lo = psi;
    hi[j] += h;
    lo[j] -= h;
    grad[j] = (cost(hi) - cost(lo)) / (2.0 * h);
  }
  return grad;
}

inline std::vector<double> ranks(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&x](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[idx[j]] == x[idx[j + 1]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson(ranks(x), ranks(y));
}

// Well-conditioned random SPD matrix G^T G + I.
inline Eigen::MatrixXd random_spd(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = gauss(rng);
  return g.transpose() * g + Eigen::MatrixXd::Identity(dim, dim);
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("idlms_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      table.rows.push_back(std::move(cells));
    }
  }
  return table;
}

inline double to_double(const std::string& s) { return std::stod(s); }

}  // namespace testutil
