#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "conecert/cone.hpp"
#include "conecert/diffops.hpp"
#include "conecert/point.hpp"
#include "conecert/rng.hpp"

namespace conecert::oracle {

// Scalar function on the closed half line.
template <class F>
FunctionHandle half_line(F&& f, std::string label = "scalar") {
  return FunctionHandle(ConeSpec::nonneg_orthant(1),
                        [g = std::forward<F>(f)](const Point& x) { return g(x[0]); },
                        std::move(label));
}

inline Point scalar(double t) { return Point::vector({t}); }

inline Eigen::MatrixXd to_eigen(const Point& a) {
  Eigen::MatrixXd m(a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) = a(i, j);
  return m;
}

// Symmetric matrix with N(0,1) entries.
inline Point random_symmetric(std::size_t n, Rng& rng) {
  Point a = Point::zero_matrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a.set_sym(i, j, rng.gaussian());
  return a;
}

// G G^T for a Gaussian n x n G.
inline Point random_psd(std::size_t n, Rng& rng, double scale = 1.0) {
  Eigen::MatrixXd g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.gaussian();
  Eigen::MatrixXd m = scale * g * g.transpose();
  std::vector<double> rows(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i * n + j] = 0.5 * (m(i, j) + m(j, i));
  return Point::matrix(n, std::move(rows));
}

inline std::vector<double> eigen_eigenvalues_desc(const Point& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(a), Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + a.dim());
  return {v.rbegin(), v.rend()};
}

// Cofactor expansion along the first row.
inline double cofactor_det(const std::vector<std::vector<double>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  double total = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<double>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<double> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    total += (c % 2 == 0 ? 1.0 : -1.0) * m[0][c] * cofactor_det(minor);
  }
  return total;
}

inline double cofactor_det(const Point& a) {
  std::vector<std::vector<double>> m(a.dim(), std::vector<double>(a.dim()));
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m[i][j] = a(i, j);
  return cofactor_det(m);
}

inline bool near_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace conecert::oracle
