#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "conecert/point.hpp"

namespace conecert {

// Plain dense row-major matrix; used where symmetry is not guaranteed
// (eigenvector bases, finite-difference Hessians).
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_point(const Point& symmetric);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  DenseMatrix transposed() const;
  double frobenius() const;
  double max_abs() const;

  // Symmetrizes (A + A^T)/2 and returns a matrix Point.
  Point to_symmetric_point() const;

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct EigenDecomposition {
  // Nonincreasing.
  std::vector<double> eigenvalues;
  // Column k pairs with eigenvalues[k].
  DenseMatrix eigenvectors;
  int sweeps = 0;
};

// Cyclic Jacobi. Sweeps until the off-diagonal Frobenius mass is at most
// 1e-13 * ||A||_F; throws NumericFailure after 100 sweeps.
EigenDecomposition sym_eig(const Point& a);
std::vector<double> eigenvalues(const Point& a);

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = false;
  bool hi_open = false;

  bool contains(double t) const;
  std::string to_string() const;
};

struct ScalarFunction {
  std::string name;
  std::function<double(double)> eval;
  Interval domain;
  std::function<double(double)> d1;  // optional
  std::function<double(double)> d2;  // optional

  double operator()(double t) const { return eval(t); }

  static ScalarFunction identity();
  static ScalarFunction square();
  static ScalarFunction sqrt();
  static ScalarFunction log();
  static ScalarFunction exp();
  static ScalarFunction power(double p);  // t^p on [0, inf)
};

// Eigenvalues within 1e-12 below a closed lower domain endpoint are clamped
// onto it; anything else outside the domain raises DomainError.
inline constexpr double kEigenClampWindow = 1e-12;

Point matrix_function(const ScalarFunction& f, const Point& a);

double det(const Point& a);
double log_det(const Point& a);
// Sum of lambda^p; 0^p := 0. Non-integer p requires a PSD argument.
double trace_pow(const Point& a, double p);
double vn_entropy(const Point& a);
// p >= 1, or p = infinity for the spectral radius.
double schatten_norm(const Point& a, double p);

// True iff lambda_i(A) <= lambda_i(B) + tol for the nonincreasing
// eigenvalue lists.
bool weyl_check(const Point& a, const Point& b, double tol);

using RealFn = std::function<double(const Point&)>;

// Central differences. h <= 0 selects the default step:
// 1e-5*max(1,||x||_inf) for gradients and directional derivatives,
// 1e-4*max(1,||x||_inf) for Hessians. Gradients and Hessians need vector
// points; directional derivatives work for matrices as well.
Point fd_gradient(const RealFn& f, const Point& x, double h = 0.0);
DenseMatrix fd_hessian(const RealFn& f, const Point& x, double h = 0.0);
double fd_directional(const RealFn& f, const Point& x, const Point& w, double h = 0.0);

// Lanczos approximation (g = 7, 9 terms) with reflection below 1/2.
double gamma_fn(double x);

}  // namespace conecert
