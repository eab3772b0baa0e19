#include "conecert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "conecert/error.hpp"

namespace conecert {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_point(const Point& symmetric) {
  if (!symmetric.is_matrix()) throw ShapeError("expected a matrix point");
  const std::size_t n = symmetric.dim();
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = symmetric(i, j);
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::frobenius() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Point DenseMatrix::to_symmetric_point() const {
  if (rows_ != cols_) throw ShapeError("symmetric point needs a square matrix");
  Point p = Point::zero_matrix(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      p.set_sym(i, j, 0.5 * ((*this)(i, j) + (*this)(j, i)));
  return p;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols_ != b.rows_) throw ShapeError("matrix product with mismatched inner dimension");
  DenseMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix difference shape");
  DenseMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTol = 1e-13;

double off_diagonal_mass(const DenseMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition sym_eig(const Point& input) {
  if (!input.is_matrix()) throw ShapeError("sym_eig needs a matrix point");
  const std::size_t n = input.dim();
  DenseMatrix a = DenseMatrix::from_point(input);
  DenseMatrix v = DenseMatrix::identity(n);
  const double norm = a.frobenius();

  int sweep = 0;
  while (off_diagonal_mass(a) > kOffDiagonalTol * norm) {
    if (sweep == kMaxSweeps) {
      throw NumericFailure("Jacobi eigensolver did not converge in " +
                           std::to_string(kMaxSweeps) + " sweeps");
    }
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // A <- J^T A J with J the (p,q) rotation.
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenDecomposition out;
  out.sweeps = sweep;
  out.eigenvalues.resize(n);
  out.eigenvectors = DenseMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

std::vector<double> eigenvalues(const Point& a) { return sym_eig(a).eigenvalues; }

bool Interval::contains(double t) const {
  const bool above = lo_open ? t > lo : t >= lo;
  const bool below = hi_open ? t < hi : t <= hi;
  return above && below;
}

std::string Interval::to_string() const {
  std::ostringstream out;
  out << (lo_open ? "(" : "[") << lo << ", " << hi << (hi_open ? ")" : "]");
  return out.str();
}

ScalarFunction ScalarFunction::identity() {
  return {"identity", [](double t) { return t; }, {}, [](double) { return 1.0; },
          [](double) { return 0.0; }};
}

ScalarFunction ScalarFunction::square() {
  return {"square", [](double t) { return t * t; }, {}, [](double t) { return 2.0 * t; },
          [](double) { return 2.0; }};
}

ScalarFunction ScalarFunction::sqrt() {
  return {"sqrt", [](double t) { return std::sqrt(t); }, Interval{0.0, INFINITY, false, true},
          nullptr, nullptr};
}

ScalarFunction ScalarFunction::log() {
  return {"log", [](double t) { return std::log(t); },
          Interval{kEigenClampWindow, INFINITY, true, true}, [](double t) { return 1.0 / t; },
          [](double t) { return -1.0 / (t * t); }};
}

ScalarFunction ScalarFunction::exp() {
  return {"exp", [](double t) { return std::exp(t); }, {}, [](double t) { return std::exp(t); },
          [](double t) { return std::exp(t); }};
}

ScalarFunction ScalarFunction::power(double p) {
  return {"pow(" + std::to_string(p) + ")",
          [p](double t) { return t == 0.0 ? 0.0 : std::pow(t, p); },
          Interval{0.0, INFINITY, false, true}, nullptr, nullptr};
}

namespace {

// Applies the clamping window and the domain check to one eigenvalue.
double admit_eigenvalue(const Interval& domain, double lambda, const std::string& fname) {
  if (domain.contains(lambda)) return lambda;
  if (!domain.lo_open && lambda < domain.lo && lambda >= domain.lo - kEigenClampWindow) {
    return domain.lo;
  }
  std::ostringstream msg;
  msg << "eigenvalue " << lambda << " outside the domain " << domain.to_string() << " of "
      << fname;
  throw DomainError(msg.str());
}

std::vector<double> psd_eigenvalues(const Point& a, const char* what) {
  std::vector<double> lambda = eigenvalues(a);
  for (double& l : lambda) {
    if (l < 0.0) {
      if (l < -kEigenClampWindow) {
        std::ostringstream msg;
        msg << what << " needs a positive semidefinite argument; eigenvalue " << l;
        throw DomainError(msg.str());
      }
      l = 0.0;
    }
  }
  return lambda;
}

}  // namespace

Point matrix_function(const ScalarFunction& f, const Point& a) {
  const EigenDecomposition eig = sym_eig(a);
  const std::size_t n = a.dim();
  std::vector<double> fl(n);
  for (std::size_t k = 0; k < n; ++k) {
    fl[k] = f.eval(admit_eigenvalue(f.domain, eig.eigenvalues[k], f.name));
  }
  Point out = Point::zero_matrix(n);
  const DenseMatrix& q = eig.eigenvectors;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += q(i, k) * fl[k] * q(j, k);
      out.set_sym(i, j, s);
    }
  }
  return out;
}

double det(const Point& a) {
  double d = 1.0;
  for (double l : eigenvalues(a)) d *= l;
  return d;
}

double log_det(const Point& a) {
  double s = 0.0;
  for (double l : eigenvalues(a)) {
    if (!(l > kEigenClampWindow)) {
      std::ostringstream msg;
      msg << "log_det needs a positive definite argument; eigenvalue " << l;
      throw DomainError(msg.str());
    }
    s += std::log(l);
  }
  return s;
}

double trace_pow(const Point& a, double p) {
  const bool integral = std::floor(p) == p;
  const std::vector<double> lambda = integral ? eigenvalues(a) : psd_eigenvalues(a, "trace_pow");
  double s = 0.0;
  for (double l : lambda) {
    if (l == 0.0) continue;  // 0^p := 0
    s += integral ? std::pow(l, p) : std::pow(std::max(l, 0.0), p);
  }
  return s;
}

double vn_entropy(const Point& a) {
  double s = 0.0;
  for (double l : psd_eigenvalues(a, "vn_entropy")) {
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

double schatten_norm(const Point& a, double p) {
  const std::vector<double> lambda = eigenvalues(a);
  if (std::isinf(p)) {
    double m = 0.0;
    for (double l : lambda) m = std::max(m, std::abs(l));
    return m;
  }
  if (!(p >= 1.0)) throw DomainError("Schatten norm needs p >= 1");
  double s = 0.0;
  for (double l : lambda) s += std::pow(std::abs(l), p);
  return std::pow(s, 1.0 / p);
}

bool weyl_check(const Point& a, const Point& b, double tol) {
  require_same_shape(a, b, "weyl_check");
  const std::vector<double> la = eigenvalues(a);
  const std::vector<double> lb = eigenvalues(b);
  for (std::size_t i = 0; i < la.size(); ++i) {
    if (la[i] > lb[i] + tol) return false;
  }
  return true;
}

namespace {

double default_step(const Point& x, double factor) { return factor * std::max(1.0, x.max_abs()); }

void require_vector(const Point& x, const char* what) {
  if (x.is_matrix()) {
    throw CapabilityError(std::string(what) +
                          " works on vector points; use fd_directional for matrices");
  }
}

}  // namespace

Point fd_gradient(const RealFn& f, const Point& x, double h) {
  require_vector(x, "fd_gradient");
  if (h <= 0.0) h = default_step(x, 1e-5);
  Point g = Point::zeros(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    Point up = x;
    Point down = x;
    up[i] += h;
    down[i] -= h;
    g[i] = (f(up) - f(down)) / (2.0 * h);
  }
  return g;
}

DenseMatrix fd_hessian(const RealFn& f, const Point& x, double h) {
  require_vector(x, "fd_hessian");
  if (h <= 0.0) h = default_step(x, 1e-4);
  const std::size_t n = x.dim();
  DenseMatrix hess(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      auto at = [&](double si, double sj) {
        Point p = x;
        p[i] += si * h;
        p[j] += sj * h;
        return f(p);
      };
      const double v = ((at(1, 1) + at(-1, -1)) - (at(1, -1) + at(-1, 1))) / (4.0 * h * h);
      hess(i, j) = v;
      hess(j, i) = v;
    }
  }
  return hess;
}

double fd_directional(const RealFn& f, const Point& x, const Point& w, double h) {
  require_same_shape(x, w, "fd_directional");
  if (h <= 0.0) h = default_step(x, 1e-5) / std::max(1.0, w.max_abs());
  return (f(x + h * w) - f(x - h * w)) / (2.0 * h);
}

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {0.99999999999980993,     676.5203681218851,
                                -1259.1392167224028,     771.32342877765313,
                                -176.61502916214059,     12.507343278686905,
                                -0.13857109526572012,    9.9843695780195716e-6,
                                1.5056327351493116e-7};

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) throw DomainError("gamma needs x > 0, got " + std::to_string(x));
  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
  }
  const double z = x - 1.0;
  double series = kLanczos[0];
  for (int i = 1; i < 9; ++i) series += kLanczos[i] / (z + i);
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::exp((z + 0.5) * std::log(t) - t) * series;
}

}  // namespace conecert
