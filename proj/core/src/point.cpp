#include "conecert/point.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conecert/error.hpp"

namespace conecert {

Point Point::vector(std::vector<double> coords) {
  const std::size_t n = coords.size();
  return Point(PointKind::Vector, n, std::move(coords));
}

Point Point::vector(std::initializer_list<double> coords) {
  return vector(std::vector<double>(coords));
}

Point Point::zeros(std::size_t n) { return vector(std::vector<double>(n, 0.0)); }

Point Point::matrix(std::size_t n, std::vector<double> rowmajor) {
  if (rowmajor.size() != n * n) {
    throw ShapeError("matrix point of order " + std::to_string(n) + " needs " +
                     std::to_string(n * n) + " entries, got " + std::to_string(rowmajor.size()));
  }
  double biggest = 1.0;
  for (double v : rowmajor) biggest = std::max(biggest, std::abs(v));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(rowmajor[i * n + j] - rowmajor[j * n + i]) > 1e-12 * biggest) {
        throw ShapeError("matrix point is not symmetric at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
      }
    }
  }
  return Point(PointKind::Matrix, n, std::move(rowmajor));
}

Point Point::zero_matrix(std::size_t n) {
  return Point(PointKind::Matrix, n, std::vector<double>(n * n, 0.0));
}

Point Point::identity(std::size_t n) {
  Point p = zero_matrix(n);
  for (std::size_t i = 0; i < n; ++i) p.data_[i * n + i] = 1.0;
  return p;
}

Point Point::diagonal(std::span<const double> diag) {
  Point p = zero_matrix(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) p.data_[i * diag.size() + i] = diag[i];
  return p;
}

Point Point::diagonal(std::initializer_list<double> diag) {
  std::vector<double> d(diag);
  return diagonal(std::span<const double>(d));
}

void Point::set_sym(std::size_t i, std::size_t j, double v) {
  data_[i * dim_ + j] = v;
  data_[j * dim_ + i] = v;
}

Point& Point::operator+=(const Point& rhs) {
  require_same_shape(*this, rhs, "addition");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Point& Point::operator-=(const Point& rhs) {
  require_same_shape(*this, rhs, "subtraction");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Point& Point::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

double Point::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

std::string Point::shape_string() const {
  std::ostringstream out;
  if (kind_ == PointKind::Matrix) {
    out << "matrix(" << dim_ << "x" << dim_ << ")";
  } else {
    out << "vector(" << dim_ << ")";
  }
  return out.str();
}

void require_same_shape(const Point& a, const Point& b, const char* what) {
  if (!a.same_shape(b)) {
    throw ShapeError(std::string("incompatible shapes in ") + what + ": " + a.shape_string() +
                     " vs " + b.shape_string());
  }
}

double inner(const Point& a, const Point& b) {
  require_same_shape(a, b, "inner product");
  double s = 0.0;
  auto x = a.flat();
  auto y = b.flat();
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double frobenius_norm(const Point& a) { return std::sqrt(inner(a, a)); }

}  // namespace conecert
