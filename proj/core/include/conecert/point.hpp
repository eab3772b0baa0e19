#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace conecert {

enum class PointKind { Vector, Matrix };

// An element of a cone: a dense real vector or a dense symmetric matrix.
// Matrices are stored row-major; arithmetic acts on the flattened storage,
// which for matrices is paired with the trace inner product <A,B> = tr(AB).
class Point {
 public:
  Point() = default;

  static Point vector(std::vector<double> coords);
  static Point vector(std::initializer_list<double> coords);
  static Point zeros(std::size_t n);
  // Throws ShapeError unless `rowmajor` has n*n entries and is symmetric to
  // 1e-12 * max(1, max|entry|).
  static Point matrix(std::size_t n, std::vector<double> rowmajor);
  static Point zero_matrix(std::size_t n);
  static Point identity(std::size_t n);
  static Point diagonal(std::span<const double> diag);
  static Point diagonal(std::initializer_list<double> diag);

  PointKind kind() const { return kind_; }
  bool is_matrix() const { return kind_ == PointKind::Matrix; }
  // Vector length, or matrix order.
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return data_.size(); }

  std::span<const double> flat() const { return data_; }
  std::span<double> flat() { return data_; }

  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  // Matrix entry setter that keeps the matrix symmetric.
  void set_sym(std::size_t i, std::size_t j, double v);

  bool same_shape(const Point& other) const {
    return kind_ == other.kind_ && dim_ == other.dim_;
  }

  Point& operator+=(const Point& rhs);
  Point& operator-=(const Point& rhs);
  Point& operator*=(double s);

  friend Point operator+(Point lhs, const Point& rhs) { return lhs += rhs; }
  friend Point operator-(Point lhs, const Point& rhs) { return lhs -= rhs; }
  friend Point operator*(Point lhs, double s) { return lhs *= s; }
  friend Point operator*(double s, Point rhs) { return rhs *= s; }
  friend bool operator==(const Point&, const Point&) = default;

  double max_abs() const;
  std::string shape_string() const;

 private:
  Point(PointKind kind, std::size_t dim, std::vector<double> data)
      : kind_(kind), dim_(dim), data_(std::move(data)) {}

  PointKind kind_ = PointKind::Vector;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

// Throws ShapeError when the shapes differ.
void require_same_shape(const Point& a, const Point& b, const char* what);

// Euclidean dot product for vectors, trace(AB) for symmetric matrices.
double inner(const Point& a, const Point& b);
double frobenius_norm(const Point& a);

}  // namespace conecert
