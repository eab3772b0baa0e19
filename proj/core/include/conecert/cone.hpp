#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "conecert/point.hpp"
#include "conecert/rng.hpp"

namespace conecert {

enum class ConeFamily {
  NonnegOrthant,
  PositiveOrthant,
  FullSpace,
  PsdCone,
  ProductCone,
  GridLpPositive,
};

const char* to_string(ConeFamily family);

// Descriptor of a convex cone. Product cones concatenate the flattened
// coordinates of their factors into one vector Point.
class ConeSpec {
 public:
  static ConeSpec nonneg_orthant(std::size_t n);
  static ConeSpec positive_orthant(std::size_t n);
  static ConeSpec full_space(std::size_t n);
  static ConeSpec psd(std::size_t n);
  static ConeSpec product(std::vector<ConeSpec> factors);
  // Nonnegative functions on m grid points, weight h per point, exponent p.
  static ConeSpec grid_lp(std::size_t m, double p, double h);

  ConeFamily family() const { return family_; }
  // Orthant/grid dimension, PSD matrix order, or total flat size of a product.
  std::size_t dim() const { return dim_; }
  const std::vector<ConeSpec>& factors() const { return factors_; }
  double grid_p() const { return grid_p_; }
  double grid_h() const { return grid_h_; }

  PointKind point_kind() const;
  std::size_t flat_size() const;
  bool supports_lattice() const;
  bool contains_origin() const { return family_ != ConeFamily::PositiveOrthant; }

  Point zero() const;
  // The closed cone generated by this one (open orthant -> closed orthant).
  ConeSpec closure() const;
  std::string name() const;

  friend bool operator==(const ConeSpec&, const ConeSpec&) = default;

 private:
  ConeSpec(ConeFamily family, std::size_t dim) : family_(family), dim_(dim) {}

  ConeFamily family_ = ConeFamily::NonnegOrthant;
  std::size_t dim_ = 0;
  std::vector<ConeSpec> factors_;
  double grid_p_ = 2.0;
  double grid_h_ = 1.0;
};

// Throws ShapeError when x cannot be an element of the cone's space.
void require_compatible(const ConeSpec& cone, const Point& x);

// Closed-cone membership within tol (orthant: x_i >= -tol; PSD:
// lambda_min >= -tol*max(1,||x||_F)). The positive orthant is open and
// needs every coordinate strictly positive.
bool member(const ConeSpec& cone, const Point& x, double tol);

// x <= y in the cone order, i.e. member(cone, y - x, tol).
bool leq(const ConeSpec& cone, const Point& x, const Point& y, double tol);

// Coordinatewise (x meet y, x join y). CapabilityError on non-lattice cones.
std::pair<Point, Point> meet_join(const ConeSpec& cone, const Point& x, const Point& y);

bool comonotonic(const Point& u, const Point& v, double tol);

inline constexpr double kBoundaryProbability = 0.2;
inline constexpr double kPositiveFloor = 1e-6;

// Random member of the cone. Orthant coordinates are |N(0, scale)| with each
// one zeroed with probability `zero_probability`; the open orthant adds a
// floor of 1e-6*scale instead of zeroing; PSD samples are G G^T scale/N.
Point sample(const ConeSpec& cone, Rng& rng, double scale,
             double zero_probability = kBoundaryProbability);

// Strict interior sample: no zeroed coordinates, plus a floor of
// 1e-3*scale (times I for PSD).
Point sample_interior(const ConeSpec& cone, Rng& rng, double scale);

// Two nonnegative vectors arranged by one shared random permutation.
std::pair<Point, Point> sample_comonotone_pair(std::size_t n, Rng& rng, double scale);

// Tolerance convention: q >= 0 passes iff q >= -(abs + rel * s), s being
// the largest absolute function value involved.
struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-12;
  double threshold(double value_scale) const { return abs + rel * value_scale; }
};

}  // namespace conecert
