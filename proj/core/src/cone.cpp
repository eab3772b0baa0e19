#include "conecert/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "conecert/error.hpp"
#include "conecert/linalg.hpp"

namespace conecert {

const char* to_string(ConeFamily family) {
  switch (family) {
    case ConeFamily::NonnegOrthant: return "NonnegOrthant";
    case ConeFamily::PositiveOrthant: return "PositiveOrthant";
    case ConeFamily::FullSpace: return "FullSpace";
    case ConeFamily::PsdCone: return "PsdCone";
    case ConeFamily::ProductCone: return "ProductCone";
    case ConeFamily::GridLpPositive: return "GridLpPositive";
  }
  return "?";
}

ConeSpec ConeSpec::nonneg_orthant(std::size_t n) { return {ConeFamily::NonnegOrthant, n}; }
ConeSpec ConeSpec::positive_orthant(std::size_t n) { return {ConeFamily::PositiveOrthant, n}; }
ConeSpec ConeSpec::full_space(std::size_t n) { return {ConeFamily::FullSpace, n}; }
ConeSpec ConeSpec::psd(std::size_t n) { return {ConeFamily::PsdCone, n}; }

ConeSpec ConeSpec::product(std::vector<ConeSpec> factors) {
  if (factors.empty()) throw ShapeError("product cone needs at least one factor");
  std::size_t total = 0;
  for (const ConeSpec& f : factors) total += f.flat_size();
  ConeSpec c(ConeFamily::ProductCone, total);
  c.factors_ = std::move(factors);
  return c;
}

ConeSpec ConeSpec::grid_lp(std::size_t m, double p, double h) {
  if (!(p >= 1.0)) throw ShapeError("grid L^p cone needs p >= 1");
  if (!(h > 0.0)) throw ShapeError("grid L^p cone needs step h > 0");
  ConeSpec c(ConeFamily::GridLpPositive, m);
  c.grid_p_ = p;
  c.grid_h_ = h;
  return c;
}

PointKind ConeSpec::point_kind() const {
  return family_ == ConeFamily::PsdCone ? PointKind::Matrix : PointKind::Vector;
}

std::size_t ConeSpec::flat_size() const {
  return family_ == ConeFamily::PsdCone ? dim_ * dim_ : dim_;
}

bool ConeSpec::supports_lattice() const {
  switch (family_) {
    case ConeFamily::NonnegOrthant:
    case ConeFamily::PositiveOrthant:
    case ConeFamily::FullSpace:
    case ConeFamily::GridLpPositive:
      return true;
    case ConeFamily::PsdCone:
      return false;
    case ConeFamily::ProductCone:
      return std::all_of(factors_.begin(), factors_.end(),
                         [](const ConeSpec& f) { return f.supports_lattice(); });
  }
  return false;
}

Point ConeSpec::zero() const {
  return point_kind() == PointKind::Matrix ? Point::zero_matrix(dim_) : Point::zeros(dim_);
}

ConeSpec ConeSpec::closure() const {
  if (family_ == ConeFamily::PositiveOrthant) return nonneg_orthant(dim_);
  if (family_ == ConeFamily::ProductCone) {
    std::vector<ConeSpec> closed;
    for (const ConeSpec& f : factors_) closed.push_back(f.closure());
    return product(std::move(closed));
  }
  return *this;
}

std::string ConeSpec::name() const {
  std::ostringstream out;
  out << to_string(family_) << "(";
  if (family_ == ConeFamily::ProductCone) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) out << ", ";
      out << factors_[i].name();
    }
  } else if (family_ == ConeFamily::GridLpPositive) {
    out << dim_ << ", p=" << grid_p_ << ", h=" << grid_h_;
  } else {
    out << dim_;
  }
  out << ")";
  return out.str();
}

void require_compatible(const ConeSpec& cone, const Point& x) {
  if (x.kind() != cone.point_kind() || x.dim() != cone.dim()) {
    throw ShapeError("point " + x.shape_string() + " is incompatible with cone " + cone.name());
  }
}

namespace {

bool psd_member(const Point& m, double tol) {
  const std::vector<double> lambda = eigenvalues(m);
  return lambda.back() >= -tol * std::max(1.0, frobenius_norm(m));
}

bool member_flat(const ConeSpec& cone, std::span<const double> x, double tol) {
  switch (cone.family()) {
    case ConeFamily::NonnegOrthant:
    case ConeFamily::GridLpPositive:
      return std::all_of(x.begin(), x.end(), [tol](double v) { return v >= -tol; });
    case ConeFamily::PositiveOrthant:
      return std::all_of(x.begin(), x.end(), [](double v) { return v > 0.0; });
    case ConeFamily::FullSpace:
      return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
    case ConeFamily::PsdCone: {
      const std::size_t n = cone.dim();
      return psd_member(Point::matrix(n, std::vector<double>(x.begin(), x.end())), tol);
    }
    case ConeFamily::ProductCone: {
      std::size_t offset = 0;
      for (const ConeSpec& f : cone.factors()) {
        const std::size_t len = f.flat_size();
        if (!member_flat(f, x.subspan(offset, len), tol)) return false;
        offset += len;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

bool member(const ConeSpec& cone, const Point& x, double tol) {
  require_compatible(cone, x);
  if (cone.family() == ConeFamily::PsdCone) return psd_member(x, tol);
  return member_flat(cone, x.flat(), tol);
}

bool leq(const ConeSpec& cone, const Point& x, const Point& y, double tol) {
  require_compatible(cone, x);
  require_compatible(cone, y);
  return member(cone, y - x, tol);
}

std::pair<Point, Point> meet_join(const ConeSpec& cone, const Point& x, const Point& y) {
  if (!cone.supports_lattice()) {
    throw CapabilityError("cone " + cone.name() + " has no lattice operations");
  }
  require_compatible(cone, x);
  require_compatible(cone, y);
  Point lo = x;
  Point hi = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lo[i] = std::min(x[i], y[i]);
    hi[i] = std::max(x[i], y[i]);
  }
  return {lo, hi};
}

bool comonotonic(const Point& u, const Point& v, double tol) {
  require_same_shape(u, v, "comonotonic");
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      if ((u[i] - u[j]) * (v[i] - v[j]) < -tol) return false;
  return true;
}

namespace {

void fill_orthant(std::span<double> out, Rng& rng, double scale, double zero_probability) {
  for (double& v : out) {
    const double coin = rng.uniform();
    const double g = std::abs(rng.gaussian()) * scale;
    v = coin < zero_probability ? 0.0 : g;
  }
}

void fill_psd(std::span<double> out, std::size_t n, Rng& rng, double scale) {
  std::vector<double> g(n * n);
  for (double& v : g) v = rng.gaussian();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += g[i * n + k] * g[j * n + k];
      s *= scale / static_cast<double>(n);
      out[i * n + j] = s;
      out[j * n + i] = s;
    }
  }
}

void fill(const ConeSpec& cone, std::span<double> out, Rng& rng, double scale,
          double zero_probability, bool interior) {
  const double floor = interior ? 1e-3 * scale : 0.0;
  switch (cone.family()) {
    case ConeFamily::NonnegOrthant:
    case ConeFamily::GridLpPositive:
      fill_orthant(out, rng, scale, interior ? 0.0 : zero_probability);
      for (double& v : out) v += floor;
      return;
    case ConeFamily::PositiveOrthant:
      fill_orthant(out, rng, scale, 0.0);
      for (double& v : out) v += std::max(floor, kPositiveFloor * scale);
      return;
    case ConeFamily::FullSpace:
      for (double& v : out) v = rng.gaussian() * scale;
      return;
    case ConeFamily::PsdCone:
      fill_psd(out, cone.dim(), rng, scale);
      if (interior)
        for (std::size_t i = 0; i < cone.dim(); ++i) out[i * cone.dim() + i] += floor;
      return;
    case ConeFamily::ProductCone: {
      std::size_t offset = 0;
      for (const ConeSpec& f : cone.factors()) {
        const std::size_t len = f.flat_size();
        fill(f, out.subspan(offset, len), rng, scale, zero_probability, interior);
        offset += len;
      }
      return;
    }
  }
}

void require_scale(double scale) {
  if (!(scale > 0.0)) throw DomainError("sampling scale must be positive");
}

}  // namespace

Point sample(const ConeSpec& cone, Rng& rng, double scale, double zero_probability) {
  require_scale(scale);
  Point x = cone.zero();
  fill(cone, x.flat(), rng, scale, zero_probability, false);
  return x;
}

Point sample_interior(const ConeSpec& cone, Rng& rng, double scale) {
  require_scale(scale);
  Point x = cone.zero();
  fill(cone, x.flat(), rng, scale, 0.0, true);
  return x;
}

std::pair<Point, Point> sample_comonotone_pair(std::size_t n, Rng& rng, double scale) {
  require_scale(scale);
  if (n == 0) throw ShapeError("comonotone pair needs n >= 1");
  const ConeSpec orthant = ConeSpec::nonneg_orthant(n);
  Point u = sample(orthant, rng, scale);
  Point v = sample(orthant, rng, scale);
  std::vector<double> su(u.flat().begin(), u.flat().end());
  std::vector<double> sv(v.flat().begin(), v.flat().end());
  std::sort(su.begin(), su.end());
  std::sort(sv.begin(), sv.end());
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  for (std::size_t k = 0; k < n; ++k) {
    u[perm[k]] = su[k];
    v[perm[k]] = sv[k];
  }
  return {u, v};
}

}  // namespace conecert
