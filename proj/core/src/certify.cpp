#include "conecert/certify.hpp"

#include <algorithm>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <sstream>

#include "conecert/error.hpp"
#include "conecert/linalg.hpp"

namespace conecert {

const char* to_string(CertMethod m) {
  switch (m) {
    case CertMethod::HessianSign: return "HESSIAN_SIGN";
    case CertMethod::TopkisCross: return "TOPKIS_CROSS";
    case CertMethod::DifferentialMonotone: return "DIFFERENTIAL_MONOTONE";
    case CertMethod::LaplaceAtoms: return "LAPLACE_ATOMS";
  }
  return "?";
}

const char* to_string(CertVerdict v) {
  return v == CertVerdict::CertifiedNumeric ? "CERTIFIED_NUMERIC" : "REFUSED";
}

namespace {

Certificate start(CertMethod method, std::string property, const FunctionHandle& f,
                  std::size_t points, const CheckConfig& cfg) {
  Certificate c;
  c.method = method;
  c.property = std::move(property);
  c.target = f.label();
  c.sample_points = points;
  c.seed = cfg.seed;
  return c;
}

void refuse(Certificate& c, RefusalWitness w) {
  c.verdict = CertVerdict::Refused;
  c.refusal = std::move(w);
}

// f(0) >= 0 (nonneg_at_origin) or f(0) <= 0; true when the domain misses 0.
bool origin_sign_ok(const FunctionHandle& f, bool nonneg_at_origin, const Tolerance& tol,
                    Certificate& c) {
  if (!f.domain().contains_origin()) return true;
  const Point zero = f.domain().zero();
  const double v = f(zero);
  const double slack = nonneg_at_origin ? v : -v;
  if (slack >= -tol.threshold(std::abs(v))) return true;
  RefusalWitness w;
  w.point = zero;
  w.value = v;
  w.note = nonneg_at_origin ? "f(0) < 0" : "f(0) > 0";
  refuse(c, std::move(w));
  return false;
}

void require_vector_domain(const FunctionHandle& f, const char* what) {
  if (f.domain().point_kind() != PointKind::Vector) {
    throw CapabilityError(std::string(what) + " needs a vector domain; " + f.domain().name() +
                          " is a matrix cone (use differential monotonicity)");
  }
}

// Draws interior points until `wanted` of them evaluate cleanly, calling
// `visit` on each; a stencil DomainError resamples the point.
template <class Visit>
void sample_points(const FunctionHandle& f, std::size_t wanted, const CheckConfig& cfg,
                   Certificate& c, Visit&& visit) {
  std::uint64_t stream = 0;
  std::size_t done = 0;
  const auto budget = static_cast<std::size_t>(kSkipBudget * static_cast<double>(wanted));
  while (done < wanted) {
    Rng rng(cfg.seed, stream++);
    try {
      const bool keep_going = visit(rng);
      ++done;
      if (!keep_going) return;
    } catch (const DomainError&) {
      if (++c.resampled > budget) {
        std::ostringstream msg;
        msg << f.label() << ": " << c.resampled << " stencil points left the domain (budget "
            << kSkipBudget * 100 << "% of " << wanted << ")";
        throw NumericFailure(msg.str());
      }
    }
  }
}

Certificate hessian_scan(const FunctionHandle& f, bool nonpos, bool off_diagonal_only,
                         std::size_t points, const CheckConfig& cfg, Certificate c) {
  c.verdict = CertVerdict::CertifiedNumeric;
  sample_points(f, points, cfg, c, [&](Rng& rng) {
    const Point x = sample_interior(f.domain(), rng, cfg.scale);
    const DenseMatrix h = fd_hessian([&f](const Point& p) { return f(p); }, x);
    const double tol = kHessianSignTol * std::max(1.0, h.max_abs());
    for (std::size_t i = 0; i < h.rows(); ++i) {
      for (std::size_t j = 0; j < h.cols(); ++j) {
        if (off_diagonal_only && i == j) continue;
        const double v = h(i, j);
        if (nonpos ? v > tol : v < -tol) {
          RefusalWitness w;
          w.point = x;
          w.i = static_cast<int>(i);
          w.j = static_cast<int>(j);
          w.value = v;
          w.note = std::string("second partial has the wrong sign (") +
                   (nonpos ? "> 0" : "< 0") + ")";
          refuse(c, std::move(w));
          return false;
        }
      }
    }
    return true;
  });
  return c;
}

}  // namespace

Certificate certify_hessian_sign(const FunctionHandle& f, HessianSign sign, std::size_t points,
                                 const CheckConfig& cfg) {
  require_vector_domain(f, "Hessian-sign certification");
  const bool nonpos = sign == HessianSign::Nonpos;
  Certificate c = start(CertMethod::HessianSign,
                        nonpos ? "STRONG_SUBADD" : "STRONG_SUPERADD", f, points, cfg);
  if (!origin_sign_ok(f, nonpos, cfg.tolerance(), c)) return c;
  return hessian_scan(f, nonpos, false, points, cfg, std::move(c));
}

Certificate certify_topkis(const FunctionHandle& f, Modularity mode, std::size_t points,
                           const CheckConfig& cfg) {
  require_vector_domain(f, "Topkis certification");
  const bool sub = mode == Modularity::Submodular;
  Certificate c =
      start(CertMethod::TopkisCross, sub ? "SUBMODULAR" : "SUPERMODULAR", f, points, cfg);
  return hessian_scan(f, sub, true, points, cfg, std::move(c));
}

Certificate certify_differential_monotone(const FunctionHandle& f, Monotonicity direction,
                                          std::size_t pairs, const CheckConfig& cfg) {
  const bool increasing = direction == Monotonicity::Nondecreasing;
  Certificate c = start(CertMethod::DifferentialMonotone,
                        increasing ? "STRONG_SUPERADD" : "STRONG_SUBADD", f, pairs, cfg);
  const Tolerance tol = cfg.tolerance();
  if (!origin_sign_ok(f, !increasing, tol, c)) return c;
  c.verdict = CertVerdict::CertifiedNumeric;
  const RealFn fn = [&f](const Point& p) { return f(p); };
  sample_points(f, pairs, cfg, c, [&](Rng& rng) {
    const Point u = sample_interior(f.domain(), rng, cfg.scale);
    const Point v = sample(f.domain(), rng, cfg.scale);
    const Point w = sample_interior(f.domain(), rng, cfg.scale);
    const Point uv = u + v;
    const double d0 = fd_directional(fn, u, w);
    const double d1 = fd_directional(fn, uv, w);
    const double allowed = 1e-6 * std::max({1.0, std::abs(d0), std::abs(d1)}) +
                           tol.threshold(std::max(std::abs(d0), std::abs(d1)));
    const bool ok = increasing ? d1 >= d0 - allowed : d1 <= d0 + allowed;
    if (ok) return true;
    RefusalWitness r;
    r.point = u;
    r.other = uv;
    r.direction = w;
    r.value = d1 - d0;
    r.note = increasing ? "df(u+v)(w) < df(u)(w)" : "df(u+v)(w) > df(u)(w)";
    refuse(c, std::move(r));
    return false;
  });
  return c;
}

namespace {

void validate_dual_point(const ConeSpec& cone, const Point& u, std::size_t index) {
  const std::string where = "atom " + std::to_string(index);
  try {
    require_compatible(cone, u);
  } catch (const ShapeError& e) {
    throw CertificateError(where + ": " + e.what());
  }
  switch (cone.family()) {
    case ConeFamily::NonnegOrthant:
    case ConeFamily::PositiveOrthant:
    case ConeFamily::GridLpPositive:
    case ConeFamily::PsdCone:
    case ConeFamily::ProductCone:
      // These cones are self-dual under the flat pairing (the dual of the
      // open orthant is the closed one).
      if (!member(cone.closure(), u, 1e-12)) {
        throw CertificateError(where + ": dual point outside the dual cone of " + cone.name());
      }
      return;
    case ConeFamily::FullSpace:
      if (u.max_abs() != 0.0) {
        throw CertificateError(where + ": the dual of the full space is {0}");
      }
      return;
  }
}

}  // namespace

LaplaceCertificate::LaplaceCertificate(ConeSpec cone, std::vector<LaplaceAtom> atoms)
    : cone_(std::move(cone)), atoms_(std::move(atoms)) {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const LaplaceAtom& a = atoms_[i];
    if (!(a.weight >= 0.0) || !std::isfinite(a.weight)) {
      throw CertificateError("atom " + std::to_string(i) + ": weight must be finite and >= 0");
    }
    validate_dual_point(cone_, a.dual_point, i);
  }
}

double LaplaceCertificate::eval(const Point& x) const {
  double s = 0.0;
  for (const LaplaceAtom& a : atoms_) s += a.weight * std::exp(-inner(x, a.dual_point));
  return s;
}

FunctionHandle LaplaceCertificate::as_handle() const {
  const LaplaceCertificate self = *this;
  return FunctionHandle(cone_, [self](const Point& x) { return self.eval(x); }, "laplace");
}

double laplace_eval(const LaplaceCertificate& cert, const Point& x) { return cert.eval(x); }

FunctionHandle laplace_as_handle(const LaplaceCertificate& cert) { return cert.as_handle(); }

namespace {

constexpr unsigned kHaltonBases[] = {2, 3, 5, 7};

double radical_inverse(std::size_t i, unsigned base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (i > 0) {
    result += f * static_cast<double>(i % base);
    i /= base;
    f /= base;
  }
  return result;
}

// Halton nodes pushed through the inverse CDF of the density e^{-t^2}/sqrt(pi),
// node-major.
std::vector<double> gaussian_nodes(std::size_t n, std::size_t count) {
  std::vector<double> nodes(n * count);
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t d = 0; d < n; ++d) {
      const double u = radical_inverse(k + 1, kHaltonBases[d]);
      nodes[k * n + d] = -boost::math::erfc_inv(2.0 * u);
    }
  }
  return nodes;
}

double quadrature_with(const Point& a, const std::vector<double>& nodes) {
  const std::size_t n = a.dim();
  const std::size_t count = nodes.size() / n;
  double sum = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double* x = &nodes[k * n];
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) q += x[i] * a(i, j) * x[j];
    sum += std::exp(-q);
  }
  return sum / static_cast<double>(count);
}

void require_small(const Point& a) {
  if (!a.is_matrix()) throw ShapeError("gaussian quadrature needs a matrix");
  if (a.dim() == 0 || a.dim() > std::size(kHaltonBases)) {
    throw ParameterError("gaussian quadrature supports 1 <= N <= 4");
  }
}

}  // namespace

double gaussian_det_quadrature(const Point& a, std::size_t nodes) {
  require_small(a);
  if (nodes == 0) throw ParameterError("quadrature needs at least one node");
  return quadrature_with(a, gaussian_nodes(a.dim(), nodes));
}

CheckReport gaussian_detcert_check(std::size_t n, std::size_t matrices, const CheckConfig& cfg,
                                   std::size_t nodes) {
  require_small(Point::zero_matrix(n));
  if (nodes == 0) throw ParameterError("quadrature needs at least one node");
  const std::vector<double> table = gaussian_nodes(n, nodes);
  CheckReport r;
  r.property = "GAUSSIAN_DET";
  r.target = "det(I+A)^(-1/2)";
  r.config = cfg;
  r.trials_run = matrices;
  bool first = true;
  for (std::size_t m = 0; m < matrices; ++m) {
    Rng rng(cfg.seed, m);
    Point a = sample(ConeSpec::psd(n), rng, 1.0);
    const double top = eigenvalues(a).front();
    if (top > 0.0) a *= 2.0 * rng.uniform_open() / top;
    double log_sum = 0.0;
    for (double l : eigenvalues(a)) log_sum += std::log1p(std::max(l, 0.0));
    const double exact = std::exp(-0.5 * log_sum);
    const double quad = quadrature_with(a, table);
    const double slack = 1e-3 - std::abs(quad - exact) / exact;
    if (first || slack < r.worst_margin) r.worst_margin = slack;
    first = false;
    if (slack < 0.0 && (!r.witness || slack < r.witness->margin)) {
      Witness w;
      w.kind = InequalityKind::GaussianDet;
      w.points = {{"A", a}};
      w.coefficients = {static_cast<double>(nodes)};
      w.margin = slack;
      w.expression = "|quadrature - det(I+A)^(-1/2)| <= 1e-3 det(I+A)^(-1/2)";
      r.witness = w;
    }
  }
  r.verdict = r.witness ? Verdict::ViolationFound : Verdict::NoViolationFound;
  return r;
}

}  // namespace conecert
