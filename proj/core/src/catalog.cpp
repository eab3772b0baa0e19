#include "conecert/catalog.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "conecert/error.hpp"

namespace conecert {

const char* to_string(PropertyLabel label) {
  switch (label) {
    case PropertyLabel::Subadd: return "SUBADD";
    case PropertyLabel::Superadd: return "SUPERADD";
    case PropertyLabel::StrongSubadd: return "STRONG_SUBADD";
    case PropertyLabel::StrongSuperadd: return "STRONG_SUPERADD";
    case PropertyLabel::SecondDiffNonneg: return "SECOND_DIFF_NONNEG";
    case PropertyLabel::SecondDiffNonpos: return "SECOND_DIFF_NONPOS";
    case PropertyLabel::Submodular: return "SUBMODULAR";
    case PropertyLabel::Supermodular: return "SUPERMODULAR";
    case PropertyLabel::CompletelyMonotone: return "COMPLETELY_MONOTONE";
    case PropertyLabel::ComonotoneStrongSuperadd: return "COMONOTONE_STRONG_SUPERADD";
  }
  return "?";
}

const char* cli_name(PropertyLabel label) {
  switch (label) {
    case PropertyLabel::Subadd: return "subadd";
    case PropertyLabel::Superadd: return "superadd";
    case PropertyLabel::StrongSubadd: return "strong-subadd";
    case PropertyLabel::StrongSuperadd: return "strong-superadd";
    case PropertyLabel::SecondDiffNonneg: return "second-diff-nonneg";
    case PropertyLabel::SecondDiffNonpos: return "second-diff-nonpos";
    case PropertyLabel::Submodular: return "submodular";
    case PropertyLabel::Supermodular: return "supermodular";
    case PropertyLabel::CompletelyMonotone: return "completely-monotone";
    case PropertyLabel::ComonotoneStrongSuperadd: return "comonotone-strong-superadd";
  }
  return "?";
}

namespace {

constexpr PropertyLabel kAllLabels[] = {
    PropertyLabel::Subadd,           PropertyLabel::Superadd,
    PropertyLabel::StrongSubadd,     PropertyLabel::StrongSuperadd,
    PropertyLabel::SecondDiffNonneg, PropertyLabel::SecondDiffNonpos,
    PropertyLabel::Submodular,       PropertyLabel::Supermodular,
    PropertyLabel::CompletelyMonotone, PropertyLabel::ComonotoneStrongSuperadd};

}  // namespace

std::optional<PropertyLabel> parse_property(std::string_view text) {
  for (PropertyLabel l : kAllLabels) {
    if (text == to_string(l) || text == cli_name(l)) return l;
  }
  return std::nullopt;
}

const char* to_string(LabelStatus status) {
  return status == LabelStatus::PaperAsserted ? "paper-asserted" : "paper-refuted-candidate";
}

std::vector<LabelClaim> close_labels(std::vector<LabelClaim> claims) {
  auto has = [&](PropertyLabel l) {
    return std::any_of(claims.begin(), claims.end(),
                       [l](const LabelClaim& c) { return c.label == l; });
  };
  const std::vector<LabelClaim> original = claims;
  for (const LabelClaim& c : original) {
    if (c.status != LabelStatus::PaperAsserted) continue;
    if (c.label == PropertyLabel::StrongSubadd) {
      if (!has(PropertyLabel::Subadd)) claims.push_back({PropertyLabel::Subadd, c.status});
      if (!has(PropertyLabel::SecondDiffNonpos))
        claims.push_back({PropertyLabel::SecondDiffNonpos, c.status});
    } else if (c.label == PropertyLabel::StrongSuperadd) {
      if (!has(PropertyLabel::Superadd)) claims.push_back({PropertyLabel::Superadd, c.status});
      if (!has(PropertyLabel::SecondDiffNonneg))
        claims.push_back({PropertyLabel::SecondDiffNonneg, c.status});
    }
  }
  return claims;
}

double param_number(const ParamMap& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw ParameterError("missing parameter '" + key + "'");
  if (const double* d = std::get_if<double>(&it->second)) return *d;
  if (const auto* v = std::get_if<std::vector<double>>(&it->second); v && v->size() == 1) {
    return (*v)[0];
  }
  throw ParameterError("parameter '" + key + "' must be a number");
}

std::vector<double> param_vector(const ParamMap& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw ParameterError("missing parameter '" + key + "'");
  if (const auto* v = std::get_if<std::vector<double>>(&it->second)) return *v;
  if (const double* d = std::get_if<double>(&it->second)) return {*d};
  throw ParameterError("parameter '" + key + "' must be a list of numbers");
}

std::string param_text(const ParamMap& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw ParameterError("missing parameter '" + key + "'");
  if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
  throw ParameterError("parameter '" + key + "' must be text");
}

bool CatalogEntry::is_scalar() const {
  if (!fixed_dim || default_dim != 1) return false;
  const ConeSpec d = domain(defaults, 1);
  return d.family() == ConeFamily::NonnegOrthant || d.family() == ConeFamily::PositiveOrthant;
}

namespace {

using Claims = std::vector<LabelClaim>;
using ScalarRule = std::function<double(double)>;

LabelClaim asserted(PropertyLabel l) { return {l, LabelStatus::PaperAsserted}; }
LabelClaim refuted(PropertyLabel l) { return {l, LabelStatus::PaperRefutedCandidate}; }

[[noreturn]] void bad_param(const std::string& id, const std::string& constraint) {
  throw ParameterError(id + ": " + constraint);
}

void require(bool ok, const std::string& id, const std::string& constraint) {
  if (!ok) bad_param(id, constraint);
}

std::function<Claims(const ParamMap&, std::size_t)> fixed_claims(Claims claims) {
  Claims closed = close_labels(std::move(claims));
  return [closed](const ParamMap&, std::size_t) { return closed; };
}

auto no_validation() {
  return [](const ParamMap&, std::size_t) {};
}

auto orthant(std::size_t) {
  return [](const ParamMap&, std::size_t n) { return ConeSpec::nonneg_orthant(n); };
}

// Scalar entry on the closed half-line.
CatalogEntry scalar(std::string id, std::string formula, std::string source, ParamMap defaults,
                    std::function<void(const ParamMap&, std::size_t)> validate,
                    std::function<ScalarRule(const ParamMap&)> make, Claims claims,
                    bool open_half_line = false) {
  CatalogEntry e;
  e.id = std::move(id);
  e.formula = std::move(formula);
  e.source = std::move(source);
  e.default_dim = 1;
  e.fixed_dim = true;
  e.defaults = std::move(defaults);
  e.domain = [open_half_line](const ParamMap&, std::size_t) {
    return open_half_line ? ConeSpec::positive_orthant(1) : ConeSpec::nonneg_orthant(1);
  };
  e.claims = fixed_claims(std::move(claims));
  e.validate = std::move(validate);
  e.rule = [make](const ParamMap& p, std::size_t) -> FunctionHandle::Rule {
    ScalarRule g = make(p);
    return [g](const Point& x) { return g(x[0]); };
  };
  return e;
}

double sum_of(const Point& x) {
  double s = 0.0;
  for (double v : x.flat()) s += v;
  return s;
}

// Elementary symmetric polynomial of degree two.
double e2(const Point& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) s += x[i] * x[j];
  return s;
}

bool is_nonneg_integer(double v) { return v >= 0.0 && std::floor(v) == v; }

bool det_cm_exponent(double beta, std::size_t n) {
  return (beta >= 0.0 && is_nonneg_integer(2.0 * beta)) ||
         beta >= (static_cast<double>(n) - 1.0) / 2.0;
}

std::vector<double> vector_param_or(const ParamMap& p, const std::string& key, std::size_t n,
                                    double fill) {
  std::vector<double> v = param_vector(p, key);
  if (v.empty()) v.assign(n, fill);
  return v;
}

// F(t) = int_0^t (1 + s^p)^{1/p} ds.
double hansen_primitive(double t, double p) {
  if (t <= 0.0) return 0.0;
  if (p == 1.0) return t + 0.5 * t * t;
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  auto integrand = [p](double s) { return std::pow(1.0 + std::pow(s, p), 1.0 / p); };
  return integrator.integrate(integrand, 0.0, t, 1e-13);
}

ScalarRule concave_profile(const std::string& name, const std::string& id) {
  if (name == "neg-sq") return [](double t) { return -t * t; };
  if (name == "log1p") return [](double t) { return std::log1p(t); };
  if (name == "neg-exp") return [](double t) { return -std::exp(t); };
  bad_param(id, "f must be one of neg-sq, log1p, neg-exp (concave profiles)");
}

ScalarRule convex_profile(const std::string& name, const std::string& id) {
  if (name == "sq") return [](double t) { return t * t; };
  if (name == "cosh") return [](double t) { return std::cosh(t); };
  if (name == "exp") return [](double t) { return std::exp(t); };
  bad_param(id, "f must be one of sq, cosh, exp (convex profiles)");
}

std::vector<Point> pencil_matrices(const ParamMap& p, std::size_t n) {
  const auto order = static_cast<std::size_t>(param_number(p, "order"));
  std::vector<double> flat = param_vector(p, "mats");
  std::vector<Point> mats;
  if (flat.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      Point a = Point::identity(order);
      const std::size_t k = i % order;
      a.set_sym(k, k, a(k, k) + static_cast<double>(i + 1));
      for (std::size_t r = 0; r < order; ++r)
        for (std::size_t c = r; c < order; ++c)
          a.set_sym(r, c, a(r, c) + 0.5 / static_cast<double>(order));
      mats.push_back(a);
    }
    return mats;
  }
  if (flat.size() != n * order * order) {
    bad_param("logdet-pencil", "mats needs n*order*order = " +
                                   std::to_string(n * order * order) + " numbers");
  }
  for (std::size_t i = 0; i < n; ++i) {
    mats.push_back(Point::matrix(
        order, std::vector<double>(flat.begin() + static_cast<std::ptrdiff_t>(i * order * order),
                                   flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * order * order))));
  }
  return mats;
}

std::vector<CatalogEntry> build_entries() {
  using PL = PropertyLabel;
  std::vector<CatalogEntry> out;
  const std::string concave_1d = "one-variable criterion: concave with f(0) >= 0";
  const std::string convex_1d = "one-variable criterion: convex with f(0) <= 0";

  // Concave scalar examples.
  out.push_back(scalar(
      "affine-power", "m*x + n + p*x^alpha", concave_1d,
      {{"m", 0.5}, {"n", 0.25}, {"p", 1.0}, {"alpha", 0.5}},
      [](const ParamMap& p, std::size_t) {
        const double a = param_number(p, "alpha");
        require(a >= 0.0 && a <= 1.0, "affine-power", "alpha must lie in [0, 1]");
        require(param_number(p, "n") >= 0.0, "affine-power", "n must be >= 0");
        require(param_number(p, "p") >= 0.0, "affine-power", "p must be >= 0");
      },
      [](const ParamMap& p) -> ScalarRule {
        const double m = param_number(p, "m"), n = param_number(p, "n"),
                     c = param_number(p, "p"), a = param_number(p, "alpha");
        return [=](double x) { return m * x + n + c * std::pow(x, a); };
      },
      {asserted(PL::StrongSubadd)}));
  out.push_back(scalar(
      "one-minus-sqrt1p", "1 - (1 + alpha*x^2)^(1/2)", concave_1d, {{"alpha", 1.0}},
      [](const ParamMap& p, std::size_t) {
        require(param_number(p, "alpha") > 0.0, "one-minus-sqrt1p", "alpha must be > 0");
      },
      [](const ParamMap& p) -> ScalarRule {
        const double a = param_number(p, "alpha");
        return [a](double x) { return 1.0 - std::sqrt(1.0 + a * x * x); };
      },
      {asserted(PL::StrongSubadd)}));
  out.push_back(scalar(
      "neg-xlogx-shift", "-(x + alpha) log(x + alpha)", concave_1d, {{"alpha", 0.5}},
      [](const ParamMap& p, std::size_t) {
        const double a = param_number(p, "alpha");
        require(a >= 0.0 && a <= 1.0, "neg-xlogx-shift", "alpha must lie in [0, 1]");
      },
      [](const ParamMap& p) -> ScalarRule {
        const double a = param_number(p, "alpha");
        return [a](double x) {
          const double t = x + a;
          return t == 0.0 ? 0.0 : -t * std::log(t);
        };
      },
      {asserted(PL::StrongSubadd)}));
  out.push_back(scalar("log1p", "log(1 + x)", concave_1d, {}, no_validation(),
                       [](const ParamMap&) -> ScalarRule { return [](double x) { return std::log1p(x); }; },
                       {asserted(PL::StrongSubadd)}));
  out.push_back(scalar(
      "neg-log-cosh", "-log(cosh x)", concave_1d, {}, no_validation(),
      [](const ParamMap&) -> ScalarRule {
        // log cosh x = x + log1p(e^{-2x}) - log 2 for x >= 0, stable for large x.
        return [](double x) { return -(x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2); };
      },
      {asserted(PL::StrongSubadd)}));
  out.push_back(scalar(
      "e-minus-1px-pow", "e - (1 + x)^(1/x), value 0 at x = 0", concave_1d, {}, no_validation(),
      [](const ParamMap&) -> ScalarRule {
        return [](double x) {
          if (x == 0.0) return 0.0;
          return std::numbers::e - std::exp(std::log1p(x) / x);
        };
      },
      {asserted(PL::StrongSubadd)}));
  out.push_back(scalar("one-minus-exp-neg", "1 - e^(-x)", concave_1d, {}, no_validation(),
                       [](const ParamMap&) -> ScalarRule { return [](double x) { return -std::expm1(-x); }; },
                       {asserted(PL::StrongSubadd)}));
  out.push_back(scalar("sigmoid", "(1 + e^(-x))^(-1)", concave_1d, {}, no_validation(),
                       [](const ParamMap&) -> ScalarRule {
                         return [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
                       },
                       {asserted(PL::StrongSubadd)}));

  // Convex scalar examples.
  out.push_back(scalar("half-sq-plus-log1p", "x^2/2 + log(1 + x)", convex_1d, {}, no_validation(),
                       [](const ParamMap&) -> ScalarRule {
                         return [](double x) { return 0.5 * x * x + std::log1p(x); };
                       },
                       {asserted(PL::StrongSuperadd)}));
  out.push_back(scalar("half-sq-minus-log1p", "x^2/2 - log(1 + x)", convex_1d, {}, no_validation(),
                       [](const ParamMap&) -> ScalarRule {
                         return [](double x) { return 0.5 * x * x - std::log1p(x); };
                       },
                       {asserted(PL::StrongSuperadd)}));
  out.push_back(scalar("half-sq-plus-sin", "x^2/2 + sin x", convex_1d, {}, no_validation(),
                       [](const ParamMap&) -> ScalarRule {
                         return [](double x) { return 0.5 * x * x + std::sin(x); };
                       },
                       {asserted(PL::StrongSuperadd)}));
  out.push_back(scalar("half-sq-minus-sin", "x^2/2 - sin x", convex_1d, {}, no_validation(),
                       [](const ParamMap&) -> ScalarRule {
                         return [](double x) { return 0.5 * x * x - std::sin(x); };
                       },
                       {asserted(PL::StrongSuperadd)}));
  out.push_back(scalar("half-sq-minus-cos", "x^2/2 - cos x", convex_1d, {}, no_validation(),
                       [](const ParamMap&) -> ScalarRule {
                         return [](double x) { return 0.5 * x * x - std::cos(x); };
                       },
                       {asserted(PL::StrongSuperadd)}));
  out.push_back(scalar("x-gamma-minus-1", "x*Gamma(x) - 1, value 0 at x = 0", convex_1d, {},
                       no_validation(),
                       [](const ParamMap&) -> ScalarRule {
                         return [](double x) { return gamma_fn(x + 1.0) - 1.0; };
                       },
                       {asserted(PL::StrongSuperadd)}));
  // f(0) = 1 > 0, so superadditivity fails at the origin; only convexity
  // (nonnegative second differences) survives.
  out.push_back(scalar("half-sq-plus-cos", "x^2/2 + cos x", convex_1d, {}, no_validation(),
                       [](const ParamMap&) -> ScalarRule {
                         return [](double x) { return 0.5 * x * x + std::cos(x); };
                       },
                       {asserted(PL::SecondDiffNonneg), refuted(PL::Superadd)}));
  out.push_back(scalar("reciprocal", "1/x on the open half-line",
                       "subadditive but convex, so not strongly subadditive", {}, no_validation(),
                       [](const ParamMap&) -> ScalarRule { return [](double x) { return 1.0 / x; }; },
                       {asserted(PL::Subadd), refuted(PL::StrongSubadd)},
                       /*open_half_line=*/true));

  // Multivariate examples on orthants.
  {
    CatalogEntry e;
    e.id = "shannon-entropy";
    e.formula = "-sum x_k log x_k";
    e.source = "separable sum of concave functions vanishing at 0";
    e.default_dim = 3;
    e.domain = orthant(0);
    e.claims = fixed_claims({asserted(PL::StrongSubadd)});
    e.validate = no_validation();
    e.rule = [](const ParamMap&, std::size_t) -> FunctionHandle::Rule {
      return [](const Point& x) {
        double s = 0.0;
        for (double v : x.flat())
          if (v > 0.0) s -= v * std::log(v);
        return s;
      };
    };
    e.analytic_hessian = [](const Point& x) {
      DenseMatrix h(x.size(), x.size());
      for (std::size_t i = 0; i < x.size(); ++i) h(i, i) = -1.0 / x[i];
      return h;
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "sq-norm";
    e.formula = "||x||^2";
    e.source = "second differences equal 2<x,y>";
    e.default_dim = 3;
    e.domain = orthant(0);
    e.claims = fixed_claims({asserted(PL::StrongSuperadd)});
    e.validate = no_validation();
    e.rule = [](const ParamMap&, std::size_t) -> FunctionHandle::Rule {
      return [](const Point& x) { return inner(x, x); };
    };
    e.analytic_hessian = [](const Point& x) {
      DenseMatrix h(x.size(), x.size());
      for (std::size_t i = 0; i < x.size(); ++i) h(i, i) = 2.0;
      return h;
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "inner-product";
    e.formula = "<x, y> on the product of two orthants";
    e.source = "bilinear form on a product cone";
    e.default_dim = 3;
    e.domain = [](const ParamMap&, std::size_t n) {
      return ConeSpec::product({ConeSpec::nonneg_orthant(n), ConeSpec::nonneg_orthant(n)});
    };
    e.claims = fixed_claims({asserted(PL::StrongSuperadd)});
    e.validate = no_validation();
    e.rule = [](const ParamMap&, std::size_t n) -> FunctionHandle::Rule {
      return [n](const Point& xy) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += xy[i] * xy[n + i];
        return s;
      };
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "concave-of-linear";
    e.formula = "f(<x, a>) for a scalar catalog profile f";
    e.source = "Hardy-Littlewood-Polya majorization";
    e.default_dim = 3;
    e.defaults = {{"inner", std::string("log1p")}, {"a", std::vector<double>{}}};
    e.domain = orthant(0);
    e.validate = [](const ParamMap& p, std::size_t n) {
      const CatalogEntry& inner_entry = lookup(param_text(p, "inner"));
      require(inner_entry.is_scalar(), "concave-of-linear", "inner must be a scalar entry");
      const Claims c = inner_entry.claims(inner_entry.defaults, 1);
      require(status_of(c, PL::StrongSubadd) == LabelStatus::PaperAsserted ||
                  status_of(c, PL::StrongSuperadd) == LabelStatus::PaperAsserted,
              "concave-of-linear",
              "inner must be concave with f(0) >= 0 or convex with f(0) <= 0");
      const std::vector<double> a = vector_param_or(p, "a", n, 1.0);
      require(a.size() == n, "concave-of-linear", "a must have one weight per coordinate");
      require(std::all_of(a.begin(), a.end(), [](double v) { return v >= 0.0; }),
              "concave-of-linear", "a must be nonnegative");
    };
    e.claims = [](const ParamMap& p, std::size_t) {
      const CatalogEntry& inner_entry = lookup(param_text(p, "inner"));
      const Claims c = inner_entry.claims(inner_entry.defaults, 1);
      if (status_of(c, PL::StrongSubadd) == LabelStatus::PaperAsserted)
        return close_labels({asserted(PL::StrongSubadd)});
      return close_labels({asserted(PL::StrongSuperadd)});
    };
    e.rule = [](const ParamMap& p, std::size_t n) -> FunctionHandle::Rule {
      const CatalogEntry& inner_entry = lookup(param_text(p, "inner"));
      const FunctionHandle::Rule g = inner_entry.rule(inner_entry.defaults, 1);
      const Point a = Point::vector(vector_param_or(p, "a", n, 1.0));
      return [g, a](const Point& x) { return g(Point::vector({inner(x, a)})); };
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "geomean2";
    e.formula = "sqrt(x1 x2)";
    e.source = "concave with f(0) = 0 yet not strongly subadditive in two variables";
    e.default_dim = 2;
    e.fixed_dim = true;
    e.domain = orthant(0);
    e.claims = fixed_claims({asserted(PL::Superadd), refuted(PL::StrongSubadd)});
    e.validate = no_validation();
    e.rule = [](const ParamMap&, std::size_t) -> FunctionHandle::Rule {
      return [](const Point& x) { return std::sqrt(x[0] * x[1]); };
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "pairwise-diff-convex";
    e.formula = "sum_{i<j} f(x_i - x_j), f convex";
    e.source = "Hessian-sign family; fails along x = y = e_i";
    e.default_dim = 2;
    e.defaults = {{"f", std::string("sq")}};
    e.domain = orthant(0);
    e.claims = fixed_claims({refuted(PL::StrongSubadd)});
    e.validate = [](const ParamMap& p, std::size_t) {
      convex_profile(param_text(p, "f"), "pairwise-diff-convex");
    };
    e.rule = [](const ParamMap& p, std::size_t) -> FunctionHandle::Rule {
      const ScalarRule f = convex_profile(param_text(p, "f"), "pairwise-diff-convex");
      return [f](const Point& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
          for (std::size_t j = i + 1; j < x.size(); ++j) s += f(x[i] - x[j]);
        return s;
      };
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "jensen-gap";
    e.formula = "f(sum lambda_i x_i) - sum lambda_i f(x_i), f concave";
    e.source = "Hessian-sign family; fails along x = y = e_i";
    e.default_dim = 2;
    e.defaults = {{"f", std::string("neg-sq")}, {"lambda", std::vector<double>{}}};
    e.domain = orthant(0);
    e.claims = fixed_claims({refuted(PL::StrongSubadd)});
    e.validate = [](const ParamMap& p, std::size_t n) {
      concave_profile(param_text(p, "f"), "jensen-gap");
      const std::vector<double> l = vector_param_or(p, "lambda", n, 1.0 / static_cast<double>(n));
      require(l.size() == n, "jensen-gap", "lambda must have one weight per coordinate");
      require(std::all_of(l.begin(), l.end(), [](double v) { return v >= 0.0; }), "jensen-gap",
              "lambda must be nonnegative");
    };
    e.rule = [](const ParamMap& p, std::size_t n) -> FunctionHandle::Rule {
      const ScalarRule f = concave_profile(param_text(p, "f"), "jensen-gap");
      const std::vector<double> l = vector_param_or(p, "lambda", n, 1.0 / static_cast<double>(n));
      return [f, l](const Point& x) {
        double mean = 0.0;
        double avg = 0.0;
        for (std::size_t i = 0; i < l.size(); ++i) {
          mean += l[i] * x[i];
          avg += l[i] * f(x[i]);
        }
        return f(mean) - avg;
      };
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "nonneg-poly";
    e.formula = "c*(sum x_i + sum_{i<=j} x_i x_j + prod x_i + (sum x_i)^deg)";
    e.source = "nonnegative coefficients, zero constant term";
    e.default_dim = 3;
    e.defaults = {{"deg", 3.0}, {"c", 1.0}};
    e.domain = orthant(0);
    e.claims = fixed_claims({asserted(PL::StrongSuperadd)});
    e.validate = [](const ParamMap& p, std::size_t) {
      const double d = param_number(p, "deg");
      require(d >= 1.0 && std::floor(d) == d, "nonneg-poly", "deg must be an integer >= 1");
      require(param_number(p, "c") >= 0.0, "nonneg-poly", "c must be >= 0");
    };
    e.rule = [](const ParamMap& p, std::size_t) -> FunctionHandle::Rule {
      const double c = param_number(p, "c");
      const int deg = static_cast<int>(param_number(p, "deg"));
      return [c, deg](const Point& x) {
        const double s = sum_of(x);
        double quad = 0.0;
        double prod = 1.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
          prod *= x[i];
          for (std::size_t j = i; j < x.size(); ++j) quad += x[i] * x[j];
        }
        return c * (s + quad + prod + std::pow(s, deg));
      };
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "lse";
    e.formula = "log((1/N) sum e^{x_k})";
    e.source = "Topkis: cross partials -e^{x_i}e^{x_j}/(sum e^{x_k})^2 < 0; Chebyshev for comonotone pairs";
    e.default_dim = 2;
    e.domain = orthant(0);
    e.claims = fixed_claims({asserted(PL::Submodular), asserted(PL::ComonotoneStrongSuperadd),
                             refuted(PL::StrongSubadd)});
    e.validate = no_validation();
    e.rule = [](const ParamMap&, std::size_t) -> FunctionHandle::Rule {
      return [](const Point& x) {
        double m = -INFINITY;
        for (double v : x.flat()) m = std::max(m, v);
        double s = 0.0;
        for (double v : x.flat()) s += std::exp(v - m);
        return m + std::log(s) - std::log(static_cast<double>(x.size()));
      };
    };
    e.analytic_hessian = [](const Point& x) {
      double m = -INFINITY;
      for (double v : x.flat()) m = std::max(m, v);
      std::vector<double> w(x.size());
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += (w[i] = std::exp(x[i] - m));
      DenseMatrix h(x.size(), x.size());
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
          h(i, j) = (i == j ? w[i] / s : 0.0) - (w[i] / s) * (w[j] / s);
      return h;
    };
    out.push_back(e);
  }

  // Grid L^p.
  {
    CatalogEntry e;
    e.id = "lp-power-norm";
    e.formula = "h * sum |f_i|^p on M grid points";
    e.source = "differential of ||f||_p^p is monotone on the positive cone";
    e.default_dim = 16;
    e.defaults = {{"p", 2.0}, {"h", 1.0 / 16.0}};
    e.domain = [](const ParamMap& p, std::size_t m) {
      return ConeSpec::grid_lp(m, param_number(p, "p"), param_number(p, "h"));
    };
    e.claims = fixed_claims({asserted(PL::StrongSuperadd)});
    e.validate = [](const ParamMap& p, std::size_t) {
      require(param_number(p, "p") > 1.0 && std::isfinite(param_number(p, "p")), "lp-power-norm",
              "p must lie in (1, inf)");
      require(param_number(p, "h") > 0.0, "lp-power-norm", "h must be > 0");
    };
    e.rule = [](const ParamMap& p, std::size_t) -> FunctionHandle::Rule {
      const double pw = param_number(p, "p");
      const double h = param_number(p, "h");
      return [pw, h](const Point& f) {
        double s = 0.0;
        for (double v : f.flat()) s += std::pow(std::abs(v), pw);
        return h * s;
      };
    };
    out.push_back(e);
  }

  // Matrix functions on the PSD cone.
  auto psd_entry = [](std::string id, std::string formula, std::string source) {
    CatalogEntry e;
    e.id = std::move(id);
    e.formula = std::move(formula);
    e.source = std::move(source);
    e.default_dim = 3;
    e.domain = [](const ParamMap&, std::size_t n) { return ConeSpec::psd(n); };
    e.validate = no_validation();
    return e;
  };
  {
    CatalogEntry e = psd_entry("det", "det A", "F. Zhang, Matrix Theory, Section 7.2, Exercise 36");
    e.claims = fixed_claims({asserted(PL::StrongSuperadd)});
    e.rule = [](const ParamMap&, std::size_t) -> FunctionHandle::Rule {
      return [](const Point& a) { return det(a); };
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "logdet-pencil";
    e.formula = "log det(sum x_i A_i), A_i positive definite";
    e.source = "differential monotonicity of log det along a pencil";
    e.default_dim = 2;
    e.defaults = {{"order", 2.0}, {"mats", std::vector<double>{}}};
    e.domain = [](const ParamMap&, std::size_t n) { return ConeSpec::positive_orthant(n); };
    // log det(sum x_i A_i) -> -inf at the origin and is not subadditive near
    // it; the second differences are nonpositive.
    e.claims = fixed_claims({asserted(PL::SecondDiffNonpos), refuted(PL::StrongSubadd),
                             refuted(PL::Subadd)});
    e.validate = [](const ParamMap& p, std::size_t n) {
      const double order = param_number(p, "order");
      require(order >= 1.0 && std::floor(order) == order, "logdet-pencil",
              "order must be an integer >= 1");
      const std::vector<Point> mats = pencil_matrices(p, n);
      for (std::size_t i = 0; i < mats.size(); ++i) {
        const double lmin = eigenvalues(mats[i]).back();
        if (!(lmin > kEigenClampWindow)) {
          std::ostringstream msg;
          msg << "A_" << i << " must be positive definite (smallest eigenvalue " << lmin << ")";
          bad_param("logdet-pencil", msg.str());
        }
      }
    };
    e.rule = [](const ParamMap& p, std::size_t n) -> FunctionHandle::Rule {
      const std::vector<Point> mats = pencil_matrices(p, n);
      return [mats](const Point& x) {
        Point m = Point::zero_matrix(mats.front().dim());
        for (std::size_t i = 0; i < mats.size(); ++i) m += x[i] * mats[i];
        return log_det(m);
      };
    };
    out.push_back(e);
  }
  {
    CatalogEntry e = psd_entry("trace-pow", "trace A^p",
                               "Bouhtou-Gaubert-Sagnol Lemma 5.3; Loewner-Heinz");
    e.defaults = {{"p", 0.5}};
    e.validate = [](const ParamMap& p, std::size_t) {
      const double pw = param_number(p, "p");
      require(pw >= 0.0 && pw <= 2.0, "trace-pow", "p must lie in [0, 2]");
    };
    e.claims = [](const ParamMap& p, std::size_t) {
      const double pw = param_number(p, "p");
      Claims c;
      if (pw <= 1.0) c.push_back(asserted(PL::StrongSubadd));
      if (pw >= 1.0) c.push_back(asserted(PL::StrongSuperadd));
      return close_labels(c);
    };
    e.rule = [](const ParamMap& p, std::size_t) -> FunctionHandle::Rule {
      const double pw = param_number(p, "p");
      return [pw](const Point& a) { return trace_pow(a, pw); };
    };
    out.push_back(e);
  }
  {
    CatalogEntry e = psd_entry("trace-hansen", "trace F(A), F(t) = int_0^t (1+s^p)^(1/p) ds",
                               "Hansen: (1+t^p)^(1/p) is operator monotone for p in (0,1]");
    e.defaults = {{"p", 0.5}};
    e.validate = [](const ParamMap& p, std::size_t) {
      const double pw = param_number(p, "p");
      require(pw > 0.0 && pw <= 1.0, "trace-hansen", "p must lie in (0, 1]");
    };
    e.claims = fixed_claims({asserted(PL::StrongSuperadd)});
    e.rule = [](const ParamMap& p, std::size_t) -> FunctionHandle::Rule {
      const double pw = param_number(p, "p");
      return [pw](const Point& a) {
        double s = 0.0;
        for (double l : eigenvalues(a)) s += hansen_primitive(std::max(l, 0.0), pw);
        return s;
      };
    };
    out.push_back(e);
  }
  {
    CatalogEntry e = psd_entry("vn-entropy", "-trace(A log A)",
                               "log t + 1 is operator monotone (Loewner-Heinz)");
    e.claims = fixed_claims({asserted(PL::StrongSubadd)});
    e.rule = [](const ParamMap&, std::size_t) -> FunctionHandle::Rule {
      return [](const Point& a) { return vn_entropy(a); };
    };
    out.push_back(e);
  }
  {
    CatalogEntry e = psd_entry("logdet", "log det A on positive definite matrices",
                               "claimed second-difference nonnegativity; fails at A = B = C = I");
    // The cited nonnegativity of the second differences does not survive
    // A = B = C = I (second difference N log(3/4)).
    e.claims = fixed_claims({refuted(PL::SecondDiffNonneg)});
    e.rule = [](const ParamMap&, std::size_t) -> FunctionHandle::Rule {
      return [](const Point& a) { return log_det(a); };
    };
    out.push_back(e);
  }
  {
    CatalogEntry e = psd_entry("det-recip-pow", "(det A)^(-beta) on positive definite matrices",
                               "Scott-Sokal Theorem 1.3");
    e.defaults = {{"beta", 1.0}};
    e.validate = [](const ParamMap& p, std::size_t) {
      require(param_number(p, "beta") >= 0.0, "det-recip-pow", "beta must be >= 0");
    };
    e.claims = [](const ParamMap& p, std::size_t n) {
      Claims c;
      c.push_back(det_cm_exponent(param_number(p, "beta"), n) ? asserted(PL::CompletelyMonotone)
                                                              : refuted(PL::CompletelyMonotone));
      return c;
    };
    e.rule = [](const ParamMap& p, std::size_t) -> FunctionHandle::Rule {
      const double beta = param_number(p, "beta");
      return [beta](const Point& a) {
        double s = 0.0;
        for (double l : eigenvalues(a)) {
          if (!(l > kEigenClampWindow)) throw DomainError("det-recip-pow needs A positive definite");
          s += std::log(l);
        }
        return std::exp(-beta * s);
      };
    };
    out.push_back(e);
  }
  {
    CatalogEntry e = psd_entry("det-shift-recip", "det(I + A)^(-beta) - 1",
                               "translate-and-center of a completely monotone function");
    e.defaults = {{"beta", 1.0}};
    e.validate = [](const ParamMap& p, std::size_t) {
      require(param_number(p, "beta") >= 0.0, "det-shift-recip", "beta must be >= 0");
    };
    e.claims = [](const ParamMap& p, std::size_t n) {
      Claims c;
      if (det_cm_exponent(param_number(p, "beta"), n)) c.push_back(asserted(PL::StrongSuperadd));
      return close_labels(c);
    };
    e.rule = [](const ParamMap& p, std::size_t) -> FunctionHandle::Rule {
      const double beta = param_number(p, "beta");
      return [beta](const Point& a) {
        double s = 0.0;
        for (double l : eigenvalues(a)) s += std::log1p(std::max(l, 0.0));
        return std::expm1(-beta * s);
      };
    };
    out.push_back(e);
  }

  // Completely monotone functions on orthants.
  {
    CatalogEntry e;
    e.id = "exp-neg-linear";
    e.formula = "exp(-<alpha, x>)";
    e.source = "Laplace transform of a point mass";
    e.default_dim = 3;
    e.defaults = {{"alpha", std::vector<double>{}}};
    e.domain = orthant(0);
    e.claims = fixed_claims({asserted(PL::CompletelyMonotone)});
    e.validate = [](const ParamMap& p, std::size_t n) {
      const std::vector<double> a = vector_param_or(p, "alpha", n, 1.0);
      require(a.size() == n, "exp-neg-linear", "alpha must have one rate per coordinate");
      require(std::all_of(a.begin(), a.end(), [](double v) { return v > 0.0; }),
              "exp-neg-linear", "alpha must be positive");
    };
    e.rule = [](const ParamMap& p, std::size_t n) -> FunctionHandle::Rule {
      const Point a = Point::vector(vector_param_or(p, "alpha", n, 1.0));
      return [a](const Point& x) { return std::exp(-inner(a, x)); };
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "inv-power-product";
    e.formula = "prod x_i^(-alpha_i) on the open orthant";
    e.source = "product of completely monotone powers";
    e.default_dim = 3;
    e.defaults = {{"alpha", std::vector<double>{}}};
    e.domain = [](const ParamMap&, std::size_t n) { return ConeSpec::positive_orthant(n); };
    e.claims = fixed_claims({asserted(PL::CompletelyMonotone)});
    e.validate = [](const ParamMap& p, std::size_t n) {
      const std::vector<double> a = vector_param_or(p, "alpha", n, 0.5);
      require(a.size() == n, "inv-power-product", "alpha must have one exponent per coordinate");
      require(std::all_of(a.begin(), a.end(), [](double v) { return v > 0.0; }),
              "inv-power-product", "alpha must be positive");
    };
    e.rule = [](const ParamMap& p, std::size_t n) -> FunctionHandle::Rule {
      const std::vector<double> a = vector_param_or(p, "alpha", n, 0.5);
      return [a](const Point& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s -= a[i] * std::log(x[i]);
        return std::exp(s);
      };
    };
    out.push_back(e);
  }
  out.push_back(scalar(
      "logistic-pow", "(1 + a e^(-x))^beta", "Scott-Sokal Example 2.5: CM iff beta in {0,1,2,...}",
      {{"a", 1.0}, {"beta", 2.0}},
      [](const ParamMap& p, std::size_t) {
        require(param_number(p, "a") > 0.0, "logistic-pow", "a must be > 0");
      },
      [](const ParamMap& p) -> ScalarRule {
        const double a = param_number(p, "a"), beta = param_number(p, "beta");
        return [a, beta](double x) { return std::pow(1.0 + a * std::exp(-x), beta); };
      },
      {}));
  out.back().claims = [](const ParamMap& p, std::size_t) {
    Claims c;
    c.push_back(is_nonneg_integer(param_number(p, "beta")) ? asserted(PL::CompletelyMonotone)
                                                           : refuted(PL::CompletelyMonotone));
    return c;
  };
  out.push_back(scalar(
      "logistic-pow-centered", "(1 + a e^(-x))^beta - (1 + a)^beta",
      "convex with value 0 at 0 for beta in {0} or [1, inf)", {{"a", 1.0}, {"beta", 1.5}},
      [](const ParamMap& p, std::size_t) {
        require(param_number(p, "a") > 0.0, "logistic-pow-centered", "a must be > 0");
      },
      [](const ParamMap& p) -> ScalarRule {
        const double a = param_number(p, "a"), beta = param_number(p, "beta");
        const double at0 = std::pow(1.0 + a, beta);
        return [a, beta, at0](double x) { return std::pow(1.0 + a * std::exp(-x), beta) - at0; };
      },
      {}));
  out.back().claims = [](const ParamMap& p, std::size_t) {
    const double beta = param_number(p, "beta");
    Claims c;
    if (beta == 0.0 || beta >= 1.0) c.push_back(asserted(PL::StrongSuperadd));
    return close_labels(c);
  };
  {
    CatalogEntry e;
    e.id = "elem-sym-4";
    e.formula = "(sum_{i<j<=4} x_i x_j)^(-beta) on the open orthant";
    e.source = "Scott-Sokal Corollary 1.6: CM iff beta = 0 or beta >= 1";
    e.default_dim = 4;
    e.fixed_dim = true;
    e.defaults = {{"beta", 1.0}};
    e.domain = [](const ParamMap&, std::size_t) { return ConeSpec::positive_orthant(4); };
    e.validate = [](const ParamMap& p, std::size_t) {
      require(param_number(p, "beta") >= 0.0, "elem-sym-4", "beta must be >= 0");
    };
    e.claims = [](const ParamMap& p, std::size_t) {
      const double beta = param_number(p, "beta");
      Claims c;
      c.push_back(beta == 0.0 || beta >= 1.0 ? asserted(PL::CompletelyMonotone)
                                             : refuted(PL::CompletelyMonotone));
      return c;
    };
    e.rule = [](const ParamMap& p, std::size_t) -> FunctionHandle::Rule {
      const double beta = param_number(p, "beta");
      return [beta](const Point& x) { return std::pow(e2(x), -beta); };
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "elem-sym-4-shifted";
    e.formula = "Phi(x + 1) - Phi(1), Phi = (sum_{i<j<=4} x_i x_j)^(-beta)";
    e.source = "translate-and-center of a completely monotone function";
    e.default_dim = 4;
    e.fixed_dim = true;
    e.defaults = {{"beta", 1.0}};
    e.domain = [](const ParamMap&, std::size_t) { return ConeSpec::nonneg_orthant(4); };
    e.validate = [](const ParamMap& p, std::size_t) {
      require(param_number(p, "beta") >= 0.0, "elem-sym-4-shifted", "beta must be >= 0");
    };
    e.claims = [](const ParamMap& p, std::size_t) {
      const double beta = param_number(p, "beta");
      Claims c;
      if (beta == 0.0 || beta >= 1.0) c.push_back(asserted(PL::StrongSuperadd));
      return close_labels(c);
    };
    e.rule = [](const ParamMap& p, std::size_t) -> FunctionHandle::Rule {
      const double beta = param_number(p, "beta");
      const double at_one = std::pow(6.0, -beta);
      return [beta, at_one](const Point& x) {
        Point shifted = x;
        for (double& v : shifted.flat()) v += 1.0;
        return std::pow(e2(shifted), -beta) - at_one;
      };
    };
    out.push_back(e);
  }
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& builtin_entries() {
  static const std::vector<CatalogEntry> entries = build_entries();
  return entries;
}

const CatalogEntry& lookup(std::string_view id) {
  for (const CatalogEntry& e : builtin_entries()) {
    if (e.id == id) return e;
  }
  std::ostringstream msg;
  msg << "unknown catalog id '" << id << "'; valid ids:";
  for (const CatalogEntry& e : builtin_entries()) msg << ' ' << e.id;
  throw LookupError(msg.str());
}

ParamMap resolve_params(const CatalogEntry& entry, const ParamMap& overrides) {
  ParamMap params = entry.defaults;
  for (const auto& [key, value] : overrides) {
    if (!params.contains(key)) {
      throw ParameterError(entry.id + ": unknown parameter '" + key + "'");
    }
    params[key] = value;
  }
  return params;
}

std::size_t resolve_dim(const CatalogEntry& entry, std::size_t dim) {
  if (dim == 0) return entry.default_dim;
  if (entry.fixed_dim && dim != entry.default_dim) {
    throw ParameterError(entry.id + ": dimension is fixed at " + std::to_string(entry.default_dim));
  }
  return dim;
}

FunctionHandle instantiate(const CatalogEntry& entry, const ParamMap& overrides, std::size_t dim) {
  const ParamMap params = resolve_params(entry, overrides);
  const std::size_t n = resolve_dim(entry, dim);
  entry.validate(params, n);
  return FunctionHandle(entry.domain(params, n), entry.rule(params, n), entry.id);
}

std::vector<LabelClaim> claims_for(const CatalogEntry& entry, const ParamMap& overrides,
                                   std::size_t dim) {
  const ParamMap params = resolve_params(entry, overrides);
  const std::size_t n = resolve_dim(entry, dim);
  entry.validate(params, n);
  return entry.claims(params, n);
}

std::optional<LabelStatus> status_of(const std::vector<LabelClaim>& claims, PropertyLabel label) {
  for (const LabelClaim& c : claims) {
    if (c.label == label) return c.status;
  }
  return std::nullopt;
}

}  // namespace conecert
