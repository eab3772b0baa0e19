#include "conecert/checkers.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>

#include "conecert/certify.hpp"
#include "conecert/error.hpp"

namespace conecert {

const char* to_string(Verdict v) {
  return v == Verdict::ViolationFound ? "VIOLATION_FOUND" : "NO_VIOLATION_FOUND";
}

const char* to_string(InequalityKind kind) {
  switch (kind) {
    case InequalityKind::OriginNonneg: return "ORIGIN_NONNEG";
    case InequalityKind::OriginNonpos: return "ORIGIN_NONPOS";
    case InequalityKind::Subadd: return "SUBADD";
    case InequalityKind::Superadd: return "SUPERADD";
    case InequalityKind::SecondDiffNonpos: return "SECOND_DIFF_NONPOS";
    case InequalityKind::SecondDiffNonneg: return "SECOND_DIFF_NONNEG";
    case InequalityKind::Submodular: return "SUBMODULAR";
    case InequalityKind::Supermodular: return "SUPERMODULAR";
    case InequalityKind::CmSign: return "CM_SIGN";
    case InequalityKind::AlphaStrong: return "ALPHA_STRONG";
    case InequalityKind::LipschitzBox: return "LIPSCHITZ_BOX";
    case InequalityKind::RatioUpper: return "RATIO_UPPER";
    case InequalityKind::RatioLower: return "RATIO_LOWER";
    case InequalityKind::Chebyshev: return "CHEBYSHEV";
    case InequalityKind::TomicWeyl: return "TOMIC_WEYL";
    case InequalityKind::Popoviciu13: return "POPOVICIU_THREE_POINT";
    case InequalityKind::PopoviciuSymmetric: return "POPOVICIU_SYMMETRIZED";
    case InequalityKind::GaussianDet: return "GAUSSIAN_DET";
  }
  return "?";
}

const Point& Witness::at(const std::string& name) const {
  for (const NamedPoint& p : points) {
    if (p.name == name) return p.value;
  }
  throw LookupError("witness has no point named '" + name + "'");
}

namespace {

struct Eval {
  double slack = 0.0;
  double scale = 0.0;
};

double amax(std::initializer_list<double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

std::string expression_for(InequalityKind kind, int order) {
  switch (kind) {
    case InequalityKind::OriginNonneg: return "f(0) >= 0";
    case InequalityKind::OriginNonpos: return "f(0) <= 0";
    case InequalityKind::Subadd: return "f(x+y) <= f(x) + f(y)";
    case InequalityKind::Superadd: return "f(x+y) >= f(x) + f(y)";
    case InequalityKind::SecondDiffNonpos: return "f(x+y+z) - f(x+z) - f(y+z) + f(z) <= 0";
    case InequalityKind::SecondDiffNonneg: return "f(x+y+z) - f(x+z) - f(y+z) + f(z) >= 0";
    case InequalityKind::Submodular: return "f(x v y) + f(x ^ y) <= f(x) + f(y)";
    case InequalityKind::Supermodular: return "f(x v y) + f(x ^ y) >= f(x) + f(y)";
    case InequalityKind::CmSign:
      return "(-1)^" + std::to_string(order) + " D_x1..D_x" + std::to_string(order) +
             " f(base) >= 0";
    case InequalityKind::AlphaStrong: return "f(x+y+z) - f(x+z) - f(y+z) + f(z) >= alpha*x*y";
    case InequalityKind::LipschitzBox: return "|f(x+y+z) - f(x+z) - f(y+z) + f(z)| <= L*x*y";
    case InequalityKind::RatioUpper: return "(1+z)(1+x+y+z)/((1+x+z)(1+y+z)) <= e^(xy)";
    case InequalityKind::RatioLower: return "(1+z)(1+x+y+z)/((1+x+z)(1+y+z)) >= e^(-xy)";
    case InequalityKind::Chebyshev: return "<u,p><v,p> <= <uv,p>";
    case InequalityKind::TomicWeyl: return "sum f(a_k) <= sum f(b_k)";
    case InequalityKind::Popoviciu13: return "g(x+y+z) + g(z) >= g(x+z) + g(y+z), g = f o phi";
    case InequalityKind::PopoviciuSymmetric:
      return "(g(x)+g(y)+g(z))/3 + g(x+y+z) >= 2/3 (g(x+y)+g(y+z)+g(x+z)), g = f o phi";
    case InequalityKind::GaussianDet:
      return "|quadrature - det(I+A)^(-1/2)| <= 1e-3 det(I+A)^(-1/2)";
  }
  return "?";
}

Witness make_witness(InequalityKind kind, std::vector<NamedPoint> points, int order = 0,
                     std::vector<double> coefficients = {}) {
  Witness w;
  w.kind = kind;
  w.order = order;
  w.points = std::move(points);
  w.coefficients = std::move(coefficients);
  w.expression = expression_for(kind, order);
  return w;
}

Eval evaluate_free(const Witness& w) {
  switch (w.kind) {
    case InequalityKind::RatioUpper:
    case InequalityKind::RatioLower: {
      const double x = w.at("x")[0], y = w.at("y")[0], z = w.at("z")[0];
      const double r = double_inequality_ratio(x, y, z);
      if (w.kind == InequalityKind::RatioUpper) {
        const double e = std::exp(x * y);
        return {e - r, amax({e, r})};
      }
      const double e = std::exp(-x * y);
      return {r - e, amax({e, r})};
    }
    case InequalityKind::Chebyshev: {
      const Point& u = w.at("u");
      const Point& v = w.at("v");
      const Point& p = w.at("p");
      double up = 0.0, vp = 0.0, uvp = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        up += u[i] * p[i];
        vp += v[i] * p[i];
        uvp += u[i] * v[i] * p[i];
      }
      return {uvp - up * vp, amax({uvp, up * vp})};
    }
    case InequalityKind::GaussianDet: {
      const Point& a = w.at("A");
      const auto nodes = static_cast<std::size_t>(w.coefficients.at(0));
      double log_sum = 0.0;
      for (double l : eigenvalues(a)) log_sum += std::log1p(std::max(l, 0.0));
      const double exact = std::exp(-0.5 * log_sum);
      const double quad = gaussian_det_quadrature(a, nodes);
      return {1e-3 - std::abs(quad - exact) / exact, 1.0};
    }
    default:
      throw CapabilityError(std::string("witness kind ") + to_string(w.kind) +
                            " needs the function it was found for");
  }
}

Eval evaluate(const FunctionHandle& f, const Witness& w, const ScalarFunction* outer) {
  switch (w.kind) {
    case InequalityKind::OriginNonneg:
    case InequalityKind::OriginNonpos: {
      const double v = f(w.at("zero"));
      return {w.kind == InequalityKind::OriginNonneg ? v : -v, std::abs(v)};
    }
    case InequalityKind::Subadd:
    case InequalityKind::Superadd: {
      const Point& x = w.at("x");
      const Point& y = w.at("y");
      const double fx = f(x), fy = f(y), fxy = f(x + y);
      const double gap = (fx + fy) - fxy;
      return {w.kind == InequalityKind::Subadd ? gap : -gap, amax({fx, fy, fxy})};
    }
    case InequalityKind::SecondDiffNonpos:
    case InequalityKind::SecondDiffNonneg:
    case InequalityKind::AlphaStrong:
    case InequalityKind::LipschitzBox: {
      const Point& x = w.at("x");
      const Point& y = w.at("y");
      const Point& z = w.at("z");
      const double fxyz = f(x + y + z), fz = f(z), fxz = f(x + z), fyz = f(y + z);
      const double d = (fxyz + fz) - (fxz + fyz);
      const double s = amax({fxyz, fz, fxz, fyz});
      switch (w.kind) {
        case InequalityKind::SecondDiffNonneg: return {d, s};
        case InequalityKind::SecondDiffNonpos: return {-d, s};
        case InequalityKind::AlphaStrong: {
          const double c = w.coefficients.at(0) * x[0] * y[0];
          return {d - c, std::max(s, std::abs(c))};
        }
        default: {
          const double c = w.coefficients.at(0) * x[0] * y[0];
          return {c - std::abs(d), std::max(s, std::abs(c))};
        }
      }
    }
    case InequalityKind::Submodular:
    case InequalityKind::Supermodular: {
      const Point& x = w.at("x");
      const Point& y = w.at("y");
      const auto [lo, hi] = meet_join(f.domain(), x, y);
      const double fx = f(x), fy = f(y), fhi = f(hi), flo = f(lo);
      const double gap = (fx + fy) - (fhi + flo);
      return {w.kind == InequalityKind::Submodular ? gap : -gap, amax({fx, fy, fhi, flo})};
    }
    case InequalityKind::CmSign: {
      const Point& base = w.at("base");
      const double fb = f(base);
      if (w.order == 0) return {fb, std::abs(fb)};
      std::vector<Point> increments;
      Point far = base;
      for (int i = 1; i <= w.order; ++i) {
        increments.push_back(w.at("x" + std::to_string(i)));
        far += increments.back();
      }
      const double d = kth_diff(f, increments, base);
      return {w.order % 2 == 0 ? d : -d, amax({fb, f(far)})};
    }
    case InequalityKind::Popoviciu13:
    case InequalityKind::PopoviciuSymmetric: {
      if (outer == nullptr) {
        throw CapabilityError("Popoviciu witnesses need the outer convex function");
      }
      auto g = [&](const Point& p) {
        const double t = f(p);
        if (!outer->domain.contains(t)) {
          throw DomainError(outer->name + ": phi value outside " + outer->domain.to_string());
        }
        return (*outer)(t);
      };
      const Point& x = w.at("x");
      const Point& y = w.at("y");
      const Point& z = w.at("z");
      const bool reversed = !w.coefficients.empty() && w.coefficients[0] != 0.0;
      double slack = 0.0;
      double s = 0.0;
      if (w.kind == InequalityKind::Popoviciu13) {
        const double gxyz = g(x + y + z), gz = g(z), gxz = g(x + z), gyz = g(y + z);
        slack = (gxyz + gz) - (gxz + gyz);
        s = amax({gxyz, gz, gxz, gyz});
      } else {
        const double gx = g(x), gy = g(y), gz = g(z), gxyz = g(x + y + z);
        const double gxy = g(x + y), gyz = g(y + z), gxz = g(x + z);
        slack = ((gx + gy + gz) / 3.0 + gxyz) - (2.0 / 3.0) * (gxy + gyz + gxz);
        s = amax({gx, gy, gz, gxyz, gxy, gyz, gxz});
      }
      return {reversed ? -slack : slack, s};
    }
    default:
      return evaluate_free(w);
  }
}

struct Outcome {
  bool skipped = false;
  double slack = 0.0;
  double scale = 0.0;
  std::optional<Witness> witness;
};

using TrialFn = std::function<Outcome(std::size_t)>;
using EvalFn = std::function<Eval(const Witness&)>;

// Evaluates every candidate and keeps the one with the smallest slack.
Outcome pick_worst(const EvalFn& eval, std::vector<Witness> candidates) {
  Outcome out;
  bool first = true;
  for (Witness& w : candidates) {
    const Eval e = eval(w);
    if (first || e.slack < out.slack) {
      first = false;
      out.slack = e.slack;
      out.scale = e.scale;
      w.margin = e.slack;
      out.witness = std::move(w);
    }
  }
  return out;
}

CheckReport run_trials(std::string property, std::string target, const CheckConfig& cfg,
                       std::size_t count, const TrialFn& trial, bool enforce_skip_budget = true) {
  std::vector<Outcome> outcomes(count);
  auto run_one = [&](std::size_t i) {
    try {
      outcomes[i] = trial(i);
    } catch (const DomainError&) {
      outcomes[i] = Outcome{};
      outcomes[i].skipped = true;
    }
  };
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, cfg.threads), std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) run_one(i);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < count; i += threads) run_one(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errors)
      if (e) std::rethrow_exception(e);
  }

  CheckReport report;
  report.property = std::move(property);
  report.target = std::move(target);
  report.config = cfg;
  report.trials_run = count;
  const Tolerance tol = cfg.tolerance();
  bool seen = false;
  for (Outcome& o : outcomes) {
    if (o.skipped) {
      ++report.skipped;
      continue;
    }
    if (!seen || o.slack < report.worst_margin) report.worst_margin = o.slack;
    seen = true;
    const bool violating = o.slack < -tol.threshold(o.scale);
    if (violating && (!report.witness || o.slack < report.witness->margin)) {
      report.witness = std::move(o.witness);
    }
  }
  if (enforce_skip_budget &&
      static_cast<double>(report.skipped) > kSkipBudget * static_cast<double>(count)) {
    std::ostringstream msg;
    msg << report.target << ": " << report.skipped << " of " << count
        << " trials hit domain errors (budget " << kSkipBudget * 100 << "%)";
    throw NumericFailure(msg.str());
  }
  report.verdict = report.witness ? Verdict::ViolationFound : Verdict::NoViolationFound;
  return report;
}

void merge_into(CheckReport& into, CheckReport&& part) {
  if (into.trials_run == 0 && into.skipped == 0) {
    into.worst_margin = part.worst_margin;
  } else {
    into.worst_margin = std::min(into.worst_margin, part.worst_margin);
  }
  into.trials_run += part.trials_run;
  into.skipped += part.skipped;
  if (part.witness && (!into.witness || part.witness->margin < into.witness->margin)) {
    into.witness = std::move(part.witness);
  }
  into.verdict = into.witness ? Verdict::ViolationFound : Verdict::NoViolationFound;
}

Witness shrink_with(const EvalFn& eval, Witness w, const Tolerance& tol) {
  if (!(w.margin < 0.0)) return w;
  // Keep at least half the original violation, capped at unit strength.
  const double target = 0.5 * std::max(w.margin, -1.0);
  int steps = 0;
  auto attempt = [&](Witness candidate) {
    ++steps;
    try {
      const Eval e = eval(candidate);
      if (e.slack <= target && e.slack < -tol.threshold(e.scale)) {
        candidate.margin = e.slack;
        w = std::move(candidate);
        return true;
      }
    } catch (const DomainError&) {
    }
    return false;
  };
  bool changed = true;
  while (changed && steps < kShrinkStepCap) {
    changed = false;
    for (std::size_t p = 0; p < w.points.size() && steps < kShrinkStepCap; ++p) {
      // Snapping to zero is tried before halving so that coordinates the
      // violation does not depend on vanish instead of decaying.
      auto try_scale = [&](std::optional<std::size_t> coord) {
        for (double factor : {0.0, 0.5}) {
          Witness c = w;
          if (coord) {
            c.points[p].value[*coord] *= factor;
          } else {
            c.points[p].value *= factor;
          }
          if (attempt(std::move(c))) return true;
        }
        return false;
      };
      if (w.points[p].value.is_matrix()) {
        if (w.points[p].value.max_abs() != 0.0) changed |= try_scale(std::nullopt);
        continue;
      }
      for (std::size_t i = 0; i < w.points[p].value.size() && steps < kShrinkStepCap; ++i) {
        if (w.points[p].value[i] != 0.0) changed |= try_scale(i);
      }
    }
  }
  return w;
}

std::optional<InequalityKind> origin_kind(PropertyLabel p) {
  switch (p) {
    case PropertyLabel::Subadd:
    case PropertyLabel::StrongSubadd: return InequalityKind::OriginNonneg;
    case PropertyLabel::Superadd:
    case PropertyLabel::StrongSuperadd:
    case PropertyLabel::ComonotoneStrongSuperadd: return InequalityKind::OriginNonpos;
    default: return std::nullopt;
  }
}

void require_applicable(const FunctionHandle& f, PropertyLabel p, const CheckConfig& cfg) {
  const ConeSpec& d = f.domain();
  if ((p == PropertyLabel::Submodular || p == PropertyLabel::Supermodular) &&
      !d.supports_lattice()) {
    throw CapabilityError(std::string(to_string(p)) + " needs lattice operations; " + d.name() +
                          " has none");
  }
  if (p == PropertyLabel::ComonotoneStrongSuperadd &&
      d.family() != ConeFamily::NonnegOrthant && d.family() != ConeFamily::PositiveOrthant) {
    throw CapabilityError("comonotone sampling needs an orthant domain, got " + d.name());
  }
  if (p == PropertyLabel::CompletelyMonotone &&
      (cfg.order_cap < 1 || static_cast<std::size_t>(cfg.order_cap) > kMaxDifferenceOrder)) {
    throw ParameterError("order cap must lie in [1, " + std::to_string(kMaxDifferenceOrder) + "]");
  }
  if (cfg.trials < 1) throw ParameterError("trials must be >= 1");
  if (!(cfg.scale > 0.0)) throw ParameterError("scale must be > 0");
}

struct TrialPlan {
  double scale = 1.0;
  std::uint64_t stream_offset = 0;
  // Zero-coordinate probability on odd trials (boundary bias).
  double odd_zero_probability = kBoundaryProbability;
};

Outcome property_trial(const FunctionHandle& f, PropertyLabel p, const CheckConfig& cfg,
                       const TrialPlan& plan, std::size_t index) {
  const ConeSpec& d = f.domain();
  const EvalFn eval = [&f](const Witness& w) { return evaluate(f, w, nullptr); };
  if (index == 0 && d.contains_origin()) {
    if (const auto kind = origin_kind(p)) {
      return pick_worst(eval, {make_witness(*kind, {{"zero", d.zero()}})});
    }
  }
  Rng rng(cfg.seed, plan.stream_offset + index);
  const double zp = index % 2 == 1 ? plan.odd_zero_probability : kBoundaryProbability;
  auto draw = [&] { return sample(d, rng, plan.scale, zp); };

  using K = InequalityKind;
  switch (p) {
    case PropertyLabel::Subadd:
    case PropertyLabel::Superadd: {
      Point x = draw(), y = draw();
      const K k = p == PropertyLabel::Subadd ? K::Subadd : K::Superadd;
      return pick_worst(eval, {make_witness(k, {{"x", x}, {"y", y}})});
    }
    case PropertyLabel::StrongSubadd:
    case PropertyLabel::StrongSuperadd: {
      Point x = draw(), y = draw(), z = draw();
      const bool sub = p == PropertyLabel::StrongSubadd;
      return pick_worst(eval, {make_witness(sub ? K::Subadd : K::Superadd, {{"x", x}, {"y", y}}),
                               make_witness(sub ? K::SecondDiffNonpos : K::SecondDiffNonneg,
                                            {{"x", x}, {"y", y}, {"z", z}})});
    }
    case PropertyLabel::SecondDiffNonneg:
    case PropertyLabel::SecondDiffNonpos: {
      Point x = draw(), y = draw(), z = draw();
      const K k = p == PropertyLabel::SecondDiffNonneg ? K::SecondDiffNonneg : K::SecondDiffNonpos;
      return pick_worst(eval, {make_witness(k, {{"x", x}, {"y", y}, {"z", z}})});
    }
    case PropertyLabel::Submodular:
    case PropertyLabel::Supermodular: {
      Point x = draw(), y = draw();
      const K k = p == PropertyLabel::Submodular ? K::Submodular : K::Supermodular;
      return pick_worst(eval, {make_witness(k, {{"x", x}, {"y", y}})});
    }
    case PropertyLabel::ComonotoneStrongSuperadd: {
      auto [x, y] = sample_comonotone_pair(d.dim(), rng, plan.scale);
      Point z = draw();
      return pick_worst(eval, {make_witness(K::Superadd, {{"x", x}, {"y", y}}),
                               make_witness(K::SecondDiffNonneg, {{"x", x}, {"y", y}, {"z", z}})});
    }
    case PropertyLabel::CompletelyMonotone: {
      Point base = draw();
      std::vector<Point> inc;
      for (int i = 0; i < cfg.order_cap; ++i) inc.push_back(draw());
      std::vector<Witness> candidates;
      for (int k = 0; k <= cfg.order_cap; ++k) {
        std::vector<NamedPoint> pts{{"base", base}};
        for (int i = 0; i < k; ++i) pts.push_back({"x" + std::to_string(i + 1), inc[i]});
        candidates.push_back(make_witness(K::CmSign, std::move(pts), k));
      }
      return pick_worst(eval, std::move(candidates));
    }
  }
  throw CapabilityError("unsupported property");
}

CheckReport check_with_plan(const FunctionHandle& f, PropertyLabel property,
                            const CheckConfig& cfg, const TrialPlan& plan, std::size_t count) {
  return run_trials(to_string(property), f.label(), cfg, count,
                    [&](std::size_t i) { return property_trial(f, property, cfg, plan, i); });
}

void maybe_shrink(const FunctionHandle& f, CheckReport& report, const CheckConfig& cfg) {
  if (cfg.shrink && report.witness) {
    report.witness = shrink_witness(f, std::move(*report.witness), cfg.tolerance());
    report.worst_margin = std::min(report.worst_margin, report.witness->margin);
  }
}

// Scalar-only checks draw scalar triples from the domain.
void require_scalar(const FunctionHandle& f, const char* what) {
  const ConeSpec& d = f.domain();
  if (d.point_kind() != PointKind::Vector || d.flat_size() != 1) {
    throw CapabilityError(std::string(what) + " needs a scalar domain, got " + d.name());
  }
}

CheckReport scalar_triple_check(const FunctionHandle& f, InequalityKind kind, double constant,
                                const CheckConfig& cfg, const char* name) {
  require_scalar(f, name);
  const EvalFn eval = [&f](const Witness& w) { return evaluate(f, w, nullptr); };
  CheckReport r = run_trials(name, f.label(), cfg, cfg.trials, [&](std::size_t i) {
    Rng rng(cfg.seed, i);
    Point x = sample(f.domain(), rng, cfg.scale);
    Point y = sample(f.domain(), rng, cfg.scale);
    Point z = sample(f.domain(), rng, cfg.scale);
    return pick_worst(eval, {make_witness(kind, {{"x", x}, {"y", y}, {"z", z}}, 0, {constant})});
  });
  maybe_shrink(f, r, cfg);
  return r;
}

}  // namespace

double witness_margin(const FunctionHandle& f, const Witness& w) {
  return evaluate(f, w, nullptr).slack;
}

double witness_margin(const Witness& w) { return evaluate_free(w).slack; }

double witness_margin(const FunctionHandle& f, const ScalarFunction& outer, const Witness& w) {
  return evaluate(f, w, &outer).slack;
}

CheckReport check(const FunctionHandle& f, PropertyLabel property, const CheckConfig& cfg) {
  require_applicable(f, property, cfg);
  TrialPlan plan;
  plan.scale = cfg.scale;
  CheckReport r = check_with_plan(f, property, cfg, plan, cfg.trials);
  maybe_shrink(f, r, cfg);
  return r;
}

CheckReport check(const CatalogEntry& entry, PropertyLabel property, const CheckConfig& cfg,
                  const ParamMap& params, std::size_t dim) {
  return check(instantiate(entry, params, dim), property, cfg);
}

CheckReport check_over_scales(const FunctionHandle& f, PropertyLabel property,
                              const CheckConfig& cfg, std::span<const double> scales) {
  require_applicable(f, property, cfg);
  CheckReport total;
  total.property = to_string(property);
  total.target = f.label();
  total.config = cfg;
  for (std::size_t s = 0; s < scales.size(); ++s) {
    TrialPlan plan;
    plan.scale = scales[s] * cfg.scale;
    plan.stream_offset = static_cast<std::uint64_t>(s) << 40;
    merge_into(total, check_with_plan(f, property, cfg, plan, cfg.trials));
  }
  maybe_shrink(f, total, cfg);
  return total;
}

CheckReport check_alpha_strong(const FunctionHandle& f, double alpha, const CheckConfig& cfg) {
  if (!(alpha > 0.0)) throw ParameterError("alpha must be > 0");
  return scalar_triple_check(f, InequalityKind::AlphaStrong, alpha, cfg, "ALPHA_STRONG");
}

CheckReport check_lipschitz_box(const FunctionHandle& f, double lipschitz,
                                const CheckConfig& cfg) {
  if (!(lipschitz > 0.0)) throw ParameterError("L must be > 0");
  return scalar_triple_check(f, InequalityKind::LipschitzBox, lipschitz, cfg, "LIPSCHITZ_BOX");
}

double double_inequality_ratio(double x, double y, double z) {
  return (1.0 + z) * (1.0 + x + y + z) / ((1.0 + x + z) * (1.0 + y + z));
}

CheckReport check_remark_double_inequality(const CheckConfig& cfg) {
  const ConeSpec line = ConeSpec::nonneg_orthant(1);
  const EvalFn eval = [](const Witness& w) { return evaluate_free(w); };
  return run_trials("RATIO_BOUNDS", "exp-ratio", cfg, cfg.trials, [&](std::size_t i) {
    Rng rng(cfg.seed, i);
    Point x = sample(line, rng, cfg.scale);
    Point y = sample(line, rng, cfg.scale);
    Point z = sample(line, rng, cfg.scale);
    return pick_worst(eval,
                      {make_witness(InequalityKind::RatioUpper, {{"x", x}, {"y", y}, {"z", z}}),
                       make_witness(InequalityKind::RatioLower, {{"x", x}, {"y", y}, {"z", z}})});
  });
}

CheckReport check_chebyshev(const Point& u, const Point& v, const Point& p, double tol) {
  require_same_shape(u, v, "check_chebyshev");
  require_same_shape(u, p, "check_chebyshev");
  if (!comonotonic(u, v, 1e-12)) throw PreconditionError("u and v are not comonotonic");
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0) {
      throw PreconditionError("p[" + std::to_string(i) + "] is negative");
    }
    total += p[i];
  }
  if (std::abs(total - 1.0) > 1e-12) throw PreconditionError("p does not sum to 1");

  Witness w = make_witness(InequalityKind::Chebyshev, {{"u", u}, {"v", v}, {"p", p}});
  const Eval e = evaluate_free(w);
  w.margin = e.slack;
  CheckReport r;
  r.property = "CHEBYSHEV";
  r.target = "chebyshev";
  r.trials_run = 1;
  r.worst_margin = e.slack;
  r.config.tol_abs = tol;
  if (e.slack < -tol) {
    r.witness = w;
    r.verdict = Verdict::ViolationFound;
  }
  return r;
}

void validate(const MajorizationPair& pair, MajorizationDirection direction, double tol) {
  if (pair.a.size() != pair.b.size()) {
    throw PreconditionError("a and b have different lengths");
  }
  double sa = 0.0, sb = 0.0;
  for (std::size_t m = 0; m < pair.a.size(); ++m) {
    sa += pair.a[m];
    sb += pair.b[m];
    if (sa > sb + tol) {
      throw PreconditionError("partial sums fail at index " + std::to_string(m));
    }
  }
  for (std::size_t k = 1; k < pair.a.size(); ++k) {
    if (direction == MajorizationDirection::DecreasingA && pair.a[k] > pair.a[k - 1] + tol) {
      throw PreconditionError("a is not nonincreasing at index " + std::to_string(k));
    }
    if (direction == MajorizationDirection::IncreasingB && pair.b[k] < pair.b[k - 1] - tol) {
      throw PreconditionError("b is not nondecreasing at index " + std::to_string(k));
    }
  }
}

CheckReport tomic_weyl(const MajorizationPair& pair, const ScalarFunction& f,
                       MajorizationDirection direction, double tol) {
  validate(pair, direction, 1e-12);
  // Spot check of monotonicity and convexity on the data range.
  double lo = INFINITY, hi = -INFINITY;
  for (double v : pair.a) lo = std::min(lo, v), hi = std::max(hi, v);
  for (double v : pair.b) lo = std::min(lo, v), hi = std::max(hi, v);
  if (!pair.a.empty() && hi > lo) {
    constexpr int kGrid = 32;
    const bool increasing = direction == MajorizationDirection::DecreasingA;
    double prev = f(lo);
    for (int i = 1; i <= kGrid; ++i) {
      const double t = lo + (hi - lo) * i / kGrid;
      const double s = lo + (hi - lo) * (i - 1) / kGrid;
      const double ft = f(t);
      const double slack = 1e-12 * std::max({1.0, std::abs(ft), std::abs(prev)});
      if (increasing ? ft < prev - slack : ft > prev + slack) {
        throw PreconditionError(f.name + " is not " +
                                (increasing ? "nondecreasing" : "nonincreasing") +
                                " near t = " + std::to_string(t));
      }
      if (f(0.5 * (s + t)) > 0.5 * (prev + ft) + slack) {
        throw PreconditionError(f.name + " is not convex near t = " + std::to_string(t));
      }
      prev = ft;
    }
  }
  double fa = 0.0, fb = 0.0;
  for (double v : pair.a) fa += f(v);
  for (double v : pair.b) fb += f(v);
  const double margin = direction == MajorizationDirection::DecreasingA ? fb - fa : fa - fb;

  CheckReport r;
  r.property = "TOMIC_WEYL";
  r.target = f.name;
  r.trials_run = 1;
  r.worst_margin = margin;
  r.config.tol_abs = tol;
  if (margin < -(tol + 1e-12 * std::max(std::abs(fa), std::abs(fb)))) {
    Witness w = make_witness(InequalityKind::TomicWeyl,
                             {{"a", Point::vector(pair.a)}, {"b", Point::vector(pair.b)}}, 0,
                             {direction == MajorizationDirection::DecreasingA ? 0.0 : 1.0});
    if (direction == MajorizationDirection::IncreasingB) w.expression = "sum f(b_k) <= sum f(a_k)";
    w.margin = margin;
    r.witness = w;
    r.verdict = Verdict::ViolationFound;
  }
  return r;
}

CheckReport check_popoviciu(const FunctionHandle& phi, const ScalarFunction& outer,
                            const CheckConfig& cfg, const PopoviciuOptions& options) {
  const ConeSpec& d = phi.domain();
  const Tolerance tol = cfg.tolerance();
  for (std::size_t i = 0; i < options.monotonicity_pairs; ++i) {
    Rng rng(cfg.seed, (std::uint64_t{1} << 48) + i);
    const Point x = sample(d, rng, cfg.scale);
    const Point v = sample(d, rng, cfg.scale);
    const double lo = phi(x), hi = phi(x + v);
    if (lo > hi + tol.threshold(std::max(std::abs(lo), std::abs(hi)))) {
      std::ostringstream msg;
      msg << phi.label() << " is not monotone: phi(x) = " << lo << " > phi(x + v) = " << hi
          << " for pair " << i;
      throw PreconditionError(msg.str());
    }
  }
  const double flag = options.reversed ? 1.0 : 0.0;
  const EvalFn eval = [&](const Witness& w) { return evaluate(phi, w, &outer); };
  CheckReport r = run_trials("POPOVICIU", phi.label(), cfg, cfg.trials, [&](std::size_t i) {
    Rng rng(cfg.seed, i);
    Point x = sample(d, rng, cfg.scale), y = sample(d, rng, cfg.scale),
          z = sample(d, rng, cfg.scale);
    return pick_worst(
        eval, {make_witness(InequalityKind::Popoviciu13, {{"x", x}, {"y", y}, {"z", z}}, 0, {flag}),
               make_witness(InequalityKind::PopoviciuSymmetric, {{"x", x}, {"y", y}, {"z", z}}, 0,
                            {flag})});
  });
  if (cfg.shrink && r.witness) {
    r.witness = shrink_with(eval, std::move(*r.witness), tol);
    r.worst_margin = std::min(r.worst_margin, r.witness->margin);
  }
  return r;
}

CheckReport cm_scan(const FunctionHandle& f, const CheckConfig& cfg) {
  const ConeSpec& d = f.domain();
  std::vector<Point> directions;
  if (d.point_kind() == PointKind::Matrix) {
    directions.push_back(Point::identity(d.dim()));
  } else {
    Point ones = d.zero();
    for (double& v : ones.flat()) v = 1.0;
    directions.push_back(ones);
    if (d.family() != ConeFamily::ProductCone && ones.size() > 1) {
      for (std::size_t i = 0; i < ones.size(); ++i) {
        Point e = d.zero();
        e[i] = 1.0;
        directions.push_back(e);
      }
    }
  }
  constexpr double kSteps[] = {0.05, 0.1, 0.2, 0.3, 0.5, 1.0};
  constexpr std::size_t kBases = 21;
  const std::size_t per_direction = kBases * std::size(kSteps);
  const EvalFn eval = [&f](const Witness& w) { return evaluate(f, w, nullptr); };
  return run_trials(
      to_string(PropertyLabel::CompletelyMonotone), f.label(), cfg,
      directions.size() * per_direction,
      [&](std::size_t i) {
        const Point& dir = directions[i / per_direction];
        const std::size_t j = i % per_direction;
        double t = 0.1 * static_cast<double>(j / std::size(kSteps)) * cfg.scale;
        if (t == 0.0 && !d.contains_origin()) t = 0.01 * cfg.scale;
        const double h = kSteps[j % std::size(kSteps)] * cfg.scale;
        const Point base = t * dir;
        const Point step = h * dir;
        std::vector<Witness> candidates;
        for (int k = 0; k <= cfg.order_cap; ++k) {
          std::vector<NamedPoint> pts{{"base", base}};
          for (int m = 0; m < k; ++m) pts.push_back({"x" + std::to_string(m + 1), step});
          candidates.push_back(make_witness(InequalityKind::CmSign, std::move(pts), k));
        }
        return pick_worst(eval, std::move(candidates));
      },
      /*enforce_skip_budget=*/false);
}

CheckReport refute(const FunctionHandle& f, PropertyLabel property, const CheckConfig& cfg) {
  require_applicable(f, property, cfg);
  CheckReport total;
  total.property = to_string(property);
  total.target = f.label();
  total.config = cfg;
  const std::size_t n = kScaleLadder.size();
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t count = cfg.trials / n + (s < cfg.trials % n ? 1 : 0);
    if (count == 0) continue;
    TrialPlan plan;
    plan.scale = kScaleLadder[s] * cfg.scale;
    plan.stream_offset = static_cast<std::uint64_t>(s + 1) << 40;
    plan.odd_zero_probability = 0.5;
    merge_into(total, check_with_plan(f, property, cfg, plan, count));
  }
  if (property == PropertyLabel::CompletelyMonotone) merge_into(total, cm_scan(f, cfg));
  maybe_shrink(f, total, cfg);
  return total;
}

CheckReport refute(const CatalogEntry& entry, PropertyLabel property, const CheckConfig& cfg,
                   const ParamMap& params, std::size_t dim) {
  return refute(instantiate(entry, params, dim), property, cfg);
}

Witness shrink_witness(const FunctionHandle& f, Witness w, const Tolerance& tol) {
  return shrink_with([&f](const Witness& c) { return evaluate(f, c, nullptr); }, std::move(w),
                     tol);
}

}  // namespace conecert
