#include "conecert/suite.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "conecert/catalog.hpp"
#include "conecert/certify.hpp"
#include "conecert/checkers.hpp"
#include "conecert/json_io.hpp"
#include "conecert/linalg.hpp"

#ifndef CONECERT_VERSION
#define CONECERT_VERSION "0.0.0"
#endif

namespace conecert::suite {

using nlohmann::json;

bool CriterionResult::passed() const {
  for (const Check& c : checks)
    if (!c.passed) return false;
  return !checks.empty();
}

json CriterionResult::to_json() const {
  json checks_json = json::array();
  for (const Check& c : checks) {
    checks_json.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return {{"id", id}, {"title", title}, {"passed", passed()}, {"checks", std::move(checks_json)}};
}

bool SuiteRun::passed() const {
  for (const CriterionResult& r : results)
    if (!r.passed()) return false;
  return true;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

CheckConfig base_config(const Options& o, std::size_t trials) {
  CheckConfig cfg;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.trials = trials;
  return cfg;
}

bool sound(const FunctionHandle& f, const Witness& w) {
  const double again = witness_margin(f, w);
  return std::abs(again - w.margin) <= 1e-12 * std::max(1.0, std::abs(w.margin));
}

json report_summary(const CheckReport& r) {
  json j{{"target", r.target},
         {"property", r.property},
         {"verdict", to_string(r.verdict)},
         {"trials", r.trials_run},
         {"skipped", r.skipped},
         {"worst_margin", r.worst_margin}};
  if (r.witness) j["witness"] = to_json(*r.witness);
  return j;
}

Check no_violation(const std::string& name, const CheckReport& r) {
  return {name, !r.violated(), report_summary(r)};
}

Check timing(const std::string& name, Clock::time_point t0, double budget) {
  const double s = seconds_since(t0);
  return {name, s < budget, {{"budget_seconds", budget}}};
}

// Criterion 1.
CriterionResult geomean_counterexample(const Options& o) {
  const auto t0 = Clock::now();
  CriterionResult r;
  const FunctionHandle f = instantiate(lookup("geomean2"));
  const double v = second_diff(f, Point::vector({1.0 / 3, 1.0 / 3}), Point::vector({1.0 / 3, 2.0 / 3}),
                               Point::vector({0.0, 0.0}));
  r.checks.push_back({"second difference at the published points", std::abs(v - 0.0117587268) <= 1e-9,
                      {{"value", v}, {"expected", 0.0117587268}}});
  const CheckReport rep = refute(f, PropertyLabel::StrongSubadd, base_config(o, 1000));
  r.checks.push_back({"refute finds a violation within 1000 trials", rep.violated(), report_summary(rep)});
  r.checks.push_back({"witness re-evaluates", rep.witness && sound(f, *rep.witness), nullptr});
  r.checks.push_back(timing("runtime < 1 s", t0, 1.0));
  return r;
}

// Criterion 2.
CriterionResult lse_counterexample(const Options&) {
  const auto t0 = Clock::now();
  CriterionResult r;
  const FunctionHandle f = instantiate(lookup("lse"), {}, 2);
  const double e = std::numbers::e;
  const double closed = 1.0 - std::log((1.0 + e) / 2.0);
  const double v =
      second_diff(f, Point::vector({1.0, 0.0}), Point::vector({0.0, 1.0}), Point::vector({1.0, 1.0}));
  // The claimed four-term expression, term by term.
  const double four_term = std::log(0.5 * (e * e + e * e * e)) + std::log(0.5 * (e + e)) -
                         std::log(0.5 * (e * e + e)) - std::log(0.5 * (e + e * e));
  r.checks.push_back({"witness second difference equals 1 - log((1+e)/2)",
                      std::abs(v - closed) <= 1e-12 && v > 0.379,
                      {{"value", v}, {"closed_form", closed}, {"four_term_expression", four_term}}});
  r.checks.push_back({"closed form exceeds 0.379", closed > 0.379, {{"closed_form", closed}}});
  r.checks.push_back(timing("runtime < 1 s", t0, 1.0));
  return r;
}

// Criterion 3.
CriterionResult sq_norm_identity(const Options& o) {
  CriterionResult r;
  for (std::size_t n = 2; n <= 6; ++n) {
    const FunctionHandle f = instantiate(lookup("sq-norm"), {}, n);
    double worst = 0.0;
    for (std::size_t i = 0; i < 1000; ++i) {
      Rng rng(o.seed, (std::uint64_t{n} << 32) + i);
      const Point x = sample(f.domain(), rng, 1.0);
      const Point y = sample(f.domain(), rng, 1.0);
      const Point z = sample(f.domain(), rng, 1.0);
      worst = std::max(worst, std::abs(second_diff(f, x, y, z) - 2.0 * inner(x, y)));
    }
    r.checks.push_back({"N = " + std::to_string(n) + ": |D_x D_y f(z) - 2<x,y>| <= 1e-9",
                        worst <= 1e-9, {{"max_error", worst}}});
  }
  return r;
}

// Criterion 4.
CriterionResult scalar_suite(const Options& o) {
  const auto t0 = Clock::now();
  CriterionResult r;
  const CheckConfig cfg = base_config(o, CheckConfig{}.trials);
  for (const CatalogEntry& e : builtin_entries()) {
    if (!e.is_scalar()) continue;
    const auto claims = e.claims(e.defaults, 1);
    for (PropertyLabel label : {PropertyLabel::StrongSubadd, PropertyLabel::StrongSuperadd}) {
      if (status_of(claims, label) != LabelStatus::PaperAsserted) continue;
      const CheckReport rep = check_over_scales(instantiate(e), label, cfg);
      r.checks.push_back(no_violation(e.id + " " + to_string(label), rep));
    }
  }
  const FunctionHandle rec = instantiate(lookup("reciprocal"));
  r.checks.push_back(no_violation("reciprocal SUBADD", check_over_scales(rec, PropertyLabel::Subadd, cfg)));
  const CheckReport strong = check_over_scales(rec, PropertyLabel::StrongSubadd, cfg);
  r.checks.push_back({"reciprocal STRONG_SUBADD violated with a sound witness",
                      strong.violated() && sound(rec, *strong.witness), report_summary(strong)});
  r.checks.push_back(timing("runtime < 20 s", t0, 20.0));
  return r;
}

// Criterion 5.
CriterionResult matrix_suite(const Options& o) {
  const auto t0 = Clock::now();
  CriterionResult r;
  const CheckConfig cfg = base_config(o, 1000);
  const CatalogEntry& det_e = lookup("det");
  for (std::size_t n = 1; n <= 5; ++n) {
    r.checks.push_back(no_violation("det STRONG_SUPERADD N=" + std::to_string(n),
                                    check(det_e, PropertyLabel::StrongSuperadd, cfg, {}, n)));
  }
  const CatalogEntry& tp = lookup("trace-pow");
  for (double p : {0.3, 0.7, 1.0}) {
    std::ostringstream name;
    name << "trace-pow p=" << p << " STRONG_SUBADD";
    r.checks.push_back(no_violation(name.str(), check(tp, PropertyLabel::StrongSubadd, cfg, {{"p", p}})));
  }
  for (double p : {1.0, 1.5, 2.0}) {
    std::ostringstream name;
    name << "trace-pow p=" << p << " STRONG_SUPERADD";
    r.checks.push_back(
        no_violation(name.str(), check(tp, PropertyLabel::StrongSuperadd, cfg, {{"p", p}})));
  }
  const CatalogEntry& vn = lookup("vn-entropy");
  for (std::size_t n = 1; n <= 4; ++n) {
    r.checks.push_back(no_violation("vn-entropy STRONG_SUBADD N=" + std::to_string(n),
                                    check(vn, PropertyLabel::StrongSubadd, cfg, {}, n)));
  }
  r.checks.push_back(no_violation("logdet SECOND_DIFF_NONNEG",
                                  check(lookup("logdet"), PropertyLabel::SecondDiffNonneg, cfg)));

  std::size_t weyl_failures = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    Rng rng(o.seed, (std::uint64_t{5} << 40) + i);
    const std::size_t n = 1 + rng.below(5);
    const Point a = sample(ConeSpec::psd(n), rng, 1.0);
    const Point b = a + sample(ConeSpec::psd(n), rng, 1.0);
    if (!weyl_check(a, b, 1e-10)) ++weyl_failures;
  }
  r.checks.push_back({"Weyl monotonicity on 1000 pairs A <= A + GG^T", weyl_failures == 0,
                      {{"failures", weyl_failures}}});
  r.checks.push_back(timing("runtime < 20 s", t0, 20.0));
  return r;
}

// Criterion 6.
CriterionResult popoviciu_det(const Options& o) {
  CriterionResult r;
  const CheckConfig cfg = base_config(o, 1000);
  for (std::size_t n : {2, 3}) {
    const FunctionHandle phi = instantiate(lookup("det"), {}, n);
    for (double p : {1.0, 1.5, 2.0}) {
      std::ostringstream name;
      name << "det^p, N=" << n << ", p=" << p;
      r.checks.push_back(no_violation(name.str(), check_popoviciu(phi, ScalarFunction::power(p), cfg)));
    }
  }
  return r;
}

// Criterion 7.
CriterionResult complete_monotonicity(const Options& o) {
  CriterionResult r;
  const CheckConfig cfg = base_config(o, 500);
  r.checks.push_back(no_violation("exp-neg-linear K=5",
                                  check(lookup("exp-neg-linear"), PropertyLabel::CompletelyMonotone, cfg)));
  r.checks.push_back(no_violation("inv-power-product K=5",
                                  check(lookup("inv-power-product"), PropertyLabel::CompletelyMonotone, cfg)));
  const FunctionHandle lp = instantiate(lookup("logistic-pow"), {{"a", 1.0}, {"beta", 0.5}});
  const CheckReport scan = cm_scan(lp, cfg);
  const bool found = scan.violated() && scan.witness->order <= cfg.order_cap && sound(lp, *scan.witness);
  r.checks.push_back({"logistic-pow beta=0.5 refuted by the equal-step scan", found, report_summary(scan)});
  const CheckConfig strong_cfg = base_config(o, CheckConfig{}.trials);
  for (double beta : {1.0, 2.0}) {
    std::ostringstream name;
    name << "elem-sym-4-shifted beta=" << beta << " STRONG_SUPERADD";
    r.checks.push_back(no_violation(
        name.str(), check(lookup("elem-sym-4-shifted"), PropertyLabel::StrongSuperadd, strong_cfg,
                          {{"beta", beta}})));
  }
  return r;
}

Check certificate_check(const std::string& name, const Certificate& c, bool want_certified) {
  return {name, c.certified() == want_certified, to_json(c)};
}

// Criterion 8.
CriterionResult certificates(const Options& o) {
  CriterionResult r;
  const CheckConfig cfg = base_config(o, CheckConfig{}.trials);
  constexpr std::size_t kPoints = 200;

  struct Coherence {
    std::string id;
    ParamMap params;
    std::size_t dim;
    PropertyLabel label;
  };
  std::vector<Coherence> certified;

  const FunctionHandle shannon = instantiate(lookup("shannon-entropy"));
  const Certificate c_sh = certify_hessian_sign(shannon, HessianSign::Nonpos, kPoints, cfg);
  r.checks.push_back(certificate_check("shannon-entropy Hessian nonpos", c_sh, true));
  if (c_sh.certified()) {
    certified.push_back({"shannon-entropy", {}, 0, PropertyLabel::StrongSubadd});
    r.checks.push_back(certificate_check("shannon-entropy Topkis submodular",
                                         certify_topkis(shannon, Modularity::Submodular, kPoints, cfg), true));
  }
  const Certificate c_sq =
      certify_hessian_sign(instantiate(lookup("sq-norm")), HessianSign::Nonneg, kPoints, cfg);
  r.checks.push_back(certificate_check("sq-norm Hessian nonneg", c_sq, true));
  if (c_sq.certified()) certified.push_back({"sq-norm", {}, 0, PropertyLabel::StrongSuperadd});

  const FunctionHandle lse = instantiate(lookup("lse"));
  r.checks.push_back(certificate_check("lse Hessian nonpos refused",
                                       certify_hessian_sign(lse, HessianSign::Nonpos, kPoints, cfg), false));
  const Certificate c_top = certify_topkis(lse, Modularity::Submodular, kPoints, cfg);
  r.checks.push_back(certificate_check("lse Topkis submodular", c_top, true));
  if (c_top.certified()) certified.push_back({"lse", {}, 0, PropertyLabel::Submodular});

  const Certificate c_lp = certify_differential_monotone(
      instantiate(lookup("lp-power-norm"), {{"p", 2.0}}, 8), Monotonicity::Nondecreasing, kPoints, cfg);
  r.checks.push_back(certificate_check("lp-power-norm differential nondecreasing", c_lp, true));
  if (c_lp.certified()) certified.push_back({"lp-power-norm", {{"p", 2.0}}, 8, PropertyLabel::StrongSuperadd});

  const Certificate c_det = certify_differential_monotone(instantiate(lookup("det"), {}, 3),
                                                          Monotonicity::Nondecreasing, kPoints, cfg);
  r.checks.push_back(certificate_check("det differential nondecreasing", c_det, true));
  if (c_det.certified()) certified.push_back({"det", {}, 3, PropertyLabel::StrongSuperadd});

  for (const Coherence& c : certified) {
    r.checks.push_back(no_violation("coherence: " + c.id + " " + to_string(c.label),
                                    check(lookup(c.id), c.label, cfg, c.params, c.dim)));
  }
  return r;
}

// Criterion 9.
CriterionResult gaussian_representation(const Options& o) {
  CriterionResult r;
  const CheckConfig cfg = base_config(o, 20);
  for (std::size_t n : {1, 2}) {
    const CheckReport rep = gaussian_detcert_check(n, 20, cfg);
    r.checks.push_back(no_violation("N = " + std::to_string(n) + ", 20 matrices", rep));
  }
  return r;
}

// Criterion 10.
CriterionResult refuted_candidates(const Options& o) {
  CriterionResult r;
  const CheckConfig cfg = base_config(o, CheckConfig{}.trials);
  auto sound_refutation = [&](const std::string& name, const FunctionHandle& f, PropertyLabel label) {
    const CheckReport rep = refute(f, label, cfg);
    r.checks.push_back({name, rep.violated() && sound(f, *rep.witness), report_summary(rep)});
    return rep;
  };
  sound_refutation("half-sq-plus-cos SUPERADD", instantiate(lookup("half-sq-plus-cos")),
                   PropertyLabel::Superadd);
  sound_refutation("pairwise-diff-convex STRONG_SUBADD", instantiate(lookup("pairwise-diff-convex")),
                   PropertyLabel::StrongSubadd);
  const CheckReport jg = sound_refutation(
      "jensen-gap STRONG_SUBADD",
      instantiate(lookup("jensen-gap"), {{"f", std::string("neg-sq")}, {"lambda", std::vector<double>{0.5, 0.5}}}, 2),
      PropertyLabel::StrongSubadd);
  const double magnitude = jg.witness ? -jg.witness->margin : 0.0;
  r.checks.push_back({"jensen-gap violation magnitude >= 0.4", magnitude >= 0.4,
                      {{"magnitude", magnitude}, {"closed_form_at_e1", 0.5}}});
  return r;
}

json manifest_of(const std::vector<CriterionResult>& results, const Options& o) {
  json criteria = json::array();
  for (const CriterionResult& r : results) criteria.push_back(r.to_json());
  return {{"command", "suite --seed " + std::to_string(o.seed)},
          {"seed", o.seed},
          {"version", CONECERT_VERSION},
          {"criteria", std::move(criteria)}};
}

std::vector<CriterionResult> run_range(int first, int last, const Options& o) {
  std::vector<CriterionResult> out;
  for (int id = first; id <= last; ++id) out.push_back(run_criterion(id, o));
  return out;
}

// Criterion 11 compares two runs of criteria 1-10.
CriterionResult determinism(const Options& o, const std::vector<CriterionResult>* first_run,
                            double first_seconds) {
  CriterionResult r;
  const auto t0 = Clock::now();
  std::vector<CriterionResult> a;
  if (first_run == nullptr) {
    a = run_range(1, kCriterionCount - 1, o);
    first_run = &a;
    first_seconds = seconds_since(t0);
  }
  const std::vector<CriterionResult> b = run_range(1, kCriterionCount - 1, o);
  const bool same = manifest_of(*first_run, o).dump() == manifest_of(b, o).dump();
  r.checks.push_back({"two runs with the same seed give byte-identical manifests", same, nullptr});
  r.checks.push_back({"criteria 1-10 complete in under 60 s", first_seconds < 60.0, {{"budget_seconds", 60.0}}});
  return r;
}

CriterionResult dispatch(int id, const Options& o) {
  switch (id) {
    case 1: return geomean_counterexample(o);
    case 2: return lse_counterexample(o);
    case 3: return sq_norm_identity(o);
    case 4: return scalar_suite(o);
    case 5: return matrix_suite(o);
    case 6: return popoviciu_det(o);
    case 7: return complete_monotonicity(o);
    case 8: return certificates(o);
    case 9: return gaussian_representation(o);
    case 10: return refuted_candidates(o);
    case 11: return determinism(o, nullptr, 0.0);
  }
  throw std::out_of_range("no criterion " + std::to_string(id));
}

}  // namespace

std::string title(int id) {
  switch (id) {
    case 1: return "sqrt(x1 x2) counterexample";
    case 2: return "LSE counterexample value";
    case 3: return "squared-norm second-difference identity";
    case 4: return "scalar catalog suite";
    case 5: return "matrix suite";
    case 6: return "Popoviciu inequalities for det^p";
    case 7: return "complete monotonicity";
    case 8: return "certificates and checker coherence";
    case 9: return "Gaussian representation of det(I+A)^(-1/2)";
    case 10: return "refutation of candidate labels";
    case 11: return "determinism and suite budget";
  }
  throw std::out_of_range("no criterion " + std::to_string(id));
}

CriterionResult run_criterion(int id, const Options& options) {
  const auto t0 = Clock::now();
  CriterionResult r = dispatch(id, options);
  r.id = id;
  r.title = title(id);
  r.seconds = seconds_since(t0);
  return r;
}

SuiteRun run_suite(const Options& options) {
  SuiteRun run;
  const auto t0 = Clock::now();
  run.results = run_range(1, kCriterionCount - 1, options);
  const double first_seconds = seconds_since(t0);
  const auto t1 = Clock::now();
  CriterionResult last = determinism(options, &run.results, first_seconds);
  last.id = kCriterionCount;
  last.title = title(kCriterionCount);
  last.seconds = seconds_since(t1);
  run.results.push_back(std::move(last));
  run.manifest = manifest_of(run.results, options);
  return run;
}

std::string summary_line(const CriterionResult& r) {
  std::ostringstream out;
  out << (r.passed() ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.title;
  std::string failing;
  for (const Check& c : r.checks) {
    if (!c.passed) failing += (failing.empty() ? "" : "; ") + c.name;
  }
  if (!failing.empty()) out << "  [failed: " << failing << "]";
  return out.str();
}

}  // namespace conecert::suite
