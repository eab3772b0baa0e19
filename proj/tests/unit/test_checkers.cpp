#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "conecert/catalog.hpp"
#include "conecert/checkers.hpp"
#include "conecert/error.hpp"
#include "conecert/json_io.hpp"
#include "support.hpp"

using namespace conecert;
using conecert::oracle::half_line;
using conecert::oracle::scalar;

namespace {

CheckConfig config(std::size_t trials, std::uint64_t seed = 0) {
  CheckConfig cfg;
  cfg.trials = trials;
  cfg.seed = seed;
  return cfg;
}

Witness triple_witness(InequalityKind kind, Point x, Point y, Point z) {
  Witness w;
  w.kind = kind;
  w.points = {{"x", std::move(x)}, {"y", std::move(y)}, {"z", std::move(z)}};
  return w;
}

void expect_sound(const FunctionHandle& f, const CheckReport& r) {
  ASSERT_TRUE(r.violated());
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(witness_margin(f, *r.witness), r.witness->margin);
  EXPECT_LT(r.witness->margin, -CheckConfig{}.tolerance().threshold(0.0));
}

}  // namespace

TEST(CheckConfig, Defaults) {
  CheckConfig cfg;
  EXPECT_EQ(cfg.trials, 10000u);
  EXPECT_EQ(cfg.scale, 1.0);
  EXPECT_EQ(cfg.tol_abs, 1e-9);
  EXPECT_EQ(cfg.tol_rel, 1e-12);
  EXPECT_EQ(cfg.order_cap, 5);
  EXPECT_TRUE(cfg.shrink);
}

TEST(Check, Log1pStronglySubadditive) {
  auto r = check(lookup("log1p"), PropertyLabel::StrongSubadd, CheckConfig{});
  EXPECT_FALSE(r.violated());
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_EQ(r.trials_run, 10000u);
}

TEST(Check, GeometricMeanWitnessValue) {
  auto f = instantiate(lookup("geomean2"));
  Witness w = triple_witness(InequalityKind::SecondDiffNonpos, Point::vector({1.0 / 3, 1.0 / 3}),
                             Point::vector({1.0 / 3, 2.0 / 3}), Point::vector({0, 0}));
  EXPECT_NEAR(witness_margin(f, w), -0.011758726803361, 1e-12);
}

TEST(Check, GeometricMeanViolationFound) {
  auto f = instantiate(lookup("geomean2"));
  auto r = check(f, PropertyLabel::StrongSubadd, config(10000));
  expect_sound(f, r);
}

// 1 - log((1+e)/2) is not the second difference at this triple; the
// inequality holds there with slack 2 log((1+e)/2) - 1.
TEST(Check, LogSumExpPrintedTripleHolds) {
  auto f = instantiate(lookup("lse"), {}, 2);
  Witness w = triple_witness(InequalityKind::SecondDiffNonpos, Point::vector({1, 0}),
                             Point::vector({0, 1}), Point::vector({1, 1}));
  const double e = std::exp(1.0);
  EXPECT_NEAR(witness_margin(f, w), 2 * std::log((1 + e) / 2) - 1, 1e-14);
  EXPECT_GT(witness_margin(f, w), 0.0);
}

TEST(Check, LogSumExpSubmodular) {
  auto r = check(lookup("lse"), PropertyLabel::Submodular, CheckConfig{}, {}, 2);
  EXPECT_FALSE(r.violated());
}

TEST(Check, ExponentialLinearCompletelyMonotone) {
  auto r = check(lookup("exp-neg-linear"), PropertyLabel::CompletelyMonotone, config(2000));
  EXPECT_FALSE(r.violated());
}

TEST(Check, OriginTrial) {
  // superadditivity needs f(0) <= 0
  auto f = half_line([](double t) { return t * t + 1; });
  // only trial 0, the origin trial, runs
  auto r = check(f, PropertyLabel::Superadd, config(1));
  ASSERT_TRUE(r.violated());
  EXPECT_EQ(r.witness->kind, InequalityKind::OriginNonpos);
  EXPECT_EQ(r.witness->margin, -1.0);
}

TEST(Check, VerdictMatchesWitnessAndMargin) {
  for (const char* id : {"log1p", "geomean2", "half-sq-plus-cos", "sq-norm", "reciprocal"}) {
    SCOPED_TRACE(id);
    auto f = instantiate(lookup(id));
    auto r = check(f, PropertyLabel::StrongSubadd, config(500));
    EXPECT_EQ(r.violated(), r.witness.has_value());
    if (r.violated()) EXPECT_LE(r.worst_margin, r.witness->margin);
  }
}

TEST(Check, SkipBudget) {
  // DomainError on roughly half of the sampled triples.
  FunctionHandle f(ConeSpec::nonneg_orthant(1),
                   [](const Point& x) {
                     if (std::fmod(x[0] * 1000.0, 2.0) < 1.0) throw DomainError("hole");
                     return x[0];
                   },
                   "holey");
  EXPECT_THROW(check(f, PropertyLabel::Subadd, config(200)), NumericFailure);
}

TEST(Check, Deterministic) {
  auto f = instantiate(lookup("geomean2"));
  auto a = check(f, PropertyLabel::StrongSubadd, config(3000, 17));
  auto b = check(f, PropertyLabel::StrongSubadd, config(3000, 17));
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  auto c = check(f, PropertyLabel::StrongSubadd, config(3000, 18));
  EXPECT_NE(to_json(a).dump(), to_json(c).dump());
}

TEST(Check, ThreadCountDoesNotChangeResults) {
  for (const char* id : {"geomean2", "lse", "log1p"}) {
    SCOPED_TRACE(id);
    auto f = instantiate(lookup(id));
    CheckConfig serial = config(4000, 5);
    CheckConfig parallel = serial;
    parallel.threads = 4;
    auto a = check(f, PropertyLabel::StrongSubadd, serial);
    auto b = check(f, PropertyLabel::StrongSubadd, parallel);
    nlohmann::json ja = to_json(a), jb = to_json(b);
    ja["config"].erase("threads");
    jb["config"].erase("threads");
    EXPECT_EQ(ja.dump(), jb.dump());
  }
}

TEST(AlphaStrong, Quadratic) {
  auto f = half_line([](double t) { return t * t; });
  EXPECT_FALSE(check_alpha_strong(f, 2.0, config(2000)).violated());
}

TEST(AlphaStrong, DoubleIntegralOfConstant) {
  // f(x) = int_0^x int_0^s c dt ds = c x^2 / 2
  const double c = 0.75;
  auto f = half_line([c](double t) { return c * t * t / 2; });
  EXPECT_FALSE(check_alpha_strong(f, c, config(2000)).violated());
}

TEST(AlphaStrong, AffineFails) {
  auto f = half_line([](double t) { return t; });
  auto r = check_alpha_strong(f, 1.0, config(200));
  EXPECT_TRUE(r.violated());
  EXPECT_EQ(witness_margin(f, *r.witness), r.witness->margin);
}

TEST(LipschitzBox, Examples) {
  EXPECT_FALSE(check_lipschitz_box(half_line([](double t) { return t * t / 2; }), 1.0,
                                   config(2000))
                   .violated());
  EXPECT_FALSE(
      check_lipschitz_box(half_line([](double t) { return std::sin(t); }), 1.0, config(2000))
          .violated());
  EXPECT_TRUE(check_lipschitz_box(half_line([](double t) { return t * t * t; }), 1.0,
                                  config(2000))
                  .violated());
}

TEST(DoubleInequality, Examples) {
  EXPECT_EQ(double_inequality_ratio(0, 0, 0), 1.0);
  for (double x : {0.0, 0.5, 2.0}) {
    for (double y : {0.0, 1.0, 3.0}) {
      const double r = double_inequality_ratio(x, y, 1e6);
      EXPECT_NEAR(r, 1.0, 1e-5);
      EXPECT_LE(std::exp(-x * y), r);
      EXPECT_LE(r, std::exp(x * y));
    }
  }
  EXPECT_FALSE(check_remark_double_inequality(config(5000)).violated());
}

TEST(Chebyshev, Examples) {
  auto r = check_chebyshev(Point::vector({0, 1}), Point::vector({0, 1}),
                           Point::vector({0.5, 0.5}), 1e-12);
  EXPECT_DOUBLE_EQ(r.worst_margin, 0.25);
  auto flat = check_chebyshev(Point::vector({2, 2, 2}), Point::vector({1, 5, 3}),
                              Point::vector({0.2, 0.3, 0.5}), 1e-12);
  EXPECT_NEAR(flat.worst_margin, 0.0, 1e-15);
  EXPECT_THROW(check_chebyshev(Point::vector({1, 2}), Point::vector({2, 1}),
                               Point::vector({0.5, 0.5}), 1e-12),
               PreconditionError);
}

TEST(Chebyshev, RandomComonotonePairs) {
  Rng rng(31, 0);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + i % 6;
    auto [u, v] = sample_comonotone_pair(n, rng, 1.0);
    std::vector<double> p(n);
    double total = 0;
    for (auto& x : p) total += (x = rng.uniform_open());
    for (auto& x : p) x /= total;
    double s = 0;
    for (std::size_t k = 0; k + 1 < n; ++k) s += p[k];
    p[n - 1] = 1.0 - s;
    ASSERT_FALSE(check_chebyshev(u, v, Point::vector(p), 1e-12).violated());
  }
}

TEST(TomicWeyl, Examples) {
  auto r = tomic_weyl({{3, 1}, {3, 2}}, ScalarFunction::square(),
                      MajorizationDirection::DecreasingA);
  EXPECT_DOUBLE_EQ(r.worst_margin, 3.0);
  auto same = tomic_weyl({{4, 2, 1}, {4, 2, 1}}, ScalarFunction::square(),
                         MajorizationDirection::DecreasingA);
  EXPECT_EQ(same.worst_margin, 0.0);
  EXPECT_FALSE(same.violated());
}

TEST(TomicWeyl, PreconditionsNameTheIndex) {
  try {
    validate({{1, 3}, {2, 3}}, MajorizationDirection::DecreasingA);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("index 1"), std::string::npos);
  }
  EXPECT_THROW(validate({{3, 1}, {2, 5}}, MajorizationDirection::DecreasingA), PreconditionError);
  EXPECT_THROW(tomic_weyl({{3, 1}, {3, 2}}, ScalarFunction{"neg", [](double t) { return -t; }, {}},
                          MajorizationDirection::DecreasingA),
               PreconditionError);
}

TEST(TomicWeyl, ConstructedPairs) {
  Rng rng(41, 0);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + i % 5;
    std::vector<double> a(n), b(n);
    for (auto& x : a) x = 3 * rng.uniform();
    std::sort(a.begin(), a.end(), std::greater<>());
    for (std::size_t k = 0; k < n; ++k) b[k] = a[k] + rng.uniform();
    ASSERT_FALSE(
        tomic_weyl({a, b}, ScalarFunction::exp(), MajorizationDirection::DecreasingA).violated());
  }
}

TEST(Popoviciu, LinearMapWithExp) {
  const std::vector<double> a{0.5, 1.0, 2.0};
  FunctionHandle phi(ConeSpec::nonneg_orthant(3),
                     [a](const Point& x) { return a[0] * x[0] + a[1] * x[1] + a[2] * x[2]; },
                     "linear");
  EXPECT_FALSE(check_popoviciu(phi, ScalarFunction::exp(), config(2000)).violated());
}

TEST(Popoviciu, IdentityIsTight) {
  auto phi = half_line([](double t) { return t; }, "id");
  auto r = check_popoviciu(phi, ScalarFunction::identity(), config(1000));
  EXPECT_FALSE(r.violated());
  EXPECT_NEAR(r.worst_margin, 0.0, 1e-12);
}

TEST(Popoviciu, DeterminantPowers) {
  auto phi = instantiate(lookup("det"), {}, 3);
  for (double p : {1.0, 1.5, 2.0}) {
    SCOPED_TRACE(p);
    EXPECT_FALSE(check_popoviciu(phi, ScalarFunction::power(p), config(1000)).violated());
  }
}

TEST(Popoviciu, NonMonotoneInnerRejected) {
  auto phi = half_line([](double t) { return std::sin(t); });
  EXPECT_THROW(check_popoviciu(phi, ScalarFunction::exp(), config(100)), PreconditionError);
}

TEST(CmScan, LogisticPowerHalf) {
  auto f = instantiate(lookup("logistic-pow"), {{"beta", 0.5}});
  auto r = cm_scan(f, CheckConfig{});
  ASSERT_TRUE(r.violated());
  EXPECT_LE(r.witness->order, 5);
  EXPECT_EQ(witness_margin(f, *r.witness), r.witness->margin);
}

TEST(CmScan, IntegerPowerPasses) {
  auto f = instantiate(lookup("logistic-pow"), {{"beta", 2.0}});
  EXPECT_FALSE(cm_scan(f, CheckConfig{}).violated());
}

TEST(Refute, JensenGapWitness) {
  auto f = instantiate(lookup("jensen-gap"), {}, 2);
  auto r = refute(f, PropertyLabel::StrongSubadd, config(10000));
  expect_sound(f, r);
  EXPECT_LE(r.witness->margin, -0.4);
  // the closed-form witness x = y = e1, z = 0 has slack -1/2
  Witness w = triple_witness(InequalityKind::SecondDiffNonpos, Point::vector({1, 0}),
                             Point::vector({1, 0}), Point::vector({0, 0}));
  EXPECT_NEAR(witness_margin(f, w), -0.5, 1e-15);
}

TEST(Refute, RefutedCandidatesProduceSoundWitnesses) {
  struct Case {
    const char* id;
    PropertyLabel label;
  };
  for (Case c : {Case{"geomean2", PropertyLabel::StrongSubadd},
                 Case{"half-sq-plus-cos", PropertyLabel::Superadd},
                 Case{"pairwise-diff-convex", PropertyLabel::StrongSubadd}}) {
    SCOPED_TRACE(c.id);
    auto f = instantiate(lookup(c.id));
    expect_sound(f, refute(f, c.label, config(3000)));
  }
}

TEST(Shrink, KeepsViolationAndNeverGrows) {
  auto f = instantiate(lookup("jensen-gap"), {}, 2);
  Witness w = triple_witness(InequalityKind::SecondDiffNonpos, Point::vector({40, 0}),
                             Point::vector({40, 0}), Point::vector({0, 0}));
  w.margin = witness_margin(f, w);
  Witness s = shrink_witness(f, w, Tolerance{});
  EXPECT_EQ(witness_margin(f, s), s.margin);
  EXPECT_LE(s.margin, -0.5);
  EXPECT_LT(s.at("x").max_abs(), 40.0);
}
