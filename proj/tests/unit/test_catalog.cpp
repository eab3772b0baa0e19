#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "conecert/catalog.hpp"
#include "conecert/error.hpp"
#include "conecert/linalg.hpp"
#include "support.hpp"

using namespace conecert;
using conecert::oracle::scalar;

TEST(Catalog, IdsUniqueAndNumerous) {
  std::set<std::string> ids;
  for (const auto& e : builtin_entries()) EXPECT_TRUE(ids.insert(e.id).second) << e.id;
  EXPECT_GE(ids.size(), 30u);
  EXPECT_TRUE(ids.count("det"));
  EXPECT_TRUE(ids.count("lse"));
}

TEST(Catalog, LookupKnownAndUnknown) {
  EXPECT_EQ(lookup("lse").id, "lse");
  try {
    lookup("nope");
    FAIL() << "expected LookupError";
  } catch (const LookupError& e) {
    EXPECT_NE(std::string(e.what()).find("log1p"), std::string::npos);
  }
}

TEST(Catalog, SimpleEvaluations) {
  EXPECT_DOUBLE_EQ(instantiate(lookup("log1p"))(scalar(1)), std::log(2.0));
  EXPECT_NEAR(instantiate(lookup("det"), {}, 2)(Point::diagonal({2, 3})), 6.0, 1e-14);
}

TEST(Catalog, EveryEntryInstantiatesAtDefaults) {
  for (const auto& e : builtin_entries()) {
    SCOPED_TRACE(e.id);
    FunctionHandle f = instantiate(e);
    Rng rng(0, 0);
    Point x = sample_interior(f.domain(), rng, 1.0);
    EXPECT_TRUE(std::isfinite(f(x)));
    EXPECT_FALSE(claims_for(e).empty());
    EXPECT_FALSE(e.source.empty());
  }
}

TEST(Catalog, StrongClaimsAreClosed) {
  for (const auto& e : builtin_entries()) {
    SCOPED_TRACE(e.id);
    auto claims = claims_for(e);
    auto asserted = [&](PropertyLabel l) {
      return status_of(claims, l) == LabelStatus::PaperAsserted;
    };
    if (asserted(PropertyLabel::StrongSubadd)) {
      EXPECT_TRUE(asserted(PropertyLabel::Subadd));
      EXPECT_TRUE(asserted(PropertyLabel::SecondDiffNonpos));
    }
    if (asserted(PropertyLabel::StrongSuperadd)) {
      EXPECT_TRUE(asserted(PropertyLabel::Superadd));
      EXPECT_TRUE(asserted(PropertyLabel::SecondDiffNonneg));
    }
  }
}

TEST(Catalog, TracePowDomain) {
  auto f = instantiate(lookup("trace-pow"), {{"p", 0.5}}, 3);
  EXPECT_EQ(f.domain(), ConeSpec::psd(3));
}

TEST(Catalog, ParameterRanges) {
  try {
    instantiate(lookup("affine-power"), {{"alpha", 2.0}});
    FAIL() << "expected ParameterError";
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("alpha must lie in [0, 1]"), std::string::npos);
  }
  EXPECT_THROW(instantiate(lookup("log1p"), {{"bogus", 1.0}}), ParameterError);
  EXPECT_THROW(instantiate(lookup("geomean2"), {}, 3), ParameterError);
}

TEST(Catalog, PencilNeedsPositiveDefiniteMatrices) {
  // A_1 = diag(1, -1) is indefinite.
  const ParamMap bad{{"order", 2.0}, {"mats", std::vector<double>{1, 0, 0, 1, 1, 0, 0, -1}}};
  EXPECT_THROW(instantiate(lookup("logdet-pencil"), bad, 2), ParameterError);
  const ParamMap good{{"order", 2.0}, {"mats", std::vector<double>{1, 0, 0, 1, 2, 1, 1, 2}}};
  auto f = instantiate(lookup("logdet-pencil"), good, 2);
  // det(x I + y [[2,1],[1,2]]) at x = y = 1: det [[3,1],[1,3]] = 8
  EXPECT_NEAR(f(Point::vector({1, 1})), std::log(8.0), 1e-13);
}

TEST(Catalog, RefutationCandidates) {
  auto status = [](const char* id, PropertyLabel l, const ParamMap& p = {}) {
    return status_of(claims_for(lookup(id), p), l);
  };
  EXPECT_EQ(status("geomean2", PropertyLabel::StrongSubadd), LabelStatus::PaperRefutedCandidate);
  EXPECT_EQ(status("lse", PropertyLabel::StrongSubadd), LabelStatus::PaperRefutedCandidate);
  EXPECT_EQ(status("lse", PropertyLabel::Submodular), LabelStatus::PaperAsserted);
  EXPECT_EQ(status("logistic-pow", PropertyLabel::CompletelyMonotone, {{"beta", 2.0}}),
            LabelStatus::PaperAsserted);
  EXPECT_EQ(status("logistic-pow", PropertyLabel::CompletelyMonotone, {{"beta", 0.5}}),
            LabelStatus::PaperRefutedCandidate);
}

TEST(Catalog, ClosedFormSpotValues) {
  const double e = std::exp(1.0);
  // normalized: log((e^1 + e^1) / 2) = 1
  EXPECT_NEAR(instantiate(lookup("lse"), {}, 2)(Point::vector({1, 1})), 1.0, 1e-15);
  EXPECT_NEAR(instantiate(lookup("lse"), {}, 2)(Point::vector({0, 2})),
              std::log((1 + e * e) / 2), 1e-15);
  EXPECT_NEAR(instantiate(lookup("geomean2"))(Point::vector({4, 9})), 6.0, 1e-14);
  EXPECT_NEAR(instantiate(lookup("sigmoid"))(scalar(1)), 1 / (1 + 1 / e), 1e-15);
  EXPECT_NEAR(instantiate(lookup("x-gamma-minus-1"))(scalar(3)), 3 * 2 - 1, 1e-12);
  EXPECT_NEAR(instantiate(lookup("shannon-entropy"), {}, 2)(Point::vector({e, 1})), -e, 1e-14);
  EXPECT_NEAR(instantiate(lookup("vn-entropy"), {}, 2)(Point::diagonal({0.5, 0.5})),
              std::log(2.0), 1e-14);
  // jensen gap with f = -t^2 and equal weights is (x1 - x2)^2 / 4
  auto jg = instantiate(lookup("jensen-gap"), {}, 2);
  EXPECT_NEAR(jg(Point::vector({3, 1})), 1.0, 1e-14);
}

TEST(Catalog, AnalyticHessiansMatchFiniteDifferences) {
  for (const char* id : {"shannon-entropy", "sq-norm", "lse"}) {
    SCOPED_TRACE(id);
    const auto& e = lookup(id);
    ASSERT_TRUE(static_cast<bool>(e.analytic_hessian));
    auto f = instantiate(e, {}, 3);
    Rng rng(12, 0);
    for (int i = 0; i < 100; ++i) {
      // kept away from the boundary, where -1/x spoils central differences
      Point x = sample_interior(f.domain(), rng, 1.0) + Point::vector({0.5, 0.5, 0.5});
      DenseMatrix fd = fd_hessian(f.rule(), x);
      DenseMatrix exact = e.analytic_hessian(x);
      ASSERT_LE((fd - exact).max_abs(), 1e-5);
    }
  }
}

TEST(Properties, ParseBothSpellings) {
  EXPECT_EQ(parse_property("strong-subadd"), PropertyLabel::StrongSubadd);
  EXPECT_EQ(parse_property("STRONG_SUBADD"), PropertyLabel::StrongSubadd);
  EXPECT_EQ(parse_property("completely-monotone"), PropertyLabel::CompletelyMonotone);
  EXPECT_FALSE(parse_property("strongish").has_value());
}
