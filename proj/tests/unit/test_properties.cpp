// Randomized invariants over catalog entries.
#include <gtest/gtest.h>

#include <cmath>

#include "conecert/catalog.hpp"
#include "conecert/certify.hpp"
#include "conecert/checkers.hpp"
#include "conecert/json_io.hpp"
#include "conecert/linalg.hpp"
#include "support.hpp"

using namespace conecert;

namespace {

CheckConfig trials(std::size_t n, std::uint64_t seed = 0) {
  CheckConfig cfg;
  cfg.trials = n;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

class DetSuperadditive : public ::testing::TestWithParam<int> {};

TEST_P(DetSuperadditive, NoViolation) {
  const auto n = static_cast<std::size_t>(GetParam());
  auto r = check(lookup("det"), PropertyLabel::StrongSuperadd, trials(1000), {}, n);
  EXPECT_FALSE(r.violated());
}

INSTANTIATE_TEST_SUITE_P(Orders, DetSuperadditive, ::testing::Range(1, 6));

TEST(TracePow, SquareSecondDifferenceIsTwiceTraceProduct) {
  auto f = instantiate(lookup("trace-pow"), {{"p", 2.0}}, 3);
  Rng rng(91, 0);
  for (int i = 0; i < 200; ++i) {
    Point a = sample(f.domain(), rng, 1.0), b = sample(f.domain(), rng, 1.0),
          z = sample(f.domain(), rng, 1.0);
    const double expected = 2 * inner(a, b);
    ASSERT_NEAR(second_diff(f, a, b, z), expected, 1e-10 * std::max(1.0, frobenius_norm(z) * 10));
  }
}

// d/dt det(U + tV) = det(U) tr(U^{-1} V), so the directional derivative is
// nonnegative for V in the PSD cone.
TEST(Det, DirectionalDerivativeFormula) {
  Rng rng(92, 0);
  for (int i = 0; i < 50; ++i) {
    Point u = oracle::random_psd(3, rng) + Point::identity(3);
    Point v = oracle::random_psd(3, rng);
    Eigen::MatrixXd um = oracle::to_eigen(u), vm = oracle::to_eigen(v);
    const double exact = um.determinant() * (um.inverse() * vm).trace();
    const double fd = fd_directional([](const Point& a) { return det(a); }, u, v);
    ASSERT_NEAR(fd, exact, 1e-6 * std::max(1.0, std::abs(exact)));
    ASSERT_GE(exact, 0.0);
  }
}

TEST(Witnesses, ReplayBitIdentical) {
  struct Case {
    const char* id;
    PropertyLabel label;
    ParamMap params;
  };
  for (const Case& c : {Case{"geomean2", PropertyLabel::StrongSubadd, {}},
                        Case{"jensen-gap", PropertyLabel::StrongSubadd, {}},
                        Case{"reciprocal", PropertyLabel::StrongSubadd, {}},
                        Case{"logdet", PropertyLabel::SecondDiffNonneg, {}},
                        Case{"logistic-pow", PropertyLabel::CompletelyMonotone, {{"beta", 0.5}}}}) {
    SCOPED_TRACE(c.id);
    auto f = instantiate(lookup(c.id), c.params);
    auto r = refute(f, c.label, trials(2000, 7));
    ASSERT_TRUE(r.violated());
    EXPECT_EQ(witness_margin(f, *r.witness), r.witness->margin);
    for (const auto& np : r.witness->points)
      if (np.name != "zero") EXPECT_TRUE(member(f.domain().closure(), np.value, 1e-12));
  }
}

TEST(AssertedScalarClaims, HoldOverScales) {
  for (const auto& e : builtin_entries()) {
    if (!e.is_scalar()) continue;
    for (const auto& claim : claims_for(e)) {
      if (claim.status != LabelStatus::PaperAsserted) continue;
      SCOPED_TRACE(e.id + " " + to_string(claim.label));
      auto r = check_over_scales(instantiate(e), claim.label, trials(300));
      EXPECT_FALSE(r.violated());
    }
  }
}

TEST(Refute, ThreadsDoNotChangeWitness) {
  auto f = instantiate(lookup("jensen-gap"), {}, 2);
  CheckConfig serial = trials(3000, 11);
  CheckConfig parallel = serial;
  parallel.threads = 3;
  auto a = to_json(refute(f, PropertyLabel::StrongSubadd, serial));
  auto b = to_json(refute(f, PropertyLabel::StrongSubadd, parallel));
  a["config"].erase("threads");
  b["config"].erase("threads");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(Laplace, CompletelyMonotoneOnPsd) {
  Rng rng(93, 0);
  std::vector<LaplaceAtom> atoms;
  for (int k = 0; k < 3; ++k) atoms.push_back({rng.uniform(), oracle::random_psd(2, rng, 0.5)});
  LaplaceCertificate cert(ConeSpec::psd(2), atoms);
  EXPECT_FALSE(check(cert.as_handle(), PropertyLabel::CompletelyMonotone, trials(1000)).violated());
}
