#include <gtest/gtest.h>

#include <cmath>

#include "conecert/catalog.hpp"
#include "conecert/certify.hpp"
#include "conecert/error.hpp"
#include "conecert/linalg.hpp"
#include "support.hpp"

using namespace conecert;
using conecert::oracle::scalar;

namespace {

CheckConfig cfg_with_seed(std::uint64_t seed = 0) {
  CheckConfig cfg;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST(HessianSign, Entropy) {
  auto f = instantiate(lookup("shannon-entropy"), {}, 3);
  auto c = certify_hessian_sign(f, HessianSign::Nonpos, 200, cfg_with_seed());
  EXPECT_TRUE(c.certified());
  EXPECT_EQ(c.property, "STRONG_SUBADD");
}

TEST(HessianSign, SquaredNorm) {
  auto f = instantiate(lookup("sq-norm"), {}, 3);
  EXPECT_TRUE(certify_hessian_sign(f, HessianSign::Nonneg, 200, cfg_with_seed()).certified());
}

TEST(HessianSign, LogSumExpRefusedOnDiagonal) {
  auto f = instantiate(lookup("lse"), {}, 3);
  auto c = certify_hessian_sign(f, HessianSign::Nonpos, 200, cfg_with_seed());
  ASSERT_FALSE(c.certified());
  ASSERT_TRUE(c.refusal.has_value());
  EXPECT_EQ(c.refusal->i, c.refusal->j);
  EXPECT_GT(c.refusal->value, 0.0);
}

TEST(HessianSign, OriginSignRequired) {
  // Hessian 0 but f(0) = 1 > 0 rules out superadditivity.
  FunctionHandle f(ConeSpec::nonneg_orthant(2), [](const Point& x) { return 1 + x[0]; }, "aff");
  EXPECT_FALSE(certify_hessian_sign(f, HessianSign::Nonneg, 50, cfg_with_seed()).certified());
  EXPECT_TRUE(certify_hessian_sign(f, HessianSign::Nonpos, 50, cfg_with_seed()).certified());
}

TEST(Topkis, Examples) {
  EXPECT_TRUE(certify_topkis(instantiate(lookup("lse"), {}, 3), Modularity::Submodular, 200,
                             cfg_with_seed())
                  .certified());
  EXPECT_TRUE(certify_topkis(instantiate(lookup("sq-norm"), {}, 3), Modularity::Supermodular,
                             200, cfg_with_seed())
                  .certified());
  FunctionHandle prod(ConeSpec::nonneg_orthant(2), [](const Point& x) { return x[0] * x[1]; },
                      "x1x2");
  auto c = certify_topkis(prod, Modularity::Submodular, 50, cfg_with_seed());
  ASSERT_FALSE(c.certified());
  EXPECT_NE(c.refusal->i, c.refusal->j);
  EXPECT_NEAR(c.refusal->value, 1.0, 1e-6);
}

TEST(DifferentialMonotone, LpPowerNorm) {
  auto f = instantiate(lookup("lp-power-norm"), {{"p", 2.0}}, 8);
  EXPECT_TRUE(certify_differential_monotone(f, Monotonicity::Nondecreasing, 200, cfg_with_seed())
                  .certified());
}

TEST(DifferentialMonotone, DeterminantWithMatrixDirections) {
  auto f = instantiate(lookup("det"), {}, 3);
  EXPECT_TRUE(certify_differential_monotone(f, Monotonicity::Nondecreasing, 200, cfg_with_seed())
                  .certified());
}

TEST(DifferentialMonotone, GeometricMeanRefused) {
  auto f = instantiate(lookup("geomean2"));
  auto c = certify_differential_monotone(f, Monotonicity::Nonincreasing, 200, cfg_with_seed());
  EXPECT_FALSE(c.certified());
  ASSERT_TRUE(c.refusal.has_value());
}

TEST(Certify, Deterministic) {
  auto f = instantiate(lookup("geomean2"));
  auto a = certify_differential_monotone(f, Monotonicity::Nonincreasing, 100, cfg_with_seed(3));
  auto b = certify_differential_monotone(f, Monotonicity::Nonincreasing, 100, cfg_with_seed(3));
  ASSERT_TRUE(a.refusal && b.refusal);
  EXPECT_EQ(a.refusal->point, b.refusal->point);
  EXPECT_EQ(a.refusal->value, b.refusal->value);
}

TEST(Laplace, SingleAtom) {
  LaplaceCertificate cert(ConeSpec::nonneg_orthant(1), {{1.0, scalar(2.0)}});
  for (double x : {0.0, 0.3, 4.0}) EXPECT_DOUBLE_EQ(cert.eval(scalar(x)), std::exp(-2 * x));
}

TEST(Laplace, MixtureIsCompletelyMonotone) {
  LaplaceCertificate cert(ConeSpec::nonneg_orthant(1), {{0.5, scalar(1.0)}, {0.5, scalar(3.0)}});
  EXPECT_DOUBLE_EQ(cert.eval(scalar(1.0)), 0.5 * std::exp(-1.0) + 0.5 * std::exp(-3.0));
  CheckConfig cfg;
  cfg.trials = 3000;
  EXPECT_FALSE(check(cert.as_handle(), PropertyLabel::CompletelyMonotone, cfg).violated());
}

TEST(Laplace, PsdAtomPairsByTrace) {
  LaplaceCertificate cert(ConeSpec::psd(2), {{1.0, Point::identity(2)}});
  Point a = Point::matrix(2, {2, 1, 1, 0.5});
  EXPECT_DOUBLE_EQ(cert.eval(a), std::exp(-2.5));
}

TEST(Laplace, InvalidAtomsRejected) {
  EXPECT_THROW(LaplaceCertificate(ConeSpec::nonneg_orthant(1), {{-1.0, scalar(1.0)}}),
               CertificateError);
  EXPECT_THROW(LaplaceCertificate(ConeSpec::nonneg_orthant(2), {{1.0, Point::vector({1, -1})}}),
               CertificateError);
  EXPECT_THROW(LaplaceCertificate(ConeSpec::psd(2), {{1.0, Point::diagonal({1, -1})}}),
               CertificateError);
}

TEST(Laplace, RandomAtomsPassCompleteMonotonicity) {
  Rng rng(61, 0);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<LaplaceAtom> atoms;
    for (int k = 0; k < 4; ++k)
      atoms.push_back({rng.uniform(), sample(ConeSpec::nonneg_orthant(2), rng, 1.0)});
    LaplaceCertificate cert(ConeSpec::nonneg_orthant(2), atoms);
    CheckConfig cfg;
    cfg.trials = 1000;
    cfg.seed = static_cast<std::uint64_t>(rep);
    EXPECT_FALSE(check(cert.as_handle(), PropertyLabel::CompletelyMonotone, cfg).violated());
  }
}

TEST(GaussianDet, ZeroMatrix) {
  EXPECT_NEAR(gaussian_det_quadrature(Point::zero_matrix(2), 100000), 1.0, 1e-12);
}

TEST(GaussianDet, OneDimensional) {
  // int exp(-2x^2) dx / sqrt(pi) = 1/sqrt(2)
  EXPECT_NEAR(gaussian_det_quadrature(Point::diagonal({1.0})), 1 / std::sqrt(2.0), 1e-3);
}

TEST(GaussianDet, RandomTwoByTwo) {
  Rng rng(71, 0);
  for (int i = 0; i < 3; ++i) {
    Point a = oracle::random_psd(2, rng);
    a *= 1.5 / eigenvalues(a).front();
    const double exact = 1 / std::sqrt(det(Point::identity(2) + a));
    EXPECT_NEAR(gaussian_det_quadrature(a), exact, 1e-3 * exact);
  }
  CheckConfig cfg;
  EXPECT_FALSE(gaussian_detcert_check(2, 5, cfg).violated());
}
