#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "conecert/catalog.hpp"
#include "conecert/diffops.hpp"
#include "conecert/error.hpp"
#include "conecert/linalg.hpp"
#include "support.hpp"

using namespace conecert;
using conecert::oracle::half_line;
using conecert::oracle::scalar;

namespace {

// (-1)^k style recursion: D_{x1} ... D_{xk} f(base) by peeling one increment.
double recursive_diff(const FunctionHandle& f, const std::vector<Point>& xs, std::size_t k,
                      const Point& base) {
  if (k == 0) return f(base);
  return recursive_diff(f, xs, k - 1, base + xs[k - 1]) - recursive_diff(f, xs, k - 1, base);
}

}  // namespace

TEST(Delta, Affine) {
  auto f = half_line([](double t) { return 3 * t + 1; });
  EXPECT_DOUBLE_EQ(delta(f, scalar(2), scalar(5)), 6.0);
}

TEST(Delta, Log1pAtOrigin) {
  auto f = half_line([](double t) { return std::log1p(t); });
  EXPECT_DOUBLE_EQ(delta(f, scalar(1), scalar(0)), std::log(2.0));
}

TEST(Delta, ZeroIncrement) {
  auto f = half_line([](double t) { return std::exp(t) * std::sin(t); });
  EXPECT_EQ(delta(f, scalar(0), scalar(1.7)), 0.0);
}

TEST(SecondDiff, SquaredNorm) {
  auto& e = lookup("sq-norm");
  auto f = instantiate(e, {}, 2);
  for (const Point& z : {Point::vector({0, 0}), Point::vector({4, 0.5})})
    EXPECT_NEAR(second_diff(f, Point::vector({1, 1}), Point::vector({2, 3}), z), 10.0, 1e-9);
}

TEST(SecondDiff, GeometricMeanCounterexample) {
  auto f = instantiate(lookup("geomean2"));
  const double v = second_diff(f, Point::vector({1.0 / 3, 1.0 / 3}),
                               Point::vector({1.0 / 3, 2.0 / 3}), Point::vector({0, 0}));
  // sqrt(2/3*1) - sqrt(1/9) - sqrt(2/9) + 0
  const double oracle = std::sqrt(2.0 / 3.0) - 1.0 / 3.0 - std::sqrt(2.0) / 3.0;
  EXPECT_NEAR(v, oracle, 1e-15);
  EXPECT_NEAR(v, 0.011758726803361, 1e-12);
}

TEST(SecondDiff, LogSumExpWitness) {
  auto f = instantiate(lookup("lse"), {}, 2);
  const double v = second_diff(f, Point::vector({1, 0}), Point::vector({0, 1}),
                               Point::vector({1, 1}));
  // log(2e^2) - log(e^2 + e) - log(e + e^2) + log(2e)
  const double e = std::exp(1.0);
  const double oracle = std::log(2 * e * e) - 2 * std::log(e * e + e) + std::log(2 * e);
  EXPECT_NEAR(v, oracle, 1e-14);
  EXPECT_NEAR(v, 1.0 - 2.0 * std::log((1 + e) / 2), 1e-14);
  EXPECT_LT(v, 0.0);
}

TEST(SecondDiff, SymmetricInIncrements) {
  auto f = instantiate(lookup("lse"), {}, 3);
  Rng rng(3, 3);
  for (int i = 0; i < 100; ++i) {
    Point x = sample(f.domain(), rng, 2.0), y = sample(f.domain(), rng, 2.0),
          z = sample(f.domain(), rng, 2.0);
    ASSERT_EQ(second_diff(f, x, y, z), second_diff(f, y, x, z));
  }
}

TEST(KthDiff, LowOrdersReduce) {
  auto f = half_line([](double t) { return std::sqrt(1 + t * t * t); });
  const Point x = scalar(0.7), y = scalar(1.3), z = scalar(0.4);
  std::vector<Point> one{x};
  EXPECT_DOUBLE_EQ(kth_diff(f, one, z), delta(f, x, z));
  std::vector<Point> two{x, y};
  EXPECT_NEAR(kth_diff(f, two, z), second_diff(f, x, y, z), 1e-15);
}

TEST(KthDiff, ExponentialSigns) {
  auto f = half_line([](double t) { return std::exp(-2 * t); });
  std::vector<Point> xs{scalar(0.3), scalar(0.7), scalar(0.1)};
  EXPECT_GE(-kth_diff(f, xs, scalar(0.5)), 0.0);
  // closed form: e^{-2b} prod (e^{-2 x_i} - 1)
  double oracle = std::exp(-1.0);
  for (double x : {0.3, 0.7, 0.1}) oracle *= std::exp(-2 * x) - 1;
  EXPECT_NEAR(kth_diff(f, xs, scalar(0.5)), oracle, 1e-14);
}

TEST(KthDiff, MatchesRecursion) {
  auto f = instantiate(lookup("exp-neg-linear"), {}, 3);
  Rng rng(1, 1);
  for (std::size_t k = 0; k <= 8; ++k) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Point> xs;
      for (std::size_t i = 0; i < k; ++i) xs.push_back(sample(f.domain(), rng, 0.5));
      Point base = sample(f.domain(), rng, 1.0);
      const double ref = recursive_diff(f, xs, k, base);
      const double got = kth_diff(f, xs, base);
      ASSERT_LE(std::abs(got - ref), 1e-12 * std::max(1.0, std::abs(ref)) + 1e-15)
          << "k=" << k;
    }
  }
}

TEST(KthDiff, OrderCap) {
  auto f = half_line([](double t) { return t; });
  std::vector<Point> xs(kMaxDifferenceOrder + 1, scalar(0.1));
  EXPECT_THROW(kth_diff(f, xs, scalar(0)), CapabilityError);
}

TEST(KthDiff, DomainErrorsPropagate) {
  FunctionHandle f(ConeSpec::positive_orthant(1), [](const Point& x) { return 1 / x[0]; }, "r");
  std::vector<Point> xs{scalar(1.0)};
  EXPECT_THROW(kth_diff(f, xs, scalar(0.0)), DomainError);
}

TEST(ShiftAndCenter, ExponentialAtOrigin) {
  auto f = half_line([](double t) { return std::exp(-t); });
  auto g = shift_and_center(f, scalar(0));
  EXPECT_EQ(g(scalar(0)), 0.0);
  for (double x : {0.1, 1.0, 5.0}) {
    EXPECT_DOUBLE_EQ(g(scalar(x)), std::exp(-x) - 1.0);
    EXPECT_LE(g(scalar(x)), 0.0);
  }
}

TEST(ShiftAndCenter, LogisticPower) {
  const ParamMap params{{"a", 1.0}, {"beta", 1.5}};
  auto f = instantiate(lookup("logistic-pow"), params);
  auto g = shift_and_center(f, scalar(0));
  for (double x : {0.0, 0.5, 3.0})
    EXPECT_NEAR(g(scalar(x)), std::pow(1 + std::exp(-x), 1.5) - std::pow(2.0, 1.5), 1e-14);
}

TEST(ShiftAndCenter, DetPowerOnPsd) {
  const ParamMap params{{"beta", 0.5}};
  auto f = instantiate(lookup("det-recip-pow"), params, 2);
  // (det A)^(-1/2) shifted by I gives det(I + A)^(-1/2) - 1.
  auto g = shift_and_center(f, Point::identity(2));
  EXPECT_EQ(g(Point::zero_matrix(2)), 0.0);
  Point a = Point::matrix(2, {2, 1, 1, 1});
  // det(I + A) = 3*2 - 1 = 5
  EXPECT_NEAR(g(a), 1 / std::sqrt(5.0) - 1, 1e-14);
}

TEST(ShiftAndCenter, UndefinedShiftThrows) {
  FunctionHandle f(ConeSpec::positive_orthant(1), [](const Point& x) { return 1 / x[0]; }, "r");
  EXPECT_THROW(shift_and_center(f, scalar(0.0)), DomainError);
}

TEST(FunctionHandle, RejectsNonMembersAndNonFinite) {
  FunctionHandle f(ConeSpec::nonneg_orthant(1), [](const Point& x) { return std::log(x[0]); },
                   "log");
  EXPECT_THROW(f(scalar(-1)), DomainError);
  EXPECT_THROW(f(scalar(0)), DomainError);
  EXPECT_THROW(f(Point::vector({1, 2})), ShapeError);
}
