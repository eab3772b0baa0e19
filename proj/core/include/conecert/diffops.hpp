#pragma once

#include <functional>
#include <span>
#include <string>

#include "conecert/cone.hpp"
#include "conecert/point.hpp"

namespace conecert {

// A real-valued function on a cone. Calls check shape and membership
// (tolerance 1e-12) and reject non-finite results, so callers only ever see
// a finite value or a DomainError.
class FunctionHandle {
 public:
  using Rule = std::function<double(const Point&)>;

  FunctionHandle(ConeSpec domain, Rule rule, std::string label);

  double operator()(const Point& x) const;

  const ConeSpec& domain() const { return domain_; }
  const std::string& label() const { return label_; }
  // Evaluation without the membership check, for callers that already know
  // the argument is admissible.
  const Rule& rule() const { return rule_; }

 private:
  ConeSpec domain_;
  Rule rule_;
  std::string label_;
};

inline constexpr double kHandleMembershipTol = 1e-12;
inline constexpr std::size_t kMaxDifferenceOrder = 12;

// f(x + z) - f(z)
double delta(const FunctionHandle& f, const Point& x, const Point& z);

// f(x+y+z) - f(x+z) - f(y+z) + f(z), summed as
// (f(x+y+z) + f(z)) - (f(x+z) + f(y+z)) so swapping x and y is exact.
double second_diff(const FunctionHandle& f, const Point& x, const Point& y, const Point& z);

// Sum over subsets S of {1..k} of (-1)^(k-|S|) f(base + sum_{i in S} x_i).
// Positive and negative terms are accumulated apart and subtracted once.
double kth_diff(const FunctionHandle& f, std::span<const Point> increments, const Point& base);

// x -> f(x + t) - f(t) on the closure of f's domain.
FunctionHandle shift_and_center(const FunctionHandle& f, const Point& t);

}  // namespace conecert
