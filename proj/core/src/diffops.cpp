#include "conecert/diffops.hpp"

#include <cmath>
#include <sstream>

#include "conecert/error.hpp"

namespace conecert {

FunctionHandle::FunctionHandle(ConeSpec domain, Rule rule, std::string label)
    : domain_(std::move(domain)), rule_(std::move(rule)), label_(std::move(label)) {}

double FunctionHandle::operator()(const Point& x) const {
  require_compatible(domain_, x);
  if (!member(domain_, x, kHandleMembershipTol)) {
    throw DomainError(label_ + ": argument outside " + domain_.name());
  }
  const double v = rule_(x);
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << label_ << ": non-finite value " << v;
    throw DomainError(msg.str());
  }
  return v;
}

double delta(const FunctionHandle& f, const Point& x, const Point& z) { return f(x + z) - f(z); }

double second_diff(const FunctionHandle& f, const Point& x, const Point& y, const Point& z) {
  const double outer = f(x + y + z) + f(z);
  const double inner = f(x + z) + f(y + z);
  return outer - inner;
}

double kth_diff(const FunctionHandle& f, std::span<const Point> increments, const Point& base) {
  const std::size_t k = increments.size();
  if (k > kMaxDifferenceOrder) {
    throw CapabilityError("difference order " + std::to_string(k) + " exceeds the cap of " +
                          std::to_string(kMaxDifferenceOrder));
  }
  double positive = 0.0;
  double negative = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Point at = base;
    std::size_t chosen = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::size_t{1} << i)) {
        at += increments[i];
        ++chosen;
      }
    }
    const double v = f(at);
    if ((k - chosen) % 2 == 0) {
      positive += v;
    } else {
      negative += v;
    }
  }
  return positive - negative;
}

FunctionHandle shift_and_center(const FunctionHandle& f, const Point& t) {
  const double at_t = f(t);
  FunctionHandle inner = f;
  const ConeSpec domain = f.domain().closure();
  return FunctionHandle(
      domain,
      [inner, t, at_t](const Point& x) { return inner(x + t) - at_t; },
      f.label() + "@shift");
}

}  // namespace conecert
