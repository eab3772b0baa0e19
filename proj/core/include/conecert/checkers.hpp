#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conecert/catalog.hpp"
#include "conecert/cone.hpp"
#include "conecert/diffops.hpp"
#include "conecert/linalg.hpp"

namespace conecert {

// Single home for checker defaults; the CLI and the acceptance suite read
// them from here.
struct CheckConfig {
  std::size_t trials = 10000;
  double scale = 1.0;
  double tol_abs = 1e-9;
  double tol_rel = 1e-12;
  std::uint64_t seed = 0;
  int order_cap = 5;
  bool shrink = true;
  // Trials are split over this many threads; results do not depend on it.
  unsigned threads = 1;

  Tolerance tolerance() const { return {tol_abs, tol_rel}; }
};

inline constexpr std::array<double, 3> kScaleLadder{0.1, 1.0, 10.0};
inline constexpr double kSkipBudget = 0.10;
inline constexpr int kShrinkStepCap = 200;

enum class Verdict { NoViolationFound, ViolationFound };
const char* to_string(Verdict v);

// Which inequality a trial (and a witness) refers to. Every kind has a slack
// that is >= 0 when the inequality holds.
enum class InequalityKind {
  OriginNonneg,        // f(0)
  OriginNonpos,        // -f(0)
  Subadd,              // f(x) + f(y) - f(x+y)
  Superadd,            // f(x+y) - f(x) - f(y)
  SecondDiffNonpos,    // -D_x D_y f(z)
  SecondDiffNonneg,    // D_x D_y f(z)
  Submodular,          // f(x) + f(y) - f(x v y) - f(x ^ y)
  Supermodular,        // f(x v y) + f(x ^ y) - f(x) - f(y)
  CmSign,              // (-1)^k D_{x1}..D_{xk} f(base), k = order
  AlphaStrong,         // D_x D_y f(z) - alpha x y
  LipschitzBox,        // L x y - |D_x D_y f(z)|
  RatioUpper,          // e^{xy} - r(x,y,z)
  RatioLower,          // r(x,y,z) - e^{-xy}
  Chebyshev,           // <uv,p> - <u,p><v,p>
  TomicWeyl,           // sum f(b) - sum f(a)  (or reversed)
  Popoviciu13,         // g(x+y+z) + g(z) - g(x+z) - g(y+z), g = outer o f
  PopoviciuSymmetric,  // three-point symmetrized form
  GaussianDet,         // 1e-3 - relative quadrature error of det(I+A)^{-1/2}
};
const char* to_string(InequalityKind kind);

struct NamedPoint {
  std::string name;
  Point value;
};

struct Witness {
  InequalityKind kind = InequalityKind::Subadd;
  int order = 0;
  std::vector<NamedPoint> points;
  // Extra constants of the inequality (alpha, L, reversal flag, ...).
  std::vector<double> coefficients;
  double margin = 0.0;
  std::string expression;

  const Point& at(const std::string& name) const;
};

struct CheckReport {
  std::string property;
  std::string target;
  Verdict verdict = Verdict::NoViolationFound;
  std::size_t trials_run = 0;
  std::size_t skipped = 0;
  // Most negative slack seen over all trials and shrink steps.
  double worst_margin = 0.0;
  std::optional<Witness> witness;
  CheckConfig config;

  bool violated() const { return verdict == Verdict::ViolationFound; }
};

// Re-evaluates the slack stored in a witness from its points.
double witness_margin(const FunctionHandle& f, const Witness& w);
// Witnesses of inequalities that do not involve a cone function
// (RatioUpper/RatioLower, Chebyshev).
double witness_margin(const Witness& w);
// Popoviciu witnesses; `outer` is the convex function composed with f.
double witness_margin(const FunctionHandle& f, const ScalarFunction& outer, const Witness& w);

// Randomized check of a property label. Trial 0 tests the sign of f(0)
// when the property implies one and the domain contains the origin. Trials
// that raise DomainError are skipped; more than 10% skipped throws
// NumericFailure.
CheckReport check(const FunctionHandle& f, PropertyLabel property, const CheckConfig& cfg);
CheckReport check(const CatalogEntry& entry, PropertyLabel property, const CheckConfig& cfg,
                  const ParamMap& params = {}, std::size_t dim = 0);

// Runs `check` at each scale (cfg.trials trials per scale) and merges the
// reports; the witness is the most violating one found.
CheckReport check_over_scales(const FunctionHandle& f, PropertyLabel property,
                              const CheckConfig& cfg,
                              std::span<const double> scales = kScaleLadder);

// D_x D_y f(z) >= alpha x y on scalar triples.
CheckReport check_alpha_strong(const FunctionHandle& f, double alpha, const CheckConfig& cfg);
// |D_x D_y f(z)| <= L x y on scalar triples.
CheckReport check_lipschitz_box(const FunctionHandle& f, double lipschitz,
                                const CheckConfig& cfg);
// e^{xy} >= (1+z)(1+x+y+z)/((1+x+z)(1+y+z)) >= e^{-xy} for x,y,z >= 0.
CheckReport check_remark_double_inequality(const CheckConfig& cfg);
double double_inequality_ratio(double x, double y, double z);

// Chebyshev's algebraic inequality <u,p><v,p> <= <uv,p> for comonotone u, v
// and a probability vector p. PreconditionError otherwise.
CheckReport check_chebyshev(const Point& u, const Point& v, const Point& p, double tol);

struct MajorizationPair {
  std::vector<double> a;
  std::vector<double> b;
};

enum class MajorizationDirection {
  // a nonincreasing, f nondecreasing convex: sum f(a) <= sum f(b).
  DecreasingA,
  // b nondecreasing, f nonincreasing convex: sum f(b) <= sum f(a).
  IncreasingB,
};

// Throws PreconditionError naming the first failing index.
void validate(const MajorizationPair& pair, MajorizationDirection direction, double tol = 1e-12);

CheckReport tomic_weyl(const MajorizationPair& pair, const ScalarFunction& f,
                       MajorizationDirection direction, double tol = 1e-9);

struct PopoviciuOptions {
  // f nonincreasing and concave: both inequalities flip.
  bool reversed = false;
  std::size_t monotonicity_pairs = 100;
};

// Tests g(x+y+z) + g(z) >= g(x+z) + g(y+z) and the symmetrized three-point
// form, g = outer o phi. Throws PreconditionError when the monotonicity
// spot check of phi fails.
CheckReport check_popoviciu(const FunctionHandle& phi, const ScalarFunction& outer,
                            const CheckConfig& cfg, const PopoviciuOptions& options = {});

// Deterministic equal-step scan of (-1)^k D_h^k f(t d) along the all-ones
// direction and each coordinate axis (the identity for PSD domains), k <= K.
CheckReport cm_scan(const FunctionHandle& f, const CheckConfig& cfg);

// Counterexample search: splits cfg.trials over the scale ladder with
// boundary-biased sampling on odd trials, adds cm_scan for complete
// monotonicity, keeps the most violating witness and shrinks it.
CheckReport refute(const FunctionHandle& f, PropertyLabel property, const CheckConfig& cfg);
CheckReport refute(const CatalogEntry& entry, PropertyLabel property, const CheckConfig& cfg,
                   const ParamMap& params = {}, std::size_t dim = 0);

// Zeroes or halves witness coordinates (whole matrices for PSD points) while
// the violation stays at least half of min(original violation, 1); at most
// kShrinkStepCap attempts.
Witness shrink_witness(const FunctionHandle& f, Witness w, const Tolerance& tol);

}  // namespace conecert
