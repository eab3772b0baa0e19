#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conecert/checkers.hpp"
#include "conecert/cone.hpp"
#include "conecert/diffops.hpp"

namespace conecert {

enum class CertMethod { HessianSign, TopkisCross, DifferentialMonotone, LaplaceAtoms };
const char* to_string(CertMethod m);

// Sampled sufficient-condition verdicts. Never a proof.
enum class CertVerdict { CertifiedNumeric, Refused };
const char* to_string(CertVerdict v);

enum class HessianSign { Nonpos, Nonneg };
enum class Modularity { Submodular, Supermodular };
enum class Monotonicity { Nonincreasing, Nondecreasing };

struct RefusalWitness {
  Point point;
  std::optional<Point> other;      // second point of a monotonicity pair
  std::optional<Point> direction;  // w for directional derivatives
  int i = -1;
  int j = -1;
  double value = 0.0;
  std::string note;
};

struct Certificate {
  CertMethod method = CertMethod::HessianSign;
  std::string property;
  std::string target;
  std::size_t sample_points = 0;
  std::size_t resampled = 0;
  std::uint64_t seed = 0;
  CertVerdict verdict = CertVerdict::Refused;
  std::optional<RefusalWitness> refusal;

  bool certified() const { return verdict == CertVerdict::CertifiedNumeric; }
};

// Relative tolerance on Hessian entries: 1e-6 * max(1, ||H||_inf).
inline constexpr double kHessianSignTol = 1e-6;

// Every finite-difference Hessian entry at `points` interior samples must
// have the required sign, and f(0) the matching sign when 0 is in the domain.
Certificate certify_hessian_sign(const FunctionHandle& f, HessianSign sign, std::size_t points,
                                 const CheckConfig& cfg);

// Off-diagonal Hessian entries only.
Certificate certify_topkis(const FunctionHandle& f, Modularity mode, std::size_t points,
                           const CheckConfig& cfg);

// For sampled u, v in the cone and interior directions w, compares
// df(u+v)(w) with df(u)(w). Works for vector and PSD domains.
Certificate certify_differential_monotone(const FunctionHandle& f, Monotonicity direction,
                                          std::size_t pairs, const CheckConfig& cfg);

struct LaplaceAtom {
  double weight = 0.0;
  Point dual_point;
};

// Finite atomic measure on the dual cone; its Laplace transform
// x -> sum w_i exp(-<x, u_i>) is completely monotone on the cone.
class LaplaceCertificate {
 public:
  // Throws CertificateError on negative weights or dual points outside the
  // dual cone (orthant and PSD cone are self-dual).
  LaplaceCertificate(ConeSpec cone, std::vector<LaplaceAtom> atoms);

  const ConeSpec& cone() const { return cone_; }
  const std::vector<LaplaceAtom>& atoms() const { return atoms_; }

  double eval(const Point& x) const;
  FunctionHandle as_handle() const;

 private:
  ConeSpec cone_;
  std::vector<LaplaceAtom> atoms_;
};

double laplace_eval(const LaplaceCertificate& cert, const Point& x);
FunctionHandle laplace_as_handle(const LaplaceCertificate& cert);

inline constexpr std::size_t kGaussianQuadratureNodes = 1'000'000;

// det(I+A)^{-1/2} = integral over R^N of exp(-<Ax,x>) prod exp(-x_i^2)/sqrt(pi),
// checked by Halton quasi-Monte Carlo against the eigenvalue formula on
// `matrices` random PSD matrices with spectral norm <= 2. Slack is
// 1e-3 - relative error.
CheckReport gaussian_detcert_check(std::size_t n, std::size_t matrices, const CheckConfig& cfg,
                                   std::size_t nodes = kGaussianQuadratureNodes);

// Quadrature side of the identity, exposed for tests.
double gaussian_det_quadrature(const Point& a, std::size_t nodes = kGaussianQuadratureNodes);

}  // namespace conecert
