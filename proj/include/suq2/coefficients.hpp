#pragma once

// Scalar formulas: g(k) = (1 - q^{2k})^{1/2}, the Clebsch-Gordan coefficients
// of the left regular representation, their q = 0 limits, and the g-estimates
// used in the compactness argument.

#include "suq2/lattice.hpp"

#include <initializer_list>
#include <vector>

namespace suq2 {

enum class CoefficientMode { exact_zero, floating };

/// Deformation parameter q with |q| < 1. q == 0 selects the exact mode.
class Deformation {
 public:
  explicit Deformation(double q);

  double value() const noexcept { return q_; }
  bool is_zero() const noexcept { return q_ == 0.0; }
  CoefficientMode mode() const noexcept {
    return is_zero() ? CoefficientMode::exact_zero : CoefficientMode::floating;
  }

 private:
  double q_;
};

/// q^k for integer k >= 0, with q^0 = 1 (also at q = 0).
double ipow(double q, int k) noexcept;

/// sqrt(1 - q^{2k}). g(0) = 0 for every q. Throws std::domain_error on k < 0.
double g(int k, double q);

/// 1 - g(k) evaluated as q^{2k} / (1 + g(k)), accurate when q^{2k} is tiny.
double one_minus_g(int k, double q);

/// log g(k) = log1p(-q^{2k}) / 2; -inf at k = 0.
double log_g(int k, double q);

/// prod g(num) / prod g(den) - 1, evaluated through log1p/expm1 so that the
/// result keeps full relative accuracy when the ratio is close to 1.
double g_ratio_minus_one(std::initializer_list<int> num, std::initializer_list<int> den, double q);

struct TParts {
  int plus = 0;
  int minus = 0;
};

constexpr TParts t_parts(int t) noexcept { return {t > 0 ? t : 0, t < 0 ? -t : 0}; }

// Clebsch-Gordan coefficients of lambda_q(alpha) and lambda_q(beta) at e^n_{ij}.
// A coefficient whose target basis vector does not exist is 0; this is checked
// before any division, so the 0/0 at n = 0 never arises.
double a_plus(GammaIndex p, double q);
double a_minus(GammaIndex p, double q);
double b_plus(GammaIndex p, double q);
double b_minus(GammaIndex p, double q);

// Targets of the four terms (possibly invalid).
constexpr GammaIndex a_plus_target(GammaIndex p) noexcept { return {p.n2 + 1, p.i2 - 1, p.j2 - 1}; }
constexpr GammaIndex a_minus_target(GammaIndex p) noexcept { return {p.n2 - 1, p.i2 - 1, p.j2 - 1}; }
constexpr GammaIndex b_plus_target(GammaIndex p) noexcept { return {p.n2 + 1, p.i2 + 1, p.j2 - 1}; }
constexpr GammaIndex b_minus_target(GammaIndex p) noexcept { return {p.n2 - 1, p.i2 + 1, p.j2 - 1}; }

// q -> 0 limits, values in {-1, 0, +1}.
int a_plus_limit(GammaIndex p) noexcept;
int a_minus_limit(GammaIndex p) noexcept;
int b_plus_limit(GammaIndex p) noexcept;
int b_minus_limit(GammaIndex p) noexcept;

/// The constant c in |1 - 1/g(k)| < c q^{2k}: (1 - q^2)^{-1/2}.
double g_estimate_constant(double q);

struct GEstimateRow {
  int k = 0;
  double lhs1 = 0.0;    // |1 - g(k)|
  double bound1 = 0.0;  // q^{2k}
  double lhs2 = 0.0;    // |1 - 1/g(k)|
  double bound2 = 0.0;  // c q^{2k}
  bool pass1 = false;   // decided on logarithms, so rows where q^{2k} underflows still count
  bool pass2 = false;
  bool pass = false;
};

struct GEstimateReport {
  double q = 0.0;
  double c = 0.0;
  std::vector<GEstimateRow> rows;
  std::size_t violations = 0;
  bool pass() const noexcept { return violations == 0; }
};

/// Checks both g-estimates for k = 1..kmax. Throws std::domain_error at q = 0
/// ("estimates vacuous at q=0") and std::invalid_argument for kmax < 1.
GEstimateReport verify_g_estimates(double q, int kmax);

}  // namespace suq2
