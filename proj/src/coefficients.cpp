#include "suq2/coefficients.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace suq2 {

Deformation::Deformation(double q) : q_(q) {
  if (!std::isfinite(q) || !(std::abs(q) < 1.0))
    throw std::invalid_argument("deformation parameter must satisfy |q| < 1");
}

double ipow(double q, int k) noexcept {
  double result = 1.0;
  double base = q;
  for (unsigned e = static_cast<unsigned>(k); e != 0; e >>= 1) {
    if (e & 1U) result *= base;
    base *= base;
  }
  return result;
}

namespace {

void require_index(int k) {
  if (k < 0) throw std::domain_error("negative q-index");
}

// The half-integer combinations appearing in the coefficient formulas are
// integers on Gamma; these helpers keep the doubled arithmetic in one place.
constexpr int half(int doubled) noexcept { return doubled / 2; }

}  // namespace

double g(int k, double q) {
  require_index(k);
  if (k == 0) return 0.0;
  return std::sqrt(1.0 - ipow(q * q, k));
}

double one_minus_g(int k, double q) {
  require_index(k);
  if (k == 0) return 1.0;
  const double x = ipow(q * q, k);
  return x / (1.0 + std::sqrt(1.0 - x));
}

double log_g(int k, double q) {
  require_index(k);
  if (k == 0) return -std::numeric_limits<double>::infinity();
  return 0.5 * std::log1p(-ipow(q * q, k));
}

double g_ratio_minus_one(std::initializer_list<int> num, std::initializer_list<int> den, double q) {
  double log_ratio = 0.0;
  for (int k : num) {
    if (k == 0) return -1.0;
    log_ratio += log_g(k, q);
  }
  for (int k : den) {
    if (k == 0) throw std::domain_error("g(0) in denominator");
    log_ratio -= log_g(k, q);
  }
  return std::expm1(log_ratio);
}

double a_plus(GammaIndex p, double q) {
  if (!is_valid(a_plus_target(p))) return 0.0;
  const int two_n = p.n2;
  return ipow(q, half(2 * p.n2 + p.i2 + p.j2) + 1) * g(half(p.n2 - p.j2) + 1, q) *
         g(half(p.n2 - p.i2) + 1, q) / (g(two_n + 1, q) * g(two_n + 2, q));
}

double a_minus(GammaIndex p, double q) {
  if (!is_valid(a_minus_target(p))) return 0.0;
  const int two_n = p.n2;
  return g(half(p.n2 + p.j2), q) * g(half(p.n2 + p.i2), q) / (g(two_n, q) * g(two_n + 1, q));
}

double b_plus(GammaIndex p, double q) {
  if (!is_valid(b_plus_target(p))) return 0.0;
  const int two_n = p.n2;
  return -ipow(q, half(p.n2 + p.j2)) * g(half(p.n2 - p.j2) + 1, q) * g(half(p.n2 + p.i2) + 1, q) /
         (g(two_n + 1, q) * g(two_n + 2, q));
}

double b_minus(GammaIndex p, double q) {
  if (!is_valid(b_minus_target(p))) return 0.0;
  const int two_n = p.n2;
  return ipow(q, half(p.n2 + p.i2)) * g(half(p.n2 + p.j2), q) * g(half(p.n2 - p.i2), q) /
         (g(two_n, q) * g(two_n + 1, q));
}

int a_plus_limit(GammaIndex) noexcept { return 0; }

int a_minus_limit(GammaIndex p) noexcept {
  return (p.i2 > -p.n2 && p.j2 > -p.n2) ? 1 : 0;
}

int b_plus_limit(GammaIndex p) noexcept { return p.j2 == -p.n2 ? -1 : 0; }

int b_minus_limit(GammaIndex p) noexcept {
  return (p.i2 == -p.n2 && p.j2 > -p.n2) ? 1 : 0;
}

double g_estimate_constant(double q) { return 1.0 / std::sqrt(1.0 - q * q); }

GEstimateReport verify_g_estimates(double q, int kmax) {
  if (q == 0.0) throw std::domain_error("estimates vacuous at q=0");
  if (!(std::abs(q) < 1.0)) throw std::invalid_argument("deformation parameter must satisfy |q| < 1");
  if (kmax < 1) throw std::invalid_argument("kmax must be at least 1");

  GEstimateReport report;
  report.q = q;
  report.c = g_estimate_constant(q);
  report.rows.reserve(static_cast<std::size_t>(kmax));
  for (int k = 1; k <= kmax; ++k) {
    GEstimateRow row;
    row.k = k;
    const double x = ipow(q * q, k);
    const double gk = g(k, q);
    row.lhs1 = one_minus_g(k, q);
    row.bound1 = x;
    // |1 - 1/g| = (1 - g) / g
    row.lhs2 = row.lhs1 / gk;
    row.bound2 = report.c * x;
    // Compared through logarithms: for small |q| both sides underflow to 0 long before k = kmax.
    const double log_x = 2.0 * k * std::log(std::abs(q));
    const double log_lhs1 = log_x - std::log1p(gk);
    const double log_lhs2 = log_lhs1 - std::log(gk);
    const double log_c = std::log(report.c);
    row.pass1 = log_lhs1 < log_x;
    row.pass2 = log_lhs2 < log_c + log_x;
    row.pass = row.pass1 && row.pass2;
    if (!row.pass) ++report.violations;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace suq2
