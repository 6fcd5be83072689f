#include "suq2/coefficients.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace suq2;
using doctest::Approx;

namespace {

// Reference values below were computed with 40-digit arithmetic.
constexpr double kRel = 1e-14;

GammaIndex gamma_of(double n, double i, double j) {
  return {static_cast<int>(std::lround(2 * n)), static_cast<int>(std::lround(2 * i)),
          static_cast<int>(std::lround(2 * j))};
}

}  // namespace

TEST_CASE("deformation parameter range") {
  CHECK_NOTHROW(Deformation(0.0));
  CHECK_NOTHROW(Deformation(-0.999));
  CHECK_THROWS_AS(Deformation(1.0), std::invalid_argument);
  CHECK_THROWS_AS(Deformation(-1.5), std::invalid_argument);
  CHECK_THROWS_AS(Deformation(std::nan("")), std::invalid_argument);
  CHECK(Deformation(0.0).mode() == CoefficientMode::exact_zero);
  CHECK(Deformation(0.3).mode() == CoefficientMode::floating);
}

TEST_CASE("ipow") {
  CHECK(ipow(0.0, 0) == 1.0);
  CHECK(ipow(0.0, 3) == 0.0);
  CHECK(ipow(-0.5, 3) == -0.125);
  CHECK(ipow(0.5, 10) == 1.0 / 1024.0);
}

TEST_CASE("g values") {
  CHECK(g(0, 0.5) == 0.0);
  CHECK(g(1, 0.5) == Approx(0.86602540378443864676).epsilon(kRel));
  CHECK(g(2, 0.5) == Approx(0.96824583655185422129).epsilon(kRel));
  CHECK(g(3, 0.5) == Approx(0.99215674164922147144).epsilon(kRel));
  CHECK(g(3, -0.5) == g(3, 0.5));
  CHECK(g(5, 0.0) == 1.0);
  CHECK_THROWS_AS(g(-1, 0.5), std::domain_error);
  CHECK_THROWS_AS(one_minus_g(-1, 0.5), std::domain_error);
}

TEST_CASE("1 - g keeps relative accuracy when q^{2k} is tiny") {
  CHECK(one_minus_g(1, 0.5) == Approx(0.13397459621556135324).epsilon(kRel));
  CHECK(one_minus_g(40, 0.5) == Approx(4.1359030627651383744e-25).epsilon(kRel));
  CHECK(one_minus_g(500, 0.9) == Approx(8.7393562586132580483e-47).epsilon(1e-12));
  CHECK(1.0 - g(40, 0.5) == 0.0);  // the naive form loses everything
  CHECK(one_minus_g(0, 0.5) == 1.0);
}

TEST_CASE("log g") {
  CHECK(std::isinf(log_g(0, 0.5)));
  CHECK(log_g(2, 0.5) == Approx(std::log(g(2, 0.5))).epsilon(kRel));
}

TEST_CASE("g ratio minus one") {
  CHECK(g_ratio_minus_one({30, 31}, {29, 32}, 0.5) == Approx(1.2197274440461924918e-18).epsilon(1e-10));
  CHECK(g_ratio_minus_one({0, 3}, {1}, 0.5) == -1.0);
  CHECK_THROWS_AS(g_ratio_minus_one({1}, {0}, 0.5), std::domain_error);
  CHECK(g_ratio_minus_one({}, {}, 0.5) == 0.0);
  CHECK(g_ratio_minus_one({2}, {1}, 0.5) == Approx(g(2, 0.5) / g(1, 0.5) - 1.0).epsilon(1e-13));
}

TEST_CASE("t parts") {
  CHECK(t_parts(3).plus == 3);
  CHECK(t_parts(3).minus == 0);
  CHECK(t_parts(-2).plus == 0);
  CHECK(t_parts(-2).minus == 2);
  CHECK(t_parts(0).plus == 0);
}

TEST_CASE("Clebsch-Gordan coefficients at the apex") {
  const GammaIndex apex{0, 0, 0};
  CHECK(a_plus(apex, 0.5) == Approx(0.44721359549995793928).epsilon(kRel));
  CHECK(b_plus(apex, 0.5) == Approx(-0.89442719099991587856).epsilon(kRel));
  CHECK(a_minus(apex, 0.5) == 0.0);
  CHECK(b_minus(apex, 0.5) == 0.0);
}

TEST_CASE("Clebsch-Gordan coefficients at interior points") {
  struct Row {
    double n, i, j, q, ap, am, bp, bm;
  };
  const Row rows[] = {
      {1, 0, 0, 0.5, 0.1183452670827877195, 0.78072005835882654348, -0.47338106833115087799,
       0.39036002917941327174},
      {1, 0, 0, -0.3, -0.026791946048556685868, 0.91404127040510576325, 0.29768828942840762076,
       -0.27421238112153172897},
      {1, -1, 1, 0.5, 0.108465228909328086, 0.0, -0.1893524273324603512, 0.97590007294853317935},
      {1, -1, 1, -0.3, -0.02575720341717562702, 0.0, -0.081932556723414941493, 0.99630498474156528194},
      {1.5, 0.5, -0.5, 0.5, 0.060187734588198366911, 0.84680979843994103221, -0.49339260243192981487,
       0.1893524273324603512},
      {1.5, 0.5, -0.5, -0.3, 0.0080644756637811591912, 0.95044556139016874879, 0.29979201993175142335,
       0.081932556723414941493},
      {2, 1, -1, 0.5, 0.03021697253522366778, 0.86133674208593190381, -0.4983510777964601885,
       0.093979543320367583785},
      {2, 1, -1, -0.3, -0.0024200668840901089692, 0.95362552682665268952, 0.29998128239199625933,
       -0.024570878602911964394},
  };
  for (const auto& r : rows) {
    CAPTURE(r.n);
    CAPTURE(r.i);
    CAPTURE(r.j);
    CAPTURE(r.q);
    const GammaIndex p = gamma_of(r.n, r.i, r.j);
    CHECK(a_plus(p, r.q) == Approx(r.ap).epsilon(kRel));
    CHECK(a_minus(p, r.q) == Approx(r.am).epsilon(kRel));
    CHECK(b_plus(p, r.q) == Approx(r.bp).epsilon(kRel));
    CHECK(b_minus(p, r.q) == Approx(r.bm).epsilon(kRel));
  }
}

TEST_CASE("coefficients vanish exactly when their target is invalid") {
  for (const auto& p : gamma_points(8)) {
    for (double q : {0.5, -0.7}) {
      if (!is_valid(a_plus_target(p))) CHECK(a_plus(p, q) == 0.0);
      if (!is_valid(a_minus_target(p))) CHECK(a_minus(p, q) == 0.0);
      if (!is_valid(b_plus_target(p))) CHECK(b_plus(p, q) == 0.0);
      if (!is_valid(b_minus_target(p))) CHECK(b_minus(p, q) == 0.0);
      CHECK(std::isfinite(a_plus(p, q)));
      CHECK(std::isfinite(a_minus(p, q)));
      CHECK(std::isfinite(b_plus(p, q)));
      CHECK(std::isfinite(b_minus(p, q)));
    }
  }
}

TEST_CASE("q -> 0 limits") {
  CHECK(b_plus_limit(GammaIndex{0, 0, 0}) == -1);
  CHECK(b_minus_limit(GammaIndex{0, 0, 0}) == 0);
  CHECK(a_minus_limit(GammaIndex{0, 0, 0}) == 0);
  CHECK(a_minus_limit(GammaIndex{2, 0, 0}) == 1);
  CHECK(b_minus_limit(GammaIndex{2, -2, 0}) == 1);
  CHECK(b_minus_limit(GammaIndex{2, -2, -2}) == 0);
  for (const auto& p : gamma_points(10)) {
    CAPTURE(to_string(p));
    for (double q : {1e-9, -1e-9}) {
      CHECK(std::abs(a_plus(p, q) - a_plus_limit(p)) < 1e-8);
      CHECK(std::abs(a_minus(p, q) - a_minus_limit(p)) < 1e-8);
      CHECK(std::abs(b_plus(p, q) - b_plus_limit(p)) < 1e-8);
      CHECK(std::abs(b_minus(p, q) - b_minus_limit(p)) < 1e-8);
    }
  }
}

TEST_CASE("g-estimates hold for k = 1..500") {
  for (double q : {0.5, 0.9, -0.9, 0.1}) {
    const auto rep = verify_g_estimates(q, 500);
    CHECK(rep.pass());
    CHECK(rep.rows.size() == 500);
    CHECK(rep.c == Approx(1.0 / std::sqrt(1.0 - q * q)));
  }
  const auto rep = verify_g_estimates(0.5, 1);
  CHECK(rep.rows[0].lhs1 == Approx(0.13397459621556135324).epsilon(kRel));
  CHECK(rep.rows[0].bound1 == 0.25);
  CHECK(rep.rows[0].lhs2 == Approx(0.15470053837925152902).epsilon(kRel));
}

TEST_CASE("g-estimates reject degenerate input") {
  CHECK_THROWS_WITH_AS(verify_g_estimates(0.0, 10), "estimates vacuous at q=0", std::domain_error);
  CHECK_THROWS_AS(verify_g_estimates(0.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(verify_g_estimates(1.0, 10), std::invalid_argument);
}

TEST_CASE("g-estimates over random q") {
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> dist(-0.98, 0.98);
  for (int trial = 0; trial < 50; ++trial) {
    double q = dist(rng);
    if (std::abs(q) < 1e-3) q = 0.5;
    CAPTURE(q);
    CHECK(verify_g_estimates(q, 300).pass());
  }
}

TEST_CASE("g-estimates survive underflow of q^{2k}") {
  const auto rep = verify_g_estimates(0.01, 500);
  CHECK(rep.pass());
  CHECK(rep.rows.back().bound1 == 0.0);
  CHECK(rep.rows.back().pass1);
  CHECK(rep.rows.back().pass2);
}
