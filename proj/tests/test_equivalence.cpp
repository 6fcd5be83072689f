#include "oracles.hpp"
#include "suq2/equivalence.hpp"

#include <doctest.h>

#include <cmath>

using namespace suq2;
using doctest::Approx;

TEST_CASE("U on small examples") {
  CHECK(u_forward({0, 0, 0}) == Signed<FullIndex>{1, {0, 0, 0}});
  CHECK(u_forward({1, 1, -1}) == Signed<FullIndex>{-1, {0, 0, -1}});
  CHECK(u_forward({2, 0, 2}) == Signed<FullIndex>{1, {0, 1, 1}});
  CHECK(u_backward({0, 0, -1}) == Signed<GammaIndex>{-1, {1, 1, -1}});
  CHECK(u_backward({0, 1, 1}) == Signed<GammaIndex>{1, {2, 0, 2}});
}

TEST_CASE("U is a shell-preserving signed permutation up to cap 40") {
  const SignedIndexMap u(40);
  const auto& gamma = u.gamma();
  const auto& full = u.full();
  REQUIRE(gamma.dim() == full.dim());
  std::vector<bool> hit(full.dim(), false);
  for (std::size_t k = 0; k < gamma.dim(); ++k) {
    const GammaIndex p = gamma.point_of(k);
    const auto f = u_forward(p);
    REQUIRE(full.contains(f.point));
    CHECK(shell(f.point) == p.n2);
    const std::size_t fr = u.forward_rank(k);
    CHECK_FALSE(hit[fr]);
    hit[fr] = true;
    const auto b = u_backward(f.point);
    CHECK(b.point == p);
    CHECK(b.sign * f.sign == 1);
    CHECK(u.backward_rank(fr) == k);
  }
}

TEST_CASE("U agrees with the half-integer dense oracle") {
  const int cap = 7;
  const SignedIndexMap u(cap);
  const auto ref = oracle::unitary(cap);
  Eigen::MatrixXd ours = Eigen::MatrixXd::Zero(ref.rows(), ref.cols());
  for (std::size_t k = 0; k < u.gamma().dim(); ++k)
    ours(static_cast<Eigen::Index>(u.forward_rank(k)), static_cast<Eigen::Index>(k)) = u.forward_sign(k);
  CHECK(ours == ref);
  CHECK((ref * ref.transpose() - Eigen::MatrixXd::Identity(ref.rows(), ref.rows())).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sheets map onto fibers") {
  const SignedIndexMap u(16);
  for (const auto& p : u.gamma().points()) CHECK(2 * u_forward(p).point.r == sheet_of(p));
  CHECK(sheet_of({0, 0, 0}) == 0);
  CHECK(sheet_of({2, 2, 2}) == 0);
  CHECK(sheet_of({2, 0, 0}) == 2);
}

TEST_CASE("conjugation basics") {
  const auto u = unitary_u(6);
  CHECK(conjugate(SparseMatrix<int>::identity(u.gamma().dim()), u) == SparseMatrix<int>::identity(u.full().dim()));
  CHECK_THROWS_WITH_AS(conjugate(SparseMatrix<int>::identity(3), u), "operator and U have different caps",
                       std::invalid_argument);
  const auto b = conjugate(build_lambda0(u.gamma(), Generator::beta), u);
  const auto col = b.column(u.full().index_of({0, 0, 0}));
  REQUIRE(col.size() == 1);
  CHECK(col[0].row == u.full().index_of({0, 0, -1}));
  CHECK(col[0].value == 1);
}

TEST_CASE("q = 0 intertwining holds exactly on every column") {
  for (int cap : {1, 4, 11}) {
    const auto u = unitary_u(cap);
    for (Generator g : kAllGenerators) {
      CAPTURE(cap);
      CHECK(conjugate(build_lambda0(u.gamma(), g), u) == build_ipi0(u.full(), g));
    }
  }
}

TEST_CASE("compressing lambda_0(beta_0) to a sheet gives P_0 (x) S on the fiber") {
  const auto u = unitary_u(9);
  const auto b0 = build_lambda0(u.gamma(), Generator::beta);
  for (int k = 0; k <= 4; ++k) {
    const auto c = compress_to_sheet(b0, u, k);
    for (std::size_t j = 0; j < u.full().dim(); ++j) {
      const FullIndex p = u.full().point_of(j);
      const FullIndex tgt{k, 0, p.t - 1};
      if (p.r == k && p.s == 0 && u.full().contains(tgt)) {
        REQUIRE(c.column(j).size() == 1);
        CHECK(c.column(j)[0].row == u.full().index_of(tgt));
        CHECK(c.column(j)[0].value == 1);
      } else {
        CHECK(c.column(j).empty());
      }
    }
  }
}

TEST_CASE("verify_q0_equivalence") {
  const auto res = verify_q0_equivalence(20);
  CHECK(res.pass());
  CHECK(res.columns_checked == cumulative_cube_count(20));
  for (const auto& g : res.generators) CHECK(g.mismatches == 0);

  const auto apex_only = verify_q0_equivalence(1);
  CHECK(apex_only.pass());
  CHECK(apex_only.columns_checked == 1);

  const auto displayed = verify_q0_equivalence(3, Beta0Form::displayed);
  CHECK_FALSE(displayed.pass());
  CHECK(displayed.generators[0].mismatches == 0);
  CHECK(displayed.generators[2].mismatches == 0);
  for (std::size_t k : {1u, 3u}) {
    CHECK(displayed.generators[k].mismatches == 9);
    REQUIRE(displayed.generators[k].witness.has_value());
    CHECK(*displayed.generators[k].witness == FullIndex{0, 0, 0});
  }
  CHECK_THROWS_AS(verify_q0_equivalence(0), std::invalid_argument);
}

TEST_CASE("difference operators") {
  const Deformation q(0.5);
  const int cap = 6;
  const FullLattice full(cap);
  const auto da = difference(q, cap, Generator::alpha);
  const auto apex = da.column(full.index_of({0, 0, 0}));
  REQUIRE(apex.size() == 1);
  CHECK(apex[0].row == full.index_of({1, 0, 0}));
  CHECK(apex[0].value == Approx(0.4472135955).epsilon(1e-10));
  for (std::size_t j = 0; j < full.dim(); ++j) {
    const FullIndex p = full.point_of(j);
    CHECK(da.column(j).size() <= 2);
    for (const auto& e : da.column(j)) {
      const FullIndex t = full.point_of(e.row);
      const bool up = t == FullIndex{p.r + 1, p.s, p.t};
      const bool down = t == FullIndex{p.r, p.s - 1, p.t};
      CHECK((up || down));
    }
  }
  CHECK_THROWS_AS(difference(Deformation(0.0), cap, Generator::alpha), std::invalid_argument);
  CHECK_THROWS_AS(difference(q, cap, Generator::alpha_star), std::invalid_argument);
}

TEST_CASE("difference operators agree with the dense oracle") {
  const int cap = 6;
  const auto u = oracle::unitary(cap);
  for (double q : {0.5, -0.3}) {
    for (bool alpha : {true, false}) {
      const Eigen::MatrixXd ref = u * oracle::lambda(q, cap, alpha) * u.transpose() - oracle::ipi(q, cap, alpha);
      const auto ours = oracle::dense(difference(Deformation(q), cap, alpha ? Generator::alpha : Generator::beta));
      CHECK((ours - ref).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("R and T diagonal entries") {
  CHECK(r_entry(3, 0.5, {0, 1, 2}) == 0.03125);
  CHECK(r_entry(1, 0.5, {0, 0, 0}) == Approx(0.4472135955).epsilon(1e-10));
  for (int t = -5; t <= 5; ++t) CHECK(t_entry(1, 0.5, {0, 0, t}) == 0.0);
  CHECK(t_entry(1, 0.5, {0, 0, -1}, T1Bottom::uniform) == Approx(-0.39036002917941327174).epsilon(1e-14));
  CHECK_THROWS_AS(r_entry(5, 0.5, {0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(t_entry(0, 0.5, {0, 0, 0}), std::invalid_argument);

  const auto r3 = build_R(Deformation(0.5), 4, 3);
  const PiLattice pi(4);
  CHECK(r3.rows() == pi.dim());
  CHECK(r3.coeff(pi.index_of({1, 2}), pi.index_of({1, 2})) == 0.03125);
  CHECK(build_T(Deformation(0.5), 4, 1).rows() == FullLattice(4).dim());
  CHECK_THROWS_AS(build_R(Deformation(0.5), 4, 0), std::invalid_argument);
}

TEST_CASE("shift operators") {
  const FullLattice full(4);
  const auto s = build_shift(full, FullShift::s_down);
  CHECK(s.column(full.index_of({1, 0, 2})).empty());
  const auto c = s.column(full.index_of({1, 2, 0}));
  REQUIRE(c.size() == 1);
  CHECK(c[0].row == full.index_of({1, 1, 0}));
  CHECK(build_shift(full, FullShift::rst_down).column(full.index_of({0, 2, 1})).empty());
  CHECK(build_shift(full, FullShift::r_up).column(full.index_of({1, 1, 2})).empty());
}

TEST_CASE("closed-form decomposition matches conjugation") {
  for (double q : {0.1, -0.1, 0.5, -0.5, 0.9}) {
    for (Generator g : {Generator::alpha, Generator::beta}) {
      CAPTURE(q);
      const auto res = crosscheck_decomposition(Deformation(q), 12, g);
      CHECK(res.deviation < 1e-13);
      CHECK_FALSE(res.no_interior);
      CHECK(res.columns_checked == cumulative_cube_count(12));
    }
  }
  const auto empty = crosscheck_decomposition(Deformation(0.5), 0, Generator::alpha);
  CHECK(empty.no_interior);
  CHECK(empty.deviation == 0.0);
  CHECK(empty.columns_checked == 0);
}

TEST_CASE("regression: R1 must act before the r shift") {
  const Deformation q(0.5);
  const int cap = 8;
  const FullLattice full(cap);
  const auto wrong = add(compose(build_R(q, cap, 1), build_shift(full, FullShift::r_up)),
                         compose(build_R(q, cap, 2), build_shift(full, FullShift::s_down)));
  const auto d = difference(q, cap, Generator::alpha);
  const std::vector<bool> interior = [&] {
    std::vector<bool> m(full.dim());
    for (std::size_t j = 0; j < full.dim(); ++j) m[j] = shell(full.point_of(j)) < cap;
    return m;
  }();
  CHECK(max_abs_entry(restrict_columns(subtract(wrong, d), interior)) > 1e-3);
}

TEST_CASE("regression: T1 with a zero bottom fiber does not reproduce D_beta") {
  const Deformation q(0.5);
  const int cap = 8;
  const FullLattice full(cap);
  const double qv = q.value();
  const auto t1u = build_diagonal<double>(full, [qv](FullIndex p) { return p.t >= 0 ? t_entry(1, qv, p) : 0.0; });
  const auto t1l = build_diagonal<double>(full, [qv](FullIndex p) { return p.t < 0 ? t_entry(1, qv, p) : 0.0; });
  const auto displayed = add(add(compose(t1u, build_shift(full, FullShift::rs_up_t_down)),
                                 compose(t1l, build_shift(full, FullShift::rst_down))),
                             compose(build_T(q, cap, 2), build_shift(full, FullShift::t_down)));
  const auto d = difference(q, cap, Generator::beta);
  const std::size_t col = full.index_of({1, 1, -1});
  const auto delta = subtract(displayed, d);
  double worst = 0.0;
  for (const auto& e : delta.column(col)) worst = std::max(worst, std::abs(e.value));
  CHECK(worst > 1e-3);
}

TEST_CASE("decay targets") {
  for (DecayTarget t : kAllDecayTargets) CHECK(parse_decay_target(to_string(t)) == t);
  CHECK_FALSE(parse_decay_target("R1").has_value());
  CHECK(to_string(decay_pattern(DecayTarget::R1mR3)) == "2r+2s+|t|+1");
  CHECK(pattern_exponent(DecayPattern::two_r_two_s_two_t, {1, 2, -3}) == 12);
  CHECK(shell_exponent(DecayPattern::r_s_t, 4) == 4);
  CHECK(shell_exponent(DecayPattern::two_r_two_s_t_plus_one, 4) == 5);
  CHECK_FALSE(shell_exponent(DecayPattern::s_t, 4).has_value());
  CHECK_THROWS_AS(decay_entry(DecayTarget::Dalpha, 0.5, {0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(decay_operator_literal(Deformation(0.5), 4, DecayTarget::Dbeta), std::invalid_argument);
}

TEST_CASE("stable and literal decay operators agree") {
  for (double q : {0.5, -0.5, 0.9}) {
    for (DecayTarget t : {DecayTarget::R1mR3, DecayTarget::R2mR4, DecayTarget::T1mT3, DecayTarget::T2mT4}) {
      CAPTURE(q);
      CAPTURE(to_string(t));
      const auto stable = decay_operator(Deformation(q), 10, t);
      const auto literal = decay_operator_literal(Deformation(q), 10, t);
      CHECK(max_abs_entry(subtract(stable, literal)) < 1e-15);
    }
  }
}

TEST_CASE("T1mT3 on the bottom fiber") {
  const double q = 0.5;
  const FullLattice full(6);
  const auto op = decay_operator(Deformation(q), 6, DecayTarget::T1mT3);
  for (int t = -6; t < 0; ++t) {
    const std::size_t j = full.index_of({0, 0, t});
    CHECK(std::abs(op.coeff(j, j)) == Approx(std::pow(q, -t) * g(1, q)).epsilon(1e-15));
  }
  CHECK(decay_entry(DecayTarget::T1mT3, q, {0, 0, -3}) == Approx(0.10825317547305483085).epsilon(1e-15));
}

TEST_CASE("decay constants are finite, bounded and stable under cap doubling") {
  const double q = 0.5;
  for (DecayTarget t : {DecayTarget::R1mR3, DecayTarget::R2mR4, DecayTarget::T1mT3, DecayTarget::T2mT4}) {
    CAPTURE(to_string(t));
    const auto small = decay_report(Deformation(q), 5, t);
    const auto big = decay_report(Deformation(q), 10, t);
    CHECK(std::isfinite(big.constant));
    CHECK(big.constant <= 2.0 / (1.0 - q * q));
    CHECK(std::abs(big.constant / small.constant - 1.0) < 0.05);
    CHECK(big.per_shell.size() == 11);
    REQUIRE(big.slope.has_value());
  }
  const auto r1 = decay_report(Deformation(q), 10, DecayTarget::R1mR3);
  CHECK(r1.constant == Approx(0.25).epsilon(1e-6));
}

TEST_CASE("decay slopes approach the claimed power as q shrinks") {
  for (DecayTarget t : {DecayTarget::R1mR3, DecayTarget::R2mR4, DecayTarget::T1mT3, DecayTarget::T2mT4}) {
    for (double q : {0.3, 0.2, 0.1}) {
      CAPTURE(to_string(t));
      CAPTURE(q);
      const auto rep = decay_report(Deformation(q), 10, t);
      REQUIRE(rep.slope.has_value());
      CHECK(std::abs(*rep.slope - 1.0) < 0.1);
    }
  }
}

TEST_CASE("decay reports for D use the s+|t| pattern") {
  const auto rep = decay_report(Deformation(0.5), 8, DecayTarget::Dalpha);
  CHECK(rep.pattern == DecayPattern::s_t);
  CHECK(rep.per_shell.size() == 8);
  CHECK_FALSE(rep.slope.has_value());
  CHECK(rep.constant_witness.has_value());
  CHECK_THROWS_AS(decay_report(Deformation(0.5), 1, DecayTarget::R1mR3), std::invalid_argument);
  CHECK_THROWS_AS(decay_report(Deformation(0.5), 2, DecayTarget::Dbeta), std::invalid_argument);
  CHECK_THROWS_AS(decay_report(Deformation(0.0), 5, DecayTarget::R1mR3), std::invalid_argument);
}

TEST_CASE("tail norms agree with a dense SVD") {
  const int cap = 6;
  const double q = 0.5;
  const FullLattice full(cap);
  for (Generator g : {Generator::alpha, Generator::beta}) {
    const auto tails = tail_norms(Deformation(q), cap, g);
    REQUIRE(tails.size() == static_cast<std::size_t>(cap + 1));
    const Eigen::MatrixXd d = oracle::dense(difference(Deformation(q), cap, g));
    for (const auto& tn : tails) {
      Eigen::MatrixXd m = d;
      for (std::size_t j = 0; j < full.dim(); ++j) {
        const FullIndex p = full.point_of(j);
        if (shell(p) > cap - 1 || p.s + std::abs(p.t) < tn.m) m.col(static_cast<Eigen::Index>(j)).setZero();
      }
      CAPTURE(tn.m);
      CHECK(tn.value == Approx(oracle::spectral_norm(m)).epsilon(1e-12));
    }
  }
}

TEST_CASE("tail norms decay in the pi factor") {
  const double q = 0.5;
  const int cap = 12;
  for (Generator g : {Generator::alpha, Generator::beta}) {
    const auto tails = tail_norms(Deformation(q), cap, g);
    if (g == Generator::alpha) CHECK(tails[0].value >= 0.447);
    CHECK(tails.back().value == 0.0);
    for (std::size_t m = 1; m < tails.size(); ++m) CHECK(tails[m].value <= tails[m - 1].value * (1.0 + 1e-12));
    for (int m = cap / 3; m < 2 * cap / 3; ++m)
      CHECK(tails[static_cast<std::size_t>(m + 1)].value <= (std::abs(q) + 0.1) * tails[static_cast<std::size_t>(m)].value);
  }
  CHECK_THROWS_AS(tail_norms(Deformation(q), 4, Generator::alpha, TailFactor::full_shell), std::invalid_argument);
  CHECK_THROWS_AS(tail_norms(Deformation(q), 0, Generator::alpha), std::invalid_argument);
}

TEST_CASE("the power iteration route agrees with the blockwise norm on D") {
  const int cap = 8;
  const auto d = difference(Deformation(0.5), cap, Generator::beta);
  CHECK(operator_norm(d, {1e-14, 200000}).value == Approx(operator_norm_blockwise(d).value).epsilon(1e-6));
}

TEST_CASE("crystal limit distance is linear in q") {
  for (double q : {1e-1, 1e-2, 1e-3}) {
    const double d = crystal_limit_distance(Deformation(q), 8);
    CHECK(d <= 3.0 * q);
    CHECK(d / q == Approx(1.0).epsilon(0.05));
  }
  CHECK_THROWS_AS(crystal_limit_distance(Deformation(0.0), 8), std::invalid_argument);
}
