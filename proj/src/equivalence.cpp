#include "suq2/equivalence.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace suq2 {

SignedIndexMap::SignedIndexMap(int cap) : gamma_(cap), full_(cap) {
  const std::size_t n = gamma_.dim();
  assert(n == full_.dim());
  fwd_rank_.resize(n);
  fwd_sign_.resize(n);
  bwd_rank_.resize(n);
  bwd_sign_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto f = u_forward(gamma_.point_of(k));
    fwd_rank_[k] = full_.index_of(f.point);
    fwd_sign_[k] = f.sign;
    const auto b = u_backward(full_.point_of(k));
    assert(is_valid(b.point));
    bwd_rank_[k] = gamma_.index_of(b.point);
    bwd_sign_[k] = b.sign;
  }
}

Signed<FullIndex> SignedIndexMap::forward(GammaIndex p) const {
  const std::size_t k = gamma_.index_of(p);
  return {fwd_sign_[k], full_.point_of(fwd_rank_[k])};
}

Signed<GammaIndex> SignedIndexMap::backward(FullIndex p) const {
  const std::size_t k = full_.index_of(p);
  return {bwd_sign_[k], gamma_.point_of(bwd_rank_[k])};
}

SignedIndexMap unitary_u(int cap) { return SignedIndexMap(cap); }

std::vector<bool> fiber_mask(const FullLattice& lattice, int k) {
  std::vector<bool> mask(lattice.dim());
  for (std::size_t j = 0; j < lattice.dim(); ++j) mask[j] = lattice.point_of(j).r == k;
  return mask;
}

namespace {

void require_floating(Deformation q) {
  if (q.is_zero()) throw std::invalid_argument("q = 0 is the exact mode; use verify_q0_equivalence");
}

void require_unstarred(Generator gen) {
  if (is_starred(gen)) throw std::invalid_argument("difference operators are defined for alpha and beta");
}

std::vector<bool> interior_mask(const FullLattice& lattice) {
  std::vector<bool> mask(lattice.dim());
  for (std::size_t j = 0; j < lattice.dim(); ++j) mask[j] = shell(lattice.point_of(j)) <= lattice.cap() - 1;
  return mask;
}

double pow_abs(double q, int k) { return std::pow(std::abs(q), k); }

}  // namespace

RealOperator difference(Deformation q, int cap, Generator gen) {
  require_floating(q);
  require_unstarred(gen);
  const auto u = unitary_u(cap);
  return subtract(conjugate(build_lambda(q, u.gamma(), gen), u), build_ipi(q, u.full(), gen));
}

double r_entry(int which, double q, FullIndex p) {
  const int m = shell(p);
  const int at = abs_int(p.t);
  const auto [tp, tm] = t_parts(p.t);
  switch (which) {
    case 1:
      return ipow(q, 2 * p.s + at + 1) * g(p.r + tm + 1, q) * g(p.r + tp + 1, q) / (g(m + 1, q) * g(m + 2, q));
    case 2:
      return g(p.s + tp + 1, q) * g(p.s + tm + 1, q) / (g(m + 1, q) * g(m + 2, q)) - g(p.s + 1, q);
    case 3:
      return ipow(q, 2 * p.s + at + 1);
    case 4:
      return g(p.s + 1, q) * (g(p.s + at + 1, q) - 1.0);
    default:
      throw std::invalid_argument("R index must be 1..4");
  }
}

double t_entry(int which, double q, FullIndex p, T1Bottom bottom) {
  const int m = shell(p);
  const int at = abs_int(p.t);
  switch (which) {
    case 1:
      if (p.r == 0 && p.s == 0 && bottom == T1Bottom::displayed_zero) return 0.0;
      if (p.t >= 0) {
        if (p.r == 0 || p.s == 0) return 0.0;
        return -ipow(q, p.s + at) * g(p.r, q) * g(p.s, q) / (g(m, q) * g(m + 1, q));
      }
      return -ipow(q, p.s + at) * g(p.r + 1, q) * g(p.s + 1, q) / (g(m + 1, q) * g(m + 2, q));
    case 2:
      if (p.t >= 0)
        return ipow(q, p.s) * (g(p.r + at + 1, q) * g(p.s + at + 1, q) / (g(m + 1, q) * g(m + 2, q)) - 1.0);
      return ipow(q, p.s) * (g(p.r + at, q) * g(p.s + at, q) / (g(m, q) * g(m + 1, q)) - 1.0);
    case 3:
      return -ipow(q, p.s + at) * g(p.t >= 0 ? p.s : p.s + 1, q);
    case 4:
      return ipow(q, p.s) * (g(p.t >= 0 ? p.s + at + 1 : p.s + at, q) - 1.0);
    default:
      throw std::invalid_argument("T index must be 1..4");
  }
}

namespace {

template <class F>
RealOperator diagonal_on(int cap, int which, F&& entry) {
  if (which == 1 || which == 2)
    return build_diagonal<double>(FullLattice(cap), [&](FullIndex p) { return entry(which, p); });
  if (which == 3 || which == 4)
    return build_diagonal<double>(PiLattice(cap), [&](PiIndex p) { return entry(which, FullIndex{0, p.s, p.t}); });
  throw std::invalid_argument("operator index must be 1..4");
}

}  // namespace

RealOperator build_R(Deformation q, int cap, int which) {
  require_floating(q);
  return diagonal_on(cap, which, [&](int w, FullIndex p) { return r_entry(w, q.value(), p); });
}

RealOperator build_T(Deformation q, int cap, int which, T1Bottom bottom) {
  require_floating(q);
  return diagonal_on(cap, which, [&](int w, FullIndex p) { return t_entry(w, q.value(), p, bottom); });
}

RealOperator build_shift(const FullLattice& lattice, FullShift which) {
  return build_from_rule<double>(lattice, [which](FullIndex p) -> std::vector<Term<FullIndex, double>> {
    switch (which) {
      case FullShift::r_up: return {{{p.r + 1, p.s, p.t}, 1.0}};
      case FullShift::s_down:
        if (p.s == 0) return {};
        return {{{p.r, p.s - 1, p.t}, 1.0}};
      case FullShift::t_down: return {{{p.r, p.s, p.t - 1}, 1.0}};
      case FullShift::rs_up_t_down: return {{{p.r + 1, p.s + 1, p.t - 1}, 1.0}};
      case FullShift::rst_down: break;
    }
    if (p.r == 0 || p.s == 0) return {};
    return {{{p.r - 1, p.s - 1, p.t - 1}, 1.0}};
  });
}

RealOperator closed_form_difference(Deformation q, int cap, Generator gen) {
  require_floating(q);
  require_unstarred(gen);
  const FullLattice full(cap);
  const double qv = q.value();
  if (gen == Generator::alpha) {
    const auto r1 = build_R(q, cap, 1);
    const auto r2 = build_R(q, cap, 2);
    return add(compose(build_shift(full, FullShift::r_up), r1), compose(r2, build_shift(full, FullShift::s_down)));
  }
  const auto t1_upper = build_diagonal<double>(full, [qv](FullIndex p) {
    return p.t >= 0 ? t_entry(1, qv, p, T1Bottom::uniform) : 0.0;
  });
  const auto t1_lower = build_diagonal<double>(full, [qv](FullIndex p) {
    return p.t < 0 ? t_entry(1, qv, p, T1Bottom::uniform) : 0.0;
  });
  const auto t2 = build_T(q, cap, 2);
  return add(add(compose(t1_upper, build_shift(full, FullShift::rs_up_t_down)),
                 compose(t1_lower, build_shift(full, FullShift::rst_down))),
             compose(t2, build_shift(full, FullShift::t_down)));
}

CrosscheckResult crosscheck_decomposition(Deformation q, int cap, Generator gen) {
  require_floating(q);
  require_unstarred(gen);
  CrosscheckResult out;
  if (cap < 1) {
    out.no_interior = true;
    return out;
  }
  const FullLattice full(cap);
  const auto delta = subtract(closed_form_difference(q, cap, gen), difference(q, cap, gen));
  for (std::size_t j = 0; j < full.dim(); ++j) {
    const FullIndex p = full.point_of(j);
    if (shell(p) > cap - 1) continue;
    ++out.columns_checked;
    for (const auto& e : delta.column(j)) {
      if (std::abs(e.value) > out.deviation) {
        out.deviation = std::abs(e.value);
        out.witness = p;
      }
    }
  }
  return out;
}

std::string_view to_string(DecayTarget t) noexcept {
  switch (t) {
    case DecayTarget::R1mR3: return "R1mR3";
    case DecayTarget::R2mR4: return "R2mR4";
    case DecayTarget::T1mT3: return "T1mT3";
    case DecayTarget::T2mT4: return "T2mT4";
    case DecayTarget::Dalpha: return "Dalpha";
    case DecayTarget::Dbeta: break;
  }
  return "Dbeta";
}

std::optional<DecayTarget> parse_decay_target(std::string_view name) noexcept {
  for (DecayTarget t : kAllDecayTargets)
    if (to_string(t) == name) return t;
  return std::nullopt;
}

DecayPattern decay_pattern(DecayTarget t) noexcept {
  switch (t) {
    case DecayTarget::R1mR3: return DecayPattern::two_r_two_s_t_plus_one;
    case DecayTarget::R2mR4: return DecayPattern::two_r_two_s_two_t;
    case DecayTarget::T1mT3:
    case DecayTarget::T2mT4: return DecayPattern::r_s_t;
    case DecayTarget::Dalpha:
    case DecayTarget::Dbeta: break;
  }
  return DecayPattern::s_t;
}

std::string_view to_string(DecayPattern p) noexcept {
  switch (p) {
    case DecayPattern::two_r_two_s_t_plus_one: return "2r+2s+|t|+1";
    case DecayPattern::two_r_two_s_two_t: return "2r+2s+2|t|";
    case DecayPattern::r_s_t: return "r+s+|t|";
    case DecayPattern::s_t: break;
  }
  return "s+|t|";
}

int pattern_exponent(DecayPattern p, FullIndex x) noexcept {
  const int at = abs_int(x.t);
  switch (p) {
    case DecayPattern::two_r_two_s_t_plus_one: return 2 * x.r + 2 * x.s + at + 1;
    case DecayPattern::two_r_two_s_two_t: return 2 * (x.r + x.s + at);
    case DecayPattern::r_s_t: return x.r + x.s + at;
    case DecayPattern::s_t: break;
  }
  return x.s + at;
}

std::optional<int> shell_exponent(DecayPattern p, int m) noexcept {
  switch (p) {
    case DecayPattern::two_r_two_s_t_plus_one: return m + 1;
    case DecayPattern::two_r_two_s_two_t: return 2 * m;
    case DecayPattern::r_s_t: return m;
    case DecayPattern::s_t: break;
  }
  return std::nullopt;
}

double decay_entry(DecayTarget t, double q, FullIndex p) {
  const int m = shell(p);
  const int at = abs_int(p.t);
  const auto [tp, tm] = t_parts(p.t);
  switch (t) {
    case DecayTarget::R1mR3:
      return ipow(q, 2 * p.s + at + 1) * g_ratio_minus_one({p.r + tm + 1, p.r + tp + 1}, {m + 1, m + 2}, q);
    case DecayTarget::R2mR4:
      return g(p.s + 1, q) * g(p.s + at + 1, q) * g_ratio_minus_one({}, {m + 1, m + 2}, q);
    case DecayTarget::T1mT3:
      if (p.r == 0 && p.s == 0) return -t_entry(3, q, p);
      if (p.t >= 0) return -ipow(q, p.s + at) * g(p.s, q) * g_ratio_minus_one({p.r}, {m, m + 1}, q);
      return -ipow(q, p.s + at) * g(p.s + 1, q) * g_ratio_minus_one({p.r + 1}, {m + 1, m + 2}, q);
    case DecayTarget::T2mT4:
      if (p.t >= 0) return ipow(q, p.s) * g(p.s + at + 1, q) * g_ratio_minus_one({p.r + at + 1}, {m + 1, m + 2}, q);
      return ipow(q, p.s) * g(p.s + at, q) * g_ratio_minus_one({p.r + at}, {m, m + 1}, q);
    case DecayTarget::Dalpha:
    case DecayTarget::Dbeta: break;
  }
  throw std::invalid_argument("difference operators are not diagonal");
}

RealOperator decay_operator(Deformation q, int cap, DecayTarget t) {
  require_floating(q);
  if (t == DecayTarget::Dalpha) return difference(q, cap, Generator::alpha);
  if (t == DecayTarget::Dbeta) return difference(q, cap, Generator::beta);
  const double qv = q.value();
  return build_diagonal<double>(FullLattice(cap), [&](FullIndex p) { return decay_entry(t, qv, p); });
}

RealOperator decay_operator_literal(Deformation q, int cap, DecayTarget t) {
  require_floating(q);
  const PiLattice pi(cap);
  const FullLattice full(cap);
  const auto minus_lift = [&](const RealOperator& a, const RealOperator& b) {
    return subtract(a, lift_to_full(b, pi, full));
  };
  switch (t) {
    case DecayTarget::R1mR3: return minus_lift(build_R(q, cap, 1), build_R(q, cap, 3));
    case DecayTarget::R2mR4: return minus_lift(build_R(q, cap, 2), build_R(q, cap, 4));
    case DecayTarget::T1mT3: return minus_lift(build_T(q, cap, 1), build_T(q, cap, 3));
    case DecayTarget::T2mT4: return minus_lift(build_T(q, cap, 2), build_T(q, cap, 4));
    case DecayTarget::Dalpha:
    case DecayTarget::Dbeta: break;
  }
  throw std::invalid_argument("difference operators have no literal subtraction form");
}

namespace {

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  return sxy / sxx;
}

}  // namespace

DecayReport decay_report(Deformation q, int cap, DecayTarget target) {
  require_floating(q);
  if (cap < 2) throw std::invalid_argument("decay fit needs cap >= 2");
  const bool is_difference = target == DecayTarget::Dalpha || target == DecayTarget::Dbeta;
  const int last = is_difference ? cap - 1 : cap;
  if (last < 2) throw std::invalid_argument("decay fit needs at least two shells");

  DecayReport report;
  report.target = target;
  report.pattern = decay_pattern(target);
  report.q = q.value();
  report.cap = cap;

  const FullLattice full(cap);
  const auto op = decay_operator(q, cap, target);
  for (int m = 0; m <= last; ++m) report.per_shell.push_back({m, 0.0});
  for (std::size_t j = 0; j < full.dim(); ++j) {
    const FullIndex p = full.point_of(j);
    const int m = shell(p);
    if (m > last) continue;
    const double scale = pow_abs(q.value(), pattern_exponent(report.pattern, p));
    for (const auto& e : op.column(j)) {
      const double v = std::abs(e.value);
      auto& slot = report.per_shell[static_cast<std::size_t>(m)];
      slot.value = std::max(slot.value, v);
      if (v / scale > report.constant) {
        report.constant = v / scale;
        report.constant_witness = p;
      }
    }
  }

  std::vector<double> shells, powers, logs;
  const double log_q = std::log(std::abs(q.value()));
  for (int m = 1; m <= last; ++m) {
    const double v = report.per_shell[static_cast<std::size_t>(m)].value;
    if (v <= 0.0) continue;
    shells.push_back(m);
    logs.push_back(std::log(v));
    if (const auto e = shell_exponent(report.pattern, m)) powers.push_back(*e * log_q);
  }
  if (shells.size() < 2) {
    report.fitted_ratio = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  report.fitted_ratio = std::exp(least_squares_slope(shells, logs));
  if (powers.size() == logs.size()) report.slope = least_squares_slope(powers, logs);
  return report;
}

std::vector<TailNorm> tail_norms(Deformation q, int cap, Generator gen, TailFactor factor) {
  if (factor != TailFactor::pi_factor)
    throw std::invalid_argument("tail norms of D are only defined in the pi factor");
  if (cap < 1) throw std::invalid_argument("no interior");
  const FullLattice full(cap);
  const auto d = restrict_columns(difference(q, cap, gen), interior_mask(full));
  std::vector<TailNorm> out;
  for (int m = 0; m <= cap; ++m) {
    const auto tail = restrict_tail(d, full, TailProjector{TailFactor::pi_factor, m}, TailSide::right);
    out.push_back({m, operator_norm_blockwise(tail).value});
  }
  return out;
}

Q0EquivalenceResult verify_q0_equivalence(int cap, Beta0Form form) {
  if (cap < 1) throw std::invalid_argument("no interior");
  const auto u = unitary_u(cap);
  Q0EquivalenceResult out;
  out.cap = cap;
  for (std::size_t j = 0; j < u.full().dim(); ++j)
    if (shell(u.full().point_of(j)) <= cap - 1) ++out.columns_checked;
  for (std::size_t k = 0; k < kAllGenerators.size(); ++k) {
    const Generator gen = kAllGenerators[k];
    const auto lhs = conjugate(build_lambda0(u.gamma(), gen, form), u);
    const auto rhs = build_ipi0(u.full(), gen);
    auto& res = out.generators[k];
    res.gen = gen;
    for (std::size_t j = 0; j < u.full().dim(); ++j) {
      const FullIndex p = u.full().point_of(j);
      if (shell(p) > cap - 1) continue;
      const auto a = lhs.column(j);
      const auto b = rhs.column(j);
      if (!std::equal(a.begin(), a.end(), b.begin(), b.end())) {
        ++res.mismatches;
        if (!res.witness) res.witness = p;
      }
    }
  }
  return out;
}

double crystal_limit_distance(Deformation q, int cap) {
  require_floating(q);
  const GammaLattice gamma(cap);
  double worst = 0.0;
  for (Generator gen : kAllGenerators) {
    const auto diff = subtract(build_lambda(q, gamma, gen), convert<double>(build_lambda0(gamma, gen)));
    worst = std::max(worst, max_abs_entry(diff));
  }
  return worst;
}

}  // namespace suq2
