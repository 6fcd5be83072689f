#pragma once

// The signed permutation U : l2(Gamma) -> H_mult (x) H_pi, conjugation of
// Gamma-section operators through it, the difference operators
// D_a = U lambda_q(a) U* - I (x) pi_q(a), their closed-form decompositions,
// and decay and tail diagnostics for D.

#include "suq2/coefficients.hpp"
#include "suq2/lattice.hpp"
#include "suq2/operator_core.hpp"
#include "suq2/representations.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace suq2 {

template <class Point>
struct Signed {
  int sign = 1;
  Point point{};

  friend constexpr bool operator==(const Signed&, const Signed&) = default;
};

/// e^n_{ij} -> (-1)^{(i v j) - j} e(n - (i v j), n + (i ^ j), j - i).
constexpr Signed<FullIndex> u_forward(GammaIndex p) noexcept {
  const int hi = p.i2 > p.j2 ? p.i2 : p.j2;
  const int lo = p.i2 < p.j2 ? p.i2 : p.j2;
  const int parity = ((hi - p.j2) / 2) % 2;
  return {parity == 0 ? 1 : -1, {(p.n2 - hi) / 2, (p.n2 + lo) / 2, (p.j2 - p.i2) / 2}};
}

/// e(r,s,t) -> (-1)^{t_-} e^{(r+s+|t|)/2}_{(-r+s-t)/2, (-r+s+t)/2}.
constexpr Signed<GammaIndex> u_backward(FullIndex p) noexcept {
  const int tm = p.t < 0 ? -p.t : 0;
  return {tm % 2 == 0 ? 1 : -1, {shell(p), -p.r + p.s - p.t, -p.r + p.s + p.t}};
}

/// U restricted to a shell cap, tabulated on ranks in both directions.
class SignedIndexMap {
 public:
  explicit SignedIndexMap(int cap);

  int cap() const noexcept { return gamma_.cap(); }
  const GammaLattice& gamma() const noexcept { return gamma_; }
  const FullLattice& full() const noexcept { return full_; }

  Signed<FullIndex> forward(GammaIndex p) const;
  Signed<GammaIndex> backward(FullIndex p) const;

  std::size_t forward_rank(std::size_t gamma_rank) const { return fwd_rank_.at(gamma_rank); }
  int forward_sign(std::size_t gamma_rank) const { return fwd_sign_.at(gamma_rank); }
  std::size_t backward_rank(std::size_t full_rank) const { return bwd_rank_.at(full_rank); }
  int backward_sign(std::size_t full_rank) const { return bwd_sign_.at(full_rank); }

 private:
  GammaLattice gamma_;
  FullLattice full_;
  std::vector<std::size_t> fwd_rank_;
  std::vector<int> fwd_sign_;
  std::vector<std::size_t> bwd_rank_;
  std::vector<int> bwd_sign_;
};

SignedIndexMap unitary_u(int cap);

/// U op U* in the full-lattice basis. Throws if op is not on u's Gamma section.
template <class T>
SparseMatrix<T> conjugate(const SparseMatrix<T>& op, const SignedIndexMap& u) {
  const std::size_t n = u.gamma().dim();
  if (op.rows() != n || op.cols() != n) throw std::invalid_argument("operator and U have different caps");
  using Entry = typename SparseMatrix<T>::Entry;
  std::vector<std::vector<Entry>> cols(n);
  for (std::size_t f = 0; f < n; ++f) {
    const std::size_t gamma_col = u.backward_rank(f);
    const int sf = u.backward_sign(f);
    for (const auto& e : op.column(gamma_col)) {
      const int sign = sf * u.forward_sign(e.row);
      cols[f].push_back({u.forward_rank(e.row), sign > 0 ? e.value : -e.value});
    }
  }
  return SparseMatrix<T>::from_columns(n, std::move(cols));
}

/// Mask of the fiber {r = k} of the full lattice; U maps the sheet Gamma_k onto it.
std::vector<bool> fiber_mask(const FullLattice& lattice, int k);

/// V_k op V_k*: the conjugated operator compressed to the fiber {r = k}.
template <class T>
SparseMatrix<T> compress_to_sheet(const SparseMatrix<T>& op, const SignedIndexMap& u, int k) {
  const auto mask = fiber_mask(u.full(), k);
  return restrict_rows(restrict_columns(conjugate(op, u), mask), mask);
}

/// D_gen = U lambda_q(gen) U* - I (x) pi_q(gen) for gen in {alpha, beta}.
RealOperator difference(Deformation q, int cap, Generator gen);

/// Whether the (r,s) = (0,0) clause forces T1 to zero on the bottom fiber.
enum class T1Bottom { displayed_zero, uniform };

// Diagonal entries. R3, R4, T3, T4 read only (s, t).
double r_entry(int which, double q, FullIndex p);
double t_entry(int which, double q, FullIndex p, T1Bottom bottom = T1Bottom::displayed_zero);

/// Diagonal R_which / T_which. which 1, 2 live on FullLattice(cap); 3, 4 on PiLattice(cap).
RealOperator build_R(Deformation q, int cap, int which);
RealOperator build_T(Deformation q, int cap, int which, T1Bottom bottom = T1Bottom::displayed_zero);

/// Shift operators on the full lattice; S lowers an index by one and kills 0 on N.
enum class FullShift {
  r_up,       // S* (x) I (x) I
  s_down,     // I (x) S (x) I
  t_down,     // I (x) I (x) S
  rs_up_t_down,   // S* (x) S* (x) S
  rst_down,   // S (x) S (x) S
};
RealOperator build_shift(const FullLattice& lattice, FullShift which);

/// The decomposition of D_gen assembled from shifts and diagonals:
///   alpha: (S* (x) I (x) I) R1 + R2 (I (x) S (x) I)
///   beta:  P_{t>=0} T1 (S* (x) S* (x) S) + P_{t<0} T1 (S (x) S (x) S) + T2 (I (x) I (x) S)
/// with T1 taken in its uniform form.
RealOperator closed_form_difference(Deformation q, int cap, Generator gen);

struct CrosscheckResult {
  double deviation = 0.0;
  std::size_t columns_checked = 0;
  bool no_interior = false;
  std::optional<FullIndex> witness;
};

/// Max |entry| of closed_form_difference - difference over columns of shell <= cap - 1.
CrosscheckResult crosscheck_decomposition(Deformation q, int cap, Generator gen);

enum class DecayTarget { R1mR3, R2mR4, T1mT3, T2mT4, Dalpha, Dbeta };
inline constexpr std::array<DecayTarget, 6> kAllDecayTargets{DecayTarget::R1mR3, DecayTarget::R2mR4,
                                                             DecayTarget::T1mT3, DecayTarget::T2mT4,
                                                             DecayTarget::Dalpha, DecayTarget::Dbeta};

std::string_view to_string(DecayTarget t) noexcept;
std::optional<DecayTarget> parse_decay_target(std::string_view name) noexcept;

enum class DecayPattern {
  two_r_two_s_t_plus_one,  // 2r+2s+|t|+1
  two_r_two_s_two_t,       // 2r+2s+2|t|
  r_s_t,                   // r+s+|t|
  s_t,                     // s+|t|, for D itself
};

DecayPattern decay_pattern(DecayTarget t) noexcept;
std::string_view to_string(DecayPattern p) noexcept;
int pattern_exponent(DecayPattern p, FullIndex x) noexcept;
/// Smallest exponent of the pattern over shell m; nullopt for s_t (attained at every shell).
std::optional<int> shell_exponent(DecayPattern p, int m) noexcept;

/// Diagonal entry of a diagonal decay target, computed without cancellation.
double decay_entry(DecayTarget t, double q, FullIndex p);

/// The target on FullLattice(cap): stable closed forms for the diagonal
/// targets, the difference operator for Dalpha and Dbeta.
RealOperator decay_operator(Deformation q, int cap, DecayTarget t);

/// The diagonal targets by literal subtraction R_i - I (x) R_j. Throws for D targets.
RealOperator decay_operator_literal(Deformation q, int cap, DecayTarget t);

struct DecayReport {
  DecayTarget target = DecayTarget::R1mR3;
  DecayPattern pattern = DecayPattern::two_r_two_s_t_plus_one;
  double q = 0.0;
  int cap = 0;
  std::vector<ShellValue> per_shell;  // max |entry| over columns of each shell
  double constant = 0.0;              // max |entry| / |q|^pattern
  std::optional<FullIndex> constant_witness;
  double fitted_ratio = 0.0;  // exp of the least-squares slope of log per_shell[m] against m
  std::optional<double> slope;  // least-squares slope of log per_shell[m] against shell_exponent(m) log|q|
};

/// Shells 0..cap for the diagonal targets; 0..cap-1 for the D targets.
/// Throws std::invalid_argument at q = 0 or cap < 2.
DecayReport decay_report(Deformation q, int cap, DecayTarget target);

struct TailNorm {
  int m = 0;
  double value = 0.0;
};

/// ||D_gen (I (x) P_{s+|t| >= m})|| for m = 0..cap over columns of shell <= cap - 1.
/// Norms are exact per connected block of D; only TailFactor::pi_factor is supported.
std::vector<TailNorm> tail_norms(Deformation q, int cap, Generator gen, TailFactor factor = TailFactor::pi_factor);

struct GeneratorMismatch {
  Generator gen = Generator::alpha;
  std::size_t mismatches = 0;
  std::optional<FullIndex> witness;  // first mismatching column
};

struct Q0EquivalenceResult {
  int cap = 0;
  std::size_t columns_checked = 0;
  std::array<GeneratorMismatch, 4> generators{};
  bool pass() const noexcept {
    for (const auto& g : generators)
      if (g.mismatches != 0) return false;
    return true;
  }
};

/// Exact comparison of U lambda_0(gen) U* with I (x) pi_0(gen) on columns of
/// shell <= cap - 1, for all four generators. Throws for cap < 1.
Q0EquivalenceResult verify_q0_equivalence(int cap, Beta0Form form = Beta0Form::crystal_limit);

/// max over the four generators of the max |entry| of lambda_q(gen) - lambda_0(gen).
double crystal_limit_distance(Deformation q, int cap);

}  // namespace suq2
