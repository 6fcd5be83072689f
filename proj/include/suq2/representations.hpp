#pragma once

// Finite sections of the representations of the quantum SU(2) algebra:
// the left regular representation lambda_q on l2(Gamma), the direct integral
// pi_q on H_pi and its lift I (x) pi_q, their exact q = 0 counterparts, the
// irreducibles indexed by z on the unit circle, and coproduct images.
// check_relations evaluates the defining relations on interior columns.

#include "suq2/coefficients.hpp"
#include "suq2/lattice.hpp"
#include "suq2/operator_core.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <type_traits>
#include <vector>

namespace suq2 {

enum class Generator { alpha, beta, alpha_star, beta_star };

inline constexpr std::array<Generator, 4> kAllGenerators{Generator::alpha, Generator::beta, Generator::alpha_star,
                                                         Generator::beta_star};

constexpr bool is_starred(Generator g) noexcept {
  return g == Generator::alpha_star || g == Generator::beta_star;
}
constexpr Generator unstarred(Generator g) noexcept {
  return g == Generator::alpha_star ? Generator::alpha : g == Generator::beta_star ? Generator::beta : g;
}

std::string_view to_string(Generator g) noexcept;
std::optional<Generator> parse_generator(std::string_view name) noexcept;

/// lambda_q(gen) on the Gamma section. Starred generators are matrix adjoints.
/// Throws std::invalid_argument at q = 0 (use build_lambda0).
RealOperator build_lambda(Deformation q, const GammaLattice& lattice, Generator gen);

/// pi_q(gen) on the H_pi section: alpha e(s,t) = g(s) e(s-1,t), beta e(s,t) = q^s e(s,t-1).
RealOperator build_pi(Deformation q, const PiLattice& lattice, Generator gen);

/// I (x) pi_q(gen) on the full lattice.
RealOperator build_ipi(Deformation q, const FullLattice& lattice, Generator gen);

/// Which formula to use for lambda_0(beta_0). crystal_limit is the q -> 0
/// limit of the CG formula and the one that intertwines with I (x) pi_0;
/// displayed reproduces the index shifts (i-1/2, j+1/2) printed in the
/// literature and exists only as a regression guard.
enum class Beta0Form { crystal_limit, displayed };

ExactOperator build_lambda0(const GammaLattice& lattice, Generator gen, Beta0Form form = Beta0Form::crystal_limit);
ExactOperator build_pi0(const PiLattice& lattice, Generator gen);
ExactOperator build_ipi0(const FullLattice& lattice, Generator gen);

struct Irrep {
  ComplexOperator alpha;
  ComplexOperator beta;
};

/// alpha -> S sqrt(1 - q^{2N}), beta -> z q^N on span{e_0..e_{dim-1}}.
/// Throws if | |z| - 1 | >= 1e-12, q == 0 or dim == 0.
Irrep build_irrep(Deformation q, std::complex<double> z, std::size_t dim);

template <class T>
struct GeneratorSet {
  SparseMatrix<T> alpha;
  SparseMatrix<T> beta;
  SparseMatrix<T> alpha_star;
  SparseMatrix<T> beta_star;

  static GeneratorSet from_pair(SparseMatrix<T> a, SparseMatrix<T> b) {
    GeneratorSet set;
    set.alpha_star = adjoint(a);
    set.beta_star = adjoint(b);
    set.alpha = std::move(a);
    set.beta = std::move(b);
    return set;
  }

  const SparseMatrix<T>& operator[](Generator g) const noexcept {
    switch (g) {
      case Generator::alpha: return alpha;
      case Generator::beta: return beta;
      case Generator::alpha_star: return alpha_star;
      case Generator::beta_star: break;
    }
    return beta_star;
  }
};

GeneratorSet<double> lambda_generators(Deformation q, const GammaLattice& lattice);
GeneratorSet<double> pi_generators(Deformation q, const PiLattice& lattice);
GeneratorSet<int> lambda0_generators(const GammaLattice& lattice);
GeneratorSet<int> pi0_generators(const PiLattice& lattice);
GeneratorSet<std::complex<double>> irrep_generators(const Irrep& irrep);

/// The five defining relations, each written as an expression that vanishes.
enum class Relation {
  isometry,         // a*a + b*b - I
  coisometry,       // aa* + q^2 bb* - I
  commute_ab,       // ab - q ba
  commute_ab_star,  // ab* - q b*a
  normal_b,         // b*b - bb*
};

inline constexpr std::array<Relation, 5> kAllRelations{Relation::isometry, Relation::coisometry,
                                                       Relation::commute_ab, Relation::commute_ab_star,
                                                       Relation::normal_b};

std::string_view relation_name(Relation r) noexcept;

struct RelationResidual {
  Relation relation = Relation::isometry;
  double max_residual = 0.0;
  std::optional<std::size_t> witness;  // column rank attaining a nonzero maximum
};

struct RelationResidualReport {
  std::array<RelationResidual, 5> items{};
  std::size_t columns_checked = 0;
  int interior_shell = 0;

  double max_residual() const noexcept {
    double m = 0.0;
    for (const auto& it : items) m = m > it.max_residual ? m : it.max_residual;
    return m;
  }
};

/// Euclidean norm of each relation applied to each listed basis vector.
/// For exact (int) generator sets q must be 0 and the q = 0 forms
/// (aa* = I, ab = 0, ab* = 0) are obtained by substitution.
template <class T>
RelationResidualReport check_relations(const GeneratorSet<T>& ops, double q, std::span<const std::size_t> columns) {
  if constexpr (std::is_integral_v<T>) {
    if (q != 0.0) throw std::invalid_argument("exact generator sets only satisfy the q = 0 relations");
  }
  const T qv = static_cast<T>(q);
  const auto id = SparseMatrix<T>::identity(ops.alpha.cols());
  const auto& a = ops.alpha;
  const auto& b = ops.beta;
  const auto& as = ops.alpha_star;
  const auto& bs = ops.beta_star;

  std::array<SparseMatrix<T>, 5> exprs{
      add(add(compose(as, a), compose(bs, b)), id, T{1}, T{-1}),
      add(add(compose(a, as), compose(b, bs), T{1}, qv * qv), id, T{1}, T{-1}),
      add(compose(a, b), compose(b, a), T{1}, -qv),
      add(compose(a, bs), compose(bs, a), T{1}, -qv),
      add(compose(bs, b), compose(b, bs), T{1}, T{-1}),
  };

  RelationResidualReport report;
  report.columns_checked = columns.size();
  for (std::size_t r = 0; r < exprs.size(); ++r) {
    auto& item = report.items[r];
    item.relation = kAllRelations[r];
    for (std::size_t j : columns) {
      const double v = column_norm(exprs[r], j);
      if (v > item.max_residual) {
        item.witness = j;
        item.max_residual = v;
      }
    }
  }
  return report;
}

/// Ranks of the basis vectors with shell <= cap - margin.
/// Throws std::invalid_argument("no interior") if cap < margin.
template <TruncatedLattice Lattice>
std::vector<std::size_t> interior_columns(const Lattice& lattice, int margin) {
  if (margin < 0) throw std::invalid_argument("word margin must be non-negative");
  if (lattice.cap() < margin) throw std::invalid_argument("no interior");
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < lattice.dim(); ++j)
    if (shell(lattice.point_of(j)) <= lattice.cap() - margin) out.push_back(j);
  return out;
}

template <class T, TruncatedLattice Lattice>
RelationResidualReport check_relations(const GeneratorSet<T>& ops, double q, const Lattice& lattice, int margin) {
  if (margin < 2) throw std::invalid_argument("word margin must be at least 2");
  const auto cols = interior_columns(lattice, margin);
  auto report = check_relations(ops, q, std::span<const std::size_t>(cols));
  report.interior_shell = lattice.cap() - margin;
  return report;
}

/// Relations for an irrep section: interior is k <= dim - 1 - margin.
RelationResidualReport check_irrep_relations(const Irrep& irrep, double q, int margin);

/// Images of the coproduct under pi_q (x) pi_q on PiLattice(cap) (x) PiLattice(cap):
/// Delta(alpha) = a (x) a - q b* (x) b,  Delta(beta) = b (x) a + a* (x) b.
struct CoproductImages {
  PiLattice factor;
  RealOperator delta_alpha;
  RealOperator delta_beta;

  std::size_t rank(std::size_t left, std::size_t right) const noexcept { return left * factor.dim() + right; }
};

CoproductImages coproduct_images(Deformation q, int cap);

/// Pairs with both factor shells <= cap - margin.
std::vector<std::size_t> coproduct_interior(const CoproductImages& images, int margin);

}  // namespace suq2
