#include "suq2/representations.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace suq2 {

std::string_view to_string(Generator g) noexcept {
  switch (g) {
    case Generator::alpha: return "alpha";
    case Generator::beta: return "beta";
    case Generator::alpha_star: return "alpha_star";
    case Generator::beta_star: break;
  }
  return "beta_star";
}

std::optional<Generator> parse_generator(std::string_view name) noexcept {
  for (Generator g : kAllGenerators)
    if (to_string(g) == name) return g;
  return std::nullopt;
}

std::string_view relation_name(Relation r) noexcept {
  switch (r) {
    case Relation::isometry: return "a*a+b*b-I";
    case Relation::coisometry: return "aa*+q^2bb*-I";
    case Relation::commute_ab: return "ab-qba";
    case Relation::commute_ab_star: return "ab*-qb*a";
    case Relation::normal_b: break;
  }
  return "b*b-bb*";
}

namespace {

template <class Point, class T>
using Terms = std::vector<Term<Point, T>>;

void require_floating(Deformation q, const char* exact_builder) {
  if (q.is_zero())
    throw std::invalid_argument(std::string("q = 0 is the exact mode; use ") + exact_builder);
}

template <class T>
SparseMatrix<T> star_if(SparseMatrix<T> m, Generator gen) {
  return is_starred(gen) ? adjoint(m) : m;
}

Terms<GammaIndex, double> lambda_alpha_column(GammaIndex p, double q) {
  Terms<GammaIndex, double> out;
  if (const GammaIndex t = a_plus_target(p); is_valid(t)) out.push_back({t, a_plus(p, q)});
  if (const GammaIndex t = a_minus_target(p); is_valid(t)) out.push_back({t, a_minus(p, q)});
  return out;
}

Terms<GammaIndex, double> lambda_beta_column(GammaIndex p, double q) {
  Terms<GammaIndex, double> out;
  if (const GammaIndex t = b_plus_target(p); is_valid(t)) out.push_back({t, b_plus(p, q)});
  if (const GammaIndex t = b_minus_target(p); is_valid(t)) out.push_back({t, b_minus(p, q)});
  return out;
}

Terms<GammaIndex, int> lambda0_alpha_column(GammaIndex p) {
  if (p.i2 > -p.n2 && p.j2 > -p.n2) return {{{p.n2 - 1, p.i2 - 1, p.j2 - 1}, 1}};
  return {};
}

Terms<GammaIndex, int> lambda0_beta_column(GammaIndex p, Beta0Form form) {
  if (form == Beta0Form::crystal_limit) {
    // The j = -n branch wins when i = j = -n.
    if (p.j2 == -p.n2) return {{{p.n2 + 1, p.i2 + 1, p.j2 - 1}, -1}};
    if (p.i2 == -p.n2) return {{{p.n2 - 1, p.i2 + 1, p.j2 - 1}, 1}};
    return {};
  }
  if (p.i2 == -p.n2) return {{{p.n2 + 1, p.i2 - 1, p.j2 + 1}, 1}};
  if (p.j2 == -p.n2) {
    const GammaIndex t{p.n2 - 1, p.i2 - 1, p.j2 + 1};
    if (is_valid(t)) return {{t, -1}};
  }
  return {};
}

template <class T, class Point, class Alpha, class Beta>
auto pi_rule(Generator gen, Alpha&& alpha, Beta&& beta) {
  return [gen, alpha, beta](const Point& p) -> Terms<Point, T> {
    return unstarred(gen) == Generator::alpha ? alpha(p) : beta(p);
  };
}

}  // namespace

RealOperator build_lambda(Deformation q, const GammaLattice& lattice, Generator gen) {
  require_floating(q, "build_lambda0");
  const double qv = q.value();
  const auto m = unstarred(gen) == Generator::alpha
                     ? build_from_rule<double>(lattice, [qv](GammaIndex p) { return lambda_alpha_column(p, qv); })
                     : build_from_rule<double>(lattice, [qv](GammaIndex p) { return lambda_beta_column(p, qv); });
  return star_if(m, gen);
}

RealOperator build_pi(Deformation q, const PiLattice& lattice, Generator gen) {
  require_floating(q, "build_pi0");
  const double qv = q.value();
  const auto alpha = [qv](PiIndex p) -> Terms<PiIndex, double> {
    if (p.s == 0) return {};
    return {{{p.s - 1, p.t}, g(p.s, qv)}};
  };
  const auto beta = [qv](PiIndex p) -> Terms<PiIndex, double> { return {{{p.s, p.t - 1}, ipow(qv, p.s)}}; };
  return star_if(build_from_rule<double>(lattice, pi_rule<double, PiIndex>(gen, alpha, beta)), gen);
}

RealOperator build_ipi(Deformation q, const FullLattice& lattice, Generator gen) {
  require_floating(q, "build_ipi0");
  const double qv = q.value();
  const auto alpha = [qv](FullIndex p) -> Terms<FullIndex, double> {
    if (p.s == 0) return {};
    return {{{p.r, p.s - 1, p.t}, g(p.s, qv)}};
  };
  const auto beta = [qv](FullIndex p) -> Terms<FullIndex, double> {
    return {{{p.r, p.s, p.t - 1}, ipow(qv, p.s)}};
  };
  return star_if(build_from_rule<double>(lattice, pi_rule<double, FullIndex>(gen, alpha, beta)), gen);
}

ExactOperator build_lambda0(const GammaLattice& lattice, Generator gen, Beta0Form form) {
  const auto m = unstarred(gen) == Generator::alpha
                     ? build_from_rule<int>(lattice, lambda0_alpha_column)
                     : build_from_rule<int>(lattice, [form](GammaIndex p) { return lambda0_beta_column(p, form); });
  return star_if(m, gen);
}

ExactOperator build_pi0(const PiLattice& lattice, Generator gen) {
  const auto alpha = [](PiIndex p) -> Terms<PiIndex, int> {
    if (p.s == 0) return {};
    return {{{p.s - 1, p.t}, 1}};
  };
  const auto beta = [](PiIndex p) -> Terms<PiIndex, int> {
    if (p.s != 0) return {};
    return {{{0, p.t - 1}, 1}};
  };
  return star_if(build_from_rule<int>(lattice, pi_rule<int, PiIndex>(gen, alpha, beta)), gen);
}

ExactOperator build_ipi0(const FullLattice& lattice, Generator gen) {
  const auto alpha = [](FullIndex p) -> Terms<FullIndex, int> {
    if (p.s == 0) return {};
    return {{{p.r, p.s - 1, p.t}, 1}};
  };
  const auto beta = [](FullIndex p) -> Terms<FullIndex, int> {
    if (p.s != 0) return {};
    return {{{p.r, 0, p.t - 1}, 1}};
  };
  return star_if(build_from_rule<int>(lattice, pi_rule<int, FullIndex>(gen, alpha, beta)), gen);
}

Irrep build_irrep(Deformation q, std::complex<double> z, std::size_t dim) {
  require_floating(q, "the q = 0 representations");
  if (dim == 0) throw std::invalid_argument("irrep section needs dim >= 1");
  if (!(std::abs(std::abs(z) - 1.0) < 1e-12)) throw std::invalid_argument("z must lie on the unit circle");
  using Entry = ComplexOperator::Entry;
  std::vector<std::vector<Entry>> a(dim);
  std::vector<std::vector<Entry>> b(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const int ki = static_cast<int>(k);
    if (k > 0) a[k].push_back({k - 1, g(ki, q.value())});
    b[k].push_back({k, z * ipow(q.value(), ki)});
  }
  return {ComplexOperator::from_columns(dim, std::move(a)), ComplexOperator::from_columns(dim, std::move(b))};
}

GeneratorSet<double> lambda_generators(Deformation q, const GammaLattice& lattice) {
  return GeneratorSet<double>::from_pair(build_lambda(q, lattice, Generator::alpha),
                                         build_lambda(q, lattice, Generator::beta));
}

GeneratorSet<double> pi_generators(Deformation q, const PiLattice& lattice) {
  return GeneratorSet<double>::from_pair(build_pi(q, lattice, Generator::alpha), build_pi(q, lattice, Generator::beta));
}

GeneratorSet<int> lambda0_generators(const GammaLattice& lattice) {
  return GeneratorSet<int>::from_pair(build_lambda0(lattice, Generator::alpha),
                                      build_lambda0(lattice, Generator::beta));
}

GeneratorSet<int> pi0_generators(const PiLattice& lattice) {
  return GeneratorSet<int>::from_pair(build_pi0(lattice, Generator::alpha), build_pi0(lattice, Generator::beta));
}

GeneratorSet<std::complex<double>> irrep_generators(const Irrep& irrep) {
  return GeneratorSet<std::complex<double>>::from_pair(irrep.alpha, irrep.beta);
}

RelationResidualReport check_irrep_relations(const Irrep& irrep, double q, int margin) {
  if (margin < 2) throw std::invalid_argument("word margin must be at least 2");
  const auto dim = static_cast<long long>(irrep.alpha.cols());
  const long long last = dim - 1 - margin;
  if (last < 0) throw std::invalid_argument("no interior");
  std::vector<std::size_t> cols;
  for (long long k = 0; k <= last; ++k) cols.push_back(static_cast<std::size_t>(k));
  auto report = check_relations(irrep_generators(irrep), q, std::span<const std::size_t>(cols));
  report.interior_shell = static_cast<int>(last);
  return report;
}

CoproductImages coproduct_images(Deformation q, int cap) {
  require_floating(q, "the q = 0 representations");
  PiLattice factor(cap);
  const auto a = build_pi(q, factor, Generator::alpha);
  const auto b = build_pi(q, factor, Generator::beta);
  const auto as = adjoint(a);
  const auto bs = adjoint(b);
  auto da = add(kron(a, a), kron(bs, b), 1.0, -q.value());
  auto db = add(kron(b, a), kron(as, b));
  return {std::move(factor), std::move(da), std::move(db)};
}

std::vector<std::size_t> coproduct_interior(const CoproductImages& images, int margin) {
  const auto inner = interior_columns(images.factor, margin);
  std::vector<std::size_t> out;
  out.reserve(inner.size() * inner.size());
  for (std::size_t x : inner)
    for (std::size_t y : inner) out.push_back(images.rank(x, y));
  return out;
}

}  // namespace suq2
