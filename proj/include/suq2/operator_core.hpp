#pragma once

// Lattice-aware construction and diagnostics for sparse operator sections.

#include "suq2/lattice.hpp"
#include "suq2/sparse_matrix.hpp"

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace suq2 {

using ExactOperator = SparseMatrix<int>;
using RealOperator = SparseMatrix<double>;
using ComplexOperator = SparseMatrix<std::complex<double>>;

template <class Point, class T>
struct Term {
  Point target;
  T value;
};

/// Matrix whose column at p holds the rule's terms that land inside the
/// truncation; terms leaving it are dropped. A term whose target violates
/// the index invariants throws std::invalid_argument.
///
/// rule(p) must return a range of Term<Point, T>.
template <class T, TruncatedLattice Lattice, class Rule>
SparseMatrix<T> build_from_rule(const Lattice& lattice, Rule&& rule) {
  using Entry = typename SparseMatrix<T>::Entry;
  const auto& points = lattice.points();
  std::vector<std::vector<Entry>> cols(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (const auto& term : rule(points[j])) {
      if (!is_valid(term.target)) throw std::invalid_argument("rule produced invalid index");
      if (!lattice.contains(term.target)) continue;
      cols[j].push_back({lattice.index_of(term.target), static_cast<T>(term.value)});
    }
  }
  return SparseMatrix<T>::from_columns(points.size(), std::move(cols));
}

/// Diagonal operator with entries f(p).
template <class T, TruncatedLattice Lattice, class F>
SparseMatrix<T> build_diagonal(const Lattice& lattice, F&& f) {
  std::vector<T> d;
  d.reserve(lattice.dim());
  for (const auto& p : lattice.points()) d.push_back(static_cast<T>(f(p)));
  return SparseMatrix<T>::diagonal(d);
}

/// I (x) op: lifts an operator on the pi-lattice to the full lattice.
template <class T>
SparseMatrix<T> lift_to_full(const SparseMatrix<T>& pi_op, const PiLattice& pi, const FullLattice& full) {
  if (pi_op.cols() != pi.dim() || pi_op.rows() != pi.dim())
    throw std::invalid_argument("operator does not live on the pi lattice");
  using Entry = typename SparseMatrix<T>::Entry;
  std::vector<std::vector<Entry>> cols(full.dim());
  for (std::size_t j = 0; j < full.dim(); ++j) {
    const FullIndex p = full.point_of(j);
    const PiIndex src{p.s, p.t};
    if (!pi.contains(src)) continue;
    for (const auto& e : pi_op.column(pi.index_of(src))) {
      const PiIndex tgt = pi.point_of(e.row);
      const FullIndex target{p.r, tgt.s, tgt.t};
      if (full.contains(target)) cols[j].push_back({full.index_of(target), e.value});
    }
  }
  return SparseMatrix<T>::from_columns(full.dim(), std::move(cols));
}

enum class TailFactor { pi_factor, full_shell };
enum class TailSide { left, right, both };

/// Projection onto the tail {s+|t| >= m} (pi-factor) or {r+s+|t| >= m}
/// (full-shell) of the full lattice.
struct TailProjector {
  TailFactor which = TailFactor::pi_factor;
  int threshold = 0;

  bool selects(FullIndex p) const noexcept {
    const int v = which == TailFactor::pi_factor ? p.s + abs_int(p.t) : shell(p);
    return v >= threshold;
  }
};

std::vector<bool> tail_mask(const FullLattice& lattice, TailProjector proj);

template <class T>
SparseMatrix<T> restrict_tail(const SparseMatrix<T>& a, const FullLattice& lattice, TailProjector proj,
                              TailSide side) {
  if (a.rows() != lattice.dim() || a.cols() != lattice.dim())
    throw std::invalid_argument("tail projector does not match the operator's lattice");
  const auto mask = tail_mask(lattice, proj);
  SparseMatrix<T> out = a;
  if (side == TailSide::right || side == TailSide::both) out = restrict_columns(out, mask);
  if (side == TailSide::left || side == TailSide::both) out = restrict_rows(out, mask);
  return out;
}

struct ShellValue {
  int shell = 0;
  double value = 0.0;
};

/// For each shell m of the domain, the largest |entry| over columns at shell m.
template <class T>
std::vector<ShellValue> max_abs_entry_per_shell(const SparseMatrix<T>& a, const FullLattice& lattice) {
  if (a.cols() != lattice.dim()) throw std::invalid_argument("operator does not live on the lattice");
  std::vector<ShellValue> out;
  for (int m = 0; m <= lattice.cap(); ++m) out.push_back({m, 0.0});
  for (std::size_t j = 0; j < a.cols(); ++j) {
    auto& slot = out[static_cast<std::size_t>(shell(lattice.point_of(j)))];
    for (const auto& e : a.column(j)) slot.value = std::max(slot.value, abs_scalar(e.value));
  }
  return out;
}

}  // namespace suq2
