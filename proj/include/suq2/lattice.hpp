#pragma once

// Index combinatorics for the basis of l2(Gamma), the product lattices
// N x Z (the pi-space) and N x N x Z (multiplicity (x) pi-space), and the
// shell truncation shared by every finite model in the library.

#include <concepts>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace suq2 {

/// Basis label e^n_{ij} of l2(Gamma). Half-integers are stored doubled:
/// n2 = 2n, i2 = 2i, j2 = 2j.
struct GammaIndex {
  int n2 = 0;
  int i2 = 0;
  int j2 = 0;

  friend constexpr bool operator==(const GammaIndex&, const GammaIndex&) = default;
};

/// Basis label e(r,s,t) of H_mult (x) H_pi.
struct FullIndex {
  int r = 0;
  int s = 0;
  int t = 0;

  friend constexpr bool operator==(const FullIndex&, const FullIndex&) = default;
};

/// Basis label e(s,t) of H_pi = l2(N) (x) l2(Z).
struct PiIndex {
  int s = 0;
  int t = 0;

  friend constexpr bool operator==(const PiIndex&, const PiIndex&) = default;
};

constexpr bool is_valid(GammaIndex p) noexcept {
  const auto same_parity = [](int a, int b) { return ((a - b) % 2) == 0; };
  return p.n2 >= 0 && p.i2 <= p.n2 && -p.i2 <= p.n2 && p.j2 <= p.n2 && -p.j2 <= p.n2 &&
         same_parity(p.n2, p.i2) && same_parity(p.n2, p.j2);
}
constexpr bool is_valid(FullIndex p) noexcept { return p.r >= 0 && p.s >= 0; }
constexpr bool is_valid(PiIndex p) noexcept { return p.s >= 0; }

constexpr int abs_int(int v) noexcept { return v < 0 ? -v : v; }

constexpr int shell(GammaIndex p) noexcept { return p.n2; }
constexpr int shell(FullIndex p) noexcept { return p.r + p.s + abs_int(p.t); }
constexpr int shell(PiIndex p) noexcept { return p.s + abs_int(p.t); }

/// Sort key of the canonical order: shell-major, then lexicographic.
constexpr auto canonical_key(GammaIndex p) noexcept { return std::tuple{p.n2, p.i2, p.j2}; }
constexpr auto canonical_key(FullIndex p) noexcept { return std::tuple{shell(p), p.r, p.s, p.t}; }
constexpr auto canonical_key(PiIndex p) noexcept { return std::tuple{shell(p), p.s, p.t}; }

/// Doubled sheet label n2 - max(i2, j2) = 2(n - i v j). The sheet Gamma_k
/// consists of the points with sheet_of(p) == 2k; U maps it onto {r = k}.
constexpr int sheet_of(GammaIndex p) noexcept { return p.n2 - (p.i2 > p.j2 ? p.i2 : p.j2); }

std::string to_string(GammaIndex p);
std::string to_string(FullIndex p);
std::string to_string(PiIndex p);

/// Maximum shell number kept by a finite model.
class Truncation {
 public:
  explicit Truncation(int cap);
  int cap() const noexcept { return cap_; }

 private:
  int cap_;
};

/// Number of points of Gamma (or of N x N x Z) with shell < m: sum_{k<m} (k+1)^2.
constexpr std::size_t cumulative_cube_count(int m) noexcept {
  const auto mm = static_cast<std::size_t>(m);
  return mm * (mm + 1) * (2 * mm + 1) / 6;
}

std::vector<GammaIndex> gamma_points(int cap);
std::vector<FullIndex> full_points(int cap);
std::vector<PiIndex> pi_points(int cap);

/// A shell-truncated lattice with a contiguous ranking 0..dim-1 in
/// canonical order.
template <class L>
concept TruncatedLattice = requires(const L& lat, typename L::point_type p, std::size_t k) {
  { lat.cap() } -> std::convertible_to<int>;
  { lat.dim() } -> std::convertible_to<std::size_t>;
  { lat.contains(p) } -> std::convertible_to<bool>;
  { lat.index_of(p) } -> std::convertible_to<std::size_t>;
  { lat.point_of(k) } -> std::convertible_to<typename L::point_type>;
};

namespace detail {

template <class Point, class Derived>
class LatticeBase {
 public:
  using point_type = Point;

  int cap() const noexcept { return cap_; }
  std::size_t dim() const noexcept { return points_.size(); }
  const std::vector<Point>& points() const noexcept { return points_; }

  bool contains(Point p) const noexcept { return is_valid(p) && shell(p) <= cap_; }

  /// Throws std::out_of_range("index outside truncation") if p is not in the lattice.
  std::size_t index_of(Point p) const;
  Point point_of(std::size_t rank) const;

 protected:
  LatticeBase(int cap, std::vector<Point> points) : cap_(cap), points_(std::move(points)) {}

 private:
  int cap_;
  std::vector<Point> points_;
};

}  // namespace detail

class GammaLattice : public detail::LatticeBase<GammaIndex, GammaLattice> {
 public:
  explicit GammaLattice(Truncation trunc);
  explicit GammaLattice(int cap) : GammaLattice(Truncation{cap}) {}
  static std::size_t rank_unchecked(GammaIndex p) noexcept;
};

class FullLattice : public detail::LatticeBase<FullIndex, FullLattice> {
 public:
  explicit FullLattice(Truncation trunc);
  explicit FullLattice(int cap) : FullLattice(Truncation{cap}) {}
  static std::size_t rank_unchecked(FullIndex p) noexcept;
};

class PiLattice : public detail::LatticeBase<PiIndex, PiLattice> {
 public:
  explicit PiLattice(Truncation trunc);
  explicit PiLattice(int cap) : PiLattice(Truncation{cap}) {}
  static std::size_t rank_unchecked(PiIndex p) noexcept;
};

namespace detail {

template <class Point, class Derived>
std::size_t LatticeBase<Point, Derived>::index_of(Point p) const {
  if (!contains(p)) throw std::out_of_range("index outside truncation");
  return Derived::rank_unchecked(p);
}

template <class Point, class Derived>
Point LatticeBase<Point, Derived>::point_of(std::size_t rank) const {
  if (rank >= points_.size()) throw std::out_of_range("index outside truncation");
  return points_[rank];
}

}  // namespace detail

}  // namespace suq2
