#include "suq2/lattice.hpp"

#include <sstream>
#include <stdexcept>

namespace suq2 {

namespace {

std::string half(int doubled) {
  if (doubled % 2 == 0) return std::to_string(doubled / 2);
  return std::to_string(doubled) + "/2";
}

}  // namespace

std::string to_string(GammaIndex p) {
  return "e^" + half(p.n2) + "_{" + half(p.i2) + "," + half(p.j2) + "}";
}

std::string to_string(FullIndex p) {
  std::ostringstream os;
  os << "e(" << p.r << ',' << p.s << ',' << p.t << ')';
  return os.str();
}

std::string to_string(PiIndex p) {
  std::ostringstream os;
  os << "e(" << p.s << ',' << p.t << ')';
  return os.str();
}

Truncation::Truncation(int cap) : cap_(cap) {
  if (cap < 0) throw std::invalid_argument("truncation cap must be non-negative");
}

std::vector<GammaIndex> gamma_points(int cap) {
  std::vector<GammaIndex> out;
  if (cap < 0) return out;
  out.reserve(cumulative_cube_count(cap + 1));
  for (int n2 = 0; n2 <= cap; ++n2)
    for (int i2 = -n2; i2 <= n2; i2 += 2)
      for (int j2 = -n2; j2 <= n2; j2 += 2) out.push_back({n2, i2, j2});
  return out;
}

std::vector<FullIndex> full_points(int cap) {
  std::vector<FullIndex> out;
  if (cap < 0) return out;
  out.reserve(cumulative_cube_count(cap + 1));
  for (int m = 0; m <= cap; ++m)
    for (int r = 0; r <= m; ++r)
      for (int s = 0; s <= m - r; ++s) {
        const int a = m - r - s;
        if (a == 0) {
          out.push_back({r, s, 0});
        } else {
          out.push_back({r, s, -a});
          out.push_back({r, s, a});
        }
      }
  return out;
}

std::vector<PiIndex> pi_points(int cap) {
  std::vector<PiIndex> out;
  if (cap < 0) return out;
  out.reserve(static_cast<std::size_t>(cap + 1) * static_cast<std::size_t>(cap + 1));
  for (int m = 0; m <= cap; ++m)
    for (int s = 0; s <= m; ++s) {
      const int a = m - s;
      if (a == 0) {
        out.push_back({s, 0});
      } else {
        out.push_back({s, -a});
        out.push_back({s, a});
      }
    }
  return out;
}

GammaLattice::GammaLattice(Truncation trunc) : LatticeBase(trunc.cap(), gamma_points(trunc.cap())) {}

std::size_t GammaLattice::rank_unchecked(GammaIndex p) noexcept {
  const auto width = static_cast<std::size_t>(p.n2 + 1);
  const auto ia = static_cast<std::size_t>((p.i2 + p.n2) / 2);
  const auto ja = static_cast<std::size_t>((p.j2 + p.n2) / 2);
  return cumulative_cube_count(p.n2) + ia * width + ja;
}

FullLattice::FullLattice(Truncation trunc) : LatticeBase(trunc.cap(), full_points(trunc.cap())) {}

std::size_t FullLattice::rank_unchecked(FullIndex p) noexcept {
  // Within shell m, the block for a fixed r holds 2(m-r)+1 points, and every
  // s below the current one contributes a pair (t = -a, +a).
  const int m = shell(p);
  const auto before_r = static_cast<std::size_t>(p.r) * static_cast<std::size_t>(2 * m + 2 - p.r);
  return cumulative_cube_count(m) + before_r + 2 * static_cast<std::size_t>(p.s) + (p.t > 0 ? 1 : 0);
}

PiLattice::PiLattice(Truncation trunc) : LatticeBase(trunc.cap(), pi_points(trunc.cap())) {}

std::size_t PiLattice::rank_unchecked(PiIndex p) noexcept {
  const auto m = static_cast<std::size_t>(shell(p));
  return m * m + 2 * static_cast<std::size_t>(p.s) + (p.t > 0 ? 1 : 0);
}

}  // namespace suq2
