#include "suq2/operator_core.hpp"

namespace suq2 {

std::vector<bool> tail_mask(const FullLattice& lattice, TailProjector proj) {
  std::vector<bool> mask(lattice.dim());
  for (std::size_t j = 0; j < lattice.dim(); ++j) mask[j] = proj.selects(lattice.point_of(j));
  return mask;
}

}  // namespace suq2
