#pragma once

#include <cmath>

#include "ree_lab/bipartite.hpp"

namespace ree_lab::testing {

// G G^dagger / tr with G_kl = cos(k + 2l) + i sin(kl + 1); a fixed full-rank
// state whose reference values were computed independently.
inline DensityMatrix formula_state(BipartiteDims dims) {
  const int d = dims.total();
  CMatrix g(d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) g(k, l) = Complex(std::cos(k + 2.0 * l), std::sin(k * l + 1.0));
  const CMatrix r = g * g.adjoint();
  return DensityMatrix(HermitianMatrix(r / r.trace().real()), dims);
}

inline HermitianMatrix random_hermitian(int d, Rng& rng) {
  return HermitianMatrix(ginibre(d, d, rng));
}

inline CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace ree_lab::testing
