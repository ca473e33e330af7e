#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ree_lab/hermitian.hpp"
#include "ree_lab/random.hpp"

namespace ree_lab {

// Subsystem split of a bipartite Hilbert space. Basis state |i>_A |j>_B has
// flat index i * dB + j.
struct BipartiteDims {
  int dA = 1;
  int dB = 1;

  int total() const noexcept { return dA * dB; }
  bool operator==(const BipartiteDims&) const = default;
};

inline constexpr double kTraceTol = 1e-10;
inline constexpr double kStatePsdTol = 1e-9;

// Hermitian, unit-trace, positive semidefinite operator, optionally tagged
// with a bipartite split.
class DensityMatrix {
 public:
  // Validates trace and positivity against the given tolerances and throws
  // InvalidStateError on violation (ShapeError on inconsistent dims).
  explicit DensityMatrix(HermitianMatrix m, std::optional<BipartiteDims> dims = std::nullopt,
                         double trace_tol = kTraceTol, double psd_tol = kStatePsdTol);

  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix maximally_mixed(BipartiteDims dims);

  int dim() const noexcept { return m_.dim(); }
  const HermitianMatrix& hermitian() const noexcept { return m_; }
  const CMatrix& matrix() const noexcept { return m_.matrix(); }
  const std::optional<BipartiteDims>& dims() const noexcept { return dims_; }
  // dims or ShapeError
  BipartiteDims require_dims(const char* op) const;

  DensityMatrix with_dims(BipartiteDims dims) const;
  DensityMatrix without_dims() const;

 private:
  struct Trusted {};
  DensityMatrix(HermitianMatrix m, std::optional<BipartiteDims> dims, Trusted)
      : m_(std::move(m)), dims_(dims) {}
  friend DensityMatrix make_trusted_density(HermitianMatrix, std::optional<BipartiteDims>);

  HermitianMatrix m_;
  std::optional<BipartiteDims> dims_;
};

// Skips validation; only for outputs valid by construction.
DensityMatrix make_trusted_density(HermitianMatrix m, std::optional<BipartiteDims> dims);

class PureState {
 public:
  PureState(CVector amplitudes, BipartiteDims dims);

  const CVector& amplitudes() const noexcept { return amps_; }
  BipartiteDims dims() const noexcept { return dims_; }
  DensityMatrix density() const;

 private:
  CVector amps_;
  BipartiteDims dims_;
};

enum class Side { A, B };

DensityMatrix partial_trace_B(const DensityMatrix& rho);
DensityMatrix partial_trace_A(const DensityMatrix& rho);
// Reduced state on `side` (partial_trace_B for A, partial_trace_A for B).
DensityMatrix reduced_state(const DensityMatrix& rho, Side side);

CMatrix partial_transpose_B(const CMatrix& m, BipartiteDims dims);
HermitianMatrix partial_transpose_B(const HermitianMatrix& m, BipartiteDims dims);
HermitianMatrix partial_transpose_B(const DensityMatrix& rho);

// 1 * tr(rho) - rho
HermitianMatrix reduction_map(const DensityMatrix& rho);
// rho_A (x) 1_B - rho_AB
HermitianMatrix reduction_operator(const DensityMatrix& rho);

PureState pure_from_schmidt(const std::vector<double>& alpha, BipartiteDims dims);

// Bell basis in the order (Psi-, Psi+, Phi-, Phi+); index 0 is the singlet.
std::array<CVector, 4> bell_basis();
DensityMatrix bell_diagonal(const std::array<double, 4>& p);
// F |Psi-><Psi-| + (1 - F)/3 (1 - |Psi-><Psi-|)
DensityMatrix werner(double fidelity);
DensityMatrix singlet();

// G G^dagger / tr(G G^dagger), G dim x rank Ginibre.
DensityMatrix random_density(int dim, int rank, std::uint64_t seed);
DensityMatrix random_density(BipartiteDims dims, int rank, std::uint64_t seed);
DensityMatrix random_density(int dim, int rank, Rng& rng);
PureState random_pure(BipartiteDims dims, std::uint64_t seed);
PureState random_pure(BipartiteDims dims, Rng& rng);
// Convex mixture of `terms` random product states; separable by construction.
// terms <= 0 selects 2 * (dA dB)^2.
DensityMatrix random_separable(BipartiteDims dims, Rng& rng, int terms = 0);

// Kronecker product of plain matrices.
CMatrix kron(const CMatrix& a, const CMatrix& b);
// rho_A (x) rho_B tagged with (dA, dB).
DensityMatrix product_state(const DensityMatrix& rho_a, const DensityMatrix& rho_b);

// Relabels tensor factors: output factor k is input factor perm[k].
DensityMatrix permute_systems(const DensityMatrix& rho, const std::vector<int>& perm,
                              const std::vector<int>& subsystem_dims);
CMatrix permute_systems(const CMatrix& m, const std::vector<int>& perm,
                        const std::vector<int>& subsystem_dims);

// r1 (x) r2 regrouped from A1 B1 A2 B2 to (A1 A2)(B1 B2).
DensityMatrix tensor_bipartite(const DensityMatrix& r1, const DensityMatrix& r2);

// (1 - eps) rho + eps 1/d, keeping dims.
DensityMatrix regularize(const DensityMatrix& rho, double eps);

// 1/2 ||a - b||_1
double trace_distance(const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace ree_lab
