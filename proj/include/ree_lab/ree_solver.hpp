#pragma once

#include <array>
#include <vector>

#include "ree_lab/bipartite.hpp"

namespace ree_lab {

struct ArmijoOptions {
  double shrink = 0.5;
  double slope = 1e-4;
  double initial_step = 1.0;
};

struct ReeOptions {
  int max_iters = 5000;
  // threshold on the projected-gradient (gradient mapping) norm
  double grad_tol = 1e-7;
  // every iterate is mixed as (1 - eps) rho + eps 1/d
  double eps = 1e-9;
  int dykstra_max = 500;
  double dykstra_tol = 1e-11;
  ArmijoOptions armijo;

  // Throws InputError unless every field is positive and eps < 1e-3.
  void validate() const;
};

struct ReeResult {
  double value_bits;
  DensityMatrix closest_state;
  int iterations;
  bool converged;
  double final_grad_norm;
  // objective (bits) after every accepted step; non-increasing within each
  // floor stage
  std::vector<double> objective_history;
};

// Euclidean projection onto the probability simplex.
RVector project_simplex(const RVector& v);

// Frobenius-nearest density matrix (unit trace, PSD).
DensityMatrix project_density(const HermitianMatrix& h);
// Gamma o project_density o Gamma with Gamma the partial transpose on B:
// nearest unit-trace matrix whose partial transpose is PSD. The result itself
// need not be PSD.
HermitianMatrix project_ppt(const HermitianMatrix& h, BipartiteDims dims);

struct DykstraResult {
  DensityMatrix state;
  int iterations;
  bool converged;
  // min eigenvalue of the partial transpose before the final feasibility touch-up
  double ppt_residual;
};

// Projection onto the PPT states by Dykstra's alternating projections between
// the density matrices and the partial-transpose image of the density matrices.
// The returned state is exactly PSD with unit trace; its partial transpose is
// PSD up to round-off.
DykstraResult dykstra_ppt_density(const HermitianMatrix& h, BipartiteDims dims,
                                  const ReeOptions& opts = {});

// Relative entropy of entanglement with respect to the PPT states, by
// projected gradient descent on S(sigma || rho).
ReeResult ree_ppt(const DensityMatrix& sigma, const ReeOptions& opts = {});

struct SchmidtDecomposition {
  RVector coefficients;  // descending, non-negative
  CMatrix basis_a;       // columns |a_k>
  CMatrix basis_b;       // columns |b_k>, psi = sum_k c_k |a_k>|b_k>
};

SchmidtDecomposition schmidt_decompose(const PureState& psi);

// sum_k c_k^2 |a_k b_k><a_k b_k|: the state dephased in the Schmidt basis.
DensityMatrix closest_state_for_pure(const PureState& psi);

// Wootters concurrence and entanglement of formation (bits), two qubits only.
double concurrence(const DensityMatrix& sigma);
double eof_two_qubit(const DensityMatrix& sigma);

struct BellOracleResult {
  double value_bits;
  // first-order estimate of how far the grid minimum may sit above the
  // continuous minimum
  double resolution_bits;
  std::array<double, 4> minimizer;
};

// Exhaustive grid search of S(sigma(p) || rho(q)) over Bell-diagonal PPT
// states q (simplex grid, every weight <= 1/2).
BellOracleResult bell_diagonal_ree_oracle(const std::array<double, 4>& p, int grid_steps);

}  // namespace ree_lab
