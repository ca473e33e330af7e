#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ree_lab/bipartite.hpp"

namespace ree_lab {

struct CriterionVerdict {
  bool holds;
  double witness_eigenvalue;
  CVector witness_vector;  // eigenvector of the witness eigenvalue
};

// rho_A (x) 1 >= rho_AB. A failing verdict certifies distillability.
CriterionVerdict reduction_criterion(const DensityMatrix& rho, double tol = kDefaultPsdTol);
// Partial transpose on B is PSD.
CriterionVerdict ppt_criterion(const DensityMatrix& rho, double tol = kDefaultPsdTol);
CriterionVerdict ppt_criterion(const HermitianMatrix& m, BipartiteDims dims,
                               double tol = kDefaultPsdTol);

inline constexpr double kMonotoneTol = 1e-8;

struct MonotoneCounterexample {
  HermitianMatrix a;
  HermitianMatrix b;
  double violation;  // min eigenvalue of f(A) - f(B)
  int trials_used;
};

struct MonotoneTrial {
  HermitianMatrix a;
  HermitianMatrix b;
  // min eigenvalue of f(A) - f(B)
  double min_eigenvalue;
};

// One random pair A = B + Delta >= B with spectra scaled into f's
// well-conditioned range, and the resulting Loewner gap of f.
MonotoneTrial sample_monotone_trial(const ScalarFunction& f, int dim, Rng& rng);
MonotoneTrial evaluate_monotone_pair(const ScalarFunction& f, const HermitianMatrix& a,
                                     const HermitianMatrix& b);

// A = [[2,1],[1,1]], B = diag(1,0): A >= B but A^2 - B^2 has determinant -1.
std::pair<HermitianMatrix, HermitianMatrix> known_square_counterexample();

struct MonotoneSearchOptions {
  // Tested in order before any random trial; each counts as one trial.
  std::vector<std::pair<HermitianMatrix, HermitianMatrix>> injected_pairs;
  double tol = kMonotoneTol;
};

// Randomized falsification of operator monotonicity. Returns the counterexample
// with the lowest trial index, or nothing if none is found in `trials` trials.
std::optional<MonotoneCounterexample> operator_monotone_search(
    const ScalarFunction& f, int dim, int trials, std::uint64_t seed,
    const MonotoneSearchOptions& opts = {});

struct LoewnerMatrixCheck {
  bool psd;
  double min_eigenvalue;
  Eigen::MatrixXd matrix;
};

// Divided-difference (Loewner) matrix of f over distinct points; PSD for all
// point sets is necessary for operator monotonicity.
LoewnerMatrixCheck loewner_matrix_psd_check(const ScalarFunction& f,
                                            const std::vector<double>& points,
                                            double tol = kMonotoneTol);

}  // namespace ree_lab
