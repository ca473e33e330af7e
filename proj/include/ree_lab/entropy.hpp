#pragma once

#include <limits>

#include "ree_lab/bipartite.hpp"

namespace ree_lab {

// Entropic quantity in bits. +infinity is a legitimate value for relative
// entropies with a support violation; NaN is never produced.
class EntropyValue {
 public:
  static EntropyValue finite(double bits) { return EntropyValue(bits); }
  static EntropyValue infinite() {
    return EntropyValue(std::numeric_limits<double>::infinity());
  }

  bool is_infinite() const noexcept { return bits_ == std::numeric_limits<double>::infinity(); }
  bool is_finite() const noexcept { return !is_infinite(); }
  // +inf when infinite.
  double bits() const noexcept { return bits_; }

 private:
  explicit EntropyValue(double bits) : bits_(bits) {}
  double bits_;
};

// Eigenvalues below this are exact zeros for entropy and support purposes.
inline constexpr double kZeroEigenvalue = 1e-12;
// Overlap of sigma with the kernel of rho above which S(sigma||rho) = +inf.
inline constexpr double kSupportOverlap = 1e-10;

double von_neumann_entropy(const DensityMatrix& rho);
// Shannon entropy (bits) of a probability vector with the same zero cutoff.
double shannon_entropy(const RVector& p);
double binary_entropy(double p);

EntropyValue relative_entropy(const DensityMatrix& sigma, const DensityMatrix& rho);

// S(sigma_side) - S(sigma_AB)
double negative_conditional_entropy(const DensityMatrix& sigma, Side side);

struct Theorem1Gap {
  enum class Kind { Finite, Infinite, Indeterminate };
  Kind kind;
  double value;  // +inf for Infinite, NaN-free: 0 for Indeterminate

  bool scored() const noexcept { return kind != Kind::Indeterminate; }
};

// S(sigma_AB||rho_AB) - S(sigma_side||rho_side) - [S(sigma_side) - S(sigma_AB)].
// Non-negative whenever rho is non-distillable.
Theorem1Gap theorem1_gap(const DensityMatrix& sigma, const DensityMatrix& rho, Side side);

struct LogOrderCheck {
  bool holds;
  double min_eigenvalue;  // of log(rho_A) (x) 1_B - log(rho_AB), natural log
};

// log(rho_A) (x) 1_B >= log(rho_AB). Rank-deficient rho -> DomainError.
LogOrderCheck log_order_check(const DensityMatrix& rho, double tol = kDefaultPsdTol);

// max{ S(sigma_A) - S(sigma_AB), S(sigma_B) - S(sigma_AB) }
double lemma2_bound(const DensityMatrix& sigma);
// The side attaining lemma2_bound (A on ties).
Side lemma2_side(const DensityMatrix& sigma);

}  // namespace ree_lab
