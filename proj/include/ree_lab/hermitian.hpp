#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace ree_lab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kDefaultPsdTol = 1e-9;

// Complex square matrix with H == H^dagger exactly. Any input is
// symmetrized as (H + H^dagger) / 2 on construction; non-finite entries
// are rejected.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const CMatrix& m);

  static HermitianMatrix identity(int dim);
  static HermitianMatrix zero(int dim);
  static HermitianMatrix diagonal(const RVector& diag);
  // Projector |v><v| (no normalization applied).
  static HermitianMatrix projector(const CVector& v);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const noexcept { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  double trace() const { return m_.trace().real(); }
  // max_ij |H_ij|
  double max_abs() const { return m_.cwiseAbs().maxCoeff(); }

  HermitianMatrix operator+(const HermitianMatrix& other) const;
  HermitianMatrix operator-(const HermitianMatrix& other) const;
  HermitianMatrix operator*(double s) const;
  friend HermitianMatrix operator*(double s, const HermitianMatrix& h) {
    return h * s;
  }

 private:
  struct Trusted {};
  HermitianMatrix(CMatrix m, Trusted) : m_(std::move(m)) {}

  CMatrix m_;
};

// Eigenvalues ascending, eigenvectors as the columns of a unitary.
struct SpectralDecomposition {
  RVector eigenvalues;
  CMatrix eigenvectors;

  int dim() const noexcept { return static_cast<int>(eigenvalues.size()); }
  double min_eigenvalue() const { return eigenvalues(0); }
  double max_eigenvalue() const { return eigenvalues(eigenvalues.size() - 1); }
  HermitianMatrix reconstruct() const;
};

// f : R -> R, valid on (domain_lower, inf).
struct ScalarFunction {
  std::string name;
  std::function<double(double)> evaluate;
  double domain_lower;
};

namespace functions {
ScalarFunction identity();
ScalarFunction square();
ScalarFunction log();
ScalarFunction sqrt();
ScalarFunction exp();
// Look up one of the above by name; throws InputError for unknown names.
ScalarFunction by_name(const std::string& name);
}  // namespace functions

SpectralDecomposition eig_hermitian(const HermitianMatrix& h);

// U f(diag) U^dagger. Throws DomainError if any eigenvalue is not strictly
// above f.domain_lower.
HermitianMatrix matrix_function(const HermitianMatrix& h, const ScalarFunction& f);
HermitianMatrix matrix_function(const SpectralDecomposition& spec,
                                const ScalarFunction& f);

// Natural logarithm. Requires min eigenvalue > psd_tol.
HermitianMatrix matrix_log(const HermitianMatrix& h, double psd_tol = kDefaultPsdTol);

struct PsdCheck {
  bool holds;
  double witness;  // min eigenvalue
};

PsdCheck is_psd(const HermitianMatrix& h, double tol = kDefaultPsdTol);

// A >= B in the Loewner order, i.e. A - B is PSD up to tol.
bool loewner_geq(const HermitianMatrix& a, const HermitianMatrix& b,
                 double tol = kDefaultPsdTol);

// Adjoint of the Frechet derivative of log at rho applied to sigma:
// U (L o (U^dagger sigma U)) U^dagger with L the first divided differences
// of log over the spectrum of rho.
HermitianMatrix frechet_log_adjoint(const SpectralDecomposition& rho,
                                    const HermitianMatrix& sigma);

// Re tr(A^dagger B)
double hs_inner(const HermitianMatrix& a, const HermitianMatrix& b);

// Raw-matrix variants used by the solver hot loops. Inputs must already be
// Hermitian; no symmetrization or finiteness checks are done.
namespace detail {
SpectralDecomposition eig_hermitian(const CMatrix& h);
CMatrix from_spectrum(const CMatrix& u, const RVector& values);
CMatrix frechet_log_adjoint(const SpectralDecomposition& rho, const CMatrix& sigma);
}  // namespace detail

}  // namespace ree_lab
