#include "ree_lab/hermitian.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ree_lab/errors.hpp"

namespace ree_lab {

HermitianMatrix::HermitianMatrix(const CMatrix& m) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << "HermitianMatrix needs a non-empty square matrix, got " << m.rows() << "x"
       << m.cols();
    throw ShapeError(os.str());
  }
  if (!m.allFinite()) throw InputError("HermitianMatrix: non-finite entry");
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianMatrix HermitianMatrix::identity(int dim) {
  if (dim < 1) throw ShapeError("identity: dim must be >= 1");
  return {CMatrix::Identity(dim, dim), Trusted{}};
}

HermitianMatrix HermitianMatrix::zero(int dim) {
  if (dim < 1) throw ShapeError("zero: dim must be >= 1");
  return {CMatrix::Zero(dim, dim), Trusted{}};
}

HermitianMatrix HermitianMatrix::diagonal(const RVector& diag) {
  if (diag.size() < 1) throw ShapeError("diagonal: empty");
  if (!diag.allFinite()) throw InputError("diagonal: non-finite entry");
  return {diag.cast<Complex>().asDiagonal().toDenseMatrix(), Trusted{}};
}

HermitianMatrix HermitianMatrix::projector(const CVector& v) {
  return HermitianMatrix(v * v.adjoint());
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& other) const {
  if (dim() != other.dim()) throw ShapeError("HermitianMatrix +: dimension mismatch");
  return {m_ + other.m_, Trusted{}};
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& other) const {
  if (dim() != other.dim()) throw ShapeError("HermitianMatrix -: dimension mismatch");
  return {m_ - other.m_, Trusted{}};
}

HermitianMatrix HermitianMatrix::operator*(double s) const {
  if (!std::isfinite(s)) throw InputError("HermitianMatrix *: non-finite scalar");
  return {m_ * s, Trusted{}};
}

HermitianMatrix SpectralDecomposition::reconstruct() const {
  return HermitianMatrix(detail::from_spectrum(eigenvectors, eigenvalues));
}

namespace functions {

ScalarFunction identity() {
  return {"identity", [](double x) { return x; },
          -std::numeric_limits<double>::infinity()};
}

ScalarFunction square() {
  return {"square", [](double x) { return x * x; },
          -std::numeric_limits<double>::infinity()};
}

ScalarFunction log() {
  return {"log", [](double x) { return std::log(x); }, 0.0};
}

ScalarFunction sqrt() {
  return {"sqrt", [](double x) { return std::sqrt(x); }, 0.0};
}

ScalarFunction exp() {
  return {"exp", [](double x) { return std::exp(x); },
          -std::numeric_limits<double>::infinity()};
}

ScalarFunction by_name(const std::string& name) {
  if (name == "identity" || name == "x") return identity();
  if (name == "square" || name == "x2") return square();
  if (name == "log") return log();
  if (name == "sqrt") return sqrt();
  if (name == "exp") return exp();
  throw InputError("unknown scalar function '" + name + "'");
}

}  // namespace functions

namespace detail {

SpectralDecomposition eig_hermitian(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("eig_hermitian: eigensolver did not converge (dim " +
                           std::to_string(h.rows()) + ")");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix from_spectrum(const CMatrix& u, const RVector& values) {
  CMatrix out = u * values.cast<Complex>().asDiagonal() * u.adjoint();
  return (out + out.adjoint()) * 0.5;
}

CMatrix frechet_log_adjoint(const SpectralDecomposition& rho, const CMatrix& sigma) {
  const int d = rho.dim();
  const RVector& lam = rho.eigenvalues;
  if (lam(0) <= 0.0) {
    throw DomainError("frechet_log_adjoint: nonpositive eigenvalue", lam(0));
  }
  const CMatrix& u = rho.eigenvectors;
  CMatrix s = u.adjoint() * sigma * u;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      double l;
      const double gap = lam(i) - lam(j);
      if (std::abs(gap) < 1e-12 * std::max(lam(i), lam(j))) {
        l = 1.0 / lam(i);
      } else {
        // log1p keeps the difference of logs accurate for close eigenvalues
        l = std::log1p(gap / lam(j)) / gap;
      }
      s(i, j) *= l;
    }
  }
  CMatrix out = u * s * u.adjoint();
  return (out + out.adjoint()) * 0.5;
}

}  // namespace detail

SpectralDecomposition eig_hermitian(const HermitianMatrix& h) {
  return detail::eig_hermitian(h.matrix());
}

HermitianMatrix matrix_function(const SpectralDecomposition& spec,
                                const ScalarFunction& f) {
  RVector fl(spec.dim());
  for (int i = 0; i < spec.dim(); ++i) {
    const double x = spec.eigenvalues(i);
    if (!(x > f.domain_lower)) {
      std::ostringstream os;
      os << "matrix_function(" << f.name << "): eigenvalue " << x
         << " not above domain bound " << f.domain_lower;
      throw DomainError(os.str(), x);
    }
    fl(i) = f.evaluate(x);
    if (!std::isfinite(fl(i))) {
      std::ostringstream os;
      os << "matrix_function(" << f.name << "): non-finite value at " << x;
      throw DomainError(os.str(), x);
    }
  }
  return HermitianMatrix(detail::from_spectrum(spec.eigenvectors, fl));
}

HermitianMatrix matrix_function(const HermitianMatrix& h, const ScalarFunction& f) {
  return matrix_function(eig_hermitian(h), f);
}

HermitianMatrix matrix_log(const HermitianMatrix& h, double psd_tol) {
  const auto spec = eig_hermitian(h);
  if (spec.min_eigenvalue() <= psd_tol) {
    std::ostringstream os;
    os << "matrix_log: min eigenvalue " << spec.min_eigenvalue()
       << " is not above " << psd_tol;
    throw DomainError(os.str(), spec.min_eigenvalue());
  }
  return matrix_function(spec, functions::log());
}

PsdCheck is_psd(const HermitianMatrix& h, double tol) {
  if (!(tol >= 0.0)) throw InputError("is_psd: tol must be >= 0");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("is_psd: eigensolver did not converge");
  }
  const double w = solver.eigenvalues()(0);
  return {w >= -tol, w};
}

bool loewner_geq(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  if (a.dim() != b.dim()) throw ShapeError("loewner_geq: dimension mismatch");
  return is_psd(a - b, tol).holds;
}

HermitianMatrix frechet_log_adjoint(const SpectralDecomposition& rho,
                                    const HermitianMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw ShapeError("frechet_log_adjoint: dimension mismatch");
  return HermitianMatrix(detail::frechet_log_adjoint(rho, sigma.matrix()));
}

double hs_inner(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw ShapeError("hs_inner: dimension mismatch");
  // tr(A^dagger B) = sum_ij conj(A_ij) B_ij
  return a.matrix().cwiseProduct(b.matrix().conjugate()).sum().real();
}

}  // namespace ree_lab
