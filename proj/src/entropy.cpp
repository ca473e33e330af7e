#include "ree_lab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ree_lab/errors.hpp"

namespace ree_lab {

namespace {

constexpr double kInvLn2 = 1.0 / std::numbers::ln2;

// sum_i p_i ln p_i over p_i >= kZeroEigenvalue
double neg_entropy_nats(const RVector& p) {
  double s = 0.0;
  for (double x : p)
    if (x >= kZeroEigenvalue) s += x * std::log(x);
  return s;
}

}  // namespace

double shannon_entropy(const RVector& p) {
  return std::max(0.0, -neg_entropy_nats(p) * kInvLn2);
}

double binary_entropy(double p) {
  RVector v(2);
  v << p, 1.0 - p;
  return shannon_entropy(v);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("von_neumann_entropy: eigensolver did not converge");
  }
  const double s = shannon_entropy(solver.eigenvalues());
  return std::min(s, std::log2(static_cast<double>(rho.dim())));
}

EntropyValue relative_entropy(const DensityMatrix& sigma, const DensityMatrix& rho) {
  if (sigma.dim() != rho.dim()) throw ShapeError("relative_entropy: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<CMatrix> sig(sigma.matrix(), Eigen::EigenvaluesOnly);
  if (sig.info() != Eigen::Success) {
    throw ConvergenceError("relative_entropy: eigensolver did not converge");
  }
  const auto r = eig_hermitian(rho.hermitian());
  // diagonal of sigma in the eigenbasis of rho
  const CMatrix& u = r.eigenvectors;
  double cross = 0.0;  // tr(sigma ln rho)
  for (int i = 0; i < r.dim(); ++i) {
    const double overlap = (u.col(i).adjoint() * sigma.matrix() * u.col(i))(0, 0).real();
    const double lam = r.eigenvalues(i);
    if (lam < kZeroEigenvalue) {
      if (overlap > kSupportOverlap) return EntropyValue::infinite();
      continue;
    }
    cross += overlap * std::log(lam);
  }
  const double nats = neg_entropy_nats(sig.eigenvalues()) - cross;
  return EntropyValue::finite(std::max(0.0, nats * kInvLn2));
}

double negative_conditional_entropy(const DensityMatrix& sigma, Side side) {
  sigma.require_dims("negative_conditional_entropy");
  return von_neumann_entropy(reduced_state(sigma, side)) - von_neumann_entropy(sigma);
}

Theorem1Gap theorem1_gap(const DensityMatrix& sigma, const DensityMatrix& rho, Side side) {
  const auto ds = sigma.require_dims("theorem1_gap");
  const auto dr = rho.require_dims("theorem1_gap");
  if (!(ds == dr)) throw ShapeError("theorem1_gap: sigma and rho have different dims");

  const auto joint = relative_entropy(sigma, rho);
  const auto reduced = relative_entropy(reduced_state(sigma, side), reduced_state(rho, side));
  if (reduced.is_infinite()) {
    // infinity minus infinity, or an (unphysical) divergence on the marginal only
    return {Theorem1Gap::Kind::Indeterminate, 0.0};
  }
  if (joint.is_infinite()) {
    return {Theorem1Gap::Kind::Infinite, std::numeric_limits<double>::infinity()};
  }
  const double nce = negative_conditional_entropy(sigma, side);
  return {Theorem1Gap::Kind::Finite, joint.bits() - reduced.bits() - nce};
}

LogOrderCheck log_order_check(const DensityMatrix& rho, double tol) {
  const auto d = rho.require_dims("log_order_check");
  const auto log_ab = matrix_log(rho.hermitian(), kZeroEigenvalue);
  const auto log_a = matrix_log(partial_trace_B(rho).hermitian(), kZeroEigenvalue);
  const HermitianMatrix lifted(kron(log_a.matrix(), CMatrix::Identity(d.dB, d.dB)));
  const auto check = is_psd(lifted - log_ab, tol);
  return {check.holds, check.witness};
}

double lemma2_bound(const DensityMatrix& sigma) {
  sigma.require_dims("lemma2_bound");
  const double s_ab = von_neumann_entropy(sigma);
  const double s_a = von_neumann_entropy(partial_trace_B(sigma));
  const double s_b = von_neumann_entropy(partial_trace_A(sigma));
  return std::max(s_a, s_b) - s_ab;
}

Side lemma2_side(const DensityMatrix& sigma) {
  sigma.require_dims("lemma2_side");
  const double s_a = von_neumann_entropy(partial_trace_B(sigma));
  const double s_b = von_neumann_entropy(partial_trace_A(sigma));
  return s_b > s_a ? Side::B : Side::A;
}

}  // namespace ree_lab
