#include "ree_lab/bipartite.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "ree_lab/errors.hpp"

namespace ree_lab {

namespace {

void check_dims(const BipartiteDims& dims, int matrix_dim, const char* op) {
  if (dims.dA < 1 || dims.dB < 1 || dims.total() != matrix_dim) {
    std::ostringstream os;
    os << op << ": dims " << dims.dA << "x" << dims.dB << " do not match matrix dimension "
       << matrix_dim;
    throw ShapeError(os.str());
  }
}

}  // namespace

DensityMatrix::DensityMatrix(HermitianMatrix m, std::optional<BipartiteDims> dims,
                             double trace_tol, double psd_tol)
    : m_(std::move(m)), dims_(dims) {
  if (dims_) check_dims(*dims_, m_.dim(), "DensityMatrix");
  const double tr = m_.trace();
  if (!(std::abs(tr - 1.0) <= trace_tol)) {
    std::ostringstream os;
    os.precision(17);
    os << "DensityMatrix: trace " << tr << " differs from 1 by more than " << trace_tol;
    throw InvalidStateError(os.str());
  }
  const auto psd = is_psd(m_, psd_tol);
  if (!psd.holds) {
    std::ostringstream os;
    os << "DensityMatrix: min eigenvalue " << psd.witness << " below -" << psd_tol;
    throw InvalidStateError(os.str());
  }
}

DensityMatrix make_trusted_density(HermitianMatrix m, std::optional<BipartiteDims> dims) {
  return DensityMatrix(std::move(m), dims, DensityMatrix::Trusted{});
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return make_trusted_density(HermitianMatrix::identity(dim) * (1.0 / dim), std::nullopt);
}

DensityMatrix DensityMatrix::maximally_mixed(BipartiteDims dims) {
  check_dims(dims, dims.total(), "maximally_mixed");
  return maximally_mixed(dims.total()).with_dims(dims);
}

BipartiteDims DensityMatrix::require_dims(const char* op) const {
  if (!dims_) throw ShapeError(std::string(op) + ": state carries no bipartite dims");
  return *dims_;
}

DensityMatrix DensityMatrix::with_dims(BipartiteDims dims) const {
  check_dims(dims, dim(), "with_dims");
  return make_trusted_density(m_, dims);
}

DensityMatrix DensityMatrix::without_dims() const { return make_trusted_density(m_, std::nullopt); }

PureState::PureState(CVector amplitudes, BipartiteDims dims)
    : amps_(std::move(amplitudes)), dims_(dims) {
  check_dims(dims_, static_cast<int>(amps_.size()), "PureState");
  if (!amps_.allFinite()) throw InputError("PureState: non-finite amplitude");
  const double n = amps_.squaredNorm();
  if (!(std::abs(n - 1.0) <= 1e-12)) {
    std::ostringstream os;
    os.precision(17);
    os << "PureState: squared norm " << n << " is not 1";
    throw NormalizationError(os.str());
  }
}

DensityMatrix PureState::density() const {
  return make_trusted_density(HermitianMatrix::projector(amps_), dims_);
}

DensityMatrix partial_trace_B(const DensityMatrix& rho) {
  const auto d = rho.require_dims("partial_trace_B");
  const CMatrix& m = rho.matrix();
  CMatrix out = CMatrix::Zero(d.dA, d.dA);
  for (int i = 0; i < d.dA; ++i)
    for (int ip = 0; ip < d.dA; ++ip)
      for (int j = 0; j < d.dB; ++j) out(i, ip) += m(i * d.dB + j, ip * d.dB + j);
  return make_trusted_density(HermitianMatrix(out), std::nullopt);
}

DensityMatrix partial_trace_A(const DensityMatrix& rho) {
  const auto d = rho.require_dims("partial_trace_A");
  const CMatrix& m = rho.matrix();
  CMatrix out = CMatrix::Zero(d.dB, d.dB);
  for (int j = 0; j < d.dB; ++j)
    for (int jp = 0; jp < d.dB; ++jp)
      for (int i = 0; i < d.dA; ++i) out(j, jp) += m(i * d.dB + j, i * d.dB + jp);
  return make_trusted_density(HermitianMatrix(out), std::nullopt);
}

DensityMatrix reduced_state(const DensityMatrix& rho, Side side) {
  return side == Side::A ? partial_trace_B(rho) : partial_trace_A(rho);
}

CMatrix partial_transpose_B(const CMatrix& m, BipartiteDims dims) {
  check_dims(dims, static_cast<int>(m.rows()), "partial_transpose_B");
  CMatrix out(m.rows(), m.cols());
  const int dB = dims.dB;
  for (int i = 0; i < dims.dA; ++i)
    for (int ip = 0; ip < dims.dA; ++ip)
      for (int j = 0; j < dB; ++j)
        for (int jp = 0; jp < dB; ++jp)
          out(i * dB + j, ip * dB + jp) = m(i * dB + jp, ip * dB + j);
  return out;
}

HermitianMatrix partial_transpose_B(const HermitianMatrix& m, BipartiteDims dims) {
  return HermitianMatrix(partial_transpose_B(m.matrix(), dims));
}

HermitianMatrix partial_transpose_B(const DensityMatrix& rho) {
  return partial_transpose_B(rho.hermitian(), rho.require_dims("partial_transpose_B"));
}

HermitianMatrix reduction_map(const DensityMatrix& rho) {
  return HermitianMatrix::identity(rho.dim()) * rho.hermitian().trace() - rho.hermitian();
}

HermitianMatrix reduction_operator(const DensityMatrix& rho) {
  const auto d = rho.require_dims("reduction_operator");
  const auto rho_a = partial_trace_B(rho);
  const CMatrix lifted = kron(rho_a.matrix(), CMatrix::Identity(d.dB, d.dB));
  return HermitianMatrix(lifted - rho.matrix());
}

PureState pure_from_schmidt(const std::vector<double>& alpha, BipartiteDims dims) {
  check_dims(dims, dims.total(), "pure_from_schmidt");
  if (alpha.empty() || static_cast<int>(alpha.size()) > std::min(dims.dA, dims.dB)) {
    throw ShapeError("pure_from_schmidt: need 1 <= len(alpha) <= min(dA, dB)");
  }
  double norm = 0.0;
  for (double a : alpha) {
    if (!std::isfinite(a) || a < 0.0) {
      throw InputError("pure_from_schmidt: coefficients must be finite and >= 0");
    }
    norm += a * a;
  }
  if (!(std::abs(norm - 1.0) <= 1e-12)) {
    std::ostringstream os;
    os.precision(17);
    os << "pure_from_schmidt: sum of squared coefficients is " << norm;
    throw NormalizationError(os.str());
  }
  CVector amps = CVector::Zero(dims.total());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const int k = static_cast<int>(i);
    amps(k * dims.dB + k) = alpha[i];
  }
  // renormalize away the residual so the PureState invariant is exact
  amps /= amps.norm();
  return PureState(std::move(amps), dims);
}

std::array<CVector, 4> bell_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  std::array<CVector, 4> b;
  for (auto& v : b) v = CVector::Zero(4);
  // |00>=0, |01>=1, |10>=2, |11>=3
  b[0](1) = s;  // Psi-
  b[0](2) = -s;
  b[1](1) = s;  // Psi+
  b[1](2) = s;
  b[2](0) = s;  // Phi-
  b[2](3) = -s;
  b[3](0) = s;  // Phi+
  b[3](3) = s;
  return b;
}

DensityMatrix bell_diagonal(const std::array<double, 4>& p) {
  double sum = 0.0;
  for (double x : p) {
    if (!std::isfinite(x) || x < -1e-12) throw InputError("bell_diagonal: negative weight");
    sum += x;
  }
  if (!(std::abs(sum - 1.0) <= 1e-10)) throw InputError("bell_diagonal: weights must sum to 1");
  const auto basis = bell_basis();
  CMatrix m = CMatrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) m += std::max(p[k], 0.0) * basis[k] * basis[k].adjoint();
  return DensityMatrix(HermitianMatrix(m), BipartiteDims{2, 2});
}

DensityMatrix werner(double fidelity) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw InputError("werner: F must lie in [0, 1]");
  const double rest = (1.0 - fidelity) / 3.0;
  return bell_diagonal({fidelity, rest, rest, rest});
}

DensityMatrix singlet() { return bell_diagonal({1.0, 0.0, 0.0, 0.0}); }

DensityMatrix random_density(int dim, int rank, Rng& rng) {
  if (dim < 1 || rank < 1 || rank > dim) {
    throw InputError("random_density: need 1 <= rank <= dim");
  }
  const CMatrix g = ginibre(dim, rank, rng);
  CMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return make_trusted_density(HermitianMatrix(m), std::nullopt);
}

DensityMatrix random_density(int dim, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dim, rank, rng);
}

DensityMatrix random_density(BipartiteDims dims, int rank, std::uint64_t seed) {
  return random_density(dims.total(), rank, seed).with_dims(dims);
}

PureState random_pure(BipartiteDims dims, Rng& rng) {
  check_dims(dims, dims.total(), "random_pure");
  CVector v(dims.total());
  for (int i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
  v /= v.norm();
  return PureState(std::move(v), dims);
}

PureState random_pure(BipartiteDims dims, std::uint64_t seed) {
  Rng rng(seed);
  return random_pure(dims, rng);
}

DensityMatrix random_separable(BipartiteDims dims, Rng& rng, int terms) {
  check_dims(dims, dims.total(), "random_separable");
  if (terms <= 0) terms = 2 * dims.total() * dims.total();
  CMatrix m = CMatrix::Zero(dims.total(), dims.total());
  double total_weight = 0.0;
  for (int k = 0; k < terms; ++k) {
    CVector a(dims.dA), b(dims.dB);
    for (int i = 0; i < dims.dA; ++i) a(i) = rng.complex_normal();
    for (int j = 0; j < dims.dB; ++j) b(j) = rng.complex_normal();
    a.normalize();
    b.normalize();
    const double w = rng.uniform() + 1e-3;
    const CVector ab = kron(a, b);
    m += w * ab * ab.adjoint();
    total_weight += w;
  }
  m /= total_weight;
  return make_trusted_density(HermitianMatrix(m), dims);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DensityMatrix product_state(const DensityMatrix& rho_a, const DensityMatrix& rho_b) {
  return make_trusted_density(HermitianMatrix(kron(rho_a.matrix(), rho_b.matrix())),
                              BipartiteDims{rho_a.dim(), rho_b.dim()});
}

CMatrix permute_systems(const CMatrix& m, const std::vector<int>& perm,
                        const std::vector<int>& subsystem_dims) {
  const std::size_t n = subsystem_dims.size();
  if (perm.size() != n) throw ShapeError("permute_systems: perm and dims lengths differ");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= n || seen[p]) {
      throw ShapeError("permute_systems: perm is not a permutation");
    }
    seen[p] = true;
  }
  long long total = 1;
  for (int d : subsystem_dims) {
    if (d < 1) throw ShapeError("permute_systems: subsystem dims must be >= 1");
    total *= d;
  }
  if (total != m.rows() || m.rows() != m.cols()) {
    throw ShapeError("permute_systems: product of subsystem dims does not match matrix");
  }
  // input strides, row-major over factors
  std::vector<long long> in_stride(n, 1);
  for (std::size_t k = n; k-- > 1;) in_stride[k - 1] = in_stride[k] * subsystem_dims[k];

  std::vector<int> out_dims(n);
  for (std::size_t k = 0; k < n; ++k) out_dims[k] = subsystem_dims[perm[k]];

  // map[out_flat] = in_flat
  std::vector<Eigen::Index> map(static_cast<std::size_t>(total));
  std::vector<int> digits(n, 0);
  for (long long flat = 0; flat < total; ++flat) {
    long long in = 0;
    for (std::size_t k = 0; k < n; ++k) in += digits[k] * in_stride[perm[k]];
    map[static_cast<std::size_t>(flat)] = static_cast<Eigen::Index>(in);
    for (std::size_t k = n; k-- > 0;) {
      if (++digits[k] < out_dims[k]) break;
      digits[k] = 0;
    }
  }
  CMatrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < total; ++r)
    for (Eigen::Index c = 0; c < total; ++c) out(r, c) = m(map[r], map[c]);
  return out;
}

DensityMatrix permute_systems(const DensityMatrix& rho, const std::vector<int>& perm,
                              const std::vector<int>& subsystem_dims) {
  return make_trusted_density(HermitianMatrix(permute_systems(rho.matrix(), perm, subsystem_dims)),
                              std::nullopt);
}

DensityMatrix tensor_bipartite(const DensityMatrix& r1, const DensityMatrix& r2) {
  const auto d1 = r1.require_dims("tensor_bipartite");
  const auto d2 = r2.require_dims("tensor_bipartite");
  const CMatrix joint = kron(r1.matrix(), r2.matrix());
  const CMatrix regrouped = permute_systems(joint, {0, 2, 1, 3}, {d1.dA, d1.dB, d2.dA, d2.dB});
  return make_trusted_density(HermitianMatrix(regrouped),
                              BipartiteDims{d1.dA * d2.dA, d1.dB * d2.dB});
}

DensityMatrix regularize(const DensityMatrix& rho, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw InputError("regularize: eps must lie in [0, 1]");
  const int d = rho.dim();
  HermitianMatrix m = rho.hermitian() * (1.0 - eps) + HermitianMatrix::identity(d) * (eps / d);
  return make_trusted_density(std::move(m), rho.dims());
}

double trace_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw ShapeError("trace_distance: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver((a - b).matrix(), Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace ree_lab
