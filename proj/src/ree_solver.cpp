#include "ree_lab/ree_solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "ree_lab/entropy.hpp"
#include "ree_lab/errors.hpp"

namespace ree_lab {

namespace {

constexpr double kInvLn2 = 1.0 / std::numbers::ln2;
constexpr int kMaxBacktracks = 60;
constexpr double kContinuationStart = 1e-4;

CMatrix project_density_raw(const CMatrix& h) {
  const auto spec = detail::eig_hermitian(h);
  return detail::from_spectrum(spec.eigenvectors, project_simplex(spec.eigenvalues));
}

CMatrix project_ppt_raw(const CMatrix& h, BipartiteDims dims) {
  return partial_transpose_B(project_density_raw(partial_transpose_B(h, dims)), dims);
}

double min_eigenvalue(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> s(m, Eigen::EigenvaluesOnly);
  if (s.info() != Eigen::Success) throw ConvergenceError("min_eigenvalue: no convergence");
  return s.eigenvalues()(0);
}

// Mix toward 1/d just enough to lift a slightly negative partial transpose.
CMatrix restore_ppt(const CMatrix& rho, BipartiteDims dims, double* residual) {
  const int d = static_cast<int>(rho.rows());
  const double lam = min_eigenvalue(partial_transpose_B(rho, dims));
  if (residual) *residual = lam;
  if (lam >= 0.0) return rho;
  const double s = -lam / (1.0 / d - lam);
  return (1.0 - s) * rho + (s / d) * CMatrix::Identity(d, d);
}

CMatrix floor_mix(const CMatrix& rho, double eps) {
  const int d = static_cast<int>(rho.rows());
  return (1.0 - eps) * rho + (eps / d) * CMatrix::Identity(d, d);
}

double hs(const CMatrix& a, const CMatrix& b) {
  return a.cwiseProduct(b.conjugate()).sum().real();
}

// S(sigma || rho) in nats from the spectral form of rho; +inf if rho is not
// positive definite.
struct Objective {
  const CMatrix& sigma;
  double sigma_neg_entropy;  // tr sigma ln sigma

  double operator()(const SpectralDecomposition& rho) const {
    if (rho.min_eigenvalue() <= 0.0) return std::numeric_limits<double>::infinity();
    const CMatrix& u = rho.eigenvectors;
    const CMatrix s = u.adjoint() * sigma * u;
    double cross = 0.0;
    for (int i = 0; i < rho.dim(); ++i) cross += s(i, i).real() * std::log(rho.eigenvalues(i));
    return sigma_neg_entropy - cross;
  }
};

}  // namespace

void ReeOptions::validate() const {
  if (max_iters <= 0 || !(grad_tol > 0) || !(eps > 0) || dykstra_max <= 0 ||
      !(dykstra_tol > 0) || !(armijo.shrink > 0) || !(armijo.slope > 0) ||
      !(armijo.initial_step > 0)) {
    throw InputError("ReeOptions: every option must be positive");
  }
  if (!(eps < 1e-3)) throw InputError("ReeOptions: eps must be below 1e-3");
  if (!(armijo.shrink < 1)) throw InputError("ReeOptions: armijo shrink must be below 1");
}

RVector project_simplex(const RVector& v) {
  const Eigen::Index n = v.size();
  if (n == 0) throw ShapeError("project_simplex: empty vector");
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    cumsum += u[j];
    const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0) theta = t;
  }
  return (v.array() - theta).max(0.0).matrix();
}

DensityMatrix project_density(const HermitianMatrix& h) {
  return make_trusted_density(HermitianMatrix(project_density_raw(h.matrix())), std::nullopt);
}

HermitianMatrix project_ppt(const HermitianMatrix& h, BipartiteDims dims) {
  if (dims.total() != h.dim()) throw ShapeError("project_ppt: dims do not match matrix");
  return HermitianMatrix(project_ppt_raw(h.matrix(), dims));
}

namespace {

// Correction terms carried between Dykstra runs on nearby inputs.
struct DykstraWarmStart {
  CMatrix p;
  CMatrix q;
};

// Dykstra keeps x + p + q equal to the input, so any correction pair is a
// valid starting point.
DykstraResult dykstra_core(const CMatrix& z, BipartiteDims dims, const ReeOptions& opts,
                           DykstraWarmStart* warm) {
  const int d = static_cast<int>(z.rows());
  CMatrix p = CMatrix::Zero(d, d);
  CMatrix q = CMatrix::Zero(d, d);
  if (warm && warm->p.rows() == d) {
    p = warm->p;
    q = warm->q;
  }
  CMatrix x = z - p - q;
  CMatrix y = x;
  bool converged = false;
  int it = 0;
  while (it < opts.dykstra_max) {
    ++it;
    y = project_density_raw(x + p);
    p = x + p - y;
    CMatrix xn = project_ppt_raw(y + q, dims);
    q = y + q - xn;
    const double change = (xn - x).norm();
    x = std::move(xn);
    if (change < opts.dykstra_tol) {
      converged = true;
      break;
    }
  }
  if (warm) {
    if (converged) {
      warm->p = std::move(p);
      warm->q = std::move(q);
    } else {
      warm->p.resize(0, 0);
      warm->q.resize(0, 0);
    }
  }
  double residual = 0.0;
  CMatrix out = restore_ppt(y, dims, &residual);
  return {make_trusted_density(HermitianMatrix(out), dims), it, converged, residual};
}

}  // namespace

DykstraResult dykstra_ppt_density(const HermitianMatrix& h, BipartiteDims dims,
                                  const ReeOptions& opts) {
  if (dims.total() != h.dim()) throw ShapeError("dykstra_ppt_density: dims do not match matrix");
  return dykstra_core(h.matrix(), dims, opts, nullptr);
}

namespace {

// Projected gradient with Armijo backtracking over the floored PPT set
// (1 - eps) PPT + eps 1/d, for one value of eps.
class FlooredPgStage {
 public:
  FlooredPgStage(const CMatrix& sigma, double sigma_neg_entropy, BipartiteDims dims,
                 const ReeOptions& opts, double eps)
      : sigma_(sigma),
        objective_{sigma, sigma_neg_entropy},
        dims_(dims),
        opts_(opts),
        eps_(eps),
        d_(dims.total()) {}

  // Exact projection onto the floored set: undo the affine floor, project
  // onto PPT, reapply the floor.
  CMatrix project(const CMatrix& m) const {
    const CMatrix shift = (eps_ / d_) * CMatrix::Identity(d_, d_);
    const auto r = dykstra_core((m - shift) / (1.0 - eps_), dims_, opts_, &warm_);
    return floor_mix(r.state.matrix(), eps_);
  }

  struct Outcome {
    CMatrix x;
    double f;
    int iterations;
    bool converged;
    double grad_norm;
  };

  // grad_norm starts at `prior_grad_norm` and is updated on every accepted step.
  Outcome run(CMatrix x, int max_iters, double prior_grad_norm,
              std::vector<double>* history) const {
    auto ex = detail::eig_hermitian(x);
    double fx = objective_(ex);
    CMatrix g = -detail::frechet_log_adjoint(ex, sigma_);
    double step_hint = opts_.armijo.initial_step;
    Outcome out{x, fx, 0, false, prior_grad_norm};

    while (out.iterations < max_iters) {
      bool accepted = false;
      double step = step_hint;
      CMatrix y;
      SpectralDecomposition ey;
      double fy = fx;
      for (int bt = 0; bt < kMaxBacktracks; ++bt, step *= opts_.armijo.shrink) {
        y = project(x - step * g);
        ey = detail::eig_hermitian(y);
        fy = objective_(ey);
        if (!std::isfinite(fy)) continue;
        if (fy <= fx + opts_.armijo.slope * hs(g, y - x)) {
          accepted = true;
          break;
        }
      }
      if (!accepted || fy > fx) break;
      ++out.iterations;
      out.grad_norm = (y - x).norm() / step;
      CMatrix gy = -detail::frechet_log_adjoint(ey, sigma_);
      // Barzilai-Borwein length as the next trial step
      const CMatrix ds = y - x;
      const double curvature = hs(ds, gy - g);
      step_hint = curvature > 0 ? std::clamp(ds.squaredNorm() / curvature, 1e-16, 1e16)
                                : opts_.armijo.initial_step;
      x = std::move(y);
      ex = std::move(ey);
      g = std::move(gy);
      fx = fy;
      if (history) history->push_back(fx * kInvLn2);
      if (out.grad_norm < opts_.grad_tol) {
        out.converged = true;
        break;
      }
    }
    out.x = std::move(x);
    out.f = fx;
    return out;
  }

  // Re-express a point of the floored set for eps_from in this stage's set.
  CMatrix refloor(const CMatrix& x, double eps_from) const {
    const CMatrix eye = CMatrix::Identity(d_, d_);
    const CMatrix rho = (x - (eps_from / d_) * eye) / (1.0 - eps_from);
    return floor_mix(rho, eps_);
  }

 private:
  const CMatrix& sigma_;
  Objective objective_;
  BipartiteDims dims_;
  const ReeOptions& opts_;
  double eps_;
  int d_;
  mutable DykstraWarmStart warm_;
};

}  // namespace

ReeResult ree_ppt(const DensityMatrix& sigma, const ReeOptions& opts) {
  opts.validate();
  const auto dims = sigma.require_dims("ree_ppt");
  const int d = sigma.dim();
  if (d > 64) throw ShapeError("ree_ppt: dA*dB above 64 is not supported");

  const CMatrix& sig = sigma.matrix();
  double sig_neg_entropy = 0.0;
  {
    Eigen::SelfAdjointEigenSolver<CMatrix> s(sig, Eigen::EigenvaluesOnly);
    for (double x : s.eigenvalues())
      if (x >= kZeroEigenvalue) sig_neg_entropy += x * std::log(x);
  }

  // The objective's curvature grows like 1/eps near the boundary, so the
  // floor is lowered in decades from kContinuationStart down to opts.eps,
  // each stage warm-started from the previous one.
  std::vector<double> schedule;
  for (double e = kContinuationStart; e > opts.eps * 1.5; e *= 0.1) schedule.push_back(e);
  schedule.push_back(opts.eps);
  const int per_stage = std::max(1, opts.max_iters / static_cast<int>(schedule.size()));

  std::vector<double> history;
  int iterations = 0;
  CMatrix x;
  double prev_eps = 0.0;
  FlooredPgStage::Outcome last{};
  last.grad_norm = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const FlooredPgStage stage(sig, sig_neg_entropy, dims, opts, schedule[k]);
    x = k == 0 ? stage.project(sig) : stage.refloor(x, prev_eps);
    const bool final_stage = k + 1 == schedule.size();
    const int budget = final_stage ? opts.max_iters - iterations
                                   : std::min(per_stage, opts.max_iters - iterations);
    last = stage.run(std::move(x), std::max(0, budget), last.grad_norm, &history);
    iterations += last.iterations;
    x = last.x;
    prev_eps = schedule[k];
  }

  auto closest = make_trusted_density(HermitianMatrix(x), dims);
  const auto value = relative_entropy(sigma, closest);
  ReeResult out{value.is_finite() ? value.bits() : last.f * kInvLn2, std::move(closest),
                iterations, last.converged, last.grad_norm, {}};
  out.objective_history = std::move(history);
  return out;
}

SchmidtDecomposition schmidt_decompose(const PureState& psi) {
  const auto dims = psi.dims();
  CMatrix m(dims.dA, dims.dB);
  for (int i = 0; i < dims.dA; ++i)
    for (int j = 0; j < dims.dB; ++j) m(i, j) = psi.amplitudes()(i * dims.dB + j);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Index r = svd.singularValues().size();
  // m = U S V^dagger  =>  psi = sum_k s_k |u_k> (x) conj(|v_k>)
  return {svd.singularValues(), svd.matrixU().leftCols(r), svd.matrixV().leftCols(r).conjugate()};
}

DensityMatrix closest_state_for_pure(const PureState& psi) {
  const auto dims = psi.dims();
  const auto sd = schmidt_decompose(psi);
  CMatrix rho = CMatrix::Zero(dims.total(), dims.total());
  double total = 0.0;
  for (Eigen::Index k = 0; k < sd.coefficients.size(); ++k) {
    const double w = sd.coefficients(k) * sd.coefficients(k);
    const CVector ab = kron(sd.basis_a.col(k), sd.basis_b.col(k));
    rho += w * ab * ab.adjoint();
    total += w;
  }
  rho /= total;
  return make_trusted_density(HermitianMatrix(rho), dims);
}

double concurrence(const DensityMatrix& sigma) {
  if (sigma.dim() != 4 || (sigma.dims() && !(*sigma.dims() == BipartiteDims{2, 2}))) {
    throw ShapeError("concurrence: two-qubit (2x2) state required");
  }
  CMatrix yy = CMatrix::Zero(4, 4);
  // sigma_y (x) sigma_y
  yy(0, 3) = -1;
  yy(1, 2) = 1;
  yy(2, 1) = 1;
  yy(3, 0) = -1;
  const CMatrix tilde = yy * sigma.matrix().conjugate() * yy;
  const auto es = eig_hermitian(sigma.hermitian());
  RVector roots = es.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  const CMatrix sq = detail::from_spectrum(es.eigenvectors, roots);
  CMatrix r = sq * tilde * sq;
  r = (r + r.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<CMatrix> s(r, Eigen::EigenvaluesOnly);
  RVector mu = s.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(mu.data(), mu.data() + mu.size(), std::greater<>());
  return std::max(0.0, mu(0) - mu(1) - mu(2) - mu(3));
}

double eof_two_qubit(const DensityMatrix& sigma) {
  const double c = std::min(1.0, concurrence(sigma));
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

BellOracleResult bell_diagonal_ree_oracle(const std::array<double, 4>& p, int grid_steps) {
  if (grid_steps < 100) throw InputError("bell_diagonal_ree_oracle: grid_steps must be >= 100");
  double sum = 0.0;
  for (double x : p) {
    if (!std::isfinite(x) || x < -1e-12) throw InputError("bell_diagonal_ree_oracle: negative weight");
    sum += x;
  }
  if (!(std::abs(sum - 1.0) <= 1e-10)) {
    throw InputError("bell_diagonal_ree_oracle: weights must sum to 1");
  }
  const int n = grid_steps;
  const int half = n / 2;
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();

  // table[k][i] = p_k log2(i / n), with 0 log 0 = 0
  std::array<std::vector<double>, 4> table;
  double p_log_p = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double pk = std::max(p[k], 0.0);
    if (pk > 0) p_log_p += pk * std::log2(pk);
    table[k].assign(half + 1, 0.0);
    for (int i = 0; i <= half; ++i) {
      if (pk == 0.0) continue;
      table[k][i] = i == 0 ? kNegInf : pk * std::log2(static_cast<double>(i) / n);
    }
  }

  double best = kNegInf;
  std::array<int, 4> arg{half, half, 0, 0};
  for (int i = 0; i <= half; ++i) {
    for (int j = std::max(0, n - i - 2 * half); j <= std::min(half, n - i); ++j) {
      const double base = table[0][i] + table[1][j];
      if (base == kNegInf) continue;
      const int rest = n - i - j;
      const int k_lo = std::max(0, rest - half);
      const int k_hi = std::min(half, rest);
      for (int k = k_lo; k <= k_hi; ++k) {
        const double v = base + table[2][k] + table[3][rest - k];
        if (v > best) {
          best = v;
          arg = {i, j, k, rest - k};
        }
      }
    }
  }

  BellOracleResult out{};
  for (int k = 0; k < 4; ++k) out.minimizer[k] = static_cast<double>(arg[k]) / n;
  if (best == kNegInf) {
    out.value_bits = std::numeric_limits<double>::infinity();
    out.resolution_bits = std::numeric_limits<double>::infinity();
    return out;
  }
  out.value_bits = std::max(0.0, p_log_p - best);
  // Moving the minimizer by up to three grid steps per weight.
  double res = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (p[k] <= 0.0) continue;
    const double q = out.minimizer[k];
    const double dq = 3.0 / n;
    if (q <= dq) {
      res = std::numeric_limits<double>::infinity();
      break;
    }
    res += p[k] * (std::log2(q) - std::log2(q - dq));
  }
  out.resolution_bits = res;
  return out;
}

}  // namespace ree_lab
