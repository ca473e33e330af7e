#include "ree_lab/criteria.hpp"

#include <cmath>
#include <sstream>

#include "ree_lab/errors.hpp"

namespace ree_lab {

namespace {

CriterionVerdict verdict_from(const CMatrix& op, double tol) {
  if (!(tol >= 0.0)) throw InputError("criterion: tol must be >= 0");
  const auto spec = detail::eig_hermitian(op);
  const double w = spec.min_eigenvalue();
  return {w >= -tol, w, spec.eigenvectors.col(0)};
}

// Ginibre PSD matrix with its spectrum rescaled so the largest eigenvalue is `top`.
CMatrix scaled_ginibre_psd(int dim, int rank, double top, Rng& rng) {
  const CMatrix g = ginibre(dim, rank, rng);
  CMatrix m = g * g.adjoint();
  m = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<CMatrix> s(m, Eigen::EigenvaluesOnly);
  return m * (top / s.eigenvalues().maxCoeff());
}

constexpr int kDomainRetries = 16;

}  // namespace

CriterionVerdict reduction_criterion(const DensityMatrix& rho, double tol) {
  return verdict_from(reduction_operator(rho).matrix(), tol);
}

CriterionVerdict ppt_criterion(const HermitianMatrix& m, BipartiteDims dims, double tol) {
  return verdict_from(partial_transpose_B(m.matrix(), dims), tol);
}

CriterionVerdict ppt_criterion(const DensityMatrix& rho, double tol) {
  return ppt_criterion(rho.hermitian(), rho.require_dims("ppt_criterion"), tol);
}

MonotoneTrial evaluate_monotone_pair(const ScalarFunction& f, const HermitianMatrix& a,
                                     const HermitianMatrix& b) {
  const auto fa = matrix_function(a, f);
  const auto fb = matrix_function(b, f);
  return {a, b, is_psd(fa - fb, 0.0).witness};
}

MonotoneTrial sample_monotone_trial(const ScalarFunction& f, int dim, Rng& rng) {
  if (dim < 2) throw InputError("operator monotone trials need dim >= 2");
  const double lo = std::isfinite(f.domain_lower) ? f.domain_lower : 0.0;
  for (int attempt = 0; attempt < kDomainRetries; ++attempt) {
    // B: Ginibre spectrum mapped into [lo + 0.1, lo + 10]
    const CMatrix g = scaled_ginibre_psd(dim, dim, 9.9, rng);
    const HermitianMatrix b(g + (lo + 0.1) * CMatrix::Identity(dim, dim));
    // Delta: PSD of random rank with largest eigenvalue in [0.1, 10]
    const int rank = rng.uniform_int(1, dim);
    const double top = rng.uniform(0.1, 10.0);
    const HermitianMatrix delta(scaled_ginibre_psd(dim, rank, top, rng));
    const HermitianMatrix a = b + delta;
    try {
      return evaluate_monotone_pair(f, a, b);
    } catch (const DomainError&) {
      continue;
    }
  }
  throw DomainError("operator monotone trial: f undefined on " +
                        std::to_string(kDomainRetries) + " consecutive samples",
                    lo);
}

std::pair<HermitianMatrix, HermitianMatrix> known_square_counterexample() {
  CMatrix a(2, 2);
  a << 2, 1, 1, 1;
  RVector b(2);
  b << 1, 0;
  return {HermitianMatrix(a), HermitianMatrix::diagonal(b)};
}

std::optional<MonotoneCounterexample> operator_monotone_search(
    const ScalarFunction& f, int dim, int trials, std::uint64_t seed,
    const MonotoneSearchOptions& opts) {
  if (dim < 2) throw InputError("operator_monotone_search: dim must be >= 2");
  if (trials < 1) throw InputError("operator_monotone_search: trials must be >= 1");

  int used = 0;
  for (const auto& [a, b] : opts.injected_pairs) {
    if (used >= trials) return std::nullopt;
    ++used;
    if (!loewner_geq(a, b, 1e-10)) {
      throw InputError("operator_monotone_search: injected pair does not satisfy A >= B");
    }
    const auto t = evaluate_monotone_pair(f, a, b);
    if (t.min_eigenvalue < -opts.tol) {
      return MonotoneCounterexample{t.a, t.b, t.min_eigenvalue, used};
    }
  }
  Rng rng(seed);
  while (used < trials) {
    ++used;
    auto t = sample_monotone_trial(f, dim, rng);
    if (t.min_eigenvalue < -opts.tol) {
      return MonotoneCounterexample{std::move(t.a), std::move(t.b), t.min_eigenvalue, used};
    }
  }
  return std::nullopt;
}

LoewnerMatrixCheck loewner_matrix_psd_check(const ScalarFunction& f,
                                            const std::vector<double>& points, double tol) {
  const int n = static_cast<int>(points.size());
  if (n < 1) throw InputError("loewner_matrix_psd_check: no sample points");
  for (int i = 0; i < n; ++i) {
    if (!(points[i] > f.domain_lower) || !std::isfinite(points[i])) {
      std::ostringstream os;
      os << "loewner_matrix_psd_check: point " << points[i] << " outside domain of " << f.name;
      throw InputError(os.str());
    }
    for (int j = 0; j < i; ++j) {
      if (points[i] == points[j]) throw InputError("loewner_matrix_psd_check: duplicate points");
    }
  }
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    const double x = points[i];
    const double h = 1e-6 * std::max(std::abs(x), 1e-3);
    m(i, i) = (f.evaluate(x + h) - f.evaluate(x - h)) / (2.0 * h);
    for (int j = 0; j < i; ++j) {
      const double v = (f.evaluate(x) - f.evaluate(points[j])) / (x - points[j]);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s(m, Eigen::EigenvaluesOnly);
  const double w = s.eigenvalues()(0);
  return {w >= -tol, w, m};
}

}  // namespace ree_lab
