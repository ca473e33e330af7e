// Acceptance battery: one PASS/FAIL line per criterion, exit 0 iff all pass.
// Optional arguments select criterion ids.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "ree_lab/criteria.hpp"
#include "ree_lab/entropy.hpp"
#include "ree_lab/harness.hpp"
#include "ree_lab/ree_solver.hpp"

using namespace ree_lab;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr double kBatterySeconds = 600.0;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

SuiteReport suite(const std::string& name, int trials, BipartiteDims dims) {
  SuiteConfig c;
  c.suite = name;
  c.trials = trials;
  c.seed = kSeed;
  c.dims = dims;
  return run_suite(c);
}

Outcome gap_ensemble() {
  const auto a = suite("theorem1", 10000, {2, 2});
  const auto b = suite("theorem1", 1000, {2, 3});
  const double worst = std::min(a.summary.worst_margin, b.summary.worst_margin);
  return {a.summary.pass && b.summary.pass && worst >= -1e-8,
          "worst gap " + fmt("%.3g", worst) + ", discarded " +
              std::to_string(a.summary.discarded + b.summary.discarded)};
}

Outcome log_order_step() {
  Rng rng(derive_seed(kSeed, "log_order", 0));
  int held = 0, checked = 0;
  while (checked < 1000) {
    const auto rho = random_density(4, 4, rng).with_dims({2, 2});
    if (!ppt_criterion(rho, 0.0).holds) continue;
    ++checked;
    held += log_order_check(rho).holds ? 1 : 0;
  }
  bool werner_ok = true;
  for (double f : {0.6, 0.8, 1.0 - 1e-3}) {
    const auto rho = regularize(werner(f), 1e-6);
    const bool log_holds = log_order_check(rho).holds;
    const bool red_holds = reduction_criterion(rho).holds;
    werner_ok = werner_ok && !log_holds && log_holds == red_holds;
  }
  return {held == checked && werner_ok,
          std::to_string(held) + "/" + std::to_string(checked) +
              " PPT states hold; werner verdicts " + (werner_ok ? "match" : "mismatch")};
}

struct PureRun {
  double dev_ree = 0.0;
  double dev_closest = 0.0;
  double lemma4_td = 0.0;
};

// Criteria 3 and 7 share their trials and solves.
PureRun pure_states(BipartiteDims dims, int trials) {
  PureRun out;
  for (int i = 0; i < trials; ++i) {
    Rng rng(derive_seed(kSeed, "corollary1", static_cast<std::uint64_t>(i)));
    const auto psi = random_pure(dims, rng);
    const auto sigma = psi.density();
    const double s_a = von_neumann_entropy(partial_trace_B(sigma));
    const auto res = ree_ppt(sigma);
    out.dev_ree = std::max(out.dev_ree, std::abs(res.value_bits - s_a));
    out.dev_closest = std::max(
        out.dev_closest, std::abs(relative_entropy(sigma, closest_state_for_pure(psi)).bits() - s_a));
    const Side side = lemma2_side(sigma);
    out.lemma4_td = std::max(out.lemma4_td,
                             trace_distance(reduced_state(res.closest_state, side).hermitian(),
                                            reduced_state(sigma, side).hermitian()));
  }
  return out;
}

PureRun g_pure_2x2, g_pure_3x3;
bool g_pure_done = false;

void ensure_pure_runs() {
  if (g_pure_done) return;
  g_pure_2x2 = pure_states({2, 2}, 50);
  g_pure_3x3 = pure_states({3, 3}, 20);
  g_pure_done = true;
}

Outcome pure_state_ree() {
  ensure_pure_runs();
  const double dev = std::max(g_pure_2x2.dev_ree, g_pure_3x3.dev_ree);
  const double closest = std::max(g_pure_2x2.dev_closest, g_pure_3x3.dev_closest);
  return {dev <= 1e-3 && closest <= 1e-9,
          "max |ree - S_A| " + fmt("%.3g", dev) + ", closest-state deviation " + fmt("%.3g", closest)};
}

Outcome summary_outcome(const SuiteReport& r, double tol) {
  return {r.summary.pass && r.summary.worst_margin >= -tol,
          std::to_string(r.summary.passed) + "/" + std::to_string(r.summary.trials) +
              " pass, worst margin " + fmt("%.3g", r.summary.worst_margin)};
}

Outcome lower_bound() { return summary_outcome(suite("lemma2", 1000, {2, 2}), 1e-6); }
Outcome formation_bound() { return summary_outcome(suite("corollary2", 200, {2, 2}), 1e-4); }
Outcome pure_pair_additivity() { return summary_outcome(suite("lemma3", 10, {2, 2}), 5e-3); }

Outcome reduced_state_kept() {
  ensure_pure_runs();
  const double td = std::max(g_pure_2x2.lemma4_td, g_pure_3x3.lemma4_td);
  return {td <= 1e-3, "max reduced-state trace distance " + fmt("%.3g", td)};
}

Outcome monotonicity() {
  bool square_found = true;
  for (int dim = 2; dim <= 4; ++dim) {
    square_found = square_found &&
                   operator_monotone_search(functions::square(), dim, 1000,
                                            derive_seed(kSeed, "square", dim))
                       .has_value();
  }
  MonotoneSearchOptions inject;
  inject.injected_pairs.push_back(known_square_counterexample());
  const auto injected = operator_monotone_search(functions::square(), 2, 1, kSeed, inject);
  const bool injected_ok = injected.has_value() && injected->trials_used == 1;

  bool log_survives = true;
  for (int dim = 2; dim <= 8; ++dim) {
    log_survives = log_survives && !operator_monotone_search(functions::log(), dim, 100000,
                                                              derive_seed(kSeed, "log", dim))
                                        .has_value();
  }
  Rng rng(derive_seed(kSeed, "loewner", 0));
  bool loewner_ok = true;
  for (int i = 0; i < 100; ++i) {
    std::vector<double> pts;
    for (int k = 0; k < 2 + i % 7; ++k) pts.push_back(rng.uniform(0.01, 20.0));
    loewner_ok = loewner_ok && loewner_matrix_psd_check(functions::log(), pts).psd;
  }
  const bool square_loewner = !loewner_matrix_psd_check(functions::square(), {1, 2}).psd;
  std::string detail = std::string("x^2 counterexample ") + (square_found ? "found" : "missing") +
                       ", injected pair " + (injected_ok ? "caught" : "missed") + ", log " +
                       (log_survives ? "survives" : "falsified") + ", loewner " +
                       (loewner_ok && square_loewner ? "as expected" : "unexpected");
  return {square_found && injected_ok && log_survives && loewner_ok && square_loewner, detail};
}

Outcome solver_vs_oracle() {
  Rng rng(derive_seed(kSeed, "bell_oracle", 0));
  double worst_excess = -1.0, worst_diff = 0.0;
  int ppt = 0;
  for (int k = 0; k < 20; ++k) {
    // dominant weight sweeps both sides of the PPT threshold 1/2
    const double top = 0.28 + 0.7 * k / 19.0;
    std::array<double, 3> rest{rng.uniform(), rng.uniform(), rng.uniform()};
    const double s = rest[0] + rest[1] + rest[2];
    std::array<double, 4> p{top, 0, 0, 0};
    for (int i = 0; i < 3; ++i) p[i + 1] = (1 - top) * rest[i] / s;
    std::rotate(p.begin(), p.begin() + k % 4, p.end());
    const auto sigma = bell_diagonal(p);
    if (ppt_criterion(sigma).holds) ++ppt;
    const auto oracle = bell_diagonal_ree_oracle(p, 2000);
    const double diff = std::abs(ree_ppt(sigma).value_bits - oracle.value_bits);
    worst_diff = std::max(worst_diff, diff);
    worst_excess = std::max(worst_excess, diff - std::max(1e-3, oracle.resolution_bits));
  }
  return {worst_excess <= 0.0 && ppt > 0 && ppt < 20,
          std::to_string(ppt) + " PPT / " + std::to_string(20 - ppt) +
              " NPT, max |ree - oracle| " + fmt("%.3g", worst_diff) + ", worst excess over allowance " +
              fmt("%.3g", worst_excess)};
}

Outcome numerics() {
  Rng rng(derive_seed(kSeed, "numerics", 0));
  double klein = std::numeric_limits<double>::infinity(), unitary = 0.0, additivity = 0.0, frechet = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int d = 2 + t % 5;
    const auto s = random_density(d, 1 + t % d, rng);
    const auto r = random_density(d, d, rng);
    const double rel = relative_entropy(s, r).bits();
    // unclamped trace formula on a full-rank sigma
    const auto sf = regularize(s, 1e-3).hermitian();
    klein = std::min(klein, hs_inner(sf, matrix_log(sf) - matrix_log(r.hermitian())));

    const CMatrix u = haar_unitary(d, rng);
    const DensityMatrix su(HermitianMatrix(u * s.matrix() * u.adjoint()));
    const DensityMatrix ru(HermitianMatrix(u * r.matrix() * u.adjoint()));
    unitary = std::max(unitary, std::abs(relative_entropy(su, ru).bits() - rel));

    const auto s2 = random_density(2, 2, rng);
    const auto r2 = random_density(2, 2, rng);
    const double joint = relative_entropy(product_state(s, s2), product_state(r, r2)).bits();
    additivity = std::max(additivity, std::abs(joint - rel - relative_entropy(s2, r2).bits()));

    // unit direction, step 1e-5 relative to the smallest eigenvalue of rho
    const auto spec = eig_hermitian(r.hermitian());
    const double h = 1e-5 * spec.min_eigenvalue();
    const CMatrix g = ginibre(d, d, rng);
    const auto delta = HermitianMatrix(g / g.norm());
    const auto sig = HermitianMatrix(ginibre(d, d, rng));
    const auto f = [&](const HermitianMatrix& x) { return -hs_inner(sig, matrix_log(x)); };
    const double fd = (f(r.hermitian() + delta * h) - f(r.hermitian() - delta * h)) / (2 * h);
    const double an = -hs_inner(frechet_log_adjoint(spec, sig), delta);
    frechet = std::max(frechet, std::abs(fd - an) / (1e-3 + std::abs(an)));
  }
  const bool ok = klein >= 0.0 && unitary <= 1e-9 && additivity <= 1e-9 && frechet <= 1e-5;
  return {ok, "min klein " + fmt("%.3g", klein) + ", unitary " + fmt("%.3g", unitary) +
                  ", additivity " + fmt("%.3g", additivity) + ", frechet rel " +
                  fmt("%.3g", frechet)};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  const auto selected = [&](int id) {
    return only.empty() || std::find(only.begin(), only.end(), id) != only.end();
  };
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "conditional-entropy gap ensemble", gap_ensemble},
      {2, "log-order proof step", log_order_step},
      {3, "pure-state REE equals entanglement entropy", pure_state_ree},
      {4, "REE above conditional-entropy bound", lower_bound},
      {5, "REE above EoF minus entropy", formation_bound},
      {6, "additivity on pure pairs", pure_pair_additivity},
      {7, "minimizer keeps the reduced state", reduced_state_kept},
      {8, "operator monotonicity", monotonicity},
      {9, "solver vs bell-diagonal oracle", solver_vs_oracle},
  };

  const auto start = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  bool all = true;
  for (const auto& c : criteria) {
    if (!selected(c.id)) continue;
    const double t0 = elapsed();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("%s  criterion %2d  %-44s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), elapsed() - t0);
    std::fflush(stdout);
  }
  if (!selected(10)) return all ? 0 : 1;
  Outcome n = numerics();
  const double total = elapsed();
  n.pass = n.pass && total <= kBatterySeconds;
  all = all && n.pass;
  std::printf("%s  criterion %2d  %-44s %s; elapsed %.1fs\n", n.pass ? "PASS" : "FAIL", 10,
              "numerical properties and runtime", n.detail.c_str(), total);
  return all ? 0 : 1;
}
