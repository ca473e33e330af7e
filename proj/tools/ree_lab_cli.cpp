// ree-lab: compute entanglement quantities for a state file, run seeded
// verification suites, and generate state files.
//
// Exit codes: 0 success, 1 verification failure or I/O error, 2 malformed
// state file, 3 state file that is not a valid density matrix, 64 usage.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ree_lab/criteria.hpp"
#include "ree_lab/entropy.hpp"
#include "ree_lab/errors.hpp"
#include "ree_lab/harness.hpp"
#include "ree_lab/ree_solver.hpp"
#include "ree_lab/state_io.hpp"

namespace {

using nlohmann::json;
using namespace ree_lab;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitInvalidState = 3;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

BipartiteDims parse_dims(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw UsageError("--dims must look like 2x3, got '" + text + "'");
  try {
    std::size_t used_a = 0, used_b = 0;
    const int a = std::stoi(text.substr(0, x), &used_a);
    const int b = std::stoi(text.substr(x + 1), &used_b);
    if (used_a != x || used_b != text.size() - x - 1 || a < 1 || b < 1) throw std::invalid_argument("");
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("--dims must look like 2x3, got '" + text + "'");
  }
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("");
    } catch (const std::logic_error&) {
      throw UsageError(std::string(flag) + ": cannot parse '" + item + "' as a number");
    }
  }
  if (out.empty()) throw UsageError(std::string(flag) + ": expected a comma-separated list");
  return out;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw Error("cannot write " + path);
}

json vector_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

json verdict_json(const CriterionVerdict& v) {
  return {{"holds", v.holds},
          {"witness_eigenvalue", v.witness_eigenvalue},
          {"witness_vector", vector_json(v.witness_vector)}};
}

// ---- compute ---------------------------------------------------------------

struct ComputeArgs {
  std::string state;
  std::string out;
  std::string dims;
  std::string closest_out;
  bool ree = false;
  ReeOptions opts;
};

int run_compute(const ComputeArgs& a) {
  DensityMatrix rho = [&] {
    try {
      return load_state_file(a.state);
    } catch (const StateParseError& e) {
      std::cerr << "ree-lab compute: " << a.state << ": " << e.what() << '\n';
      throw;
    }
  }();

  if (!a.dims.empty()) {
    const auto d = parse_dims(a.dims);
    if (d.total() != rho.dim()) throw ShapeError("--dims does not match the matrix dimension");
    rho = rho.with_dims(d);
  } else if (!rho.dims()) {
    const int side = static_cast<int>(std::lround(std::sqrt(rho.dim())));
    if (side * side != rho.dim()) {
      throw ShapeError("state file has no dims and its dimension is not a square; pass --dims");
    }
    rho = rho.with_dims({side, side});
  }

  const auto dims = *rho.dims();
  json out;
  out["dims"] = {{"dA", dims.dA}, {"dB", dims.dB}};
  out["S"] = von_neumann_entropy(rho);
  out["S_A"] = von_neumann_entropy(partial_trace_B(rho));
  out["S_B"] = von_neumann_entropy(partial_trace_A(rho));
  out["neg_cond_entropy_A"] = negative_conditional_entropy(rho, Side::A);
  out["neg_cond_entropy_B"] = negative_conditional_entropy(rho, Side::B);
  out["lemma2_bound"] = lemma2_bound(rho);
  out["reduction"] = verdict_json(reduction_criterion(rho));
  out["ppt"] = verdict_json(ppt_criterion(rho));
  if (a.ree) {
    const auto res = ree_ppt(rho, a.opts);
    out["ree"] = {{"value_bits", res.value_bits},
                  {"iterations", res.iterations},
                  {"converged", res.converged},
                  {"final_grad_norm", res.final_grad_norm}};
    if (!a.closest_out.empty()) save_state_file(a.closest_out, res.closest_state);
  }
  write_output(a.out, dump_canonical(out) + "\n");
  return kExitOk;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::string dims = "2x2";
  std::string out;
  SuiteConfig config;
  bool no_inject = false;
};

int run_verify(const VerifyArgs& a, const CLI::App& cmd) {
  if (!is_known_suite(a.suite)) {
    std::cerr << "ree-lab verify: unknown suite '" << a.suite << "'\n" << cmd.help();
    return kExitUsage;
  }
  SuiteConfig config = a.config;
  config.suite = a.suite;
  config.dims = parse_dims(a.dims);
  config.inject_known_pair = !a.no_inject;
  try {
    config.ree.validate();
    const auto report = run_suite(config);
    write_output(a.out, format_report(report));
    if (!a.out.empty() && a.out != "-") {
      std::cout << dump_canonical(report.summary.to_json()) << '\n';
    }
    return report.summary.pass ? kExitOk : kExitFail;
  } catch (const InputError& e) {
    throw UsageError(e.what());
  }
}

// ---- mkstate ---------------------------------------------------------------

struct MkstateArgs {
  std::string family;
  std::string out;
  std::string dims = "2x2";
  std::string p;
  std::string alpha;
  double fidelity = std::nan("");
  std::uint64_t seed = 0;
  int rank = 0;
};

DensityMatrix make_state(const MkstateArgs& a) {
  const auto& f = a.family;
  if (f == "singlet") return singlet();
  if (f == "werner") {
    if (std::isnan(a.fidelity)) throw UsageError("werner needs --F");
    return werner(a.fidelity);
  }
  if (f == "bell_diagonal") {
    if (a.p.empty()) throw UsageError("bell_diagonal needs --p p0,p1,p2,p3");
    const auto p = parse_list(a.p, "--p");
    if (p.size() != 4) throw UsageError("--p needs exactly four weights");
    return bell_diagonal({p[0], p[1], p[2], p[3]});
  }
  const auto dims = parse_dims(a.dims);
  if (f == "random") {
    const int rank = a.rank == 0 ? dims.total() : a.rank;
    return random_density(dims, rank, a.seed);
  }
  if (f == "pure_schmidt") {
    if (a.alpha.empty()) throw UsageError("pure_schmidt needs --alpha a0,a1,...");
    return pure_from_schmidt(parse_list(a.alpha, "--alpha"), dims).density();
  }
  throw UsageError("unknown family '" + f +
                   "' (expected singlet, werner, bell_diagonal, random, pure_schmidt)");
}

int run_mkstate(const MkstateArgs& a) {
  try {
    write_output(a.out, serialize_state(make_state(a)));
  } catch (const InputError& e) {
    throw UsageError(e.what());
  } catch (const ShapeError& e) {
    throw UsageError(e.what());
  } catch (const NormalizationError& e) {
    throw UsageError(e.what());
  }
  return kExitOk;
}

void add_ree_options(CLI::App& cmd, ReeOptions& opts) {
  cmd.add_option("--max-iters", opts.max_iters, "REE solver iteration budget");
  cmd.add_option("--grad-tol", opts.grad_tol, "REE solver gradient-mapping tolerance");
  cmd.add_option("--eps", opts.eps, "REE solver interior floor");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative entropy of entanglement toolkit"};
  app.require_subcommand(1);

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "Entropies, criteria and (optionally) REE of a state file");
  c->add_option("state", compute.state, "State file")->required();
  c->add_option("--out", compute.out, "Write the JSON result here instead of stdout");
  c->add_option("--dims", compute.dims, "Override the bipartition, e.g. 2x3");
  c->add_flag("--ree", compute.ree, "Also solve for the PPT relative entropy of entanglement");
  c->add_option("--closest-out", compute.closest_out, "With --ree, save the closest PPT state");
  add_ree_options(*c, compute.opts);

  VerifyArgs verify;
  auto& cfg = verify.config;
  auto* v = app.add_subcommand("verify", "Run a seeded verification suite");
  v->add_option("suite", verify.suite,
                "theorem1|lemma2|corollary1|corollary2|lemma3|lemma4|monotone|reduction")
      ->required();
  v->add_option("--trials", cfg.trials, "Number of trials")->check(CLI::PositiveNumber);
  v->add_option("--seed", cfg.seed, "Master seed");
  v->add_option("--dims", verify.dims, "Bipartition, e.g. 2x2");
  v->add_option("--out", verify.out, "Report path (line-delimited JSON); stdout if omitted");
  v->add_option("--function", cfg.function, "monotone suite: identity|square|log|sqrt|exp");
  v->add_option("--dim", cfg.dim, "monotone suite: matrix dimension");
  v->add_flag("--no-inject", verify.no_inject, "monotone suite: skip the known counterexample pair");
  v->add_option("--threads", cfg.threads, "Worker threads (0: REE_LAB_THREADS or all cores)");
  v->add_option("--tol-theorem1", cfg.tol.theorem1);
  v->add_option("--tol-lemma2", cfg.tol.lemma2);
  v->add_option("--tol-corollary1", cfg.tol.corollary1);
  v->add_option("--tol-corollary2", cfg.tol.corollary2);
  v->add_option("--tol-lemma3", cfg.tol.lemma3);
  v->add_option("--tol-lemma4", cfg.tol.lemma4);
  v->add_option("--tol-monotone", cfg.tol.monotone);
  v->add_option("--tol-reduction", cfg.tol.reduction);
  v->add_option("--tol-bound-achieving", cfg.tol.bound_achieving);
  add_ree_options(*v, cfg.ree);

  MkstateArgs mk;
  auto* m = app.add_subcommand("mkstate", "Write a state file");
  m->add_option("family", mk.family, "singlet|werner|bell_diagonal|random|pure_schmidt")->required();
  m->add_option("--out", mk.out, "Output path; stdout if omitted");
  m->add_option("--F", mk.fidelity, "werner: singlet fidelity");
  m->add_option("--p", mk.p, "bell_diagonal: four comma-separated weights");
  m->add_option("--dims", mk.dims, "random, pure_schmidt: bipartition");
  m->add_option("--seed", mk.seed, "random: seed");
  m->add_option("--rank", mk.rank, "random: rank (default full)");
  m->add_option("--alpha", mk.alpha, "pure_schmidt: comma-separated Schmidt coefficients");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*c) return run_compute(compute);
    if (*v) return run_verify(verify, *v);
    return run_mkstate(mk);
  } catch (const UsageError& e) {
    std::cerr << "ree-lab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const StateParseError&) {
    return kExitParse;
  } catch (const InvalidStateError& e) {
    std::cerr << "ree-lab: invalid state: " << e.what() << '\n';
    return kExitInvalidState;
  } catch (const ShapeError& e) {
    std::cerr << "ree-lab: invalid state: " << e.what() << '\n';
    return kExitInvalidState;
  } catch (const std::exception& e) {
    std::cerr << "ree-lab: " << e.what() << '\n';
    return kExitFail;
  }
}
