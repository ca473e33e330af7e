#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ree_lab/bipartite.hpp"
#include "ree_lab/ree_solver.hpp"

namespace ree_lab {

// Pass thresholds per suite (pass <=> margin >= -tolerance).
struct SuiteTolerances {
  double theorem1 = 1e-8;
  double lemma2 = 1e-6;
  double corollary1 = 1e-3;
  double corollary2 = 1e-4;
  double lemma3 = 5e-3;
  double lemma4 = 1e-3;
  double monotone = 1e-8;
  double reduction = 1e-9;
  // |ree - lemma2_bound| below which a state counts as bound-achieving (lemma4 suite)
  double bound_achieving = 1e-4;
};

enum class TrialStatus { Scored, Indeterminate, NotApplicable };

struct ReportRecord {
  std::string suite;
  int trial = 0;
  std::uint64_t seed = 0;
  BipartiteDims dims;
  std::map<std::string, double> quantities;
  double margin = 0.0;
  bool pass = true;
  TrialStatus status = TrialStatus::Scored;

  nlohmann::json to_json() const;
};

struct SuiteSummary {
  std::string suite;
  int trials = 0;
  int passed = 0;
  int failed = 0;
  int discarded = 0;  // indeterminate or not applicable
  double worst_margin = 0.0;
  bool pass = false;
  std::map<std::string, double> extras;

  nlohmann::json to_json() const;
};

struct SuiteReport {
  std::vector<ReportRecord> records;
  SuiteSummary summary;
};

struct SuiteConfig {
  std::string suite;
  int trials = 100;
  std::uint64_t seed = 0;
  BipartiteDims dims{2, 2};
  // monotone suite
  std::string function = "square";
  int dim = 2;
  bool inject_known_pair = true;
  SuiteTolerances tol;
  ReeOptions ree;
  // 0: REE_LAB_THREADS, or hardware concurrency if unset/0
  int threads = 0;
};

const std::vector<std::string>& suite_names();
bool is_known_suite(const std::string& name);

// Runs `config.trials` seeded trials. Trial i draws from
// derive_seed(config.seed, suite, i). Records come back in trial order
// regardless of the thread count. Throws InputError for unknown suites or
// incompatible dims.
SuiteReport run_suite(const SuiteConfig& config);

// Line-delimited report: one record per line, then the summary line.
std::string format_report(const SuiteReport& report);

// Worker count from REE_LAB_THREADS (0 or unset = hardware concurrency).
int default_thread_count();

// Calls fn(i) for i in [0, n) on up to `threads` workers. The first
// exception thrown by any call is rethrown after all workers finish.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace ree_lab
