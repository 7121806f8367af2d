#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bandsim/config.hpp"
#include "bandsim/market.hpp"
#include "bandsim/stats.hpp"
#include "bandsim/trace.hpp"

namespace bandsim {

struct StepRecord {
  std::size_t iteration = 0;
  std::size_t step = 0;
  std::size_t dut = 0;
  std::size_t policy = 0;  // index into RunResult::policies
  ProviderIndex provider = 0;
  AppId app = 0;
  double price = 0.0;
  double throughput_mbps = 0.0;
  double reward = 0.0;
  bool training = false;
};

struct RunOptions {
  std::size_t parallel = 1;
  bool record_steps = false;
  bool record_ledger = false;  // keep iteration 0's ledger log per policy
  double return_discount = 0.7;
  // Called after each finished iteration (from worker threads, serialised).
  std::function<void(std::size_t done, std::size_t total)> progress;
};

struct RunResult {
  std::uint64_t seed = 0;
  std::vector<std::string> policies;
  std::vector<std::vector<double>> welfare;            // [policy][iteration]
  std::vector<std::vector<double>> discounted_return;  // [policy][iteration], G_0 summed over DUTs
  std::vector<StepRecord> steps;                       // sorted by (iteration, policy, step, dut)
  std::vector<std::vector<LedgerEntry>> ledger;        // [policy], iteration 0 only

  std::size_t policy_index(const std::string& name) const;
  double mean_welfare(const std::string& name) const;
};

/// Replays one trace under one policy for every DUT.
struct PolicyRun {
  double welfare = 0.0;
  double discounted_return = 0.0;
  std::vector<StepRecord> steps;
  std::vector<LedgerEntry> ledger;
};

PolicyRun run_policy(const RunConfig& config, const ScenarioTrace& trace, const PolicySpec& policy,
                     std::size_t iteration, std::size_t policy_index,
                     const RunOptions& options = {});

/// Every policy on every iteration's trace. Iterations run on up to
/// `options.parallel` threads; results do not depend on the thread count.
RunResult run_scenario(const RunConfig& config, const RunOptions& options = {});

struct Comparison {
  std::string policy;
  std::string baseline;
  double policy_mean = 0.0;
  double baseline_mean = 0.0;
  double improvement = 0.0;
  TTestResult test;
};

/// Improvement of `policy` over `baseline` and the paired t-test on
/// 2-iteration block means, Bonferroni-adjusted for `comparisons`.
Comparison compare(const RunResult& result, const std::string& policy, const std::string& baseline,
                   std::size_t comparisons);

/// `subject` against every other policy.
std::vector<Comparison> compare_against_all(const RunResult& result, const std::string& subject);

/// Every other policy against `baseline`.
std::vector<Comparison> compare_to_baseline(const RunResult& result, const std::string& baseline);

}  // namespace bandsim
