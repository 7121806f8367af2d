#pragma once

#include <map>
#include <vector>

#include "bandsim/config.hpp"

namespace bandsim {

using Assignment = std::vector<std::size_t>;  // network of each DUT

// Measured per-DUT throughput for every assignment of DUTs to networks.
class CapacityTable {
 public:
  CapacityTable(std::size_t networks, std::size_t duts, const std::vector<CapacityEntry>& entries);

  std::size_t networks() const noexcept { return networks_; }
  std::size_t duts() const noexcept { return duts_; }
  const std::vector<double>& throughput(const Assignment& a) const;

  /// All k^duts assignments in lexicographic order.
  std::vector<Assignment> assignments() const;

  /// Mean throughput of `dut` on `network` with every other DUT on a uniformly
  /// random network.
  double mean_throughput(std::size_t dut, std::size_t network) const;

 private:
  std::size_t networks_;
  std::size_t duts_;
  std::map<Assignment, std::vector<double>> table_;
};

double aggregate_utility(const CapacityTable& table, const std::vector<AppProfile>& apps,
                         const std::vector<double>& prices, const Assignment& a);

/// Brute force over all assignments; ties go to the lexicographically
/// smallest.
Assignment optimal_allocation(const CapacityTable& table, const std::vector<AppProfile>& apps,
                              const std::vector<double>& prices);

/// 1 - 0.5^(0.5 s).
double theoretical_success(double samples);

struct TestbedAnalytics {
  std::vector<std::vector<double>> mean_throughput;  // [dut][network]
  std::vector<std::vector<double>> utility;          // [dut][network]
  std::vector<std::size_t> preferred;                // argmax utility per DUT
  Assignment optimal;
  double optimal_utility = 0.0;
};

TestbedAnalytics analyze(const TestbedConfig& testbed);

struct SweepPoint {
  std::size_t training_steps = 0;
  std::size_t repetitions = 0;
  double success = 0.0;       // fraction ending in the optimal assignment
  double theoretical = 0.0;
  double utility_fraction = 0.0;  // mean aggregate utility over the optimum
};

/// For each s: DUTs pick uniformly for s steps, then ExpectedUtility decides
/// once; success means the decision matches the optimal assignment.
std::vector<SweepPoint> training_sweep(const TestbedConfig& testbed, std::uint64_t seed);

struct TestbedSeries {
  std::vector<double> success;           // [step] fraction of repetitions optimal
  std::vector<double> utility_fraction;  // [step]
};

/// `testbed.steps`-step runs with `training_steps` random steps first.
TestbedSeries testbed_mode(const TestbedConfig& testbed, std::size_t training_steps,
                           std::uint64_t seed);

}  // namespace bandsim
