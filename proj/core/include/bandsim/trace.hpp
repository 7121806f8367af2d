#pragma once

#include <cstdint>
#include <vector>

#include "bandsim/config.hpp"
#include "bandsim/netsim.hpp"

namespace bandsim {

// Radio conditions of one DUT on one network in one step.
struct LinkSample {
  double sinr = 0.0;  // linear
  std::size_t serving = 0;
  double capacity_mbps = 0.0;  // unshared max throughput at that SINR
};

// Everything random about one iteration that is independent of the policy:
// replayed unchanged for every policy.
struct ScenarioTrace {
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> prices;             // [step][provider]
  std::vector<std::vector<std::size_t>> price_levels;  // [step][provider]
  std::vector<std::vector<AppId>> apps;                // [dut][step]
  std::vector<MobilityState> start;                    // [dut]
  std::vector<std::vector<Point>> positions;           // [dut][step]
  std::vector<std::vector<Point>> background;          // [network][ue]
  std::vector<std::vector<std::size_t>> attached;      // [network][bs] background UEs
  std::vector<std::vector<std::vector<LinkSample>>> links;  // [dut][step][network]
  std::vector<std::vector<ProviderIndex>> training;    // [dut][step] random training picks
  std::vector<std::size_t> initial_price_states;       // dual-speed start, per provider
};

// Fixed geometry of a configuration, shared by every iteration.
struct Deployment {
  std::vector<NetworkModel> networks;
  RadioParameters radio;
  double background_radius_m = 0.0;

  explicit Deployment(const RunConfig& config);
};

/// Draws the iteration trace from `seed` (every component on its own stream).
ScenarioTrace generate_trace(const RunConfig& config, const Deployment& deployment,
                             std::uint64_t seed);

/// Seed of iteration `i` of a run seeded with `run_seed`.
std::uint64_t iteration_seed(std::uint64_t run_seed, std::size_t i) noexcept;

// Stream tags for derive_seed.
namespace stream {
inline constexpr std::uint64_t prices = 1;
inline constexpr std::uint64_t apps = 2;
inline constexpr std::uint64_t mobility = 3;
inline constexpr std::uint64_t background = 4;
inline constexpr std::uint64_t training = 5;
inline constexpr std::uint64_t policy = 6;
inline constexpr std::uint64_t dual_speed = 7;
inline constexpr std::uint64_t iteration = 8;
}  // namespace stream

}  // namespace bandsim
