#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bandsim/agents.hpp"
#include "bandsim/demand.hpp"
#include "bandsim/dualspeed.hpp"
#include "bandsim/market.hpp"
#include "bandsim/netsim.hpp"
#include "json.hpp"

namespace bandsim {

struct GeneralConfig {
  std::size_t steps = 200;
  std::size_t training_steps = 30;
  std::size_t iterations = 100;
  double cell_radius_m = 1666.0;
  double walk_length_m = 20.0;
  std::size_t dut_count = 1;
  std::uint64_t seed = 1;
  bool fixed_location = false;  // forces a 1 m walk
  bool fixed_price = false;     // forces max cost = min cost
  std::size_t training_stagger = 1;  // extra training steps per DUT index

  double effective_walk_length() const { return fixed_location ? 1.0 : walk_length_m; }
};

struct NetworkConfig {
  std::string name;
  double power_dbm = 30.0;
  std::size_t background_ues = 0;
  std::size_t bs_count = 36;
  Point offset;  // units of the cell radius
  double min_cost = 1.0;
  double max_cost = 1.0;
  double bandwidth_mhz = 10.0;
};

struct RadioConfig {
  RadioParameters params;
  // Background UEs are dropped uniformly on a disc of this radius around the
  // grid centre; 0 means the grid extent (farthest BS of any network).
  double background_radius_m = 0.0;
};

struct DemandConfig {
  std::vector<AppProfile> apps;
  Matrix transition;
};

enum class RewardMode { utility, decile, prepaid, budget };

std::string_view to_string(RewardMode mode) noexcept;

struct RewardConfig {
  RewardMode mode = RewardMode::utility;
  // prepaid
  double plan_life_steps = 200.0;
  double data_per_step = 0.004;  // fraction of the cap used per step
  double prepaid_beta = 1.0;
  // budget
  double near_term_limit = 20.0;
  std::size_t near_term_period = 10;
  double long_term_limit = 400.0;
  std::size_t long_term_period = 200;
  double beta_long = 2.0;
  double extension_factor = 1.1;
};

struct CapacityEntry {
  std::vector<std::size_t> networks;  // 0-based network of each DUT
  std::vector<double> throughput_mbps;
};

struct TestbedConfig {
  std::vector<CapacityEntry> capacity;
  std::vector<double> prices;
  std::vector<AppProfile> apps;  // one fixed app per DUT
  std::vector<std::size_t> training_steps{1, 2, 3, 4, 5, 6, 7, 8};
  std::size_t repetitions = 200;
  std::size_t steps = 20;  // testbed_mode run length
  EstimatorMode estimator = EstimatorMode::full_mean();
};

struct RunConfig {
  GeneralConfig general;
  RadioConfig radio;
  std::vector<NetworkConfig> networks;
  std::vector<DemandConfig> demand;  // one entry shared by all DUTs, or one per DUT
  std::vector<PolicySpec> policies;
  RewardConfig reward;
  std::optional<DualSpeedModel> dual_speed;
  std::optional<TestbedConfig> testbed;
  std::optional<std::string> ledger_log;  // NDJSON path, relative to --out

  const DemandConfig& demand_for(std::size_t dut) const;
  std::vector<PriceRange> price_ranges() const;

  /// Throws Error(config) naming the offending key.
  void validate() const;

  nlohmann::json to_json() const;
  /// Unknown keys are rejected; absent keys keep their defaults.
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load(const std::filesystem::path& path);
};

/// Default simulation configuration: two networks, one DUT, walking 20 m per
/// step, variable prices.
RunConfig default_config();

/// Named presets: fixed-location-fixed-price, fixed-location-variable-price,
/// variable-location-fixed-price, variable-location-variable-price,
/// competing-agents, history-tuning, testbed.
RunConfig preset(std::string_view name);
std::vector<std::string> preset_names();

/// The testbed capacity measurements for (UE1 batch, UE2 interactive 1 Mbps)
/// at prices (1, 3).
TestbedConfig reference_testbed();

std::vector<PolicySpec> default_policies();

}  // namespace bandsim
