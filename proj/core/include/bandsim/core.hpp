#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bandsim/error.hpp"
#include "bandsim/random.hpp"

namespace bandsim {

// Providers and apps are 0-based inside the library. Files and reports use
// 1-based network/app numbers.
using ProviderIndex = std::size_t;
using AppId = std::size_t;

enum class UtilityKind { batch, interactive };

std::string_view to_string(UtilityKind kind) noexcept;
UtilityKind utility_kind_from_string(std::string_view name);

struct AppProfile {
  AppId id = 0;
  UtilityKind kind = UtilityKind::batch;
  // Required for interactive apps, absent for batch apps.
  std::optional<double> threshold_mbps;
  // Reward paid when an interactive app misses its threshold.
  double floor = 0.01;

  static AppProfile batch(AppId id);
  static AppProfile interactive(AppId id, double threshold_mbps, double floor = 0.01);

  void validate() const;
};

struct Context {
  AppId app = 0;
  std::vector<double> prices;  // one per provider

  std::size_t providers() const noexcept { return prices.size(); }
  void validate() const;
};

struct RewardSample {
  ProviderIndex provider = 0;
  AppId app = 0;
  double throughput_mbps = 0.0;
  double price = 0.0;
  double reward = 0.0;
};

// Past QoE observations for one (app, provider) pair.
class DecileHistory {
 public:
  DecileHistory() = default;
  explicit DecileHistory(std::vector<double> values);

  void add(double value);
  bool empty() const noexcept { return sorted_.empty(); }
  std::size_t size() const noexcept { return sorted_.size(); }
  std::span<const double> values() const noexcept { return sorted_; }

  /// Number of recorded values <= x.
  std::size_t count_at_most(double x) const noexcept;

 private:
  std::vector<double> sorted_;
};

/// clamp(ceil(10 * F(x)), 1, 10) where F is the empirical CDF of the history.
/// Throws Error(no_distribution) on an empty history.
int decile_rank(const DecileHistory& history, double x);

/// Uniformly random index among the maximisers of `values`.
std::size_t argmax_random_tie(std::span<const double> values, Rng& rng);

/// All indices attaining the maximum (exact comparison).
std::vector<std::size_t> argmax_set(std::span<const double> values);

}  // namespace bandsim
