#pragma once

#include <span>
#include <vector>

#include "bandsim/core.hpp"
#include "json.hpp"

namespace bandsim {

/// exp(h_a) / sum_i exp(h_i), shifted by max(h) for stability.
std::vector<double> softmax(std::span<const double> h);

/// Softmax over H(x) = beta * log(x) of linear SINRs, i.e. proportional to
/// SINR^beta. Throws Error(invalid_sinr) for non-positive inputs.
std::vector<double> sinr_softmax(std::span<const double> sinr_linear, double beta = 1.0);

enum class BaselineKind { arithmetic, exponential };

// Gradient-bandit preferences with a reward baseline.
class PreferenceVector {
 public:
  PreferenceVector(std::size_t providers, double step, BaselineKind baseline = BaselineKind::arithmetic,
                   double smoothing = 0.1);

  std::vector<double> probabilities() const { return softmax(h_); }

  /// H_a += step * (reward - baseline) * (1{a = chosen} - pi(a)), then folds
  /// the reward into the baseline.
  void update(ProviderIndex chosen, double reward);

  /// Samples a provider from the current softmax policy.
  ProviderIndex sample(Rng& rng) const;

  std::span<const double> preferences() const noexcept { return h_; }
  void set_preferences(std::vector<double> h);
  double baseline() const noexcept { return baseline_; }
  void set_baseline(double value) noexcept { baseline_ = value; }
  std::size_t updates() const noexcept { return updates_; }

  nlohmann::json to_json() const;

 private:
  std::vector<double> h_;
  double step_;
  BaselineKind kind_;
  double smoothing_;
  double baseline_ = 0.0;
  std::size_t updates_ = 0;
};

/// Inverse-CDF draw from a probability vector.
std::size_t sample_index(std::span<const double> probabilities, Rng& rng);

}  // namespace bandsim
