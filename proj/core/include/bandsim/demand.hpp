#pragma once

#include <vector>

#include "bandsim/core.hpp"

namespace bandsim {

using Matrix = std::vector<std::vector<double>>;

/// Square, non-negative, rows summing to 1 within `tolerance`.
void validate_row_stochastic(const Matrix& m, double tolerance = 1e-9);

/// Left fixed point pi = pi P by power iteration (Cesaro-averaged so that
/// periodic chains converge too).
std::vector<double> stationary_distribution(const Matrix& p, double tolerance = 1e-13,
                                            std::size_t max_iterations = 1'000'000);

// Per-DUT app demand: a Markov chain whose states are app profiles.
class AppChain {
 public:
  AppChain(std::vector<AppProfile> apps, Matrix transition, AppId current = 0);

  /// Chain started from a draw of its stationary distribution.
  static AppChain stationary_start(std::vector<AppProfile> apps, Matrix transition, Rng& rng);

  AppId current() const noexcept { return current_; }
  const std::vector<AppProfile>& apps() const noexcept { return apps_; }
  const Matrix& transition() const noexcept { return transition_; }

  /// Samples the successor of the current app and moves there.
  AppId next_app(Rng& rng);

 private:
  std::vector<AppProfile> apps_;
  Matrix transition_;
  AppId current_;
};

}  // namespace bandsim
