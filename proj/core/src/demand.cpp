#include "bandsim/demand.hpp"

#include <algorithm>
#include <cmath>

#include "bandsim/gradient.hpp"

namespace bandsim {

void validate_row_stochastic(const Matrix& m, double tolerance) {
  if (m.empty()) throw Error(ErrorCode::invalid_argument, "empty transition matrix");
  for (const auto& row : m) {
    if (row.size() != m.size())
      throw Error(ErrorCode::invalid_argument, "transition matrix must be square");
    double total = 0.0;
    for (double v : row) {
      if (!(v >= 0.0)) throw Error(ErrorCode::invalid_argument, "negative transition probability");
      total += v;
    }
    if (std::abs(total - 1.0) > tolerance)
      throw Error(ErrorCode::invalid_argument, "transition rows must sum to 1");
  }
}

std::vector<double> stationary_distribution(const Matrix& p, double tolerance,
                                            std::size_t max_iterations) {
  validate_row_stochastic(p);
  const std::size_t n = p.size();
  // lazy chain (I + P) / 2 has the same fixed point and is aperiodic
  std::vector<double> pi(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    for (std::size_t j = 0; j < n; ++j) next[j] = 0.5 * pi[j];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) next[j] += 0.5 * pi[i] * p[i][j];
    double delta = 0.0;
    for (std::size_t j = 0; j < n; ++j) delta = std::max(delta, std::abs(next[j] - pi[j]));
    pi.swap(next);
    if (delta < tolerance) break;
  }
  double total = 0.0;
  for (double v : pi) total += v;
  for (double& v : pi) v /= total;
  return pi;
}

AppChain::AppChain(std::vector<AppProfile> apps, Matrix transition, AppId current)
    : apps_(std::move(apps)), transition_(std::move(transition)), current_(current) {
  if (apps_.empty()) throw Error(ErrorCode::invalid_argument, "app chain without apps");
  if (transition_.size() != apps_.size())
    throw Error(ErrorCode::invalid_argument, "transition matrix does not match the app list");
  validate_row_stochastic(transition_);
  for (const auto& app : apps_) app.validate();
  if (current_ >= apps_.size()) throw Error(ErrorCode::invalid_argument, "current app out of range");
}

AppChain AppChain::stationary_start(std::vector<AppProfile> apps, Matrix transition, Rng& rng) {
  const auto pi = stationary_distribution(transition);
  const AppId start = sample_index(pi, rng);
  return AppChain(std::move(apps), std::move(transition), start);
}

AppId AppChain::next_app(Rng& rng) {
  current_ = sample_index(transition_[current_], rng);
  return current_;
}

}  // namespace bandsim
