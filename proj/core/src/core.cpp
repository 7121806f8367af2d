#include "bandsim/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bandsim {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::no_distribution: return "no-distribution";
    case ErrorCode::invalid_sinr: return "invalid-sinr";
    case ErrorCode::undefined_improvement: return "undefined-improvement";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) noexcept {
  // splitmix64 finaliser over the seed and each tag
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(seed);
  for (auto tag : tags) h = mix(h ^ mix(tag + 0x632be59bd9b4e019ULL));
  return h;
}

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "Rng::index with n = 0");
  // rejection sampling keeps the draw unbiased
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

std::string_view to_string(UtilityKind kind) noexcept {
  return kind == UtilityKind::batch ? "batch" : "interactive";
}

UtilityKind utility_kind_from_string(std::string_view name) {
  if (name == "batch") return UtilityKind::batch;
  if (name == "interactive") return UtilityKind::interactive;
  throw Error(ErrorCode::invalid_argument, "unknown utility kind '" + std::string(name) + "'");
}

AppProfile AppProfile::batch(AppId id) {
  AppProfile app;
  app.id = id;
  app.kind = UtilityKind::batch;
  return app;
}

AppProfile AppProfile::interactive(AppId id, double threshold_mbps, double floor) {
  AppProfile app;
  app.id = id;
  app.kind = UtilityKind::interactive;
  app.threshold_mbps = threshold_mbps;
  app.floor = floor;
  app.validate();
  return app;
}

void AppProfile::validate() const {
  if (kind == UtilityKind::interactive) {
    if (!threshold_mbps || !(*threshold_mbps > 0.0))
      throw Error(ErrorCode::invalid_argument, "interactive app needs a positive threshold");
    if (!(floor > 0.0) || !(floor < *threshold_mbps))
      throw Error(ErrorCode::invalid_argument, "interactive floor must lie in (0, threshold)");
  } else if (threshold_mbps) {
    throw Error(ErrorCode::invalid_argument, "batch app must not carry a threshold");
  }
}

void Context::validate() const {
  if (prices.empty()) throw Error(ErrorCode::invalid_argument, "context without providers");
  for (double p : prices)
    if (!(p > 0.0)) throw Error(ErrorCode::invalid_argument, "prices must be positive");
}

DecileHistory::DecileHistory(std::vector<double> values) : sorted_(std::move(values)) {
  std::sort(sorted_.begin(), sorted_.end());
}

void DecileHistory::add(double value) {
  sorted_.insert(std::upper_bound(sorted_.begin(), sorted_.end(), value), value);
}

std::size_t DecileHistory::count_at_most(double x) const noexcept {
  return static_cast<std::size_t>(std::upper_bound(sorted_.begin(), sorted_.end(), x) -
                                  sorted_.begin());
}

int decile_rank(const DecileHistory& history, double x) {
  if (history.empty()) throw Error(ErrorCode::no_distribution, "empty decile history");
  // integer ceil(10 c / n) avoids 10 * 0.3 = 3.0000000000000004
  const std::size_t c = history.count_at_most(x);
  const std::size_t n = history.size();
  const auto rank = static_cast<int>((10 * c + n - 1) / n);
  return std::clamp(rank, 1, 10);
}

std::vector<std::size_t> argmax_set(std::span<const double> values) {
  std::vector<std::size_t> best;
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > top) {
      top = values[i];
      best.assign(1, i);
    } else if (values[i] == top) {
      best.push_back(i);
    }
  }
  return best;
}

std::size_t argmax_random_tie(std::span<const double> values, Rng& rng) {
  if (values.empty()) throw Error(ErrorCode::invalid_argument, "argmax over empty set");
  const auto best = argmax_set(values);
  if (best.empty()) return rng.index(values.size());  // all NaN
  return best.size() == 1 ? best.front() : best[rng.index(best.size())];
}

}  // namespace bandsim
