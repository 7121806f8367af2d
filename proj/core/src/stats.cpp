#include "bandsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "bandsim/error.hpp"

namespace bandsim {

std::vector<double> block_means(std::span<const double> series, std::size_t block) {
  if (block == 0) throw Error(ErrorCode::invalid_argument, "block size must be positive");
  std::vector<double> out;
  out.reserve(series.size() / block);
  for (std::size_t i = 0; i + block <= series.size(); i += block) {
    double s = 0.0;
    for (std::size_t j = 0; j < block; ++j) s += series[i + j];
    out.push_back(s / static_cast<double>(block));
  }
  return out;
}

double mean(std::span<const double> xs) {
  if (xs.empty()) throw Error(ErrorCode::invalid_argument, "mean of an empty series");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b,
                          std::size_t comparisons) {
  if (a.size() != b.size()) throw Error(ErrorCode::invalid_argument, "paired series differ in length");
  if (a.size() < 2) throw Error(ErrorCode::invalid_argument, "paired t-test needs at least 2 pairs");
  if (comparisons == 0) throw Error(ErrorCode::invalid_argument, "comparison count must be positive");
  const std::size_t n = a.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
  const double m = mean(d);
  double ss = 0.0;
  for (double v : d) ss += (v - m) * (v - m);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  TTestResult r;
  r.pairs = n;
  r.mean_difference = m;
  if (sd == 0.0) {
    if (m == 0.0) {
      r.t = 0.0;
      r.p = 1.0;
    } else {
      r.t = m > 0.0 ? std::numeric_limits<double>::infinity()
                    : -std::numeric_limits<double>::infinity();
      r.p = std::numeric_limits<double>::min();
    }
    return r;
  }
  r.t = m / (sd / std::sqrt(static_cast<double>(n)));
  const boost::math::students_t dist(static_cast<double>(n - 1));
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
  r.p = std::min(1.0, p * static_cast<double>(comparisons));
  return r;
}

double improvement(double x, double baseline) {
  if (baseline == 0.0)
    throw Error(ErrorCode::undefined_improvement, "baseline welfare is zero");
  return (x - baseline) / baseline;
}

}  // namespace bandsim
