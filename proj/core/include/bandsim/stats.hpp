#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bandsim {

/// Means of consecutive non-overlapping blocks; a trailing partial block is
/// dropped.
std::vector<double> block_means(std::span<const double> series, std::size_t block = 2);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;  // two-sided, Bonferroni-adjusted and clamped to 1
  std::size_t pairs = 0;
  double mean_difference = 0.0;
};

/// Paired two-sided t-test of a - b. Zero-variance differences follow the
/// convention: all zero gives t = 0, p = 1; a nonzero constant gives t = +-inf
/// and p = the smallest positive double.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b,
                          std::size_t comparisons = 1);

/// (x - baseline) / baseline; throws Error(undefined_improvement) on a zero
/// baseline.
double improvement(double x, double baseline);

double mean(std::span<const double> xs);

}  // namespace bandsim
