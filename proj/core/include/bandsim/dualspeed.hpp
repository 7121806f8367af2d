#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bandsim/demand.hpp"

namespace bandsim {

/// P_unp = I - diag(eps) + diag(eps) P_pop: each row i stays put with extra
/// probability 1 - eps_i.
Matrix unpopular_matrix(const Matrix& p_pop, std::span<const double> epsilons);

// Price chain shared by all providers. Popular providers move under p_pop,
// unpopular ones under the slowed p_unp; every provider moves every step.
struct DualSpeedModel {
  Matrix p_pop;
  std::vector<double> epsilons;
  std::size_t popularity_threshold = 0;  // popular iff count > threshold
  std::vector<double> price_labels;      // price of each chain state

  void validate() const;
  Matrix p_unp() const { return unpopular_matrix(p_pop, epsilons); }
};

/// Next price state of every provider. `counts` are the selecting-agent counts
/// of the previous step.
std::vector<std::size_t> step_prices(const DualSpeedModel& model,
                                     std::span<const std::size_t> states,
                                     std::span<const std::size_t> counts, Rng& rng);

}  // namespace bandsim
