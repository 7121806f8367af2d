#include "bandsim/dualspeed.hpp"

#include "bandsim/gradient.hpp"

namespace bandsim {

Matrix unpopular_matrix(const Matrix& p_pop, std::span<const double> epsilons) {
  validate_row_stochastic(p_pop);
  if (epsilons.size() != p_pop.size())
    throw Error(ErrorCode::invalid_argument, "one epsilon per price state required");
  Matrix out(p_pop.size(), std::vector<double>(p_pop.size()));
  for (std::size_t i = 0; i < p_pop.size(); ++i) {
    const double e = epsilons[i];
    if (!(e >= 0.0 && e <= 1.0)) throw Error(ErrorCode::invalid_argument, "epsilon must lie in [0, 1]");
    for (std::size_t j = 0; j < p_pop.size(); ++j)
      out[i][j] = (i == j ? 1.0 - e : 0.0) + e * p_pop[i][j];
  }
  return out;
}

void DualSpeedModel::validate() const {
  validate_row_stochastic(p_pop);
  if (epsilons.size() != p_pop.size())
    throw Error(ErrorCode::invalid_argument, "one epsilon per price state required");
  for (double e : epsilons)
    if (!(e > 0.0 && e <= 1.0)) throw Error(ErrorCode::invalid_argument, "epsilon must lie in (0, 1]");
  if (price_labels.size() != p_pop.size())
    throw Error(ErrorCode::invalid_argument, "one price label per price state required");
  for (double p : price_labels)
    if (!(p > 0.0)) throw Error(ErrorCode::invalid_argument, "price labels must be positive");
}

std::vector<std::size_t> step_prices(const DualSpeedModel& model,
                                     std::span<const std::size_t> states,
                                     std::span<const std::size_t> counts, Rng& rng) {
  if (states.size() != counts.size())
    throw Error(ErrorCode::invalid_argument, "one selection count per provider required");
  const Matrix unp = model.p_unp();
  std::vector<std::size_t> next(states.size());
  for (std::size_t a = 0; a < states.size(); ++a) {
    if (states[a] >= model.p_pop.size())
      throw Error(ErrorCode::invalid_argument, "price state out of range");
    const Matrix& m = counts[a] > model.popularity_threshold ? model.p_pop : unp;
    next[a] = sample_index(m[states[a]], rng);
  }
  return next;
}

}  // namespace bandsim
