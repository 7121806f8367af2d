#include "bandsim/gradient.hpp"

#include <algorithm>
#include <cmath>

namespace bandsim {

std::vector<double> softmax(std::span<const double> h) {
  if (h.empty()) throw Error(ErrorCode::invalid_argument, "softmax of an empty vector");
  const double top = *std::max_element(h.begin(), h.end());
  std::vector<double> p(h.size());
  double total = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    p[i] = std::exp(h[i] - top);
    total += p[i];
  }
  for (double& v : p) v /= total;
  return p;
}

std::vector<double> sinr_softmax(std::span<const double> sinr_linear, double beta) {
  std::vector<double> h(sinr_linear.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(sinr_linear[i] > 0.0))
      throw Error(ErrorCode::invalid_sinr, "SINR must be positive for the log preference");
    h[i] = beta * std::log(sinr_linear[i]);
  }
  return softmax(h);
}

std::size_t sample_index(std::span<const double> probabilities, Rng& rng) {
  if (probabilities.empty()) throw Error(ErrorCode::invalid_argument, "empty distribution");
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    acc += probabilities[i];
    if (u < acc) return i;
  }
  // rounding left a sliver above the last cumulative value
  for (std::size_t i = probabilities.size(); i-- > 0;)
    if (probabilities[i] > 0.0) return i;
  return probabilities.size() - 1;
}

PreferenceVector::PreferenceVector(std::size_t providers, double step, BaselineKind baseline,
                                   double smoothing)
    : h_(providers, 0.0), step_(step), kind_(baseline), smoothing_(smoothing) {
  if (providers == 0) throw Error(ErrorCode::invalid_argument, "preferences need providers");
  if (!(step > 0.0)) throw Error(ErrorCode::invalid_argument, "gradient step must be positive");
  if (kind_ == BaselineKind::exponential && !(smoothing > 0.0 && smoothing <= 1.0))
    throw Error(ErrorCode::invalid_argument, "baseline smoothing must lie in (0, 1]");
}

void PreferenceVector::update(ProviderIndex chosen, double reward) {
  if (chosen >= h_.size()) throw Error(ErrorCode::invalid_argument, "chosen provider out of range");
  const auto pi = probabilities();
  const double advantage = reward - baseline_;
  for (std::size_t a = 0; a < h_.size(); ++a) {
    const double indicator = a == chosen ? 1.0 : 0.0;
    h_[a] += step_ * advantage * (indicator - pi[a]);
  }
  ++updates_;
  if (kind_ == BaselineKind::arithmetic) {
    baseline_ += (reward - baseline_) / static_cast<double>(updates_);
  } else {
    baseline_ = updates_ == 1 ? reward : baseline_ + smoothing_ * (reward - baseline_);
  }
}

ProviderIndex PreferenceVector::sample(Rng& rng) const {
  const auto pi = probabilities();
  return sample_index(pi, rng);
}

void PreferenceVector::set_preferences(std::vector<double> h) {
  if (h.size() != h_.size()) throw Error(ErrorCode::invalid_argument, "preference size mismatch");
  h_ = std::move(h);
}

nlohmann::json PreferenceVector::to_json() const {
  return {{"h", h_},
          {"step", step_},
          {"baseline_mode", kind_ == BaselineKind::arithmetic ? "arithmetic" : "exponential"},
          {"baseline", baseline_},
          {"updates", updates_}};
}

}  // namespace bandsim
