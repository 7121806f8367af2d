#pragma once

#include <deque>
#include <string>
#include <vector>

#include "bandsim/core.hpp"
#include "json.hpp"

namespace bandsim {

enum class EstimatorKind { full_mean, window, exponential };

// How an ActionValueTable cell turns recorded samples into an estimate.
struct EstimatorMode {
  EstimatorKind kind = EstimatorKind::full_mean;
  std::size_t window = 0;   // window mode: number of most recent samples
  double smoothing = 0.0;   // exponential mode: weight of the newest sample

  static EstimatorMode full_mean() { return {}; }
  static EstimatorMode last(std::size_t w);
  static EstimatorMode exponential(double smoothing);

  std::string label() const;
  /// Parses "unlimited"/"full", "window:<w>" or a bare integer, "exp:<a>".
  static EstimatorMode parse(std::string_view text);

  void validate() const;
  friend bool operator==(const EstimatorMode&, const EstimatorMode&) = default;
};

// Sample-average action values Q(s, a) with pull counts N(s, a). Untried cells
// are valued 0.
class ActionValueTable {
 public:
  ActionValueTable(std::size_t contexts, std::size_t providers,
                   EstimatorMode mode = EstimatorMode::full_mean());

  void record(std::size_t context, ProviderIndex provider, double sample);

  double value(std::size_t context, ProviderIndex provider) const;
  std::size_t count(std::size_t context, ProviderIndex provider) const;
  std::vector<double> values(std::size_t context) const;

  std::size_t contexts() const noexcept { return contexts_; }
  std::size_t providers() const noexcept { return providers_; }
  const EstimatorMode& mode() const noexcept { return mode_; }

  nlohmann::json to_json() const;
  static ActionValueTable from_json(const nlohmann::json& j);

 private:
  struct Cell {
    std::size_t count = 0;
    double sum = 0.0;
    double smoothed = 0.0;
    std::deque<double> recent;
  };

  const Cell& cell(std::size_t context, ProviderIndex provider) const;
  Cell& cell(std::size_t context, ProviderIndex provider);

  std::size_t contexts_;
  std::size_t providers_;
  EstimatorMode mode_;
  std::vector<Cell> cells_;
};

}  // namespace bandsim
