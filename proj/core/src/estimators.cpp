#include "bandsim/estimators.hpp"

#include <charconv>
#include <numeric>

namespace bandsim {

EstimatorMode EstimatorMode::last(std::size_t w) {
  EstimatorMode m{EstimatorKind::window, w, 0.0};
  m.validate();
  return m;
}

EstimatorMode EstimatorMode::exponential(double smoothing) {
  EstimatorMode m{EstimatorKind::exponential, 0, smoothing};
  m.validate();
  return m;
}

void EstimatorMode::validate() const {
  if (kind == EstimatorKind::window && window == 0)
    throw Error(ErrorCode::invalid_argument, "window estimator needs w >= 1");
  if (kind == EstimatorKind::exponential && !(smoothing > 0.0 && smoothing < 1.0))
    throw Error(ErrorCode::invalid_argument, "exponential smoothing must lie in (0, 1)");
}

std::string EstimatorMode::label() const {
  switch (kind) {
    case EstimatorKind::full_mean: return "unlimited";
    case EstimatorKind::window: return "window:" + std::to_string(window);
    case EstimatorKind::exponential: {
      nlohmann::json j = smoothing;
      return "exp:" + j.dump();
    }
  }
  return "unlimited";
}

EstimatorMode EstimatorMode::parse(std::string_view text) {
  if (text == "unlimited" || text == "full" || text == "full_mean") return full_mean();
  auto parse_size = [&](std::string_view digits) {
    std::size_t w = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), w);
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
      throw Error(ErrorCode::invalid_argument, "bad estimator window '" + std::string(text) + "'");
    return w;
  };
  if (text.starts_with("window:")) return last(parse_size(text.substr(7)));
  if (text.starts_with("exp:")) {
    const std::string value(text.substr(4));
    try {
      std::size_t used = 0;
      const double a = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      return exponential(a);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::invalid_argument, "bad smoothing '" + value + "'");
    }
  }
  return last(parse_size(text));
}

ActionValueTable::ActionValueTable(std::size_t contexts, std::size_t providers, EstimatorMode mode)
    : contexts_(contexts), providers_(providers), mode_(mode), cells_(contexts * providers) {
  if (contexts == 0 || providers == 0)
    throw Error(ErrorCode::invalid_argument, "action-value table needs contexts and providers");
  mode_.validate();
}

const ActionValueTable::Cell& ActionValueTable::cell(std::size_t context,
                                                     ProviderIndex provider) const {
  if (context >= contexts_ || provider >= providers_)
    throw Error(ErrorCode::invalid_argument, "action-value index out of range");
  return cells_[context * providers_ + provider];
}

ActionValueTable::Cell& ActionValueTable::cell(std::size_t context, ProviderIndex provider) {
  return const_cast<Cell&>(std::as_const(*this).cell(context, provider));
}

void ActionValueTable::record(std::size_t context, ProviderIndex provider, double sample) {
  Cell& c = cell(context, provider);
  ++c.count;
  switch (mode_.kind) {
    case EstimatorKind::full_mean:
      c.sum += sample;
      break;
    case EstimatorKind::window:
      c.recent.push_back(sample);
      if (c.recent.size() > mode_.window) c.recent.pop_front();
      break;
    case EstimatorKind::exponential:
      c.smoothed = c.count == 1 ? sample : c.smoothed + mode_.smoothing * (sample - c.smoothed);
      break;
  }
}

double ActionValueTable::value(std::size_t context, ProviderIndex provider) const {
  const Cell& c = cell(context, provider);
  if (c.count == 0) return 0.0;
  switch (mode_.kind) {
    case EstimatorKind::full_mean:
      return c.sum / static_cast<double>(c.count);
    case EstimatorKind::window:
      return std::accumulate(c.recent.begin(), c.recent.end(), 0.0) /
             static_cast<double>(c.recent.size());
    case EstimatorKind::exponential:
      return c.smoothed;
  }
  return 0.0;
}

std::size_t ActionValueTable::count(std::size_t context, ProviderIndex provider) const {
  return cell(context, provider).count;
}

std::vector<double> ActionValueTable::values(std::size_t context) const {
  std::vector<double> out(providers_);
  for (ProviderIndex a = 0; a < providers_; ++a) out[a] = value(context, a);
  return out;
}

nlohmann::json ActionValueTable::to_json() const {
  nlohmann::json q = nlohmann::json::object();
  nlohmann::json counts = nlohmann::json::object();
  nlohmann::json cells = nlohmann::json::object();
  for (std::size_t s = 0; s < contexts_; ++s) {
    const auto key = std::to_string(s + 1);
    for (ProviderIndex a = 0; a < providers_; ++a) {
      const auto akey = std::to_string(a + 1);
      const Cell& c = cell(s, a);
      q[key][akey] = value(s, a);
      counts[key][akey] = c.count;
      cells[key][akey] = {{"sum", c.sum}, {"smoothed", c.smoothed},
                          {"recent", std::vector<double>(c.recent.begin(), c.recent.end())}};
    }
  }
  nlohmann::json j = {{"mode", mode_.label()},
                      {"contexts", contexts_},
                      {"providers", providers_},
                      {"q", q},
                      {"counts", counts},
                      {"cells", cells}};
  return j;
}

ActionValueTable ActionValueTable::from_json(const nlohmann::json& j) {
  ActionValueTable t(j.at("contexts").get<std::size_t>(), j.at("providers").get<std::size_t>(),
                     EstimatorMode::parse(j.at("mode").get<std::string>()));
  for (std::size_t s = 0; s < t.contexts_; ++s) {
    const auto key = std::to_string(s + 1);
    for (ProviderIndex a = 0; a < t.providers_; ++a) {
      const auto akey = std::to_string(a + 1);
      const auto& src = j.at("cells").at(key).at(akey);
      Cell& c = t.cell(s, a);
      c.count = j.at("counts").at(key).at(akey).get<std::size_t>();
      c.sum = src.at("sum").get<double>();
      c.smoothed = src.at("smoothed").get<double>();
      const auto recent = src.at("recent").get<std::vector<double>>();
      c.recent.assign(recent.begin(), recent.end());
    }
  }
  return t;
}

}  // namespace bandsim
