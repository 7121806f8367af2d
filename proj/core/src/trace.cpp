#include "bandsim/trace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bandsim/market.hpp"
#include "bandsim/selection.hpp"

namespace bandsim {

Deployment::Deployment(const RunConfig& config) {
  radio = config.radio.params;
  for (const auto& n : config.networks) {
    networks.emplace_back(hex_layout(n.bs_count, config.general.cell_radius_m, n.offset),
                          n.power_dbm, n.bandwidth_mhz * 1e6, config.general.cell_radius_m,
                          n.offset);
  }
  background_radius_m = config.radio.background_radius_m;
  if (background_radius_m == 0.0)
    for (const auto& net : networks)
      for (const auto& p : net.bs_positions())
        background_radius_m = std::max(background_radius_m, distance(p, {0.0, 0.0}));
}

std::uint64_t iteration_seed(std::uint64_t run_seed, std::size_t i) noexcept {
  return derive_seed(run_seed, {stream::iteration, static_cast<std::uint64_t>(i)});
}

ScenarioTrace generate_trace(const RunConfig& config, const Deployment& dep, std::uint64_t seed) {
  const auto& g = config.general;
  const std::size_t steps = g.steps;
  const std::size_t duts = g.dut_count;
  const std::size_t k = config.networks.size();

  ScenarioTrace tr;
  tr.seed = seed;

  {
    Rng rng(derive_seed(seed, {stream::prices}));
    const auto ranges = config.price_ranges();
    tr.prices.assign(steps, std::vector<double>(k));
    tr.price_levels.assign(steps, std::vector<std::size_t>(k));
    for (std::size_t t = 0; t < steps; ++t)
      for (std::size_t a = 0; a < k; ++a) {
        tr.prices[t][a] = next_price(ranges[a], rng);
        tr.price_levels[t][a] = tr.prices[t][a] == ranges[a].min_cost ? 0 : 1;
      }
    if (config.dual_speed) {
      const auto pi = stationary_distribution(config.dual_speed->p_pop);
      tr.initial_price_states.resize(k);
      for (auto& s : tr.initial_price_states) s = sample_index(pi, rng);
    }
  }

  tr.apps.assign(duts, std::vector<AppId>(steps));
  for (std::size_t d = 0; d < duts; ++d) {
    Rng rng(derive_seed(seed, {stream::apps, d}));
    const auto& demand = config.demand_for(d);
    auto chain = AppChain::stationary_start(demand.apps, demand.transition, rng);
    for (std::size_t t = 0; t < steps; ++t) {
      tr.apps[d][t] = chain.current();
      chain.next_app(rng);
    }
  }

  const double walk = g.effective_walk_length();
  tr.start.resize(duts);
  tr.positions.assign(duts, std::vector<Point>(steps));
  for (std::size_t d = 0; d < duts; ++d) {
    Rng rng(derive_seed(seed, {stream::mobility, d}));
    MobilityState m{{0.0, 0.0}, 2.0 * std::numbers::pi * rng.uniform(), walk};
    tr.start[d] = m;
    for (std::size_t t = 0; t < steps; ++t) {
      tr.positions[d][t] = m.position;
      m = mobility_step(m);
    }
  }

  tr.background.resize(k);
  tr.attached.resize(k);
  for (std::size_t a = 0; a < k; ++a) {
    Rng rng(derive_seed(seed, {stream::background, a}));
    const auto& net = dep.networks[a];
    tr.attached[a].assign(net.size(), 0);
    for (std::size_t u = 0; u < config.networks[a].background_ues; ++u) {
      const Point p = uniform_in_disc(dep.background_radius_m, rng);
      tr.background[a].push_back(p);
      ++tr.attached[a][sinr(p, net, dep.radio).serving];
    }
  }

  tr.links.assign(duts, std::vector<std::vector<LinkSample>>(steps, std::vector<LinkSample>(k)));
  for (std::size_t d = 0; d < duts; ++d)
    for (std::size_t t = 0; t < steps; ++t)
      for (std::size_t a = 0; a < k; ++a) {
        const auto& net = dep.networks[a];
        const auto s = sinr(tr.positions[d][t], net, dep.radio);
        tr.links[d][t][a] = {s.linear, s.serving,
                             max_throughput_mbps(s.linear, net.bandwidth_hz(), 1,
                                                 dep.radio.spectral_efficiency_cap)};
      }

  tr.training.assign(duts, std::vector<ProviderIndex>(steps));
  for (std::size_t d = 0; d < duts; ++d) {
    Rng rng(derive_seed(seed, {stream::training, d}));
    for (auto& c : tr.training[d]) c = random_select(k, rng);
  }
  return tr;
}

}  // namespace bandsim
