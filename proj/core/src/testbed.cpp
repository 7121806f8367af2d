#include "bandsim/testbed.hpp"

#include <cmath>
#include <limits>

#include "bandsim/agents.hpp"
#include "bandsim/rewards.hpp"
#include "bandsim/selection.hpp"

namespace bandsim {

CapacityTable::CapacityTable(std::size_t networks, std::size_t duts,
                             const std::vector<CapacityEntry>& entries)
    : networks_(networks), duts_(duts) {
  if (networks == 0 || duts == 0)
    throw Error(ErrorCode::invalid_argument, "capacity table needs networks and DUTs");
  for (const auto& e : entries) {
    if (e.networks.size() != duts || e.throughput_mbps.size() != duts)
      throw Error(ErrorCode::invalid_argument, "capacity entry size mismatch");
    for (auto n : e.networks)
      if (n >= networks) throw Error(ErrorCode::invalid_argument, "capacity entry network out of range");
    if (!table_.emplace(e.networks, e.throughput_mbps).second)
      throw Error(ErrorCode::invalid_argument, "duplicate capacity entry");
  }
  for (const auto& a : assignments())
    if (!table_.contains(a)) throw Error(ErrorCode::invalid_argument, "capacity table is incomplete");
}

const std::vector<double>& CapacityTable::throughput(const Assignment& a) const {
  auto it = table_.find(a);
  if (it == table_.end()) throw Error(ErrorCode::invalid_argument, "assignment not in capacity table");
  return it->second;
}

std::vector<Assignment> CapacityTable::assignments() const {
  std::vector<Assignment> out;
  Assignment a(duts_, 0);
  for (;;) {
    out.push_back(a);
    std::size_t i = duts_;
    while (i > 0) {
      --i;
      if (++a[i] < networks_) break;
      a[i] = 0;
      if (i == 0) return out;
    }
  }
}

double CapacityTable::mean_throughput(std::size_t dut, std::size_t network) const {
  double total = 0.0;
  std::size_t n = 0;
  for (const auto& [a, thr] : table_) {
    if (a[dut] != network) continue;
    total += thr[dut];
    ++n;
  }
  return total / static_cast<double>(n);
}

double aggregate_utility(const CapacityTable& table, const std::vector<AppProfile>& apps,
                         const std::vector<double>& prices, const Assignment& a) {
  const auto& thr = table.throughput(a);
  double total = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) total += app_utility(apps[d], thr[d], prices[a[d]]);
  return total;
}

Assignment optimal_allocation(const CapacityTable& table, const std::vector<AppProfile>& apps,
                              const std::vector<double>& prices) {
  Assignment best;
  double best_value = -std::numeric_limits<double>::infinity();
  for (const auto& a : table.assignments()) {
    const double v = aggregate_utility(table, apps, prices, a);
    if (v > best_value) {
      best_value = v;
      best = a;
    }
  }
  return best;
}

double theoretical_success(double samples) { return 1.0 - std::pow(0.5, 0.5 * samples); }

TestbedAnalytics analyze(const TestbedConfig& t) {
  const CapacityTable table(t.prices.size(), t.apps.size(), t.capacity);
  TestbedAnalytics out;
  for (std::size_t d = 0; d < t.apps.size(); ++d) {
    std::vector<double> thr, util;
    for (std::size_t n = 0; n < t.prices.size(); ++n) {
      thr.push_back(table.mean_throughput(d, n));
      util.push_back(app_utility(t.apps[d], thr.back(), t.prices[n]));
    }
    out.preferred.push_back(argmax_set(util).front());
    out.mean_throughput.push_back(std::move(thr));
    out.utility.push_back(std::move(util));
  }
  out.optimal = optimal_allocation(table, t.apps, t.prices);
  out.optimal_utility = aggregate_utility(table, t.apps, t.prices, out.optimal);
  return out;
}

namespace {

struct Episode {
  std::vector<bool> optimal;        // [step]
  std::vector<double> utility;      // [step]
};

// One repetition: random picks for `training` steps, ExpectedUtility after.
Episode run_episode(const TestbedConfig& t, const CapacityTable& table, std::size_t training,
                    std::size_t steps, const Assignment& optimum, Rng& rng) {
  const std::size_t duts = t.apps.size();
  const std::size_t k = t.prices.size();
  PolicySpec spec = PolicySpec::of(PolicyKind::expected_utility);
  spec.estimator = t.estimator;
  std::vector<std::unique_ptr<Agent>> agents;
  for (std::size_t d = 0; d < duts; ++d) {
    AppProfile app = t.apps[d];
    app.id = 0;
    agents.push_back(make_agent(spec, std::span<const AppProfile>(&app, 1), k));
  }
  Observation obs;
  obs.app = 0;
  obs.prices = t.prices;
  Episode ep;
  Assignment a(duts);
  for (std::size_t s = 0; s < steps; ++s) {
    obs.step = s;
    for (std::size_t d = 0; d < duts; ++d)
      a[d] = s < training ? random_select(k, rng) : agents[d]->choose(obs, rng);
    const auto& thr = table.throughput(a);
    double total = 0.0;
    for (std::size_t d = 0; d < duts; ++d) {
      const double u = app_utility(t.apps[d], thr[d], t.prices[a[d]]);
      total += u;
      agents[d]->learn(obs, {a[d], thr[d], t.prices[a[d]], u});
    }
    ep.optimal.push_back(a == optimum);
    ep.utility.push_back(total);
  }
  return ep;
}

}  // namespace

std::vector<SweepPoint> training_sweep(const TestbedConfig& t, std::uint64_t seed) {
  const CapacityTable table(t.prices.size(), t.apps.size(), t.capacity);
  const Assignment optimum = optimal_allocation(table, t.apps, t.prices);
  const double best = aggregate_utility(table, t.apps, t.prices, optimum);
  std::vector<SweepPoint> out;
  for (std::size_t s : t.training_steps) {
    SweepPoint p;
    p.training_steps = s;
    p.repetitions = t.repetitions;
    p.theoretical = theoretical_success(static_cast<double>(s));
    std::size_t hits = 0;
    double util = 0.0;
    for (std::size_t r = 0; r < t.repetitions; ++r) {
      Rng rng(derive_seed(seed, {s, r}));
      const auto ep = run_episode(t, table, s, s + 1, optimum, rng);
      hits += ep.optimal.back() ? 1 : 0;
      util += ep.utility.back() / best;
    }
    p.success = static_cast<double>(hits) / static_cast<double>(t.repetitions);
    p.utility_fraction = util / static_cast<double>(t.repetitions);
    out.push_back(p);
  }
  return out;
}

TestbedSeries testbed_mode(const TestbedConfig& t, std::size_t training_steps, std::uint64_t seed) {
  const CapacityTable table(t.prices.size(), t.apps.size(), t.capacity);
  const Assignment optimum = optimal_allocation(table, t.apps, t.prices);
  const double best = aggregate_utility(table, t.apps, t.prices, optimum);
  TestbedSeries out;
  out.success.assign(t.steps, 0.0);
  out.utility_fraction.assign(t.steps, 0.0);
  for (std::size_t r = 0; r < t.repetitions; ++r) {
    Rng rng(derive_seed(seed, {training_steps, r, 0x7e57}));
    const auto ep = run_episode(t, table, training_steps, t.steps, optimum, rng);
    for (std::size_t s = 0; s < t.steps; ++s) {
      out.success[s] += ep.optimal[s] ? 1.0 : 0.0;
      out.utility_fraction[s] += ep.utility[s] / best;
    }
  }
  for (std::size_t s = 0; s < t.steps; ++s) {
    out.success[s] /= static_cast<double>(t.repetitions);
    out.utility_fraction[s] /= static_cast<double>(t.repetitions);
  }
  return out;
}

}  // namespace bandsim
