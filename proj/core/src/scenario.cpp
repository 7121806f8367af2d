#include "bandsim/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "bandsim/rewards.hpp"

namespace bandsim {
namespace {

constexpr const char* kExchange = "exchange";

std::string dut_account(std::size_t d) { return "dut-" + std::to_string(d + 1); }

// Per-DUT reward bookkeeping for the non-utility reward modes.
class RewardModel {
 public:
  RewardModel(const RewardConfig& cfg, std::size_t apps, std::size_t providers)
      : cfg_(cfg), providers_(providers), history_(apps * providers),
        budget_(cfg.near_term_limit, cfg.near_term_period, cfg.long_term_limit,
                cfg.long_term_period, cfg.beta_long, cfg.extension_factor) {
    plan_.beta = cfg.prepaid_beta;
    plan_.total_data_used = 0.0;
  }

  double reward(const AppProfile& app, ProviderIndex provider, double thr, double price,
                std::size_t step) {
    const double utility = app_utility(app, thr, price);
    if (cfg_.mode == RewardMode::utility) return utility;

    // QoE is the price-free utility, ranked against this (app, provider)'s past
    DecileHistory& h = history_[app.id * providers_ + provider];
    const double qoe = app_utility(app, thr, 1.0);
    std::optional<int> rank;
    if (!h.empty()) rank = decile_rank(h, qoe);
    h.add(qoe);

    switch (cfg_.mode) {
      case RewardMode::decile:
        return rank ? plan_reward(*rank, price) : utility;
      case RewardMode::prepaid: {
        plan_.plan_price = price;
        plan_.life_remaining = std::max(1.0, cfg_.plan_life_steps - static_cast<double>(step));
        const double r = prepaid_reward(rank.value_or(10), plan_);
        plan_.consume(cfg_.data_per_step);
        return r;
      }
      case RewardMode::budget: {
        budget_.advance_to(step);
        const double r = budget_reward(rank.value_or(10), price, budget_.state_after(price));
        if (budget_.can_spend(price)) budget_.spend(price);
        return r;
      }
      case RewardMode::utility: break;
    }
    return utility;
  }

 private:
  RewardConfig cfg_;
  std::size_t providers_;
  std::vector<DecileHistory> history_;
  PrepaidPlanState plan_;
  BudgetLedger budget_;
};

}  // namespace

std::size_t RunResult::policy_index(const std::string& name) const {
  auto it = std::find(policies.begin(), policies.end(), name);
  if (it == policies.end()) throw Error(ErrorCode::invalid_argument, "no policy named '" + name + "'");
  return static_cast<std::size_t>(it - policies.begin());
}

double RunResult::mean_welfare(const std::string& name) const {
  return mean(welfare[policy_index(name)]);
}

PolicyRun run_policy(const RunConfig& config, const ScenarioTrace& tr,
                     const PolicySpec& policy, std::size_t iteration, std::size_t policy_index,
                     const RunOptions& options) {
  const auto& g = config.general;
  const std::size_t steps = g.steps;
  const std::size_t duts = g.dut_count;
  const std::size_t k = config.networks.size();
  const std::size_t price_levels = config.dual_speed ? config.dual_speed->p_pop.size() : 2;

  std::vector<std::unique_ptr<Agent>> agents;
  std::vector<Rng> rngs;
  std::vector<RewardModel> rewards;
  for (std::size_t d = 0; d < duts; ++d) {
    const auto& demand = config.demand_for(d);
    agents.push_back(make_agent(policy, demand.apps, k, price_levels));
    rngs.emplace_back(derive_seed(tr.seed, {stream::policy, d}));
    rewards.emplace_back(config.reward, demand.apps.size(), k);
  }

  Ledger ledger({kExchange});
  double top_price = 0.0;
  for (const auto& row : tr.prices)
    for (double p : row) top_price = std::max(top_price, p);
  if (config.dual_speed)
    for (double p : config.dual_speed->price_labels) top_price = std::max(top_price, p);
  for (std::size_t d = 0; d < duts; ++d) {
    TxPayload fund;
    fund.provider = dut_account(d);
    fund.action = TxAction::deposit;
    fund.signer = kExchange;
    fund.amount = to_tokens(top_price) * static_cast<Tokens>(steps);
    ledger.execute(fund);
  }

  Rng price_rng(derive_seed(tr.seed, {stream::dual_speed}));
  std::vector<std::size_t> price_states = tr.initial_price_states;
  std::vector<std::size_t> prev_counts(k, 0);

  PolicyRun run;
  double discount = 1.0;
  std::vector<Observation> obs(duts);
  std::vector<ProviderIndex> choice(duts);
  for (std::size_t t = 0; t < steps; ++t) {
    std::vector<double> prices = tr.prices[t];
    std::vector<std::size_t> levels = tr.price_levels[t];
    std::vector<bool> popular;
    if (config.dual_speed) {
      const auto& ds = *config.dual_speed;
      for (std::size_t a = 0; a < k; ++a) {
        prices[a] = ds.price_labels[price_states[a]];
        levels[a] = price_states[a];
        popular.push_back(prev_counts[a] > ds.popularity_threshold);
      }
    }

    // providers post this step's offers
    std::vector<std::uint64_t> epochs(k);
    for (std::size_t a = 0; a < k; ++a) {
      const auto& net = config.networks[a];
      TxPayload offer;
      offer.provider = net.name;
      offer.action = TxAction::offer;
      offer.signer = net.name;
      const auto bw_khz = static_cast<std::int64_t>(std::llround(net.bandwidth_mhz * 1000.0));
      offer.from_frequency = static_cast<std::int64_t>(a) * bw_khz;
      offer.to_frequency = static_cast<std::int64_t>(a + 1) * bw_khz - 1;
      offer.bandwidth = bw_khz;
      offer.price = to_tokens(prices[a]);
      offer.max_allocations = static_cast<std::uint32_t>(duts);
      ledger.execute(offer);
      epochs[a] = ledger.offer(net.name)->epoch;
    }

    for (std::size_t d = 0; d < duts; ++d) {
      Observation& o = obs[d];
      o.step = t;
      o.app = tr.apps[d][t];
      o.prices = prices;
      o.price_levels = levels;
      o.popular = popular;
      o.sinr.resize(k);
      for (std::size_t a = 0; a < k; ++a) o.sinr[a] = std::max(tr.links[d][t][a].sinr, 1e-300);
      agents[d]->observe(o);
      const bool training = t < g.training_steps + d * g.training_stagger;
      choice[d] = training ? tr.training[d][t] : agents[d]->choose(o, rngs[d]);
    }

    std::vector<std::size_t> counts(k, 0);
    double step_reward = 0.0;
    for (std::size_t d = 0; d < duts; ++d) {
      const ProviderIndex c = choice[d];
      ++counts[c];
      const auto& net = config.networks[c];
      TxPayload buy;
      buy.provider = net.name;
      buy.action = TxAction::allocate;
      buy.signer = dut_account(d);
      buy.epoch = epochs[c];
      buy.price = to_tokens(prices[c]);
      const auto res = ledger.execute(buy);
      if (!res.accepted)
        throw std::runtime_error("allocation by " + buy.signer + " on " + net.name + " " +
                                 res.describe());

      const LinkSample& link = tr.links[d][t][c];
      std::size_t sharing = tr.attached[c][link.serving];
      for (std::size_t e = 0; e < duts; ++e)
        if (choice[e] == c && tr.links[e][t][c].serving == link.serving) ++sharing;
      const double thr = link.capacity_mbps / static_cast<double>(sharing);
      const auto& app = config.demand_for(d).apps[obs[d].app];
      const double r = rewards[d].reward(app, c, thr, prices[c], t);
      agents[d]->learn(obs[d], {c, thr, prices[c], r});
      run.welfare += r;
      step_reward += r;
      if (options.record_steps)
        run.steps.push_back({iteration, t, d, policy_index, c, obs[d].app, prices[c], thr, r,
                             t < g.training_steps + d * g.training_stagger});
    }
    run.discounted_return += discount * step_reward;
    discount *= options.return_discount;

    if (config.dual_speed) {
      price_states = step_prices(*config.dual_speed, price_states, counts, price_rng);
      prev_counts = counts;
    }
  }
  if (options.record_ledger) run.ledger = ledger.log();
  return run;
}

RunResult run_scenario(const RunConfig& config, const RunOptions& options) {
  config.validate();
  const Deployment deployment(config);
  const std::size_t iterations = config.general.iterations;
  const std::size_t np = config.policies.size();

  RunResult result;
  result.seed = config.general.seed;
  for (const auto& p : config.policies) result.policies.push_back(p.name());
  result.welfare.assign(np, std::vector<double>(iterations));
  result.discounted_return.assign(np, std::vector<double>(iterations));
  result.ledger.resize(np);
  std::vector<std::vector<std::vector<StepRecord>>> steps(
      iterations, std::vector<std::vector<StepRecord>>(np));

  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::size_t done = 0;
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= iterations) return;
      try {
        const auto trace = generate_trace(config, deployment, iteration_seed(config.general.seed, i));
        for (std::size_t p = 0; p < np; ++p) {
          RunOptions opts = options;
          opts.record_ledger = options.record_ledger && i == 0;
          auto run = run_policy(config, trace, config.policies[p], i, p, opts);
          result.welfare[p][i] = run.welfare;
          result.discounted_return[p][i] = run.discounted_return;
          steps[i][p] = std::move(run.steps);
          if (opts.record_ledger) result.ledger[p] = std::move(run.ledger);
        }
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        next = iterations;
        return;
      }
      std::lock_guard lock(mutex);
      ++done;
      if (options.progress) options.progress(done, iterations);
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(options.parallel, 1, iterations);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  if (options.record_steps)
    for (auto& per_iter : steps)
      for (auto& per_policy : per_iter)
        result.steps.insert(result.steps.end(), per_policy.begin(), per_policy.end());
  return result;
}

Comparison compare(const RunResult& result, const std::string& policy, const std::string& baseline,
                   std::size_t comparisons) {
  const auto& a = result.welfare[result.policy_index(policy)];
  const auto& b = result.welfare[result.policy_index(baseline)];
  Comparison c;
  c.policy = policy;
  c.baseline = baseline;
  c.policy_mean = mean(a);
  c.baseline_mean = mean(b);
  c.improvement = improvement(c.policy_mean, c.baseline_mean);
  const auto ba = block_means(a, 2);
  const auto bb = block_means(b, 2);
  if (ba.size() >= 2) c.test = paired_t_test(ba, bb, comparisons);
  return c;
}

std::vector<Comparison> compare_against_all(const RunResult& result, const std::string& subject) {
  std::vector<Comparison> out;
  const std::size_t n = result.policies.size() - 1;
  for (const auto& p : result.policies)
    if (p != subject) out.push_back(compare(result, subject, p, n));
  return out;
}

std::vector<Comparison> compare_to_baseline(const RunResult& result, const std::string& baseline) {
  std::vector<Comparison> out;
  const std::size_t n = result.policies.size() - 1;
  for (const auto& p : result.policies)
    if (p != baseline) out.push_back(compare(result, p, baseline, n));
  return out;
}

}  // namespace bandsim
