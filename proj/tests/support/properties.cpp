#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <vector>

#include "bandsim/core.hpp"
#include "bandsim/dualspeed.hpp"
#include "bandsim/estimators.hpp"
#include "bandsim/gradient.hpp"
#include "bandsim/market.hpp"
#include "bandsim/qlearning.hpp"
#include "bandsim/random.hpp"
#include "bandsim/selection.hpp"

namespace bandsim::props {

namespace {

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

Matrix random_stochastic(std::size_t n, Rng& rng) {
  Matrix m(n, std::vector<double>(n));
  for (auto& row : m) {
    double s = 0.0;
    for (auto& x : row) {
      // sprinkle exact zeros
      x = rng.bernoulli(0.2) ? 0.0 : rng.uniform();
      s += x;
    }
    if (s == 0.0) {
      row[rng.index(n)] = 1.0;
      continue;
    }
    for (auto& x : row) x /= s;
  }
  return m;
}

}  // namespace

Check q_fixed_point(std::uint64_t seed) {
  Check out;
  Rng rng(seed);
  // single self-looping state: Q* = r / (1 - gamma)
  for (int trial = 0; trial < 50; ++trial) {
    const double alpha = trial == 0 ? 0.2 : uniform(rng, 0.05, 1.0);
    const double gamma = trial == 0 ? 0.7 : uniform(rng, 0.0, 0.9);
    const double r = trial == 0 ? 1.0 : uniform(rng, -5.0, 5.0);
    QTable q(1, 1, alpha, gamma);
    for (int i = 0; i < 20000; ++i) q.update(0, 0, r, 0);
    const double err = std::abs(q.value(0, 0) - r / (1.0 - gamma));
    out.worst = std::max(out.worst, err);
    ++out.cases;
  }
  // two-state loop 0 -> 1 -> 0 with greedy backup over two actions
  {
    const double g = 0.7, r0 = 1.0, r1 = 2.0;
    QTable q(2, 2, 0.2, g);
    for (int i = 0; i < 20000; ++i) {
      q.update(0, 0, r0, 1);
      q.update(0, 1, 0.0, 0);
      q.update(1, 0, r1, 0);
      q.update(1, 1, 0.0, 1);
    }
    // V0 = r0 + g V1, V1 = r1 + g V0 (both dominated actions are worse)
    const double v0 = (r0 + g * r1) / (1 - g * g);
    const double v1 = r1 + g * v0;
    out.worst = std::max({out.worst, std::abs(q.max_value(0) - v0), std::abs(q.max_value(1) - v1)});
    ++out.cases;
  }
  out.ok = out.worst < 1e-6;
  return out;
}

Check softmax_normalization(std::uint64_t seed, std::size_t cases) {
  Check out;
  Rng rng(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    const std::size_t k = 1 + rng.index(12);
    std::vector<double> h(k);
    for (auto& x : h) x = uniform(rng, -50.0, 50.0);
    const auto p = softmax(h);
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    out.worst = std::max(out.worst, std::abs(sum - 1.0));
    const double c = uniform(rng, -1000.0, 1000.0);
    auto shifted = h;
    for (auto& x : shifted) x += c;
    const auto q = softmax(shifted);
    for (std::size_t j = 0; j < k; ++j) {
      out.worst = std::max(out.worst, std::abs(p[j] - q[j]));
      if (!(p[j] >= 0.0)) out.worst = std::max(out.worst, 1.0);
    }
    ++out.cases;
  }
  out.ok = out.worst <= 1e-12;
  return out;
}

Check ucb_zero_is_greedy(std::uint64_t seed, std::size_t tables) {
  Check out;
  Rng gen(seed);
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < tables; ++i) {
    const std::size_t k = 2 + gen.index(6);
    ActionValueTable t(1, k);
    for (std::size_t a = 0; a < k; ++a) {
      // some arms untried, some exact ties
      const std::size_t pulls = gen.index(4);
      for (std::size_t n = 0; n < pulls; ++n)
        t.record(0, a, gen.bernoulli(0.3) ? 1.0 : std::floor(uniform(gen, -3.0, 4.0)));
    }
    const std::uint64_t s = gen();
    Rng r1(s), r2(s);
    const auto values = t.values(0);
    for (std::size_t step = 1; step <= 5; ++step) {
      const auto u = ucb_select(t, 0, step, 0.0, r1);
      const auto g = argmax_random_tie(values, r2);
      if (u != g) ++mismatches;
    }
    ++out.cases;
  }
  out.worst = static_cast<double>(mismatches);
  out.ok = mismatches == 0;
  return out;
}

Check unpopular_rows(std::uint64_t seed, std::size_t inputs) {
  Check out;
  Rng rng(seed);
  for (std::size_t i = 0; i < inputs; ++i) {
    const std::size_t n = 1 + rng.index(8);
    const Matrix p = random_stochastic(n, rng);
    std::vector<double> eps(n);
    for (auto& e : eps) e = rng.bernoulli(0.1) ? static_cast<double>(rng.index(2)) : rng.uniform();
    const Matrix u = unpopular_matrix(p, eps);
    for (std::size_t r = 0; r < n; ++r) {
      double s = 0.0;
      for (double x : u[r]) {
        if (x < 0.0) out.worst = std::max(out.worst, -x);
        s += x;
      }
      out.worst = std::max(out.worst, std::abs(s - 1.0));
    }
    const Matrix ident = unpopular_matrix(p, std::vector<double>(n, 0.0));
    const Matrix same = unpopular_matrix(p, std::vector<double>(n, 1.0));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        out.worst = std::max(out.worst, std::abs(ident[r][c] - (r == c ? 1.0 : 0.0)));
        out.worst = std::max(out.worst, std::abs(same[r][c] - p[r][c]));
      }
    ++out.cases;
  }
  out.ok = out.worst <= 1e-12;
  return out;
}

Check ledger_conservation(std::uint64_t seed, std::size_t transactions) {
  Check out;
  Rng rng(seed);
  const std::vector<std::string> providers{"net1", "net2", "net3"};
  const std::vector<std::string> users{"ue1", "ue2", "ue3", "ue4"};
  Ledger ledger({"exchange"});
  Tokens minted = 0;
  std::size_t rejected = 0;

  for (std::size_t i = 0; i < transactions; ++i) {
    TxPayload p;
    const double roll = rng.uniform();
    if (roll < 0.15) {
      p.action = TxAction::offer;
      p.provider = providers[rng.index(providers.size())];
      p.signer = p.provider;
      p.from_frequency = 0;
      p.to_frequency = 9999;
      p.bandwidth = 10000;
      p.price = 50 + static_cast<Tokens>(rng.index(500));
      p.max_allocations = static_cast<std::uint32_t>(1 + rng.index(3));
    } else if (roll < 0.30) {
      p.action = TxAction::deposit;
      p.provider = users[rng.index(users.size())];
      p.signer = rng.bernoulli(0.9) ? "exchange" : "mallory";
      p.amount = static_cast<Tokens>(1 + rng.index(2000));
    } else if (roll < 0.40) {
      p.action = TxAction::withdraw;
      p.provider = rng.bernoulli(0.7) ? users[rng.index(users.size())] : providers[rng.index(3)];
      p.signer = rng.bernoulli(0.9) ? "exchange" : "mallory";
      p.amount = static_cast<Tokens>(1 + rng.index(1500));
    } else {
      p.action = TxAction::allocate;
      p.provider = providers[rng.index(providers.size())];
      p.signer = users[rng.index(users.size())];
      const auto o = ledger.offer(p.provider);
      p.epoch = o && rng.bernoulli(0.9) ? o->epoch : rng.index(5);
      p.price = o && rng.bernoulli(0.9) ? o->price : static_cast<Tokens>(1 + rng.index(600));
    }
    const Tokens before = ledger.total_supply();
    const auto res = ledger.execute(p);
    const Tokens delta = ledger.total_supply() - before;
    if (!res.accepted) {
      ++rejected;
      if (delta != 0) out.ok = false;
    } else if (p.action == TxAction::deposit) {
      minted += *p.amount;
      if (delta != *p.amount) out.ok = false;
    } else if (p.action == TxAction::withdraw) {
      minted -= *p.amount;
      if (delta != -*p.amount) out.ok = false;
    } else if (delta != 0) {
      out.ok = false;
    }
    for (const auto& a : users)
      if (ledger.balance(a) < 0) out.ok = false;
    for (const auto& a : providers)
      if (ledger.balance(a) < 0) out.ok = false;
    ++out.cases;
  }
  if (ledger.total_supply() != minted) out.ok = false;

  const Ledger again = Ledger::replay(ledger.trusted_exchanges(), ledger.log());
  if (again.state_hash() != ledger.state_hash()) out.ok = false;
  for (std::size_t i = 0; i < ledger.log().size(); ++i) {
    const auto& a = ledger.log()[i].result;
    const auto& b = again.log()[i].result;
    if (a.accepted != b.accepted || a.reason != b.reason || a.state_hash != b.state_hash) {
      out.ok = false;
      break;
    }
  }
  std::stringstream ndjson;
  ledger.write_ndjson(ndjson);
  const Ledger from_file = Ledger::replay(ledger.trusted_exchanges(), Ledger::read_ndjson(ndjson));
  if (from_file.state_hash() != ledger.state_hash()) out.ok = false;

  out.worst = static_cast<double>(std::llabs(ledger.total_supply() - minted));
  out.detail = std::to_string(rejected) + " rejected";
  return out;
}

Check estimator_brute_force(std::uint64_t seed, std::size_t logs) {
  Check out;
  Rng rng(seed);
  for (std::size_t i = 0; i < logs; ++i) {
    EstimatorMode mode;
    switch (rng.index(3)) {
      case 0: mode = EstimatorMode::full_mean(); break;
      case 1: mode = EstimatorMode::last(1 + rng.index(6)); break;
      default: mode = EstimatorMode::exponential(uniform(rng, 0.01, 0.99)); break;
    }
    const std::size_t contexts = 1 + rng.index(3), k = 1 + rng.index(4);
    ActionValueTable t(contexts, k, mode);
    std::vector<std::vector<std::vector<double>>> log(contexts, std::vector<std::vector<double>>(k));
    const std::size_t len = rng.index(60);
    for (std::size_t n = 0; n < len; ++n) {
      const std::size_t c = rng.index(contexts), a = rng.index(k);
      const double x = uniform(rng, -10.0, 10.0);
      t.record(c, a, x);
      log[c][a].push_back(x);
    }
    for (std::size_t c = 0; c < contexts; ++c)
      for (std::size_t a = 0; a < k; ++a) {
        const auto& xs = log[c][a];
        double expect = 0.0;
        if (!xs.empty()) {
          if (mode.kind == EstimatorKind::full_mean) {
            for (double x : xs) expect += x;
            expect /= static_cast<double>(xs.size());
          } else if (mode.kind == EstimatorKind::window) {
            const std::size_t from = xs.size() > mode.window ? xs.size() - mode.window : 0;
            for (std::size_t j = from; j < xs.size(); ++j) expect += xs[j];
            expect /= static_cast<double>(xs.size() - from);
          } else {
            expect = xs[0];
            for (std::size_t j = 1; j < xs.size(); ++j) expect = (1 - mode.smoothing) * expect + mode.smoothing * xs[j];
          }
        }
        out.worst = std::max(out.worst, std::abs(t.value(c, a) - expect));
        if (t.count(c, a) != xs.size()) out.worst = std::max(out.worst, 1.0);
      }
    ++out.cases;
  }
  out.ok = out.worst <= 1e-9;
  return out;
}

Check decile_monotone(std::uint64_t seed, std::size_t histories) {
  Check out;
  Rng rng(seed);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < histories; ++i) {
    const std::size_t n = 1 + rng.index(200);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.bernoulli(0.3) ? std::floor(uniform(rng, 0, 10)) : uniform(rng, 0, 10);
    DecileHistory h(v);
    std::vector<double> xs(64);
    for (auto& x : xs) x = uniform(rng, -1.0, 11.0);
    for (double x : v) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    int prev = 1;
    for (double x : xs) {
      const int r = decile_rank(h, x);
      if (r < prev || r < 1 || r > 10) ++violations;
      prev = r;
    }
    if (decile_rank(h, *std::max_element(v.begin(), v.end())) != 10) ++violations;
    ++out.cases;
  }
  out.worst = static_cast<double>(violations);
  out.ok = violations == 0;
  return out;
}

}  // namespace bandsim::props
