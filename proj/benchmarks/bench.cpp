#include <benchmark/benchmark.h>

#include "bandsim/config.hpp"
#include "bandsim/market.hpp"
#include "bandsim/netsim.hpp"
#include "bandsim/scenario.hpp"
#include "bandsim/trace.hpp"

using namespace bandsim;

static void BM_Sinr36Sites(benchmark::State& state) {
  NetworkModel net(hex_layout(36, 1666.0, {0.6, 0.4}), 30.0, 10e6, 1666.0);
  const RadioParameters radio;
  Rng rng(1);
  std::vector<Point> ues(256);
  for (auto& p : ues) p = uniform_in_disc(8000.0, rng);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sinr(ues[i++ % ues.size()], net, radio));
}
BENCHMARK(BM_Sinr36Sites);

static void BM_TraceGeneration(benchmark::State& state) {
  const auto c = default_config();
  const Deployment dep(c);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(generate_trace(c, dep, ++seed));
}
BENCHMARK(BM_TraceGeneration)->Unit(benchmark::kMillisecond);

static void BM_OneIteration(benchmark::State& state) {
  auto c = default_config();
  const Deployment dep(c);
  const auto trace = generate_trace(c, dep, 1);
  const auto policy = c.policies[static_cast<std::size_t>(state.range(0))];
  for (auto _ : state) benchmark::DoNotOptimize(run_policy(c, trace, policy, 0, 0));
  state.SetLabel(policy.name());
}
BENCHMARK(BM_OneIteration)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

static void BM_LedgerAllocate(benchmark::State& state) {
  Ledger ledger({"exchange"});
  TxPayload dep;
  dep.provider = "ue";
  dep.action = TxAction::deposit;
  dep.amount = Tokens{1} << 50;
  dep.signer = "exchange";
  ledger.execute(dep);
  TxPayload offer;
  offer.provider = "net1";
  offer.action = TxAction::offer;
  offer.price = 100;
  offer.max_allocations = 1;
  offer.signer = "net1";
  TxPayload alloc;
  alloc.provider = "net1";
  alloc.action = TxAction::allocate;
  alloc.price = 100;
  alloc.signer = "ue";
  std::uint64_t epoch = 0;
  for (auto _ : state) {
    ledger.execute(offer);
    alloc.epoch = epoch++;
    benchmark::DoNotOptimize(ledger.execute(alloc));
  }
}
BENCHMARK(BM_LedgerAllocate);

BENCHMARK_MAIN();
