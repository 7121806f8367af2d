#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string("BANDSIM_LOG=off ") + BANDSIM_CLI + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("bandsim_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string first_line(const fs::path& f) {
  std::ifstream in(f);
  std::string line;
  std::getline(in, line);
  return line;
}

void write(const fs::path& f, const std::string& text) { std::ofstream(f) << text; }

}  // namespace

TEST(Cli, ConfigPrintsDefaults) {
  const auto r = cli("config");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["general"]["steps"], 200);
}

TEST(Cli, SimulateWritesOutputs) {
  const auto d = scratch("sim");
  write(d / "c.json", R"({"general": {"iterations": 2, "steps": 10, "training_steps": 3},
                          "ledger_log": "ledger.ndjson"})");
  const auto r = cli("simulate --config " + (d / "c.json").string() + " --out " + (d / "o").string() +
                     " --seed 3 --policies ExpectedUtility,random --parallel 1");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(first_line(d / "o" / "iterations.csv"), "iteration,policy,welfare");
  EXPECT_EQ(first_line(d / "o" / "steps.csv"),
            "iter,step,dut,policy,provider,app,price,throughput_mbps,reward");
  std::ifstream s(d / "o" / "summary.json");
  const auto j = nlohmann::json::parse(s);
  ASSERT_EQ(j["comparisons"].size(), 1u);
  for (const char* k : {"improvement", "t", "p"}) EXPECT_TRUE(j["comparisons"][0].contains(k));
  const auto entry = nlohmann::json::parse(first_line(d / "o" / "ledger.ndjson"));
  EXPECT_TRUE(entry.contains("payload"));
}

TEST(Cli, SameSeedSameOutput) {
  const auto d = scratch("seed");
  const std::string common = " --preset fixed-location-fixed-price --iterations 2 --seed 9 --no-steps";
  ASSERT_EQ(cli("simulate" + common + " --out " + (d / "a").string()).code, 0);
  ASSERT_EQ(cli("simulate" + common + " --parallel 2 --out " + (d / "b").string()).code, 0);
  std::ifstream a(d / "a" / "iterations.csv"), b(d / "b" / "iterations.csv");
  EXPECT_EQ(std::string(std::istreambuf_iterator<char>(a), {}), std::string(std::istreambuf_iterator<char>(b), {}));
}

TEST(Cli, TestbedAndSweep) {
  const auto d = scratch("tb");
  auto r = cli("testbed --out " + d.string() + " --seed 1");
  ASSERT_EQ(r.code, 0);
  std::ifstream in(d / "testbed.json");
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["optimal_assignment"], nlohmann::json::array({2, 1}));
  EXPECT_EQ(j["duts"][0]["preferred_network"], 2);
  r = cli("training-sweep --out " + d.string() + " --seed 1 --s 2,4 --repetitions 50");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(first_line(d / "training_sweep.csv"),
            "training_steps,repetitions,success,theoretical_success,utility_fraction");
}

TEST(Cli, LedgerExec) {
  const auto d = scratch("ledger");
  write(d / "p.json", R"([
    {"provider": "ue", "action": "deposit", "amount": 5.0, "signer": "exchange"},
    {"provider": "net1", "action": "offer", "from_frequency": 0, "to_frequency": 9999,
     "bandwidth": 10000, "price": 1.5, "max_allocations": 1, "signer": "net1"},
    {"provider": "net1", "action": "allocate", "epoch": 0, "price": 1.5, "signer": "ue"}])");
  const auto r = cli("ledger exec " + (d / "p.json").string() + " --log " + (d / "l.ndjson").string());
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["accepted"], true);
  EXPECT_EQ(j["record"]["allocations_left"], 0);
  EXPECT_TRUE(fs::exists(d / "l.ndjson"));
}

TEST(Cli, ExitCodes) {
  const auto d = scratch("codes");
  write(d / "bad.json", R"({"general": {"stepz": 1}})");
  EXPECT_EQ(cli("simulate --config " + (d / "bad.json").string() + " --seed 1").code, 2);
  EXPECT_EQ(cli("simulate --policies NoSuchPolicy --seed 1").code, 2);
  EXPECT_EQ(cli("simulate --bogus").code, 2);
  write(d / "blocker", "x");
  EXPECT_EQ(cli("simulate --iterations 2 --seed 1 --no-steps --out " + (d / "blocker" / "o").string()).code, 3);
}
