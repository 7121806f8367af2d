#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "bandsim/config.hpp"
#include "bandsim/market.hpp"
#include "bandsim/report.hpp"
#include "bandsim/scenario.hpp"
#include "bandsim/testbed.hpp"

namespace fs = std::filesystem;
using namespace bandsim;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

struct CommonArgs {
  std::string config;
  std::string preset;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::vector<std::string> policies;
  std::optional<std::size_t> iterations;
  std::size_t parallel = 1;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_policies = true) {
  cmd->add_option("--config", a.config, "JSON run configuration");
  cmd->add_option("--preset", a.preset, "built-in configuration preset");
  cmd->add_option("--out", a.out, "output directory");
  cmd->add_option("--seed", a.seed, "run seed (default: from entropy, printed)");
  if (with_policies)
    cmd->add_option("--policies", a.policies, "policies to run (comma separated)")->delimiter(',');
  cmd->add_option("--iterations", a.iterations, "override the iteration count");
  cmd->add_option("--parallel", a.parallel, "worker threads for iterations")->check(CLI::PositiveNumber);
}

RunConfig load_config(const CommonArgs& a, bool entropy_seed = true) {
  if (!a.config.empty() && !a.preset.empty())
    throw Error(ErrorCode::config, "--config and --preset are mutually exclusive");
  RunConfig c = !a.config.empty() ? RunConfig::load(a.config)
              : !a.preset.empty() ? preset(a.preset)
                                  : default_config();
  if (a.iterations) c.general.iterations = *a.iterations;
  if (a.seed) {
    c.general.seed = *a.seed;
  } else if (entropy_seed) {
    std::random_device rd;
    c.general.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cerr << "seed: " << c.general.seed << '\n';
  }
  if (!a.policies.empty()) {
    std::vector<PolicySpec> chosen;
    for (const auto& name : a.policies) {
      auto it = std::find_if(c.policies.begin(), c.policies.end(), [&](const PolicySpec& p) {
        return p.name() == name || to_string(p.kind) == name;
      });
      if (it != c.policies.end()) {
        chosen.push_back(*it);
      } else {
        try {
          chosen.push_back(PolicySpec::of(policy_kind_from_string(name)));
        } catch (const Error& e) {
          throw Error(ErrorCode::config, e.what());
        }
      }
    }
    c.policies = chosen;
  }
  c.validate();
  return c;
}

RunOptions run_options(const CommonArgs& a, bool record_steps, bool record_ledger) {
  RunOptions o;
  o.parallel = a.parallel;
  o.record_steps = record_steps;
  o.record_ledger = record_ledger;
  o.progress = [](std::size_t done, std::size_t total) {
    spdlog::debug("iteration {}/{}", done, total);
  };
  return o;
}

std::string csv(void (*writer)(std::ostream&, const RunResult&), const RunResult& r) {
  std::ostringstream s;
  writer(s, r);
  return s.str();
}

void log_comparisons(const std::vector<Comparison>& cmp) {
  for (const auto& c : cmp)
    spdlog::info("{} vs {}: improvement {:+.4f}, t {:.3f}, p {:.3g}", c.policy, c.baseline,
                 c.improvement, c.test.t, c.test.p);
}

int cmd_simulate(const CommonArgs& a, bool no_steps) {
  const RunConfig c = load_config(a);
  const auto t0 = std::chrono::steady_clock::now();
  const auto result = run_scenario(c, run_options(a, !no_steps, c.ledger_log.has_value()));
  spdlog::info("{} iterations in {:.2f} s", c.general.iterations,
               std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());

  std::string subject = result.policies.front();
  for (const auto& p : c.policies)
    if (p.kind == PolicyKind::expected_utility) {
      subject = p.name();
      break;
    }
  const auto cmp = result.policies.size() > 1 ? compare_against_all(result, subject)
                                              : std::vector<Comparison>{};
  log_comparisons(cmp);

  const fs::path out(a.out);
  write_text(out / "iterations.csv", csv(write_iteration_csv, result));
  if (!no_steps) write_text(out / "steps.csv", csv(write_steps_csv, result));
  auto summary = summary_json(result, cmp);
  summary["config"] = c.to_json();
  write_text(out / "summary.json", summary.dump(2) + "\n");
  if (c.ledger_log) {
    std::ostringstream s;
    for (std::size_t p = 0; p < result.policies.size(); ++p)
      for (const auto& e : result.ledger[p]) {
        auto j = to_json(e);
        j["policy"] = result.policies[p];
        j["iteration"] = 1;
        s << j.dump() << '\n';
      }
    write_text(out / *c.ledger_log, s.str());
  }
  return kOk;
}

int cmd_tune_history(const CommonArgs& a, const std::vector<std::string>& windows) {
  RunConfig c = load_config(a);
  c.policies.clear();
  for (const auto& w : windows) {
    PolicySpec p = PolicySpec::of(PolicyKind::expected_utility);
    try {
      p.estimator = EstimatorMode::parse(w);
    } catch (const Error& e) {
      throw Error(ErrorCode::config, e.what());
    }
    p.label = "ExpectedUtility[" + p.estimator.label() + "]";
    c.policies.push_back(p);
  }
  c.validate();
  const auto result = run_scenario(c, run_options(a, false, false));
  const auto cmp = compare_to_baseline(result, result.policies.front());
  log_comparisons(cmp);
  const fs::path out(a.out);
  write_text(out / "iterations.csv", csv(write_iteration_csv, result));
  write_text(out / "summary.json", summary_json(result, cmp).dump(2) + "\n");
  return kOk;
}

TestbedConfig testbed_of(const RunConfig& c) { return c.testbed ? *c.testbed : reference_testbed(); }

int cmd_testbed(const CommonArgs& a, std::size_t training) {
  const RunConfig c = load_config(a);
  const auto tb = testbed_of(c);
  const auto analytics = analyze(tb);
  const auto series = testbed_mode(tb, training, c.general.seed);
  std::ostringstream s;
  s << "step,success,utility_fraction\n";
  for (std::size_t i = 0; i < series.success.size(); ++i)
    s << i + 1 << ',' << format_number(series.success[i]) << ','
      << format_number(series.utility_fraction[i]) << '\n';
  const fs::path out(a.out);
  write_text(out / "testbed.csv", s.str());
  auto summary = analytics_json(analytics);
  summary["training_steps"] = training;
  summary["repetitions"] = tb.repetitions;
  summary["seed"] = c.general.seed;
  write_text(out / "testbed.json", summary.dump(2) + "\n");
  std::cout << summary.dump(2) << '\n';
  return kOk;
}

int cmd_training_sweep(const CommonArgs& a, const std::vector<std::size_t>& s_values,
                       std::optional<std::size_t> repetitions) {
  const RunConfig c = load_config(a);
  auto tb = testbed_of(c);
  if (!s_values.empty()) tb.training_steps = s_values;
  if (repetitions) tb.repetitions = *repetitions;
  const auto sweep = training_sweep(tb, c.general.seed);
  std::ostringstream s;
  write_sweep_csv(s, sweep);
  write_text(fs::path(a.out) / "training_sweep.csv", s.str());
  std::cout << s.str();
  return kOk;
}

int cmd_ledger_exec(const std::string& file, const std::vector<std::string>& trusted,
                    const std::string& log_path, const std::string& replay_path) {
  std::vector<TxPayload> payloads;
  std::set<std::string> exchanges(trusted.begin(), trusted.end());
  if (exchanges.empty()) exchanges.insert("exchange");

  Ledger ledger(exchanges);
  if (!replay_path.empty()) {
    std::ifstream in(replay_path);
    if (!in) throw Error(ErrorCode::io, "cannot open '" + replay_path + "'");
    ledger = Ledger::replay(exchanges, Ledger::read_ndjson(in));
  }

  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::config, "cannot open payload file '" + file + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::config, e.what());
  }
  const nlohmann::json list = j.is_array() ? j : nlohmann::json::array({j});
  try {
    for (const auto& p : list) payloads.push_back(TxPayload::from_json(p));
  } catch (const Error& e) {
    throw Error(ErrorCode::config, e.what());
  }

  nlohmann::json last;
  for (const auto& p : payloads) {
    const auto res = ledger.execute(p);
    spdlog::info("{} {} by {}: {}", to_string(p.action), p.provider, p.signer, res.describe());
    last = {{"accepted", res.accepted}, {"state_hash", res.state_hash}};
    if (res.reason) last["reason"] = to_string(*res.reason);
    if (auto rec = ledger.offer(p.provider)) last["record"] = rec->to_json();
    else last["balance"] = from_tokens(ledger.balance(p.provider));
  }
  if (!log_path.empty()) {
    std::ostringstream s;
    ledger.write_ndjson(s);
    write_text(log_path, s.str());
  }
  std::cout << last.dump(2) << '\n';
  return kOk;
}

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("bandsim");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::info);
  if (const char* env = std::getenv("BANDSIM_LOG")) {
    const auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to off
    if (level != spdlog::level::off || std::string_view(env) == "off") spdlog::set_level(level);
    else spdlog::warn("unknown BANDSIM_LOG level '{}'", env);
  }
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Provider-selection bandit simulator"};
  app.require_subcommand(1);

  CommonArgs sim_args, tune_args, tb_args, sweep_args, cfg_args;
  bool no_steps = false;
  auto* sim = app.add_subcommand("simulate", "run a scenario family over all policies");
  add_common(sim, sim_args);
  sim->add_flag("--no-steps", no_steps, "skip the per-step CSV");

  std::vector<std::string> windows{"unlimited", "1", "2", "3", "4"};
  auto* tune = app.add_subcommand("tune-history", "compare ExpectedUtility history windows");
  add_common(tune, tune_args, false);
  tune->add_option("--windows", windows, "estimator windows; the first is the baseline")
      ->delimiter(',');

  std::size_t tb_training = 4;
  auto* tb = app.add_subcommand("testbed", "deterministic-capacity testbed analytics");
  add_common(tb, tb_args, false);
  tb->add_option("--training-steps", tb_training, "random steps before ExpectedUtility takes over");

  std::vector<std::size_t> s_values;
  std::optional<std::size_t> repetitions;
  auto* sweep = app.add_subcommand("training-sweep", "allocation success against training length");
  add_common(sweep, sweep_args, false);
  sweep->add_option("--s", s_values, "training lengths")->delimiter(',');
  sweep->add_option("--repetitions", repetitions, "repetitions per training length");

  auto* ledger = app.add_subcommand("ledger", "spectrum ledger operations");
  ledger->require_subcommand(1);
  std::string payload_file, log_path, replay_path;
  std::vector<std::string> trusted;
  auto* exec = ledger->add_subcommand("exec", "apply payloads and print the resulting record");
  exec->add_option("payload", payload_file, "JSON payload or array of payloads")->required();
  exec->add_option("--trusted", trusted, "trusted exchange signers (default: exchange)")
      ->delimiter(',');
  exec->add_option("--log", log_path, "write the transaction log as NDJSON");
  exec->add_option("--replay", replay_path, "NDJSON log to replay before applying");

  auto* cfg = app.add_subcommand("config", "print the effective configuration");
  add_common(cfg, cfg_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*sim) return cmd_simulate(sim_args, no_steps);
    if (*tune) return cmd_tune_history(tune_args, windows);
    if (*tb) return cmd_testbed(tb_args, tb_training);
    if (*sweep) return cmd_training_sweep(sweep_args, s_values, repetitions);
    if (*exec) return cmd_ledger_exec(payload_file, trusted, log_path, replay_path);
    if (*cfg) {
      std::cout << load_config(cfg_args, false).to_json().dump(2) << '\n';
      return kOk;
    }
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return e.code() == ErrorCode::config ? kConfigError : kRuntimeError;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kRuntimeError;
  }
  return kOk;
}
