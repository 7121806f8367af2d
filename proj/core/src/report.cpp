#include "bandsim/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

namespace bandsim {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_iteration_csv(std::ostream& out, const RunResult& r) {
  out << "iteration,policy,welfare\n";
  const std::size_t iterations = r.welfare.empty() ? 0 : r.welfare.front().size();
  for (std::size_t i = 0; i < iterations; ++i)
    for (std::size_t p = 0; p < r.policies.size(); ++p)
      out << i + 1 << ',' << r.policies[p] << ',' << format_number(r.welfare[p][i]) << '\n';
}

void write_steps_csv(std::ostream& out, const RunResult& r) {
  out << "iter,step,dut,policy,provider,app,price,throughput_mbps,reward\n";
  for (const auto& s : r.steps)
    out << s.iteration + 1 << ',' << s.step + 1 << ',' << s.dut + 1 << ',' << r.policies[s.policy]
        << ',' << s.provider + 1 << ',' << s.app + 1 << ',' << format_number(s.price) << ','
        << format_number(s.throughput_mbps) << ',' << format_number(s.reward) << '\n';
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& sweep) {
  out << "training_steps,repetitions,success,theoretical_success,utility_fraction\n";
  for (const auto& p : sweep)
    out << p.training_steps << ',' << p.repetitions << ',' << format_number(p.success) << ','
        << format_number(p.theoretical) << ',' << format_number(p.utility_fraction) << '\n';
}

static nlohmann::json finite_or_string(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(format_number(v));
}

nlohmann::json comparison_json(const Comparison& c) {
  return {{"policy", c.policy},
          {"baseline", c.baseline},
          {"policy_mean", c.policy_mean},
          {"baseline_mean", c.baseline_mean},
          {"improvement", c.improvement},
          {"t", finite_or_string(c.test.t)},
          {"p", c.test.p},
          {"pairs", c.test.pairs}};
}

nlohmann::json summary_json(const RunResult& r, const std::vector<Comparison>& comparisons) {
  nlohmann::json policies = nlohmann::json::object();
  for (std::size_t p = 0; p < r.policies.size(); ++p)
    policies[r.policies[p]] = {{"mean_welfare", mean(r.welfare[p])},
                               {"mean_discounted_return", mean(r.discounted_return[p])}};
  nlohmann::json cmp = nlohmann::json::array();
  for (const auto& c : comparisons) cmp.push_back(comparison_json(c));
  return {{"seed", r.seed},
          {"iterations", r.welfare.empty() ? 0 : r.welfare.front().size()},
          {"policies", policies},
          {"comparisons", cmp}};
}

nlohmann::json analytics_json(const TestbedAnalytics& a) {
  std::vector<std::size_t> optimal;
  for (auto n : a.optimal) optimal.push_back(n + 1);
  nlohmann::json duts = nlohmann::json::array();
  for (std::size_t d = 0; d < a.mean_throughput.size(); ++d)
    duts.push_back({{"dut", d + 1},
                    {"mean_throughput_mbps", a.mean_throughput[d]},
                    {"utility", a.utility[d]},
                    {"preferred_network", a.preferred[d] + 1}});
  return {{"duts", duts}, {"optimal_assignment", optimal}, {"optimal_utility", a.optimal_utility}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorCode::io, "write failed for '" + path.string() + "'");
}

}  // namespace bandsim
