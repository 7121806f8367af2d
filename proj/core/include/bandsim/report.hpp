#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "bandsim/scenario.hpp"
#include "bandsim/testbed.hpp"
#include "json.hpp"

namespace bandsim {

/// Shortest round-trip decimal form.
std::string format_number(double v);

void write_iteration_csv(std::ostream& out, const RunResult& result);
void write_steps_csv(std::ostream& out, const RunResult& result);
void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& sweep);

nlohmann::json comparison_json(const Comparison& c);
nlohmann::json summary_json(const RunResult& result, const std::vector<Comparison>& comparisons);
nlohmann::json analytics_json(const TestbedAnalytics& a);

/// Writes to `path`, creating parent directories. Throws Error(io).
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace bandsim
