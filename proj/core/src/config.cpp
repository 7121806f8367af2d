#include "bandsim/config.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>

namespace bandsim {
namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::config, (path.empty() ? std::string("<root>") : path) + ": " + what);
}

// Walks one JSON object, remembering which keys were read so that leftovers
// can be reported as unknown.
class Section {
 public:
  Section(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  ~Section() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, _] : j_.items())
      if (!seen_.contains(key)) fail(child(key), "unknown key");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) && !j_.at(key).is_null();
  }

  const nlohmann::json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void number(const std::string& key, double& out) {
    if (!has(key)) return;
    const auto& v = j_.at(key);
    if (!v.is_number()) fail(child(key), "expected a number");
    out = v.get<double>();
  }

  template <class Int>
  void integer(const std::string& key, Int& out) {
    if (!has(key)) return;
    const auto& v = j_.at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
      fail(child(key), "expected a non-negative integer");
    out = static_cast<Int>(v.get<std::uint64_t>());
  }

  void boolean(const std::string& key, bool& out) {
    if (!has(key)) return;
    const auto& v = j_.at(key);
    if (!v.is_boolean()) fail(child(key), "expected true or false");
    out = v.get<bool>();
  }

  void string(const std::string& key, std::string& out) {
    if (!has(key)) return;
    const auto& v = j_.at(key);
    if (!v.is_string()) fail(child(key), "expected a string");
    out = v.get<std::string>();
  }

 private:
  const nlohmann::json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::vector<double> number_list(const nlohmann::json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) fail(path, "expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Matrix matrix(const nlohmann::json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of rows");
  Matrix m;
  for (std::size_t i = 0; i < v.size(); ++i)
    m.push_back(number_list(v[i], path + "[" + std::to_string(i) + "]"));
  return m;
}

AppProfile app_from_json(const nlohmann::json& j, AppId id, const std::string& path) {
  Section s(j, path);
  std::string kind = "batch";
  s.string("kind", kind);
  AppProfile app;
  app.id = id;
  try {
    app.kind = utility_kind_from_string(kind);
  } catch (const Error& e) {
    fail(s.child("kind"), e.what());
  }
  if (s.has("threshold_mbps")) {
    double t = 0.0;
    s.number("threshold_mbps", t);
    app.threshold_mbps = t;
  }
  s.number("floor", app.floor);
  try {
    app.validate();
  } catch (const Error& e) {
    fail(path, e.what());
  }
  return app;
}

nlohmann::json app_to_json(const AppProfile& app) {
  nlohmann::json j{{"kind", to_string(app.kind)}};
  if (app.threshold_mbps) {
    j["threshold_mbps"] = *app.threshold_mbps;
    j["floor"] = app.floor;
  }
  return j;
}

std::vector<AppProfile> apps_from_json(const nlohmann::json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail(path, "expected a non-empty array of apps");
  std::vector<AppProfile> apps;
  for (std::size_t i = 0; i < v.size(); ++i)
    apps.push_back(app_from_json(v[i], i, path + "[" + std::to_string(i) + "]"));
  return apps;
}

DemandConfig demand_from_json(const nlohmann::json& j, const std::string& path) {
  Section s(j, path);
  DemandConfig d;
  if (!s.has("apps")) fail(path, "missing 'apps'");
  d.apps = apps_from_json(s.raw("apps"), s.child("apps"));
  if (!s.has("transition")) fail(path, "missing 'transition'");
  d.transition = matrix(s.raw("transition"), s.child("transition"));
  return d;
}

Point point_from_json(const nlohmann::json& v, const std::string& path) {
  const auto xs = number_list(v, path);
  if (xs.size() != 2) fail(path, "expected [x, y]");
  return {xs[0], xs[1]};
}

RewardMode reward_mode_from_string(const std::string& s, const std::string& path) {
  for (auto m : {RewardMode::utility, RewardMode::decile, RewardMode::prepaid, RewardMode::budget})
    if (to_string(m) == s) return m;
  fail(path, "expected one of utility, decile, prepaid, budget");
}

}  // namespace

std::string_view to_string(RewardMode mode) noexcept {
  switch (mode) {
    case RewardMode::utility: return "utility";
    case RewardMode::decile: return "decile";
    case RewardMode::prepaid: return "prepaid";
    case RewardMode::budget: return "budget";
  }
  return "unknown";
}

const DemandConfig& RunConfig::demand_for(std::size_t dut) const {
  return demand.size() == 1 ? demand.front() : demand.at(dut);
}

std::vector<PriceRange> RunConfig::price_ranges() const {
  std::vector<PriceRange> out;
  for (const auto& n : networks)
    out.push_back({n.min_cost, general.fixed_price ? n.min_cost : n.max_cost});
  return out;
}

void RunConfig::validate() const {
  const auto& g = general;
  if (g.steps == 0) fail("general.steps", "must be positive");
  if (g.iterations == 0) fail("general.iterations", "must be positive");
  if (g.dut_count == 0) fail("general.dut_count", "must be positive");
  if (!(g.cell_radius_m > 0.0)) fail("general.cell_radius_m", "must be positive");
  if (!(g.walk_length_m >= 0.0)) fail("general.walk_length_m", "must be non-negative");
  if (!(radio.background_radius_m >= 0.0))
    fail("radio.background_radius_m", "must be non-negative");
  if (!(radio.params.spectral_efficiency_cap > 0.0))
    fail("radio.spectral_efficiency_cap", "must be positive");
  if (!(radio.params.pathloss.min_distance_m > 0.0)) fail("radio.min_distance_m", "must be positive");
  if (networks.empty()) fail("networks", "at least one network required");
  for (std::size_t i = 0; i < networks.size(); ++i) {
    const auto& n = networks[i];
    const std::string p = "networks[" + std::to_string(i) + "]";
    if (n.bs_count == 0) fail(p + ".bs_count", "must be positive");
    if (!(n.min_cost > 0.0)) fail(p + ".min_cost", "must be positive");
    if (n.max_cost < n.min_cost) fail(p + ".max_cost", "must be >= min_cost");
    if (!(n.bandwidth_mhz > 0.0)) fail(p + ".bandwidth_mhz", "must be positive");
  }
  if (demand.empty()) fail("demand", "at least one demand entry required");
  if (demand.size() != 1 && demand.size() != g.dut_count)
    fail("demand", "give one shared entry or one entry per DUT");
  for (std::size_t i = 0; i < demand.size(); ++i) {
    const std::string p = "demand[" + std::to_string(i) + "]";
    if (demand[i].transition.size() != demand[i].apps.size())
      fail(p + ".transition", "needs one row per app");
    try {
      validate_row_stochastic(demand[i].transition);
    } catch (const Error& e) {
      fail(p + ".transition", e.what());
    }
  }
  const std::size_t app_count = demand.front().apps.size();
  for (const auto& d : demand)
    if (d.apps.size() != app_count) fail("demand", "all DUTs must share the app count");
  if (policies.empty()) fail("policies", "at least one policy required");
  std::set<std::string> names;
  for (const auto& p : policies) {
    try {
      p.validate();
    } catch (const Error& e) {
      fail("policies", e.what());
    }
    if (!names.insert(p.name()).second) fail("policies", "duplicate policy label '" + p.name() + "'");
  }
  if (dual_speed) {
    try {
      dual_speed->validate();
    } catch (const Error& e) {
      fail("dual_speed", e.what());
    }
  }
  if (reward.mode == RewardMode::prepaid) {
    if (!(reward.plan_life_steps > 0.0)) fail("reward.plan_life_steps", "must be positive");
    if (!(reward.data_per_step >= 0.0)) fail("reward.data_per_step", "must be non-negative");
    if (!(reward.prepaid_beta >= 0.0)) fail("reward.prepaid_beta", "must be non-negative");
  }
  if (reward.mode == RewardMode::budget) {
    if (!(reward.beta_long > 1.0)) fail("reward.beta_long", "must exceed 1");
    if (!(reward.near_term_limit > 0.0) || !(reward.long_term_limit > 0.0))
      fail("reward", "budget limits must be positive");
    if (reward.near_term_period == 0 || reward.long_term_period == 0)
      fail("reward", "budget periods must be positive");
  }
  if (testbed) {
    const auto& t = *testbed;
    const std::size_t duts = t.apps.size();
    if (duts == 0) fail("testbed.apps", "at least one DUT app required");
    if (t.prices.empty()) fail("testbed.prices", "at least one network price required");
    for (double p : t.prices)
      if (!(p > 0.0)) fail("testbed.prices", "prices must be positive");
    if (t.repetitions == 0) fail("testbed.repetitions", "must be positive");
    std::set<std::vector<std::size_t>> seen;
    for (const auto& e : t.capacity) {
      if (e.networks.size() != duts || e.throughput_mbps.size() != duts)
        fail("testbed.capacity", "each entry needs one network and throughput per DUT");
      for (auto n : e.networks)
        if (n >= t.prices.size()) fail("testbed.capacity", "network index out of range");
      for (double v : e.throughput_mbps)
        if (!(v >= 0.0)) fail("testbed.capacity", "throughput must be non-negative");
      if (!seen.insert(e.networks).second) fail("testbed.capacity", "duplicate assignment");
    }
    std::size_t total = 1;
    for (std::size_t i = 0; i < duts; ++i) total *= t.prices.size();
    if (seen.size() != total) fail("testbed.capacity", "every assignment of DUTs to networks needs an entry");
  }
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  const auto& g = general;
  j["general"] = {{"steps", g.steps},
                  {"training_steps", g.training_steps},
                  {"iterations", g.iterations},
                  {"cell_radius_m", g.cell_radius_m},
                  {"walk_length_m", g.walk_length_m},
                  {"dut_count", g.dut_count},
                  {"seed", g.seed},
                  {"fixed_location", g.fixed_location},
                  {"fixed_price", g.fixed_price},
                  {"training_stagger", g.training_stagger}};
  const auto& r = radio.params;
  j["radio"] = {{"pathloss_intercept_db", r.pathloss.intercept_db},
                {"pathloss_slope_db", r.pathloss.slope_db},
                {"min_distance_m", r.pathloss.min_distance_m},
                {"antenna_gain_db", r.antenna_gain_db},
                {"noise_dbm_per_10mhz", r.noise_dbm_per_10mhz},
                {"spectral_efficiency_cap", r.spectral_efficiency_cap},
                {"background_radius_m", radio.background_radius_m}};
  j["networks"] = nlohmann::json::array();
  for (const auto& n : networks)
    j["networks"].push_back({{"name", n.name},
                             {"power_dbm", n.power_dbm},
                             {"background_ues", n.background_ues},
                             {"bs_count", n.bs_count},
                             {"offset", {n.offset.x, n.offset.y}},
                             {"min_cost", n.min_cost},
                             {"max_cost", n.max_cost},
                             {"bandwidth_mhz", n.bandwidth_mhz}});
  j["demand"] = nlohmann::json::array();
  for (const auto& d : demand) {
    nlohmann::json apps = nlohmann::json::array();
    for (const auto& a : d.apps) apps.push_back(app_to_json(a));
    j["demand"].push_back({{"apps", apps}, {"transition", d.transition}});
  }
  j["policies"] = nlohmann::json::array();
  for (const auto& p : policies) j["policies"].push_back(p.to_json());
  const auto& w = reward;
  j["reward"] = {{"mode", to_string(w.mode)},
                 {"plan_life_steps", w.plan_life_steps},
                 {"data_per_step", w.data_per_step},
                 {"prepaid_beta", w.prepaid_beta},
                 {"near_term_limit", w.near_term_limit},
                 {"near_term_period", w.near_term_period},
                 {"long_term_limit", w.long_term_limit},
                 {"long_term_period", w.long_term_period},
                 {"beta_long", w.beta_long},
                 {"extension_factor", w.extension_factor}};
  if (dual_speed) {
    const auto& d = *dual_speed;
    nlohmann::json threshold = d.popularity_threshold == std::numeric_limits<std::size_t>::max()
                                   ? nlohmann::json("inf")
                                   : nlohmann::json(d.popularity_threshold);
    j["dual_speed"] = {{"p_pop", d.p_pop},
                       {"epsilons", d.epsilons},
                       {"popularity_threshold", threshold},
                       {"price_labels", d.price_labels}};
  }
  if (testbed) {
    const auto& t = *testbed;
    nlohmann::json cap = nlohmann::json::array();
    for (const auto& e : t.capacity) {
      std::vector<std::size_t> nets;
      for (auto n : e.networks) nets.push_back(n + 1);
      cap.push_back({{"networks", nets}, {"throughput_mbps", e.throughput_mbps}});
    }
    nlohmann::json apps = nlohmann::json::array();
    for (const auto& a : t.apps) apps.push_back(app_to_json(a));
    j["testbed"] = {{"capacity", cap},
                    {"prices", t.prices},
                    {"apps", apps},
                    {"training_steps", t.training_steps},
                    {"repetitions", t.repetitions},
                    {"steps", t.steps},
                    {"estimator", t.estimator.label()}};
  }
  if (ledger_log) j["ledger_log"] = *ledger_log;
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c = default_config();
  {
    Section root(j, "");
    if (root.has("general")) {
      Section s(root.raw("general"), "general");
      auto& g = c.general;
      s.integer("steps", g.steps);
      s.integer("training_steps", g.training_steps);
      s.integer("iterations", g.iterations);
      s.number("cell_radius_m", g.cell_radius_m);
      s.number("walk_length_m", g.walk_length_m);
      s.integer("dut_count", g.dut_count);
      s.integer("seed", g.seed);
      s.boolean("fixed_location", g.fixed_location);
      s.boolean("fixed_price", g.fixed_price);
      s.integer("training_stagger", g.training_stagger);
    }
    if (root.has("radio")) {
      Section s(root.raw("radio"), "radio");
      auto& r = c.radio.params;
      s.number("pathloss_intercept_db", r.pathloss.intercept_db);
      s.number("pathloss_slope_db", r.pathloss.slope_db);
      s.number("min_distance_m", r.pathloss.min_distance_m);
      s.number("antenna_gain_db", r.antenna_gain_db);
      s.number("noise_dbm_per_10mhz", r.noise_dbm_per_10mhz);
      s.number("spectral_efficiency_cap", r.spectral_efficiency_cap);
      s.number("background_radius_m", c.radio.background_radius_m);
    }
    if (root.has("networks")) {
      const auto& arr = root.raw("networks");
      if (!arr.is_array()) fail("networks", "expected an array");
      // entry i overrides default network i; extra entries start from scratch
      const auto defaults = std::move(c.networks);
      c.networks.clear();
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "networks[" + std::to_string(i) + "]";
        Section s(arr[i], path);
        NetworkConfig n;
        if (i < defaults.size()) {
          n = defaults[i];
        } else {
          n.name = "Net" + std::to_string(i + 1);
          n.max_cost = n.min_cost;
        }
        s.string("name", n.name);
        s.number("power_dbm", n.power_dbm);
        s.integer("background_ues", n.background_ues);
        s.integer("bs_count", n.bs_count);
        if (s.has("offset")) n.offset = point_from_json(s.raw("offset"), s.child("offset"));
        s.number("min_cost", n.min_cost);
        if (i >= defaults.size()) n.max_cost = n.min_cost;
        n.max_cost = std::max(n.max_cost, n.min_cost);
        s.number("max_cost", n.max_cost);
        s.number("bandwidth_mhz", n.bandwidth_mhz);
        c.networks.push_back(n);
      }
    }
    if (root.has("demand")) {
      const auto& v = root.raw("demand");
      c.demand.clear();
      if (v.is_object()) {
        c.demand.push_back(demand_from_json(v, "demand"));
      } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i)
          c.demand.push_back(demand_from_json(v[i], "demand[" + std::to_string(i) + "]"));
      } else {
        fail("demand", "expected an object or an array of per-DUT objects");
      }
    }
    if (root.has("policies")) {
      const auto& v = root.raw("policies");
      if (!v.is_array()) fail("policies", "expected an array");
      c.policies.clear();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string path = "policies[" + std::to_string(i) + "]";
        try {
          if (v[i].is_string())
            c.policies.push_back(PolicySpec::of(policy_kind_from_string(v[i].get<std::string>())));
          else
            c.policies.push_back(PolicySpec::from_json(v[i]));
        } catch (const Error& e) {
          fail(path, e.what());
        } catch (const nlohmann::json::exception& e) {
          fail(path, e.what());
        }
      }
    }
    if (root.has("reward")) {
      Section s(root.raw("reward"), "reward");
      auto& w = c.reward;
      std::string mode(to_string(w.mode));
      s.string("mode", mode);
      w.mode = reward_mode_from_string(mode, s.child("mode"));
      s.number("plan_life_steps", w.plan_life_steps);
      s.number("data_per_step", w.data_per_step);
      s.number("prepaid_beta", w.prepaid_beta);
      s.number("near_term_limit", w.near_term_limit);
      s.integer("near_term_period", w.near_term_period);
      s.number("long_term_limit", w.long_term_limit);
      s.integer("long_term_period", w.long_term_period);
      s.number("beta_long", w.beta_long);
      s.number("extension_factor", w.extension_factor);
    }
    if (root.has("dual_speed")) {
      Section s(root.raw("dual_speed"), "dual_speed");
      DualSpeedModel d;
      if (!s.has("p_pop")) fail("dual_speed", "missing 'p_pop'");
      d.p_pop = matrix(s.raw("p_pop"), s.child("p_pop"));
      if (!s.has("epsilons")) fail("dual_speed", "missing 'epsilons'");
      d.epsilons = number_list(s.raw("epsilons"), s.child("epsilons"));
      if (!s.has("price_labels")) fail("dual_speed", "missing 'price_labels'");
      d.price_labels = number_list(s.raw("price_labels"), s.child("price_labels"));
      if (s.has("popularity_threshold")) {
        const auto& t = s.raw("popularity_threshold");
        if (t.is_string() && t.get<std::string>() == "inf")
          d.popularity_threshold = std::numeric_limits<std::size_t>::max();
        else
          s.integer("popularity_threshold", d.popularity_threshold);
      }
      c.dual_speed = d;
    }
    if (root.has("testbed")) {
      Section s(root.raw("testbed"), "testbed");
      TestbedConfig t = reference_testbed();
      if (s.has("capacity")) {
        const auto& arr = s.raw("capacity");
        if (!arr.is_array()) fail("testbed.capacity", "expected an array");
        t.capacity.clear();
        for (std::size_t i = 0; i < arr.size(); ++i) {
          const std::string path = "testbed.capacity[" + std::to_string(i) + "]";
          Section e(arr[i], path);
          CapacityEntry entry;
          if (!e.has("networks") || !e.has("throughput_mbps"))
            fail(path, "needs 'networks' and 'throughput_mbps'");
          for (double n : number_list(e.raw("networks"), e.child("networks"))) {
            if (n < 1.0 || n != static_cast<double>(static_cast<std::size_t>(n)))
              fail(e.child("networks"), "networks are numbered from 1");
            entry.networks.push_back(static_cast<std::size_t>(n) - 1);
          }
          entry.throughput_mbps = number_list(e.raw("throughput_mbps"), e.child("throughput_mbps"));
          t.capacity.push_back(entry);
        }
      }
      if (s.has("prices")) t.prices = number_list(s.raw("prices"), "testbed.prices");
      if (s.has("apps")) t.apps = apps_from_json(s.raw("apps"), "testbed.apps");
      if (s.has("training_steps")) {
        t.training_steps.clear();
        for (double v : number_list(s.raw("training_steps"), "testbed.training_steps")) {
          if (v < 0.0 || v != static_cast<double>(static_cast<std::size_t>(v)))
            fail("testbed.training_steps", "expected non-negative integers");
          t.training_steps.push_back(static_cast<std::size_t>(v));
        }
      }
      s.integer("repetitions", t.repetitions);
      s.integer("steps", t.steps);
      if (s.has("estimator")) {
        std::string e;
        s.string("estimator", e);
        try {
          t.estimator = EstimatorMode::parse(e);
        } catch (const Error& err) {
          fail("testbed.estimator", err.what());
        }
      }
      c.testbed = t;
    }
    if (root.has("ledger_log")) {
      std::string path;
      root.string("ledger_log", path);
      c.ledger_log = path;
    }
  }
  c.validate();
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::config, "cannot open config '" + path.string() + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in, nullptr, true, false);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::config, path.string() + ": " + e.what());
  }
  return from_json(j);
}

std::vector<PolicySpec> default_policies() {
  std::vector<PolicySpec> out;
  for (auto k : {PolicyKind::expected_utility, PolicyKind::history, PolicyKind::rl,
                 PolicyKind::lowest_price, PolicyKind::random})
    out.push_back(PolicySpec::of(k));
  return out;
}

RunConfig default_config() {
  RunConfig c;
  NetworkConfig n1;
  n1.name = "Net1";
  n1.power_dbm = 30.0;
  n1.background_ues = 72;
  n1.offset = {0.6, 0.4};
  n1.min_cost = 1.0;
  n1.max_cost = 2.0;
  NetworkConfig n2;
  n2.name = "Net2";
  n2.power_dbm = 100.0;
  n2.background_ues = 0;
  n2.offset = {0.0, 0.0};
  n2.min_cost = 9.0;
  n2.max_cost = 10.0;
  c.networks = {n1, n2};
  c.demand = {{{AppProfile::interactive(0, 12.0), AppProfile::batch(1)},
               {{0.5, 0.5}, {0.5, 0.5}}}};
  c.policies = default_policies();
  return c;
}

TestbedConfig reference_testbed() {
  TestbedConfig t;
  // rows: network of (UE1, UE2) -> measured (UE1, UE2) throughput
  t.capacity = {{{0, 0}, {0.4, 1.0}},
                {{0, 1}, {1.7, 1.0}},
                {{1, 0}, {4.5, 1.0}},
                {{1, 1}, {3.8, 1.0}}};
  t.prices = {1.0, 3.0};
  t.apps = {AppProfile::batch(0), AppProfile::interactive(1, 1.0)};
  return t;
}

std::vector<std::string> preset_names() {
  return {"default",
          "fixed-location-fixed-price",
          "fixed-location-variable-price",
          "variable-location-fixed-price",
          "variable-location-variable-price",
          "competing-agents",
          "history-tuning",
          "testbed"};
}

RunConfig preset(std::string_view name) {
  RunConfig c = default_config();
  if (name == "default" || name == "variable-location-variable-price") {
  } else if (name == "fixed-location-fixed-price") {
    c.general.fixed_location = true;
    c.general.fixed_price = true;
  } else if (name == "fixed-location-variable-price") {
    c.general.fixed_location = true;
  } else if (name == "variable-location-fixed-price") {
    c.general.fixed_price = true;
  } else if (name == "competing-agents") {
    c.general.dut_count = 3;
  } else if (name == "history-tuning") {
    c.policies.clear();
    for (auto mode : {EstimatorMode::full_mean(), EstimatorMode::last(1), EstimatorMode::last(2),
                      EstimatorMode::last(3), EstimatorMode::last(4)}) {
      PolicySpec p = PolicySpec::of(PolicyKind::expected_utility);
      p.estimator = mode;
      p.label = "ExpectedUtility[" + mode.label() + "]";
      c.policies.push_back(p);
    }
  } else if (name == "testbed") {
    c.testbed = reference_testbed();
  } else {
    throw Error(ErrorCode::config, "unknown preset '" + std::string(name) + "'");
  }
  c.validate();
  return c;
}

}  // namespace bandsim
