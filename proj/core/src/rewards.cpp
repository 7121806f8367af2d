#include "bandsim/rewards.hpp"

#include <algorithm>
#include <cmath>

namespace bandsim {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::invalid_argument, what);
}

void require_decile(int qoe_decile) {
  require(qoe_decile >= 1 && qoe_decile <= 10, "qoe decile must lie in 1..10");
}

}  // namespace

double batch_utility(double throughput_mbps, double price) {
  require(price > 0.0, "price must be positive");
  require(throughput_mbps >= 0.0, "throughput must be non-negative");
  return throughput_mbps / price;
}

double interactive_utility(double throughput_mbps, double threshold_mbps, double price,
                           double floor) {
  require(price > 0.0, "price must be positive");
  require(threshold_mbps > 0.0, "threshold must be positive");
  require(floor > 0.0 && floor < threshold_mbps, "floor must lie in (0, threshold)");
  if (throughput_mbps >= threshold_mbps) return threshold_mbps / price;
  return floor;
}

double app_utility(const AppProfile& app, double throughput_mbps, double price) {
  if (app.kind == UtilityKind::batch) return batch_utility(throughput_mbps, price);
  return interactive_utility(throughput_mbps, app.threshold_mbps.value_or(0.0), price, app.floor);
}

double plan_reward(int qoe_decile, double plan_price) {
  require_decile(qoe_decile);
  require(plan_price > 0.0, "plan price must be positive");
  return static_cast<double>(qoe_decile) / plan_price;
}

void PrepaidPlanState::validate() const {
  require(total_data_used >= 0.0 && total_data_used <= 1.0, "data used must lie in [0, 1]");
  require(life_remaining > 0.0, "remaining life must be positive");
  require(plan_price > 0.0, "plan price must be positive");
  require(beta >= 0.0, "beta must be non-negative");
}

void PrepaidPlanState::consume(double data_used_fraction) {
  require(data_used_fraction >= 0.0, "data usage must be non-negative");
  total_data_used = std::min(1.0, total_data_used + data_used_fraction);
}

double prepaid_reward(int qoe_decile, const PrepaidPlanState& plan) {
  plan.validate();
  const double base = plan_reward(qoe_decile, plan.plan_price);
  if (plan.beta == 0.0) return base;
  return base * std::pow((1.0 - plan.total_data_used) / plan.life_remaining, plan.beta);
}

void BudgetState::validate() const {
  require(beta_long > 1.0, "long-term budget exponent must exceed 1");
  require(extension_factor >= 1.0, "extension factor must be >= 1");
}

double budget_reward(int qoe_decile, double plan_price, const BudgetState& budget) {
  budget.validate();
  const double base = plan_reward(qoe_decile, plan_price);
  const double near = std::max(0.0, budget.near_term_fraction_remaining);
  const double longer = std::max(0.0, budget.long_term_fraction_remaining);
  return base * near * std::pow(longer, budget.beta_long);
}

BudgetLedger::BudgetLedger(double near_term_limit, std::size_t near_term_period,
                           double long_term_limit, std::size_t long_term_period,
                           double beta_long, double extension_factor)
    : near_limit_(near_term_limit),
      near_period_(near_term_period),
      long_limit_(long_term_limit),
      long_period_(long_term_period),
      beta_long_(beta_long),
      extension_(extension_factor) {
  require(near_limit_ > 0.0 && long_limit_ > 0.0, "budget limits must be positive");
  require(near_period_ > 0 && long_period_ > 0, "budget periods must be positive");
  BudgetState{1.0, 1.0, beta_long_, extension_}.validate();
}

void BudgetLedger::advance_to(std::size_t step) {
  if (step >= near_start_ + near_period_) {
    near_start_ = step - (step % near_period_);
    near_spent_ = 0.0;
  }
  if (step >= long_start_ + long_period_) {
    long_start_ = step - (step % long_period_);
    long_spent_ = 0.0;
  }
}

bool BudgetLedger::can_spend(double amount) const noexcept {
  return near_spent_ + amount <= near_limit_ * extension_ + 1e-12 &&
         long_spent_ + amount <= long_limit_ + 1e-12;
}

void BudgetLedger::spend(double amount) {
  require(can_spend(amount), "spend breaches the budget");
  near_spent_ += amount;
  long_spent_ += amount;
}

BudgetState BudgetLedger::state_after(double amount) const noexcept {
  const double extended = near_limit_ * extension_;
  return BudgetState{(extended - near_spent_ - amount) / extended,
                     (long_limit_ - long_spent_ - amount) / long_limit_, beta_long_, extension_};
}

}  // namespace bandsim
