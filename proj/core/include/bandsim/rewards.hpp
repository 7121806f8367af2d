#pragma once

#include "bandsim/core.hpp"

namespace bandsim {

/// Throughput over price (Mbps per currency unit).
double batch_utility(double throughput_mbps, double price);

/// threshold/price once the threshold is met, otherwise the price-independent
/// floor.
double interactive_utility(double throughput_mbps, double threshold_mbps, double price,
                           double floor);

/// Dispatches on the app's utility kind.
double app_utility(const AppProfile& app, double throughput_mbps, double price);

/// Value for money: decile-ranked QoE over the plan price.
double plan_reward(int qoe_decile, double plan_price);

struct PrepaidPlanState {
  double total_data_used = 0.0;  // fraction of the data cap, in [0, 1]
  double life_remaining = 1.0;   // steps, > 0
  double plan_price = 1.0;       // per step, > 0
  double beta = 1.0;             // >= 0

  void validate() const;
  /// Adds one step's usage (fraction of cap), saturating at the cap.
  void consume(double data_used_fraction);
};

/// (qoe/price) * ((1 - used) / life)^beta. Rewards heavier use of plans that
/// would otherwise expire with unused data.
double prepaid_reward(int qoe_decile, const PrepaidPlanState& plan);

struct BudgetState {
  double near_term_fraction_remaining = 1.0;
  double long_term_fraction_remaining = 1.0;
  double beta_long = 2.0;          // > 1
  double extension_factor = 1.1;   // multiplier on the near-term limit

  void validate() const;
};

/// (qoe/price) * max(0, near) * max(0, long)^beta_long.
double budget_reward(int qoe_decile, double plan_price, const BudgetState& budget);

// Spending tracker behind BudgetState: near- and long-term windows with fixed
// reset periods measured in steps.
class BudgetLedger {
 public:
  BudgetLedger(double near_term_limit, std::size_t near_term_period, double long_term_limit,
               std::size_t long_term_period, double beta_long = 2.0,
               double extension_factor = 1.1);

  /// Moves the clock to `step`, resetting windows whose period elapsed.
  void advance_to(std::size_t step);
  /// True if paying `amount` keeps both (extended) limits intact.
  bool can_spend(double amount) const noexcept;
  void spend(double amount);
  /// Budget fractions remaining after a hypothetical spend of `amount`.
  BudgetState state_after(double amount) const noexcept;

 private:
  double near_limit_;
  std::size_t near_period_;
  double long_limit_;
  std::size_t long_period_;
  double beta_long_;
  double extension_;
  double near_spent_ = 0.0;
  double long_spent_ = 0.0;
  std::size_t near_start_ = 0;
  std::size_t long_start_ = 0;
};

}  // namespace bandsim
