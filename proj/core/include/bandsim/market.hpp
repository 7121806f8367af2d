#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bandsim/core.hpp"
#include "json.hpp"

namespace bandsim {

// Token amounts in hundredths of a token.
using Tokens = std::int64_t;

Tokens to_tokens(double amount);
double from_tokens(Tokens t) noexcept;

enum class TxAction { allocate, offer, deposit, withdraw };

std::string_view to_string(TxAction action) noexcept;
TxAction tx_action_from_string(std::string_view name);

struct TxPayload {
  std::string provider;
  TxAction action = TxAction::allocate;
  std::optional<std::int64_t> from_frequency;  // kHz
  std::optional<std::int64_t> to_frequency;    // kHz
  std::optional<std::int64_t> bandwidth;       // kHz
  std::optional<std::uint64_t> epoch;
  std::optional<Tokens> price;
  std::optional<std::uint32_t> max_allocations;
  std::string signer;
  std::optional<Tokens> amount;  // deposit/withdraw

  /// Structural checks only; business rules live in Ledger::execute.
  void validate() const;

  nlohmann::json to_json() const;
  static TxPayload from_json(const nlohmann::json& j);
  friend bool operator==(const TxPayload&, const TxPayload&) = default;
};

struct OfferRecord {
  std::string provider;
  std::int64_t from_frequency = 0;
  std::int64_t to_frequency = 0;
  std::int64_t bandwidth = 0;
  std::uint64_t epoch = 0;
  Tokens price = 0;
  std::uint32_t allocations_left = 0;
  Tokens account_balance = 0;

  nlohmann::json to_json() const;
  static OfferRecord from_json(const nlohmann::json& j);
  friend bool operator==(const OfferRecord&, const OfferRecord&) = default;
};

enum class Rejection {
  no_matching_offer,
  wrong_epoch,
  wrong_price,
  sold_out,
  insufficient_funds,
  untrusted_exchange,
};

std::string_view to_string(Rejection r) noexcept;

struct TxResult {
  bool accepted = false;
  std::optional<Rejection> reason;
  std::uint64_t state_hash = 0;  // after the transaction

  std::string describe() const;
};

struct LedgerEntry {
  TxPayload payload;
  TxResult result;
  std::optional<OfferRecord> record;  // provider's record after the transaction
};

// Offer/allocate/deposit/withdraw state machine. Transactions are applied
// one at a time; every payload, accepted or not, is appended to the log.
class Ledger {
 public:
  explicit Ledger(std::set<std::string> trusted_exchanges = {});

  TxResult execute(const TxPayload& payload);

  Tokens balance(const std::string& account) const;
  std::optional<OfferRecord> offer(const std::string& provider) const;
  /// Sum of all balances.
  Tokens total_supply() const noexcept;

  /// FNV-1a over a canonical serialisation of offers and balances.
  std::uint64_t state_hash() const noexcept;

  const std::vector<LedgerEntry>& log() const noexcept { return log_; }
  const std::set<std::string>& trusted_exchanges() const noexcept { return trusted_; }

  /// Re-executes every logged payload on a fresh ledger.
  static Ledger replay(const std::set<std::string>& trusted, const std::vector<LedgerEntry>& log);

  /// One JSON object per line: payload, result and resulting record.
  void write_ndjson(std::ostream& out) const;
  static std::vector<LedgerEntry> read_ndjson(std::istream& in);

  nlohmann::json state_json() const;

 private:
  struct Offer {
    std::int64_t from_frequency = 0;
    std::int64_t to_frequency = 0;
    std::int64_t bandwidth = 0;
    std::uint64_t epoch = 0;
    Tokens price = 0;
    std::uint32_t allocations_left = 0;
  };

  std::optional<Rejection> apply(const TxPayload& p);
  OfferRecord record_for(const std::string& provider, const Offer& o) const;

  std::set<std::string> trusted_;
  std::map<std::string, Offer> offers_;
  std::map<std::string, Tokens> balances_;
  std::vector<LedgerEntry> log_;
};

nlohmann::json to_json(const LedgerEntry& e);
LedgerEntry ledger_entry_from_json(const nlohmann::json& j);

struct PriceRange {
  double min_cost = 1.0;
  double max_cost = 1.0;
};

/// min_cost when the range is degenerate, otherwise min or max with equal
/// probability.
double next_price(const PriceRange& range, Rng& rng);

}  // namespace bandsim
