#include "bandsim/market.hpp"

#include <array>
#include <cmath>
#include <istream>
#include <ostream>

namespace bandsim {

Tokens to_tokens(double amount) {
  if (!std::isfinite(amount) || std::abs(amount) > 9e15)
    throw Error(ErrorCode::invalid_argument, "token amount out of range");
  return static_cast<Tokens>(std::llround(amount * 100.0));
}

double from_tokens(Tokens t) noexcept { return static_cast<double>(t) / 100.0; }

std::string_view to_string(TxAction action) noexcept {
  switch (action) {
    case TxAction::allocate: return "allocate";
    case TxAction::offer: return "offer";
    case TxAction::deposit: return "deposit";
    case TxAction::withdraw: return "withdraw";
  }
  return "unknown";
}

TxAction tx_action_from_string(std::string_view name) {
  for (auto a : {TxAction::allocate, TxAction::offer, TxAction::deposit, TxAction::withdraw})
    if (to_string(a) == name) return a;
  throw Error(ErrorCode::invalid_argument, "unknown action '" + std::string(name) + "'");
}

std::string_view to_string(Rejection r) noexcept {
  switch (r) {
    case Rejection::no_matching_offer: return "no-matching-offer";
    case Rejection::wrong_epoch: return "wrong-epoch";
    case Rejection::wrong_price: return "wrong-price";
    case Rejection::sold_out: return "sold-out";
    case Rejection::insufficient_funds: return "insufficient-funds";
    case Rejection::untrusted_exchange: return "untrusted-exchange";
  }
  return "unknown";
}

static Rejection rejection_from_string(std::string_view s) {
  for (auto r : {Rejection::no_matching_offer, Rejection::wrong_epoch, Rejection::wrong_price,
                 Rejection::sold_out, Rejection::insufficient_funds, Rejection::untrusted_exchange})
    if (to_string(r) == s) return r;
  throw Error(ErrorCode::invalid_argument, "unknown rejection '" + std::string(s) + "'");
}

std::string TxResult::describe() const {
  return accepted ? "accepted" : "rejected(" + std::string(to_string(*reason)) + ")";
}

void TxPayload::validate() const {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::invalid_argument, what); };
  if (provider.empty()) bad("payload needs a provider");
  if (signer.empty()) bad("payload needs a signer");
  if (from_frequency && to_frequency && *from_frequency > *to_frequency)
    bad("from_frequency must not exceed to_frequency");
  if (bandwidth && *bandwidth < 0) bad("bandwidth must be non-negative");
  switch (action) {
    case TxAction::offer:
      if (!price || *price <= 0) bad("offer needs a positive price");
      if (!max_allocations || *max_allocations == 0) bad("offer needs max_allocations >= 1");
      break;
    case TxAction::allocate:
      if (!price || *price <= 0) bad("allocate needs a positive price");
      if (!epoch) bad("allocate needs an epoch");
      break;
    case TxAction::deposit:
    case TxAction::withdraw:
      if (!amount || *amount <= 0) bad("deposit/withdraw needs a positive amount");
      break;
  }
}

nlohmann::json TxPayload::to_json() const {
  nlohmann::json j{{"provider", provider}, {"action", to_string(action)}, {"signer", signer}};
  if (from_frequency) j["from_frequency"] = *from_frequency;
  if (to_frequency) j["to_frequency"] = *to_frequency;
  if (bandwidth) j["bandwidth"] = *bandwidth;
  if (epoch) j["epoch"] = *epoch;
  if (price) j["price"] = from_tokens(*price);
  if (max_allocations) j["max_allocations"] = *max_allocations;
  if (amount) j["amount"] = from_tokens(*amount);
  return j;
}

TxPayload TxPayload::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::invalid_argument, "payload must be a JSON object");
  TxPayload p;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "provider") p.provider = v.get<std::string>();
      else if (key == "action") p.action = tx_action_from_string(v.get<std::string>());
      else if (key == "signer") p.signer = v.get<std::string>();
      else if (key == "from_frequency") p.from_frequency = v.get<std::int64_t>();
      else if (key == "to_frequency") p.to_frequency = v.get<std::int64_t>();
      else if (key == "bandwidth") p.bandwidth = v.get<std::int64_t>();
      else if (key == "epoch") p.epoch = v.get<std::uint64_t>();
      else if (key == "price") p.price = to_tokens(v.get<double>());
      else if (key == "max_allocations") p.max_allocations = v.get<std::uint32_t>();
      else if (key == "amount") p.amount = to_tokens(v.get<double>());
      else throw Error(ErrorCode::invalid_argument, "unknown payload field '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_argument, std::string("malformed payload: ") + e.what());
  }
  p.validate();
  return p;
}

nlohmann::json OfferRecord::to_json() const {
  return {{"provider", provider},   {"from_frequency", from_frequency},
          {"to_frequency", to_frequency}, {"bandwidth", bandwidth},
          {"epoch", epoch},         {"price", from_tokens(price)},
          {"allocations_left", allocations_left},
          {"account_balance", from_tokens(account_balance)}};
}

OfferRecord OfferRecord::from_json(const nlohmann::json& j) {
  OfferRecord r;
  r.provider = j.at("provider").get<std::string>();
  r.from_frequency = j.at("from_frequency").get<std::int64_t>();
  r.to_frequency = j.at("to_frequency").get<std::int64_t>();
  r.bandwidth = j.at("bandwidth").get<std::int64_t>();
  r.epoch = j.at("epoch").get<std::uint64_t>();
  r.price = to_tokens(j.at("price").get<double>());
  r.allocations_left = j.at("allocations_left").get<std::uint32_t>();
  r.account_balance = to_tokens(j.at("account_balance").get<double>());
  return r;
}

Ledger::Ledger(std::set<std::string> trusted_exchanges) : trusted_(std::move(trusted_exchanges)) {}

Tokens Ledger::balance(const std::string& account) const {
  auto it = balances_.find(account);
  return it == balances_.end() ? 0 : it->second;
}

std::optional<OfferRecord> Ledger::offer(const std::string& provider) const {
  auto it = offers_.find(provider);
  if (it == offers_.end()) return std::nullopt;
  return record_for(provider, it->second);
}

OfferRecord Ledger::record_for(const std::string& provider, const Offer& o) const {
  return {provider, o.from_frequency, o.to_frequency, o.bandwidth,
          o.epoch,  o.price,          o.allocations_left, balance(provider)};
}

Tokens Ledger::total_supply() const noexcept {
  Tokens total = 0;
  for (const auto& [_, b] : balances_) total += b;
  return total;
}

std::optional<Rejection> Ledger::apply(const TxPayload& p) {
  switch (p.action) {
    case TxAction::offer: {
      auto it = offers_.find(p.provider);
      Offer o;
      o.epoch = it == offers_.end() ? 0 : it->second.epoch + 1;
      o.from_frequency = p.from_frequency.value_or(0);
      o.to_frequency = p.to_frequency.value_or(0);
      o.bandwidth = p.bandwidth.value_or(0);
      o.price = *p.price;
      o.allocations_left = *p.max_allocations;
      offers_[p.provider] = o;
      return std::nullopt;
    }
    case TxAction::allocate: {
      auto it = offers_.find(p.provider);
      if (it == offers_.end()) return Rejection::no_matching_offer;
      Offer& o = it->second;
      if (*p.epoch != o.epoch) return Rejection::wrong_epoch;
      if (*p.price != o.price) return Rejection::wrong_price;
      if (o.allocations_left == 0) return Rejection::sold_out;
      if (balance(p.signer) < o.price) return Rejection::insufficient_funds;
      balances_[p.signer] -= o.price;
      balances_[p.provider] += o.price;
      --o.allocations_left;
      return std::nullopt;
    }
    case TxAction::deposit:
      if (!trusted_.contains(p.signer)) return Rejection::untrusted_exchange;
      balances_[p.provider] += *p.amount;
      return std::nullopt;
    case TxAction::withdraw:
      if (!trusted_.contains(p.signer)) return Rejection::untrusted_exchange;
      if (balance(p.provider) < *p.amount) return Rejection::insufficient_funds;
      balances_[p.provider] -= *p.amount;
      return std::nullopt;
  }
  return std::nullopt;
}

TxResult Ledger::execute(const TxPayload& payload) {
  payload.validate();
  TxResult result;
  const auto reason = apply(payload);
  result.accepted = !reason;
  result.reason = reason;
  result.state_hash = state_hash();
  log_.push_back({payload, result, offer(payload.provider)});
  return result;
}

namespace {

struct Fnv1a {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ULL;
    }
  }
  void u64(std::uint64_t v) {
    std::array<unsigned char, 8> b{};
    for (std::size_t i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    bytes(b.data(), b.size());
  }
  void str(const std::string& s) {
    u64(s.size());
    bytes(s.data(), s.size());
  }
};

}  // namespace

std::uint64_t Ledger::state_hash() const noexcept {
  Fnv1a f;
  f.u64(offers_.size());
  for (const auto& [provider, o] : offers_) {
    f.str(provider);
    f.u64(static_cast<std::uint64_t>(o.from_frequency));
    f.u64(static_cast<std::uint64_t>(o.to_frequency));
    f.u64(static_cast<std::uint64_t>(o.bandwidth));
    f.u64(o.epoch);
    f.u64(static_cast<std::uint64_t>(o.price));
    f.u64(o.allocations_left);
  }
  f.u64(balances_.size());
  for (const auto& [account, b] : balances_) {
    f.str(account);
    f.u64(static_cast<std::uint64_t>(b));
  }
  return f.h;
}

Ledger Ledger::replay(const std::set<std::string>& trusted, const std::vector<LedgerEntry>& log) {
  Ledger ledger(trusted);
  for (const auto& entry : log) ledger.execute(entry.payload);
  return ledger;
}

nlohmann::json to_json(const LedgerEntry& e) {
  nlohmann::json j{{"payload", e.payload.to_json()},
                   {"accepted", e.result.accepted},
                   {"state_hash", e.result.state_hash}};
  if (e.result.reason) j["reason"] = to_string(*e.result.reason);
  if (e.record) j["record"] = e.record->to_json();
  return j;
}

LedgerEntry ledger_entry_from_json(const nlohmann::json& j) {
  LedgerEntry e;
  e.payload = TxPayload::from_json(j.at("payload"));
  e.result.accepted = j.at("accepted").get<bool>();
  e.result.state_hash = j.at("state_hash").get<std::uint64_t>();
  if (j.contains("reason")) e.result.reason = rejection_from_string(j.at("reason").get<std::string>());
  if (j.contains("record")) e.record = OfferRecord::from_json(j.at("record"));
  return e;
}

void Ledger::write_ndjson(std::ostream& out) const {
  for (const auto& e : log_) out << to_json(e).dump() << '\n';
}

std::vector<LedgerEntry> Ledger::read_ndjson(std::istream& in) {
  std::vector<LedgerEntry> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      entries.push_back(ledger_entry_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::io, std::string("bad ledger log line: ") + e.what());
    }
  }
  return entries;
}

nlohmann::json Ledger::state_json() const {
  nlohmann::json offers = nlohmann::json::array();
  for (const auto& [provider, o] : offers_) offers.push_back(record_for(provider, o).to_json());
  nlohmann::json balances = nlohmann::json::object();
  for (const auto& [account, b] : balances_) balances[account] = from_tokens(b);
  return {{"offers", offers}, {"balances", balances}, {"state_hash", state_hash()}};
}

double next_price(const PriceRange& range, Rng& rng) {
  if (!(range.min_cost > 0.0) || range.max_cost < range.min_cost)
    throw Error(ErrorCode::invalid_argument, "price range needs 0 < min_cost <= max_cost");
  if (range.min_cost == range.max_cost) return range.min_cost;
  return rng.bernoulli(0.5) ? range.max_cost : range.min_cost;
}

}  // namespace bandsim
