#include "runtime/executor.hpp"

#include <sstream>

#include "contracts/registry.hpp"
#include "ledger/encoding.hpp"

namespace esp2cs::runtime {

std::optional<Bytes> CallContext::load(std::string_view key) {
  auto v = state_.load(self_, key);
  if (meter_) meter_->charge_load(v ? ByteView(*v) : ByteView{});
  return v;
}

void CallContext::store(std::string_view key, const Bytes& value) {
  if (is_view()) throw Revert("StateChangeInView");
  auto old = state_.load(self_, key);
  meter_->charge_store(old ? ByteView(*old) : ByteView{}, value);
  state_.store(self_, std::string(key), value);
}

std::vector<std::pair<std::string, Bytes>> CallContext::scan(std::string_view prefix) {
  auto entries = state_.scan(self_, prefix);
  if (meter_) {
    for (const auto& [_, v] : entries) meter_->charge_load(v);
  }
  return entries;
}

void CallContext::emit(std::string event, std::vector<Bytes> topics, Bytes data) {
  if (is_view()) return;
  // the event signature counts as the first topic
  meter_->charge_log(topics.size() + 1, data.size());
  logs_.push_back({self_, std::move(event), std::move(topics), std::move(data)});
}

void CallContext::transfer(const Address& from, const Address& to, std::uint64_t amount) {
  if (is_view()) throw Revert("StateChangeInView");
  if (amount == 0 || from == to) {
    if (amount > balance_of(from)) throw Revert("InsufficientFunds");
    return;
  }
  auto& src = state_.account(from);
  if (src.balance < amount) throw Revert("InsufficientFunds");
  src.balance -= amount;
  state_.account(to).balance += amount;
}

std::uint64_t CallContext::balance_of(const Address& a) const {
  const auto* acct = state_.find_account(a);
  return acct ? acct->balance : 0;
}

std::optional<PublicKey> CallContext::key_of(const Address& a) {
  if (meter_) meter_->charge(meter_->schedule().sload);
  const auto* acct = state_.find_account(a);
  if (!acct) return std::nullopt;
  return acct->public_key;
}

std::string_view exclusion_name(Exclusion e) {
  switch (e) {
    case Exclusion::BadSignature: return "BadSignature";
    case Exclusion::BadNonce: return "BadNonce";
    case Exclusion::InsufficientFunds: return "InsufficientFunds";
  }
  return "Unknown";
}

Executor::Executor(RuntimeConfig config) : config_(std::move(config)) {
  config_.gas.validate();
  if (config_.tx_gas_limit < config_.gas.tx_base) throw Error("tx_gas_limit below tx_base");
}

std::optional<std::uint64_t> Executor::max_fee_wei(const Transaction& tx) const {
  unsigned __int128 fee = static_cast<unsigned __int128>(config_.tx_gas_limit) * tx.gas_price_gwei * kWeiPerGwei;
  if (fee > UINT64_MAX) return std::nullopt;
  return static_cast<std::uint64_t>(fee);
}

std::optional<Exclusion> Executor::precheck(const WorldState& state, const Transaction& tx) const {
  if (!tx.signature_valid()) return Exclusion::BadSignature;
  const auto* acct = state.find_account(tx.sender_address());
  std::uint64_t nonce = acct ? acct->nonce : 0;
  if (tx.nonce != nonce) return Exclusion::BadNonce;
  auto fee = max_fee_wei(tx);
  std::uint64_t balance = acct ? acct->balance : 0;
  if (!fee || *fee > balance || tx.value > balance - *fee) return Exclusion::InsufficientFunds;
  return std::nullopt;
}

TxOutcome Executor::execute(WorldState& state, const Transaction& tx, const BlockContext& ctx) const {
  TxOutcome out;
  if (auto ex = precheck(state, tx)) {
    out.excluded = ex;
    return out;
  }
  const auto sender = tx.sender_address();
  const auto max_fee = *max_fee_wei(tx);
  {
    auto& acct = state.account(sender);
    acct.nonce += 1;
    acct.public_key = tx.sender;
    acct.balance -= max_fee;  // gas bought up front
  }

  GasMeter meter(config_.gas, config_.tx_gas_limit);
  StateOverlay overlay(state);
  CallContext call(overlay, &meter, tx.contract, sender, tx.value, ctx.timestamp);
  auto& receipt = out.receipt;
  receipt.tx_hash = tx.hash();
  bool refunds_apply = false;
  try {
    meter.charge(config_.gas.tx_base + config_.gas.calldata_per_byte * (tx.function.size() + tx.args.size()));
    const auto* fn = contracts::find_function(tx.contract, tx.function);
    if (!fn || fn->view) throw Revert("UnknownFunction");
    if (tx.value > 0) {
      if (!fn->payable) throw Revert("NonPayable");
      call.transfer(sender, contract_address(tx.contract), tx.value);
    }
    Decoder args(tx.args);
    receipt.return_value = fn->handler(call, args);
    if (!args.done()) throw Revert("BadArguments");
    receipt.logs = call.take_logs();
    overlay.commit(state);
    refunds_apply = true;
  } catch (const Revert& r) {
    receipt.success = false;
    receipt.revert_reason = r.what();
  } catch (const OutOfGas&) {
    receipt.success = false;
    receipt.revert_reason = "OutOfGas";
  } catch (const DecodeError&) {
    receipt.success = false;
    receipt.revert_reason = "BadArguments";
  }
  receipt.gas_consumed = meter.consumed();
  receipt.gas_used = refunds_apply ? meter.net_used() : meter.consumed();

  const std::uint64_t fee = receipt.gas_used * tx.gas_price_gwei * kWeiPerGwei;
  state.account(sender).balance += max_fee - fee;
  if (fee > 0) state.account(address_of(ctx.proposer)).balance += fee;
  return out;
}

ViewResult Executor::call_view(const WorldState& state, ContractId contract, std::string_view function,
                               ByteView args, std::uint64_t at_time, const Address& caller) const {
  const auto* fn = contracts::find_function(contract, function);
  if (!fn || !fn->view) {
    throw UnknownFunction(std::string(contract_name(contract)) + "." + std::string(function) + " is not a view");
  }
  StateOverlay overlay(state);
  CallContext call(overlay, nullptr, contract, caller, 0, at_time);
  Decoder dec(args);
  ViewResult out;
  out.value = fn->handler(call, dec);
  dec.expect_done();
  return out;
}

std::string format_receipt(const Receipt& r) {
  std::ostringstream os;
  os << "tx=" << r.tx_hash.hex() << " status=" << (r.success ? "Success" : "Reverted(" + r.revert_reason + ")")
     << " gas=" << r.gas_used << " logs=[";
  for (std::size_t i = 0; i < r.logs.size(); ++i) {
    if (i) os << ",";
    os << contract_name(r.logs[i].contract) << "." << r.logs[i].event;
  }
  os << "]";
  return os.str();
}

}  // namespace esp2cs::runtime
