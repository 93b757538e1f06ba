#include "contracts/contracts.hpp"

namespace esp2cs::contracts::pm {

namespace {
constexpr std::string_view kOwner = "owner";
constexpr std::string_view kDeposit = "dep/";
constexpr std::string_view kPending = "pend/";
constexpr std::string_view kRequestCount = "rq/count";
constexpr std::string_view kRequest = "rq/";

using runtime::Revert;

Address require_owner(CallContext& ctx) {
  auto raw = ctx.load(kOwner);
  if (!raw || ctx.caller() != Address::from_view(*raw)) throw Revert("NotOwner");
  return ctx.caller();
}
}  // namespace

Bytes makePayment(CallContext& ctx, Decoder&) {
  if (ctx.value() == 0) throw Revert("ZeroValue");
  auto k = key(kDeposit, ctx.caller());
  auto dep = decode_u64_value(ctx.load(k));
  ctx.store(k, encode_u64(dep + ctx.value()));
  ctx.emit("PaymentMade", {topic(ctx.caller())}, encode_u64(ctx.value()));
  return {};
}

Bytes requestRefund(CallContext& ctx, Decoder& args) {
  auto amount = args.u64();
  if (amount == 0) throw Revert("ZeroValue");
  auto dep = decode_u64_value(ctx.load(key(kDeposit, ctx.caller())));
  auto pk = key(kPending, ctx.caller());
  auto pending = decode_u64_value(ctx.load(pk));
  if (amount > dep || pending > dep - amount) throw Revert("ExcessiveRefund");
  ctx.store(pk, encode_u64(pending + amount));

  // audit trail of requests, in order
  auto n = decode_u64_value(ctx.load(kRequestCount));
  ctx.store(key(kRequest, n), RefundRequest{amount, ctx.block_time(), ctx.caller()}.encode());
  ctx.store(kRequestCount, encode_u64(n + 1));
  ctx.emit("RefundRequested", {topic(ctx.caller())}, Encoder{}.u64(n).u64(amount).take());
  return {};
}

Bytes processRefund(CallContext& ctx, Decoder& args) {
  auto user = args.fixed<Address>();
  require_owner(ctx);
  auto pk = key(kPending, user);
  auto pending = decode_u64_value(ctx.load(pk));
  if (pending == 0) throw Revert("NothingPending");
  auto dk = key(kDeposit, user);
  auto dep = decode_u64_value(ctx.load(dk));
  ctx.transfer(ctx.self_address(), user, pending);
  ctx.store(dk, encode_u64(dep - pending));
  ctx.erase(pk);
  ctx.emit("RefundProcessed", {topic(user)}, encode_u64(pending));
  return encode_u64(pending);
}

Bytes withdrawFunds(CallContext& ctx, Decoder&) {
  auto owner = require_owner(ctx);
  std::uint64_t total = 0;
  for (const auto& [k, v] : ctx.scan(kDeposit)) {
    auto user = address_from_key(k, kDeposit);
    auto dep = decode_u64_value(v);
    auto pending = decode_u64_value(ctx.load(key(kPending, user)));
    if (dep > pending) {
      total += dep - pending;
      // only the pending part stays in escrow
      ctx.store(k, encode_u64(pending));
    }
  }
  if (total == 0) throw Revert("NothingToWithdraw");
  ctx.transfer(ctx.self_address(), owner, total);
  ctx.emit("FundsWithdrawn", {topic(owner)}, encode_u64(total));
  return encode_u64(total);
}

void set_owner(WorldState& s, const Address& owner) {
  s.store(ContractId::PaymentManagement, std::string(kOwner), topic(owner));
}

std::optional<Address> owner(const WorldState& s) {
  auto raw = s.load(ContractId::PaymentManagement, kOwner);
  if (!raw) return std::nullopt;
  return Address::from_view(*raw);
}

std::uint64_t deposit_of(const WorldState& s, const Address& a) {
  return decode_u64_value(s.load(ContractId::PaymentManagement, key(kDeposit, a)));
}

std::uint64_t pending_of(const WorldState& s, const Address& a) {
  return decode_u64_value(s.load(ContractId::PaymentManagement, key(kPending, a)));
}

}  // namespace esp2cs::contracts::pm
