#include "contracts/contracts.hpp"

namespace esp2cs::contracts::app {

namespace {
constexpr std::string_view kCount = "count";
constexpr std::string_view kSpace = "a/";
constexpr std::string_view kMeter = "/s";
constexpr std::string_view kOccupancy = "/o";
constexpr std::string_view kOwned = "owned/";
constexpr std::string_view kSession = "v/";
constexpr std::string_view kQuote = "q/";

using runtime::Revert;

MeteredSpace load_space(CallContext& ctx, std::uint64_t id) {
  auto raw = ctx.load(key(kSpace, id, kMeter));
  if (!raw) throw Revert("UnknownSpace");
  return MeteredSpace::decode(*raw);
}

SessionCore load_active(CallContext& ctx, const std::string& k) {
  auto s = SessionCore::decode(ctx.load(k));
  if (!s || !s->active) throw Revert("NoSession");
  return *s;
}

std::uint64_t fee_for(std::uint64_t rate, std::uint64_t start, std::uint64_t now) {
  auto elapsed = now > start ? now - start : 0;
  unsigned __int128 fee = static_cast<unsigned __int128>(rate) * elapsed;
  if (fee > UINT64_MAX) throw Revert("Overflow");
  return static_cast<std::uint64_t>(fee);
}
}  // namespace

Bytes registerParkingSpace(CallContext& ctx, Decoder& args) {
  auto rate = args.u64();
  if (rate == 0) throw Revert("BadRate");
  auto id = decode_u64_value(ctx.load(kCount));
  ctx.store(kCount, encode_u64(id + 1));
  ctx.store(key(kSpace, id, kMeter), MeteredSpace{ctx.caller(), rate}.encode());
  ctx.store(key(kSpace, id, kOccupancy), Occupancy{std::nullopt, ctx.block_time()}.encode());

  // per-owner index for renter dashboards
  auto ok = key(kOwned, ctx.caller());
  std::vector<std::uint64_t> owned;
  if (auto raw = ctx.load(ok)) {
    Decoder dec(*raw);
    auto n = dec.count(8);
    for (std::uint64_t i = 0; i < n; ++i) owned.push_back(dec.u64());
  }
  owned.push_back(id);
  Encoder enc;
  enc.u64(owned.size());
  for (auto x : owned) enc.u64(x);
  ctx.store(ok, std::move(enc).take());

  ctx.emit("SpaceRegistered", {encode_u64(id), topic(ctx.caller())}, encode_u64(rate));
  return encode_u64(id);
}

Bytes startParking(CallContext& ctx, Decoder& args) {
  auto id = args.u64();
  load_space(ctx, id);
  auto sk = key(kSession, ctx.caller());
  auto existing = SessionCore::decode(ctx.load(sk));
  if (existing && existing->active) throw Revert("SessionExists");
  auto occ_key = key(kSpace, id, kOccupancy);
  auto occ = Occupancy::decode(ctx.load(occ_key));
  if (occ.occupant) throw Revert("SpaceOccupied");

  const auto now = ctx.block_time();
  ctx.store(sk, SessionCore{id, now, now, true}.encode());
  ctx.store(key(kQuote, ctx.caller()), FeeQuote{0, now}.encode());
  occ.occupant = ctx.caller();
  ctx.store(occ_key, occ.encode());
  ctx.emit("ParkingStarted", {encode_u64(id), topic(ctx.caller())}, encode_u64(now));
  return {};
}

Bytes calculateParkingFee(CallContext& ctx, Decoder&) {
  auto s = load_active(ctx, key(kSession, ctx.caller()));
  auto space = load_space(ctx, s.space_id);
  auto qk = key(kQuote, ctx.caller());
  ctx.load(qk);
  auto fee = fee_for(space.rate_per_second, s.start_time, ctx.block_time());
  ctx.store(qk, FeeQuote{fee, ctx.block_time()}.encode());
  return encode_u64(fee);
}

Bytes checkAmountDue(CallContext& ctx, Decoder&) {
  auto sk = key(kSession, ctx.caller());
  auto s = load_active(ctx, sk);
  auto space = load_space(ctx, s.space_id);
  auto due = fee_for(space.rate_per_second, s.start_time, ctx.block_time());
  s.last_checked = ctx.block_time();
  ctx.store(sk, s.encode());
  // the amount is now acknowledged; any cached quote is stale
  ctx.erase(key(kQuote, ctx.caller()));
  return encode_u64(due);
}

Bytes endParking(CallContext& ctx, Decoder&) {
  auto sk = key(kSession, ctx.caller());
  auto s = load_active(ctx, sk);
  auto space = load_space(ctx, s.space_id);
  const auto now = ctx.block_time();
  auto fee = fee_for(space.rate_per_second, s.start_time, now);
  ctx.transfer(ctx.caller(), space.owner, fee);

  s.active = false;
  s.last_checked = now;
  ctx.store(sk, s.encode());
  auto occ_key = key(kSpace, s.space_id, kOccupancy);
  auto occ = Occupancy::decode(ctx.load(occ_key));
  occ.occupant.reset();
  ctx.store(occ_key, occ.encode());
  ctx.erase(key(kQuote, ctx.caller()));
  ctx.emit("ParkingEnded", {encode_u64(s.space_id), topic(ctx.caller())},
           Encoder{}.u64(s.start_time).u64(now).u64(fee).take());
  return encode_u64(fee);
}

std::uint64_t space_count(const WorldState& s) {
  return decode_u64_value(s.load(ContractId::AutomatedParkingPayments, kCount));
}

std::optional<SpaceInfo> space(const WorldState& s, std::uint64_t id) {
  constexpr auto c = ContractId::AutomatedParkingPayments;
  auto raw = s.load(c, key(kSpace, id, kMeter));
  if (!raw) return std::nullopt;
  return SpaceInfo{id, MeteredSpace::decode(*raw), Occupancy::decode(s.load(c, key(kSpace, id, kOccupancy)))};
}

std::optional<ParkingSession> session(const WorldState& s, const Address& vehicle) {
  constexpr auto c = ContractId::AutomatedParkingPayments;
  auto core = SessionCore::decode(s.load(c, key(kSession, vehicle)));
  if (!core) return std::nullopt;
  ParkingSession out;
  out.vehicle = vehicle;
  out.space_id = core->space_id;
  out.start_time = core->start_time;
  out.active = core->active;
  out.last_checked = core->last_checked;
  if (auto q = FeeQuote::decode(s.load(c, key(kQuote, vehicle)))) out.cached_fee = q->cached_fee;
  return out;
}

std::optional<std::uint64_t> amount_due(const WorldState& s, const Address& vehicle, std::uint64_t at) {
  auto sess = session(s, vehicle);
  if (!sess || !sess->active) return std::nullopt;
  auto sp = space(s, sess->space_id);
  if (!sp) return std::nullopt;
  unsigned __int128 fee = static_cast<unsigned __int128>(sp->space.rate_per_second) *
                          (at > sess->start_time ? at - sess->start_time : 0);
  if (fee > UINT64_MAX) return std::nullopt;
  return static_cast<std::uint64_t>(fee);
}

}  // namespace esp2cs::contracts::app
