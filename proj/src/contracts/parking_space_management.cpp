#include "contracts/contracts.hpp"

namespace esp2cs::contracts::psm {

namespace {
constexpr std::string_view kCount = "count";
constexpr std::string_view kSpace = "s/";
constexpr std::string_view kHeader = "/h";
constexpr std::string_view kLocation = "/loc";
constexpr std::string_view kSlots = "/slots";
constexpr std::string_view kBooking = "/b";
constexpr std::string_view kEarnings = "/e";
constexpr std::uint64_t kHour = 3600;

using runtime::Revert;

SpaceHeader load_header(CallContext& ctx, std::uint64_t id) {
  auto raw = ctx.load(key(kSpace, id, kHeader));
  if (!raw) throw Revert("UnknownSpace");
  return SpaceHeader::decode(*raw);
}

std::vector<Slot> load_slots(CallContext& ctx, std::uint64_t id) {
  auto raw = ctx.load(key(kSpace, id, kSlots));
  if (!raw) return {};
  Decoder dec(*raw);
  return decode_slots(dec);
}

bool window_available(const std::vector<Slot>& slots, const std::optional<Booking>& booking,
                      std::uint64_t now, std::uint64_t from, std::uint64_t until) {
  if (from >= until) return false;
  bool inside = false;
  for (const auto& s : slots) {
    if (s.start <= from && until <= s.end) {
      inside = true;
      break;
    }
  }
  if (!inside) return false;
  if (booking && booking->booked_until > now) {
    // active booking: half-open windows must not intersect
    if (from < booking->booked_until && booking->booked_from < until) return false;
  }
  return true;
}
}  // namespace

std::uint64_t booking_fee(std::uint64_t rate, std::uint64_t from, std::uint64_t until) {
  if (until <= from) return 0;
  unsigned __int128 hours = (until - from + kHour - 1) / kHour;
  unsigned __int128 fee = hours * rate;
  if (fee > UINT64_MAX) throw Revert("Overflow");
  return static_cast<std::uint64_t>(fee);
}

Bytes registerParkingSpace(CallContext& ctx, Decoder& args) {
  auto location = args.str();
  auto rate = args.u64();
  auto slots = decode_slots(args);
  if (rate == 0) throw Revert("BadRate");
  if (!slots_well_formed(slots)) throw Revert("BadSlots");

  auto id = decode_u64_value(ctx.load(kCount));
  ctx.store(kCount, encode_u64(id + 1));
  ctx.store(key(kSpace, id, kHeader), SpaceHeader{ctx.caller(), rate}.encode());
  ctx.store(key(kSpace, id, kLocation), Encoder{}.str(location).take());
  Encoder enc;
  encode_slots(enc, slots);
  ctx.store(key(kSpace, id, kSlots), std::move(enc).take());
  ctx.emit("SpaceRegistered", {encode_u64(id), topic(ctx.caller())}, encode_u64(rate));
  return encode_u64(id);
}

Bytes isAvailable(CallContext& ctx, Decoder& args) {
  auto id = args.u64();
  auto from = args.u64();
  auto until = args.u64();
  load_header(ctx, id);
  auto slots = load_slots(ctx, id);
  auto booking = Booking::decode(ctx.load(key(kSpace, id, kBooking)));
  return encode_u64(window_available(slots, booking, ctx.block_time(), from, until) ? 1 : 0);
}

Bytes bookParkingSpace(CallContext& ctx, Decoder& args) {
  auto id = args.u64();
  auto from = args.u64();
  auto until = args.u64();
  auto header = load_header(ctx, id);
  auto slots = load_slots(ctx, id);
  auto bk = key(kSpace, id, kBooking);
  auto booking = Booking::decode(ctx.load(bk));
  // one booking record per space: an unexpired booking blocks new ones
  if (booking && booking->booked_until > ctx.block_time()) throw Revert("Unavailable");
  if (!window_available(slots, std::nullopt, ctx.block_time(), from, until)) throw Revert("Unavailable");
  if (ctx.value() < booking_fee(header.rate, from, until)) throw Revert("Underpayment");

  ctx.store(bk, Booking{from, until, ctx.caller()}.encode());
  auto ek = key(kSpace, id, kEarnings);
  auto earnings = Earnings::decode(ctx.load(ek));
  earnings.unwithdrawn += ctx.value();
  earnings.lifetime += ctx.value();
  ctx.store(ek, earnings.encode());
  ctx.emit("SpaceBooked", {encode_u64(id), topic(ctx.caller())},
           Encoder{}.u64(from).u64(until).u64(ctx.value()).take());
  return {};
}

Bytes releaseParkingSpace(CallContext& ctx, Decoder& args) {
  auto id = args.u64();
  auto bk = key(kSpace, id, kBooking);
  auto booking = Booking::decode(ctx.load(bk));
  if (!booking) throw Revert("NotBooked");
  if (ctx.caller() != booking->booked_by && ctx.block_time() < booking->booked_until) throw Revert("NotBooker");
  ctx.erase(bk);
  ctx.emit("SpaceReleased", {encode_u64(id)}, {});
  return {};
}

Bytes withdraw(CallContext& ctx, Decoder& args) {
  auto id = args.u64();
  auto header = load_header(ctx, id);
  if (header.owner != ctx.caller()) throw Revert("NotOwner");
  auto ek = key(kSpace, id, kEarnings);
  auto earnings = Earnings::decode(ctx.load(ek));
  if (earnings.unwithdrawn == 0) throw Revert("NothingToWithdraw");
  auto amount = earnings.unwithdrawn;
  earnings.unwithdrawn = 0;
  ctx.transfer(ctx.self_address(), header.owner, amount);
  ctx.store(ek, earnings.encode());
  ctx.emit("EarningsWithdrawn", {encode_u64(id), topic(header.owner)}, encode_u64(amount));
  return encode_u64(amount);
}

std::uint64_t space_count(const WorldState& s) {
  return decode_u64_value(s.load(ContractId::ParkingSpaceManagement, kCount));
}

std::optional<ParkingSpace> space(const WorldState& s, std::uint64_t id) {
  constexpr auto c = ContractId::ParkingSpaceManagement;
  auto raw = s.load(c, key(kSpace, id, kHeader));
  if (!raw) return std::nullopt;
  auto header = SpaceHeader::decode(*raw);
  ParkingSpace out;
  out.id = id;
  out.owner = header.owner;
  out.rate = header.rate;
  if (auto loc = s.load(c, key(kSpace, id, kLocation))) out.location = Decoder(*loc).str();
  if (auto sl = s.load(c, key(kSpace, id, kSlots))) {
    Decoder dec(*sl);
    out.slots = decode_slots(dec);
  }
  if (auto b = Booking::decode(s.load(c, key(kSpace, id, kBooking)))) {
    out.booked_by = b->booked_by;
    out.booked_from = b->booked_from;
    out.booked_until = b->booked_until;
  }
  auto e = Earnings::decode(s.load(c, key(kSpace, id, kEarnings)));
  out.earnings = e.unwithdrawn;
  out.lifetime_earnings = e.lifetime;
  return out;
}

bool available(const ParkingSpace& sp, std::uint64_t now, std::uint64_t from, std::uint64_t until) {
  std::optional<Booking> b;
  if (sp.booked_by) b = Booking{sp.booked_from, sp.booked_until, *sp.booked_by};
  return window_available(sp.slots, b, now, from, until);
}

}  // namespace esp2cs::contracts::psm
