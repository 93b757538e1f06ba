#include "contracts/records.hpp"

namespace esp2cs::contracts {

namespace {
void put_be(std::string& s, std::uint64_t v) {
  for (int i = 7; i >= 0; --i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void encode_opt_address(Encoder& enc, const std::optional<Address>& a) {
  enc.boolean(a.has_value());
  if (a) enc.fixed(*a);
}

std::optional<Address> decode_opt_address(Decoder& dec) {
  if (!dec.boolean()) return std::nullopt;
  return dec.fixed<Address>();
}
}  // namespace

std::string key(std::string_view prefix, std::uint64_t id) {
  std::string s(prefix);
  put_be(s, id);
  return s;
}

std::string key(std::string_view prefix, const Address& a) {
  std::string s(prefix);
  s.append(reinterpret_cast<const char*>(a.bytes.data()), a.bytes.size());
  return s;
}

std::string key(std::string_view prefix, std::uint64_t id, std::string_view suffix) {
  auto s = key(prefix, id);
  s.append(suffix);
  return s;
}

Address address_from_key(std::string_view k, std::string_view prefix) {
  k.remove_prefix(prefix.size());
  return Address::from_view(as_bytes(k.substr(0, Address::size)));
}

std::uint64_t decode_u64_value(const std::optional<Bytes>& v) {
  if (!v) return 0;
  Decoder dec(*v);
  auto x = dec.u64();
  dec.expect_done();
  return x;
}

void encode_into(Encoder& enc, const Message& m) {
  enc.u64(m.id).fixed(m.sender);
  encode_opt_address(enc, m.recipient);
  enc.bytes(m.content).u64(m.timestamp).boolean(m.read);
}

Message decode_message(Decoder& dec) {
  Message m;
  m.id = dec.u64();
  m.sender = dec.fixed<Address>();
  m.recipient = decode_opt_address(dec);
  m.content = dec.bytes();
  m.timestamp = dec.u64();
  m.read = dec.boolean();
  return m;
}

Bytes encode_messages(const std::vector<Message>& ms) {
  Encoder enc;
  enc.u64(ms.size());
  for (const auto& m : ms) encode_into(enc, m);
  return std::move(enc).take();
}

std::vector<Message> decode_messages(ByteView bytes) {
  Decoder dec(bytes);
  auto n = dec.count(8 * 5 + 20);
  std::vector<Message> out;
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(decode_message(dec));
  dec.expect_done();
  return out;
}

Bytes encode_stored_message(const Message& m) {
  Encoder enc;
  enc.fixed(m.sender);
  encode_opt_address(enc, m.recipient);
  enc.u64(m.timestamp).bytes(m.content);
  return std::move(enc).take();
}

Message decode_stored_message(std::uint64_t id, ByteView bytes) {
  Decoder dec(bytes);
  Message m;
  m.id = id;
  m.sender = dec.fixed<Address>();
  m.recipient = decode_opt_address(dec);
  m.timestamp = dec.u64();
  m.content = dec.bytes();
  dec.expect_done();
  return m;
}

Bytes Inbox::encode() const {
  Encoder enc;
  enc.u64(read_count).u64(unread.size());
  for (auto id : unread) enc.u64(id);
  return std::move(enc).take();
}

Inbox Inbox::decode(const std::optional<Bytes>& v) {
  Inbox box;
  if (!v) return box;
  Decoder dec(*v);
  box.read_count = dec.u64();
  auto n = dec.count(8);
  for (std::uint64_t i = 0; i < n; ++i) box.unread.push_back(dec.u64());
  return box;
}

Bytes RefundRequest::encode() const {
  return Encoder{}.u64(amount).u64(requested_at).fixed(user).take();
}

RefundRequest RefundRequest::decode(ByteView v) {
  Decoder dec(v);
  RefundRequest r;
  r.amount = dec.u64();
  r.requested_at = dec.u64();
  r.user = dec.fixed<Address>();
  return r;
}

bool slots_well_formed(const std::vector<Slot>& slots) {
  if (slots.empty()) return false;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].start >= slots[i].end) return false;
    if (i > 0 && slots[i].start < slots[i - 1].end) return false;
  }
  return true;
}

void encode_slots(Encoder& enc, const std::vector<Slot>& slots) {
  enc.u64(slots.size());
  for (const auto& s : slots) enc.u64(s.start).u64(s.end);
}

std::vector<Slot> decode_slots(Decoder& dec) {
  auto n = dec.count(16);
  std::vector<Slot> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    Slot s;
    s.start = dec.u64();
    s.end = dec.u64();
    out.push_back(s);
  }
  return out;
}

Bytes SpaceHeader::encode() const { return Encoder{}.fixed(owner).u64(rate).take(); }

SpaceHeader SpaceHeader::decode(ByteView v) {
  Decoder dec(v);
  SpaceHeader h;
  h.owner = dec.fixed<Address>();
  h.rate = dec.u64();
  return h;
}

Bytes Booking::encode() const {
  return Encoder{}.u64(booked_from).u64(booked_until).fixed(booked_by).take();
}

std::optional<Booking> Booking::decode(const std::optional<Bytes>& v) {
  if (!v) return std::nullopt;
  Decoder dec(*v);
  Booking b;
  b.booked_from = dec.u64();
  b.booked_until = dec.u64();
  b.booked_by = dec.fixed<Address>();
  return b;
}

Bytes Earnings::encode() const { return Encoder{}.u64(unwithdrawn).u64(lifetime).take(); }

Earnings Earnings::decode(const std::optional<Bytes>& v) {
  Earnings e;
  if (!v) return e;
  Decoder dec(*v);
  e.unwithdrawn = dec.u64();
  e.lifetime = dec.u64();
  return e;
}

Bytes MeteredSpace::encode() const { return Encoder{}.fixed(owner).u64(rate_per_second).take(); }

MeteredSpace MeteredSpace::decode(ByteView v) {
  Decoder dec(v);
  MeteredSpace s;
  s.owner = dec.fixed<Address>();
  s.rate_per_second = dec.u64();
  return s;
}

Bytes Occupancy::encode() const {
  return Encoder{}.fixed(occupant.value_or(Address{})).u64(registered_at).take();
}

Occupancy Occupancy::decode(const std::optional<Bytes>& v) {
  Occupancy o;
  if (!v) return o;
  Decoder dec(*v);
  auto who = dec.fixed<Address>();
  if (!who.is_zero()) o.occupant = who;
  o.registered_at = dec.u64();
  return o;
}

Bytes SessionCore::encode() const {
  return Encoder{}.u64(space_id).u64(start_time).u64(last_checked).boolean(active).take();
}

std::optional<SessionCore> SessionCore::decode(const std::optional<Bytes>& v) {
  if (!v) return std::nullopt;
  Decoder dec(*v);
  SessionCore s;
  s.space_id = dec.u64();
  s.start_time = dec.u64();
  s.last_checked = dec.u64();
  s.active = dec.boolean();
  return s;
}

Bytes FeeQuote::encode() const { return Encoder{}.u64(cached_fee).u64(computed_at).take(); }

std::optional<FeeQuote> FeeQuote::decode(const std::optional<Bytes>& v) {
  if (!v) return std::nullopt;
  Decoder dec(*v);
  FeeQuote q;
  q.cached_fee = dec.u64();
  q.computed_at = dec.u64();
  return q;
}

}  // namespace esp2cs::contracts
