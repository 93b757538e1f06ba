#include <algorithm>

#include "contracts/contracts.hpp"
#include "contracts/sealing.hpp"

namespace esp2cs::contracts::vc {

namespace {
constexpr std::string_view kCount = "count";
constexpr std::string_view kMessage = "m/";
constexpr std::string_view kInbox = "in/";
constexpr std::string_view kOutbox = "out/";

std::vector<std::uint64_t> decode_ids(const std::optional<Bytes>& v) {
  std::vector<std::uint64_t> ids;
  if (!v) return ids;
  Decoder dec(*v);
  auto n = dec.count(8);
  for (std::uint64_t i = 0; i < n; ++i) ids.push_back(dec.u64());
  return ids;
}

Bytes encode_ids(const std::vector<std::uint64_t>& ids) {
  Encoder enc;
  enc.u64(ids.size());
  for (auto id : ids) enc.u64(id);
  return std::move(enc).take();
}

template <typename Load>
Message with_read_flag(Message m, Load&& load_inbox) {
  if (m.recipient) {
    auto box = Inbox::decode(load_inbox(*m.recipient));
    m.read = std::find(box.unread.begin(), box.unread.end(), m.id) == box.unread.end();
  }
  return m;
}

std::uint64_t store_message(CallContext& ctx, const Message& m) {
  auto id = decode_u64_value(ctx.load(kCount));
  ctx.store(key(kMessage, id), encode_stored_message(m));
  ctx.store(kCount, encode_u64(id + 1));
  auto out_key = key(kOutbox, ctx.caller());
  auto outbox = decode_ids(ctx.load(out_key));
  outbox.push_back(id);
  ctx.store(out_key, encode_ids(outbox));
  return id;
}
}  // namespace

Bytes publishMessage(CallContext& ctx, Decoder& args) {
  auto content = args.bytes();
  if (content.empty()) throw runtime::Revert("EmptyContent");
  if (content.size() > kMaxContentBytes) throw runtime::Revert("ContentTooLarge");
  Message m{0, ctx.caller(), std::nullopt, std::move(content), ctx.block_time(), false};
  auto id = store_message(ctx, m);
  ctx.emit("MessagePublished", {encode_u64(id), topic(m.sender)}, m.content);
  return encode_u64(id);
}

Bytes sendMessage(CallContext& ctx, Decoder& args) {
  auto recipient = args.fixed<Address>();
  auto sealed = args.bytes();
  if (sealed.empty()) throw runtime::Revert("EmptyContent");
  if (sealed.size() > kMaxContentBytes + kSealOverhead) throw runtime::Revert("ContentTooLarge");
  if (!ctx.key_of(recipient)) throw runtime::Revert("UnknownRecipient");

  Message m{0, ctx.caller(), recipient, std::move(sealed), ctx.block_time(), false};
  auto id = store_message(ctx, m);
  auto in_key = key(kInbox, recipient);
  auto box = Inbox::decode(ctx.load(in_key));
  box.unread.push_back(id);
  ctx.store(in_key, box.encode());
  ctx.emit("MessageSent", {encode_u64(id), topic(m.sender), topic(recipient)}, {});
  return encode_u64(id);
}

Bytes readMessage(CallContext& ctx, Decoder& args) {
  auto id = args.u64();
  auto raw = ctx.load(key(kMessage, id));
  if (!raw) throw runtime::Revert("UnknownId");
  auto m = with_read_flag(decode_stored_message(id, *raw),
                          [&](const Address& r) { return ctx.load(key(kInbox, r)); });
  Encoder enc;
  encode_into(enc, m);
  return std::move(enc).take();
}

Bytes getUnreadMessages(CallContext& ctx, Decoder&) {
  auto box = Inbox::decode(ctx.load(key(kInbox, ctx.caller())));
  std::vector<Message> out;
  for (auto id : box.unread) {
    auto raw = ctx.load(key(kMessage, id));
    if (raw) out.push_back(decode_stored_message(id, *raw));
  }
  return encode_messages(out);
}

Bytes markAllAsRead(CallContext& ctx, Decoder&) {
  auto in_key = key(kInbox, ctx.caller());
  auto box = Inbox::decode(ctx.load(in_key));
  const std::uint64_t n = box.unread.size();
  if (n > 0) {
    box.read_count += n;
    box.unread.clear();
    ctx.store(in_key, box.encode());
  }
  return encode_u64(n);
}

std::uint64_t message_count(const WorldState& s) {
  return decode_u64_value(s.load(ContractId::VehicularCommunication, kCount));
}

std::optional<Message> message(const WorldState& s, std::uint64_t id) {
  auto raw = s.load(ContractId::VehicularCommunication, key(kMessage, id));
  if (!raw) return std::nullopt;
  return with_read_flag(decode_stored_message(id, *raw), [&](const Address& r) {
    return s.load(ContractId::VehicularCommunication, key(kInbox, r));
  });
}

std::vector<Message> unread_for(const WorldState& s, const Address& account) {
  auto box = Inbox::decode(s.load(ContractId::VehicularCommunication, key(kInbox, account)));
  std::vector<Message> out;
  for (auto id : box.unread) {
    if (auto m = message(s, id)) out.push_back(std::move(*m));
  }
  return out;
}

}  // namespace esp2cs::contracts::vc
