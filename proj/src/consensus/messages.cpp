#include "consensus/messages.hpp"

#include "ledger/encoding.hpp"

namespace esp2cs::consensus {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::size_t kMaxLocator = 64;
constexpr std::size_t kMaxBatch = 512;
}  // namespace

std::string_view message_kind(const WireMessage& m) {
  return std::visit(overloaded{
                        [](const TxMsg&) { return std::string_view("tx"); },
                        [](const BlockMsg&) { return std::string_view("block"); },
                        [](const StatusMsg&) { return std::string_view("status"); },
                        [](const GetBlocksMsg&) { return std::string_view("get_blocks"); },
                        [](const BlocksMsg&) { return std::string_view("blocks"); },
                    },
                    m);
}

Bytes encode_message(const WireMessage& m) {
  Encoder enc;
  enc.u64(m.index());
  std::visit(overloaded{
                 [&](const TxMsg& x) { encode_into(enc, x.tx); },
                 [&](const BlockMsg& x) { encode_into(enc, x.block); },
                 [&](const StatusMsg& x) { enc.u64(x.height).fixed(x.head); },
                 [&](const GetBlocksMsg& x) {
                   enc.u64(x.locator.size());
                   for (const auto& d : x.locator) enc.fixed(d);
                   enc.u64(x.max_blocks);
                 },
                 [&](const BlocksMsg& x) {
                   enc.u64(x.blocks.size());
                   for (const auto& b : x.blocks) encode_into(enc, b);
                 },
             },
             m);
  return enc.take();
}

WireMessage decode_message(ByteView bytes) {
  Decoder dec(bytes);
  WireMessage out;
  switch (dec.u64()) {
    case 0: out = TxMsg{decode_transaction(dec)}; break;
    case 1: out = BlockMsg{decode_block(dec)}; break;
    case 2: {
      StatusMsg s;
      s.height = dec.u64();
      s.head = dec.fixed<Digest>();
      out = s;
      break;
    }
    case 3: {
      GetBlocksMsg g;
      auto n = dec.count(Digest::size);
      if (n > kMaxLocator) throw DecodeError("locator too long");
      for (std::uint64_t i = 0; i < n; ++i) g.locator.push_back(dec.fixed<Digest>());
      g.max_blocks = dec.u64();
      out = g;
      break;
    }
    case 4: {
      BlocksMsg b;
      auto n = dec.count(8);
      if (n > kMaxBatch) throw DecodeError("block batch too large");
      for (std::uint64_t i = 0; i < n; ++i) b.blocks.push_back(decode_block(dec));
      out = std::move(b);
      break;
    }
    default: throw DecodeError("unknown message tag");
  }
  dec.expect_done();
  return out;
}

}  // namespace esp2cs::consensus
