#include "ledger/block.hpp"

#include "ledger/encoding.hpp"

namespace esp2cs {

namespace {
void encode_unsigned(Encoder& enc, const BlockHeader& h) {
  enc.u64(h.height)
      .fixed(h.parent_hash)
      .u64(h.timestamp)
      .fixed(h.proposer)
      .fixed(h.tx_root)
      .fixed(h.state_root);
}

// sender + 6 integers + two empty strings + signature
constexpr std::size_t kMinTxSize = 32 + 8 * 6 + 64;
}  // namespace

Bytes BlockHeader::signing_bytes() const {
  Encoder enc;
  encode_unsigned(enc, *this);
  return std::move(enc).take();
}

void encode_into(Encoder& enc, const BlockHeader& h) {
  encode_unsigned(enc, h);
  enc.fixed(h.signature);
}

Bytes BlockHeader::encode() const {
  Encoder enc;
  encode_into(enc, *this);
  return std::move(enc).take();
}

Digest BlockHeader::hash() const { return sha256(encode()); }

bool BlockHeader::signature_valid() const { return verify(proposer, signing_bytes(), signature); }

void BlockHeader::sign_with(const KeyPair& key) {
  proposer = key.public_key();
  signature = key.sign(signing_bytes());
}

void encode_into(Encoder& enc, const Block& b) {
  encode_into(enc, b.header);
  enc.u64(b.transactions.size());
  for (const auto& tx : b.transactions) encode_into(enc, tx);
}

Bytes Block::encode() const {
  Encoder enc;
  encode_into(enc, *this);
  return std::move(enc).take();
}

std::vector<Bytes> Block::tx_leaves() const {
  std::vector<Bytes> out;
  out.reserve(transactions.size());
  for (const auto& tx : transactions) out.push_back(tx.encode());
  return out;
}

BlockHeader decode_header(Decoder& dec) {
  BlockHeader h;
  h.height = dec.u64();
  h.parent_hash = dec.fixed<Digest>();
  h.timestamp = dec.u64();
  h.proposer = dec.fixed<PublicKey>();
  h.tx_root = dec.fixed<Digest>();
  h.state_root = dec.fixed<Digest>();
  h.signature = dec.fixed<Signature>();
  return h;
}

BlockHeader decode_header(ByteView bytes) {
  Decoder dec(bytes);
  auto h = decode_header(dec);
  dec.expect_done();
  return h;
}

Block decode_block(Decoder& dec) {
  Block b;
  b.header = decode_header(dec);
  auto n = dec.count(kMinTxSize);
  b.transactions.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) b.transactions.push_back(decode_transaction(dec));
  return b;
}

Block decode_block(ByteView bytes) {
  Decoder dec(bytes);
  auto b = decode_block(dec);
  dec.expect_done();
  return b;
}

}  // namespace esp2cs
