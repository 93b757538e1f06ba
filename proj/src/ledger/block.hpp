#pragma once

#include <cstdint>
#include <vector>

#include "ledger/bytes.hpp"
#include "ledger/crypto.hpp"
#include "ledger/merkle.hpp"
#include "ledger/transaction.hpp"

namespace esp2cs {

class Encoder;
class Decoder;

struct BlockHeader {
  std::uint64_t height = 0;
  Digest parent_hash;
  std::uint64_t timestamp = 0;  // simulated seconds
  PublicKey proposer;
  Digest tx_root;
  Digest state_root;
  Signature signature;

  bool operator==(const BlockHeader&) const = default;

  [[nodiscard]] Bytes signing_bytes() const;
  [[nodiscard]] Bytes encode() const;
  /// Hash of the full header, signature included. Children link to this.
  [[nodiscard]] Digest hash() const;
  [[nodiscard]] bool signature_valid() const;
  void sign_with(const KeyPair& key);
};

struct Block {
  BlockHeader header;
  std::vector<Transaction> transactions;

  bool operator==(const Block&) const = default;

  [[nodiscard]] Bytes encode() const;
  [[nodiscard]] Digest hash() const { return header.hash(); }
  /// Canonical encodings of the transactions, in block order.
  [[nodiscard]] std::vector<Bytes> tx_leaves() const;
  [[nodiscard]] Digest compute_tx_root() const { return merkle_root(tx_leaves()); }
};

void encode_into(Encoder& enc, const BlockHeader& h);
void encode_into(Encoder& enc, const Block& b);
BlockHeader decode_header(Decoder& dec);
BlockHeader decode_header(ByteView bytes);
Block decode_block(Decoder& dec);
Block decode_block(ByteView bytes);

}  // namespace esp2cs
