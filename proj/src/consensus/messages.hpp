#pragma once

// Peer-to-peer payloads. The simulator delivers these values directly; live
// nodes send their canonical encoding over HTTP.

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "ledger/block.hpp"
#include "ledger/transaction.hpp"

namespace esp2cs::consensus {

struct TxMsg {
  Transaction tx;
  bool operator==(const TxMsg&) const = default;
};

struct BlockMsg {
  Block block;
  bool operator==(const BlockMsg&) const = default;
};

/// Head announcement, sent every slot.
struct StatusMsg {
  std::uint64_t height = 0;
  Digest head;
  bool operator==(const StatusMsg&) const = default;
};

/// Request for canonical blocks following the first locator hash the
/// responder knows. Locator hashes run from the requester's head backwards
/// with exponentially growing gaps, ending at genesis.
struct GetBlocksMsg {
  std::vector<Digest> locator;
  std::uint64_t max_blocks = 128;
  bool operator==(const GetBlocksMsg&) const = default;
};

struct BlocksMsg {
  std::vector<Block> blocks;
  bool operator==(const BlocksMsg&) const = default;
};

using WireMessage = std::variant<TxMsg, BlockMsg, StatusMsg, GetBlocksMsg, BlocksMsg>;

std::string_view message_kind(const WireMessage& m);
Bytes encode_message(const WireMessage& m);
/// Throws DecodeError on malformed input.
WireMessage decode_message(ByteView bytes);

}  // namespace esp2cs::consensus
