#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "consensus/chain_store.hpp"
#include "consensus/genesis.hpp"
#include "consensus/mempool.hpp"
#include "consensus/messages.hpp"
#include "ledger/block_log.hpp"
#include "ledger/crypto.hpp"

namespace esp2cs::consensus {

using PeerId = std::string;

struct Outgoing {
  /// nullopt broadcasts to every known peer.
  std::optional<PeerId> to;
  WireMessage message;
};

struct NodeConfig {
  GenesisConfig genesis;
  /// Signing key. Nodes without one (or whose key is not an authority)
  /// follow the chain but never propose.
  std::optional<KeyPair> key;
  std::string name;
  std::size_t max_block_txs = 512;
  std::size_t mempool_capacity = 10'000;
  std::size_t max_orphans = 256;
  /// Append-only block file; replayed on construction when it exists.
  std::optional<std::filesystem::path> block_log;
};

struct NodeLogEntry {
  std::uint64_t time = 0;
  std::string text;
};

/// One PoA participant as a single-threaded state machine. Inputs are
/// messages, local submissions and slot ticks; outputs accumulate in an
/// outbox that the transport (simulator or HTTP) drains.
class Node {
public:
  explicit Node(NodeConfig config);

  void add_peer(const PeerId& peer);
  [[nodiscard]] const std::vector<PeerId>& peers() const { return peers_; }

  /// Local submission (gateway relay). Broadcasts the transaction when admitted.
  std::optional<Rejection> submit_transaction(const Transaction& tx);
  void on_message(const PeerId& from, const WireMessage& msg, std::uint64_t now);
  /// Slot boundary: propose when scheduled for the next height, then announce the head.
  void on_slot(std::uint64_t now);

  /// Fault injection: the next block this node proposes is produced twice.
  /// Peers in `group_b` receive an empty sibling, everyone else the real one.
  void equivocate_next(std::vector<PeerId> group_b);

  std::vector<Outgoing> take_outbox();

  [[nodiscard]] const std::string& name() const { return config_.name; }
  [[nodiscard]] const GenesisConfig& genesis() const { return config_.genesis; }
  [[nodiscard]] const AuthoritySet& authorities() const { return authorities_; }
  [[nodiscard]] bool is_authority() const;
  [[nodiscard]] const std::optional<KeyPair>& key() const { return config_.key; }
  [[nodiscard]] const runtime::Executor& executor() const { return executor_; }
  [[nodiscard]] const ChainStore& chain() const { return chain_; }
  [[nodiscard]] const StoredBlock& head() const { return chain_.head(); }
  [[nodiscard]] const runtime::WorldState& head_state() const { return chain_.head().state; }
  [[nodiscard]] const Mempool& mempool() const { return mempool_; }
  [[nodiscard]] const std::map<PeerId, std::uint64_t>& peer_last_seen() const { return peer_last_seen_; }
  [[nodiscard]] const std::map<PublicKey, std::uint64_t>& authority_last_block() const {
    return authority_last_block_;
  }
  [[nodiscard]] const std::vector<NodeLogEntry>& log() const { return log_; }
  [[nodiscard]] std::uint64_t reorg_count() const { return reorgs_; }
  [[nodiscard]] std::uint64_t dropped_blocks() const { return dropped_; }
  [[nodiscard]] std::size_t orphan_count() const;

  /// Validates and stores a block; returns true when it was new and valid.
  /// Exposed for tests and the block-log replay.
  bool accept_block(const Block& block, const std::optional<PeerId>& from, std::uint64_t now);

private:
  void send(std::optional<PeerId> to, WireMessage msg);
  void relay(const std::optional<PeerId>& except, const WireMessage& msg);
  void note(std::uint64_t now, std::string text);
  void update_head(std::uint64_t now);
  void connect_orphans(const Digest& parent, std::uint64_t now);
  void propose(std::uint64_t now);

  NodeConfig config_;
  AuthoritySet authorities_;
  runtime::Executor executor_;
  ChainStore chain_;
  Mempool mempool_;
  std::vector<PeerId> peers_;
  std::vector<Outgoing> outbox_;
  std::map<Digest, std::vector<Block>> orphans_;
  std::map<PeerId, std::uint64_t> peer_last_seen_;
  std::map<PublicKey, std::uint64_t> authority_last_block_;
  std::vector<NodeLogEntry> log_;
  std::optional<std::vector<PeerId>> equivocate_to_;
  std::unique_ptr<BlockLog> block_log_;
  bool replaying_ = false;
  std::uint64_t reorgs_ = 0;
  std::uint64_t dropped_ = 0;
};

}  // namespace esp2cs::consensus
