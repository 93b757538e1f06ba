#include "consensus/node.hpp"

#include <algorithm>

#include "ledger/chain_validation.hpp"

namespace esp2cs::consensus {

namespace {
constexpr std::size_t kOrphansPerParent = 8;
}

Node::Node(NodeConfig config)
    : config_(std::move(config)),
      authorities_(config_.genesis.authority_set()),
      executor_(config_.genesis.runtime),
      chain_(build_genesis(config_.genesis)),
      mempool_(config_.mempool_capacity) {
  if (config_.block_log) {
    BlockLog log(*config_.block_log);
    replaying_ = true;
    for (const auto& b : log.load()) accept_block(b, std::nullopt, b.header.timestamp);
    replaying_ = false;
    block_log_ = std::make_unique<BlockLog>(std::move(log));
  }
}

bool Node::is_authority() const { return config_.key && authorities_.contains(config_.key->public_key()); }

void Node::add_peer(const PeerId& peer) {
  if (peer != config_.name && std::find(peers_.begin(), peers_.end(), peer) == peers_.end()) {
    peers_.push_back(peer);
  }
}

std::size_t Node::orphan_count() const {
  std::size_t n = 0;
  for (const auto& [_, v] : orphans_) n += v.size();
  return n;
}

void Node::send(std::optional<PeerId> to, WireMessage msg) { outbox_.push_back({std::move(to), std::move(msg)}); }

void Node::relay(const std::optional<PeerId>& except, const WireMessage& msg) {
  for (const auto& p : peers_) {
    if (except && p == *except) continue;
    send(p, msg);
  }
}

void Node::note(std::uint64_t now, std::string text) { log_.push_back({now, std::move(text)}); }

std::vector<Outgoing> Node::take_outbox() { return std::exchange(outbox_, {}); }

std::optional<Rejection> Node::submit_transaction(const Transaction& tx) {
  auto rejected = mempool_.add(tx, head_state(), executor_);
  if (!rejected) relay(std::nullopt, TxMsg{tx});
  return rejected;
}

void Node::equivocate_next(std::vector<PeerId> group_b) { equivocate_to_ = std::move(group_b); }

bool Node::accept_block(const Block& block, const std::optional<PeerId>& from, std::uint64_t now) {
  const auto hash = block.hash();
  if (chain_.contains(hash)) return false;
  const auto* parent = chain_.find(block.header.parent_hash);
  if (!parent) {
    auto& bucket = orphans_[block.header.parent_hash];
    if (orphan_count() < config_.max_orphans && bucket.size() < kOrphansPerParent &&
        std::find(bucket.begin(), bucket.end(), block) == bucket.end()) {
      bucket.push_back(block);
    }
    if (from) send(*from, GetBlocksMsg{chain_.locator()});
    return false;
  }

  auto reject = [&](const std::string& why) {
    ++dropped_;
    note(now, "dropped block " + hash.hex().substr(0, 16) + " at height " + std::to_string(block.header.height) +
                  ": " + why);
    return false;
  };
  if (auto err = check_header(parent->block.header, block.header, authorities_)) return reject(err->message);
  if (block.compute_tx_root() != block.header.tx_root) return reject("tx_root mismatch");
  auto applied = apply_block(executor_, parent->state, block);
  if (!applied.executed) return reject(applied.error);

  chain_.insert(std::move(*applied.executed));
  authority_last_block_[block.header.proposer] = block.header.timestamp;
  if (block_log_ && !replaying_) block_log_->append(block);
  update_head(now);
  connect_orphans(hash, now);
  return true;
}

void Node::connect_orphans(const Digest& parent, std::uint64_t now) {
  auto it = orphans_.find(parent);
  if (it == orphans_.end()) return;
  auto children = std::move(it->second);
  orphans_.erase(it);
  for (const auto& child : children) accept_block(child, std::nullopt, now);
}

void Node::update_head(std::uint64_t now) {
  auto tips = chain_.tips();
  auto best = choose_head(tips);
  if (best.hash == chain_.head().hash) return;
  auto reorg = chain_.set_head(best.hash);
  if (!reorg.removed.empty()) {
    ++reorgs_;
    note(now, "reorg: " + std::to_string(reorg.removed.size()) + " block(s) replaced, new head " +
                  best.hash.hex().substr(0, 16) + " at height " + std::to_string(best.height));
  }
  for (const auto* b : reorg.added) {
    for (const auto& tx : b->block.transactions) mempool_.remove(tx);
  }
  mempool_.prune(head_state());
  // transactions from abandoned blocks go back to the pool when still valid
  for (const auto* b : reorg.removed) {
    for (const auto& tx : b->block.transactions) {
      if (!chain_.find_tx(tx.hash())) (void)mempool_.add(tx, head_state(), executor_);
    }
  }
}

void Node::on_message(const PeerId& from, const WireMessage& msg, std::uint64_t now) {
  peer_last_seen_[from] = now;
  add_peer(from);
  if (const auto* m = std::get_if<TxMsg>(&msg)) {
    if (!mempool_.contains(m->tx.hash()) && !chain_.find_tx(m->tx.hash())) {
      if (!mempool_.add(m->tx, head_state(), executor_)) relay(from, msg);
    }
  } else if (const auto* m = std::get_if<BlockMsg>(&msg)) {
    if (accept_block(m->block, from, now)) relay(from, msg);
  } else if (const auto* m = std::get_if<StatusMsg>(&msg)) {
    if (!chain_.contains(m->head) && prefer({m->height, m->head}, chain_.head().candidate())) {
      send(from, GetBlocksMsg{chain_.locator()});
    }
  } else if (const auto* m = std::get_if<GetBlocksMsg>(&msg)) {
    const StoredBlock* fork = nullptr;
    for (const auto& h : m->locator) {
      if (chain_.is_canonical(h)) {
        fork = chain_.find(h);
        break;
      }
    }
    if (!fork) return;
    BlocksMsg reply;
    auto limit = std::min<std::uint64_t>(m->max_blocks, 128);
    for (auto h = fork->block.header.height + 1; h <= chain_.height() && reply.blocks.size() < limit; ++h) {
      reply.blocks.push_back(chain_.at_height(h)->block);
    }
    if (!reply.blocks.empty()) send(from, std::move(reply));
  } else if (const auto* m = std::get_if<BlocksMsg>(&msg)) {
    for (const auto& b : m->blocks) accept_block(b, std::nullopt, now);
    // ask for more if the peer's batch was full
    if (m->blocks.size() >= 128) send(from, GetBlocksMsg{chain_.locator()});
  }
}

void Node::propose(std::uint64_t now) {
  const auto& parent = chain_.head();
  auto built = build_block(*config_.key, authorities_, executor_, parent.block, parent.state, mempool_.ordered(), now,
                           config_.max_block_txs);
  auto block = built.block;

  if (equivocate_to_) {
    auto group_b = std::move(*equivocate_to_);
    equivocate_to_.reset();
    auto sibling = build_block(*config_.key, authorities_, executor_, parent.block, parent.state, {}, now + 1, 0);
    note(now, "equivocating at height " + std::to_string(block.header.height));
    accept_block(block, std::nullopt, now);
    for (const auto& p : peers_) {
      bool in_b = std::find(group_b.begin(), group_b.end(), p) != group_b.end();
      send(p, BlockMsg{in_b ? sibling.block : block});
    }
    return;
  }
  if (accept_block(block, std::nullopt, now)) relay(std::nullopt, BlockMsg{block});
}

void Node::on_slot(std::uint64_t now) {
  if (is_authority()) {
    const auto next = chain_.height() + 1;
    if (authorities_.proposer_for(next) == config_.key->public_key() && now > chain_.head().block.header.timestamp) {
      propose(now);
    }
  }
  relay(std::nullopt, StatusMsg{chain_.height(), chain_.head().hash});
}

}  // namespace esp2cs::consensus
