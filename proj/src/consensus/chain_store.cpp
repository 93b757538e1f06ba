#include "consensus/chain_store.hpp"

#include <algorithm>

namespace esp2cs::consensus {

ChainStore::ChainStore(Genesis genesis) {
  auto sb = std::make_unique<StoredBlock>();
  sb->hash = genesis.block.hash();
  sb->block = std::move(genesis.block);
  sb->state = std::move(genesis.state);
  canonical_.push_back(sb->hash);
  tips_.insert(sb->hash);
  blocks_.emplace(sb->hash, std::move(sb));
}

const StoredBlock* ChainStore::find(const Digest& h) const {
  auto it = blocks_.find(h);
  return it == blocks_.end() ? nullptr : it->second.get();
}

const StoredBlock& ChainStore::insert(ExecutedBlock executed) {
  auto sb = std::make_unique<StoredBlock>();
  sb->hash = executed.block.hash();
  if (auto* existing = find(sb->hash)) return *existing;
  const auto parent = executed.block.header.parent_hash;
  if (!contains(parent)) throw Error("insert: parent not stored");
  sb->block = std::move(executed.block);
  sb->state = std::move(executed.state);
  sb->receipts = std::move(executed.receipts);
  tips_.erase(parent);
  tips_.insert(sb->hash);
  auto* raw = sb.get();
  blocks_.emplace(raw->hash, std::move(sb));
  return *raw;
}

ChainStore::Reorg ChainStore::set_head(const Digest& h) {
  Reorg r;
  const auto* node = find(h);
  if (!node) throw Error("set_head: unknown block");

  // walk the new branch back to the canonical chain
  std::vector<const StoredBlock*> branch;
  while (!is_canonical(node->hash)) {
    branch.push_back(node);
    node = find(node->block.header.parent_hash);
  }
  const auto fork_height = node->block.header.height;
  for (auto height = canonical_.size() - 1; height > fork_height; --height) {
    const auto* old = find(canonical_[height]);
    r.removed.push_back(old);
    for (const auto& tx : old->block.transactions) tx_index_.erase(tx.hash());
  }
  canonical_.resize(fork_height + 1);
  std::reverse(branch.begin(), branch.end());
  for (const auto* b : branch) {
    canonical_.push_back(b->hash);
    for (std::size_t i = 0; i < b->block.transactions.size(); ++i) {
      tx_index_[b->block.transactions[i].hash()] = TxLocation{b->hash, b->block.header.height, i};
    }
  }
  r.added = std::move(branch);
  return r;
}

const StoredBlock* ChainStore::at_height(std::uint64_t h) const {
  if (h >= canonical_.size()) return nullptr;
  return find(canonical_[h]);
}

bool ChainStore::is_canonical(const Digest& h) const {
  const auto* b = find(h);
  if (!b) return false;
  auto height = b->block.header.height;
  return height < canonical_.size() && canonical_[height] == h;
}

std::vector<const StoredBlock*> ChainStore::canonical_chain() const {
  std::vector<const StoredBlock*> out;
  out.reserve(canonical_.size());
  for (const auto& h : canonical_) out.push_back(find(h));
  return out;
}

std::vector<Digest> ChainStore::locator() const {
  std::vector<Digest> out;
  std::uint64_t step = 1;
  std::uint64_t h = height();
  while (true) {
    out.push_back(canonical_[h]);
    if (h == 0 || out.size() >= 48) break;
    if (out.size() >= 10) step *= 2;
    h = h > step ? h - step : 0;
  }
  if (out.back() != canonical_.front()) out.push_back(canonical_.front());
  return out;
}

std::optional<TxLocation> ChainStore::find_tx(const Digest& tx_hash) const {
  auto it = tx_index_.find(tx_hash);
  if (it == tx_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<HeadCandidate> ChainStore::tips() const {
  std::vector<HeadCandidate> out;
  for (const auto& h : tips_) out.push_back(find(h)->candidate());
  return out;
}

}  // namespace esp2cs::consensus
