#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "consensus/block_builder.hpp"
#include "consensus/fork_choice.hpp"
#include "consensus/genesis.hpp"

namespace esp2cs::consensus {

/// A validated block with the state after it and its receipts.
struct StoredBlock {
  Block block;
  Digest hash;
  runtime::WorldState state;
  std::vector<runtime::Receipt> receipts;

  [[nodiscard]] HeadCandidate candidate() const { return {block.header.height, hash}; }
};

struct TxLocation {
  Digest block_hash;
  std::uint64_t height = 0;
  std::size_t index = 0;
};

/// Block tree rooted at genesis plus the canonical chain to the current head.
class ChainStore {
public:
  explicit ChainStore(Genesis genesis);

  [[nodiscard]] const StoredBlock* find(const Digest& h) const;
  [[nodiscard]] bool contains(const Digest& h) const { return blocks_.count(h) > 0; }
  /// Parent must already be stored. Does not move the head.
  const StoredBlock& insert(ExecutedBlock executed);

  struct Reorg {
    std::vector<const StoredBlock*> removed;  // old branch, head first
    std::vector<const StoredBlock*> added;    // new branch, ancestor side first
  };
  Reorg set_head(const Digest& h);

  [[nodiscard]] const StoredBlock& genesis() const { return *find(canonical_.front()); }
  [[nodiscard]] const StoredBlock& head() const { return *find(canonical_.back()); }
  [[nodiscard]] std::uint64_t height() const { return canonical_.size() - 1; }
  [[nodiscard]] const StoredBlock* at_height(std::uint64_t h) const;
  [[nodiscard]] bool is_canonical(const Digest& h) const;
  [[nodiscard]] std::vector<const StoredBlock*> canonical_chain() const;
  [[nodiscard]] std::vector<Digest> locator() const;
  [[nodiscard]] std::optional<TxLocation> find_tx(const Digest& tx_hash) const;
  /// Blocks with no stored children.
  [[nodiscard]] std::vector<HeadCandidate> tips() const;
  [[nodiscard]] std::size_t block_count() const { return blocks_.size(); }

private:
  std::map<Digest, std::unique_ptr<StoredBlock>> blocks_;
  std::vector<Digest> canonical_;
  std::map<Digest, TxLocation> tx_index_;
  std::set<Digest> tips_;
};

}  // namespace esp2cs::consensus
