#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ledger/authority_set.hpp"
#include "ledger/block.hpp"
#include "ledger/chain_validation.hpp"

namespace esp2cs::light {

/// Validated headers from a trusted checkpoint (genesis by default) to the
/// best known tip. Only headers that link, follow the proposer schedule and
/// carry a valid authority signature are ever stored.
class HeaderChain {
public:
  HeaderChain(BlockHeader checkpoint, AuthoritySet authorities);

  [[nodiscard]] const BlockHeader& tip() const { return headers_.back(); }
  [[nodiscard]] const Digest& tip_hash() const { return hashes_.back(); }
  [[nodiscard]] std::uint64_t height() const { return tip().height; }
  [[nodiscard]] std::uint64_t base_height() const { return headers_.front().height; }
  [[nodiscard]] const BlockHeader* at(std::uint64_t height) const;
  [[nodiscard]] const Digest* hash_at(std::uint64_t height) const;
  [[nodiscard]] bool contains(const BlockHeader& h) const;
  [[nodiscard]] const AuthoritySet& authorities() const { return authorities_; }

  struct Offer {
    std::optional<ChainError> error;
    bool adopted = false;
    bool reorganized = false;
    std::size_t appended = 0;
  };

  /// Consecutive headers whose first parent is already stored. The branch is
  /// validated in full first; it replaces the current tip only if it wins
  /// fork choice (greater height, then smaller hash).
  Offer offer(const std::vector<BlockHeader>& branch);

private:
  AuthoritySet authorities_;
  std::vector<BlockHeader> headers_;
  std::vector<Digest> hashes_;
};

}  // namespace esp2cs::light
