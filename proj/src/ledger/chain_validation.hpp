#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ledger/authority_set.hpp"
#include "ledger/block.hpp"

namespace esp2cs {

enum class ChainRule {
  Genesis,
  BrokenLink,
  BadHeight,
  BadTimestamp,
  WrongProposer,
  BadSignature,
  TxRootMismatch,
};

std::string_view rule_name(ChainRule r);

struct ChainError {
  std::uint64_t height = 0;
  ChainRule rule = ChainRule::Genesis;
  std::string message;
};

/// Header-only checks of `child` against its parent: hash link, height,
/// strictly increasing timestamp, round-robin proposer, signature.
std::optional<ChainError> check_header(const BlockHeader& parent, const BlockHeader& child,
                                       const AuthoritySet& authorities);

/// Full structural validation from the configured genesis. Returns the first
/// violated rule, or nullopt when the chain is valid. State roots are not
/// re-derived here; the consensus layer does that by re-execution.
std::optional<ChainError> validate_chain(const std::vector<Block>& blocks,
                                         const Digest& genesis_hash,
                                         const AuthoritySet& authorities);

}  // namespace esp2cs
