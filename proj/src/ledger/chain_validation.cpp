#include "ledger/chain_validation.hpp"

namespace esp2cs {

std::string_view rule_name(ChainRule r) {
  switch (r) {
    case ChainRule::Genesis: return "genesis mismatch";
    case ChainRule::BrokenLink: return "broken link";
    case ChainRule::BadHeight: return "bad height";
    case ChainRule::BadTimestamp: return "non-increasing timestamp";
    case ChainRule::WrongProposer: return "wrong proposer";
    case ChainRule::BadSignature: return "bad signature";
    case ChainRule::TxRootMismatch: return "tx_root mismatch";
  }
  return "unknown";
}

namespace {
ChainError fail(std::uint64_t height, ChainRule rule) {
  return {height, rule, std::string(rule_name(rule)) + " at height " + std::to_string(height)};
}
}  // namespace

std::optional<ChainError> check_header(const BlockHeader& parent, const BlockHeader& child,
                                       const AuthoritySet& authorities) {
  if (child.parent_hash != parent.hash()) return fail(child.height, ChainRule::BrokenLink);
  if (child.height != parent.height + 1) return fail(child.height, ChainRule::BadHeight);
  if (child.timestamp <= parent.timestamp) return fail(child.height, ChainRule::BadTimestamp);
  if (child.proposer != authorities.proposer_for(child.height)) {
    return fail(child.height, ChainRule::WrongProposer);
  }
  if (!child.signature_valid()) return fail(child.height, ChainRule::BadSignature);
  return std::nullopt;
}

std::optional<ChainError> validate_chain(const std::vector<Block>& blocks,
                                         const Digest& genesis_hash,
                                         const AuthoritySet& authorities) {
  if (blocks.empty() || blocks.front().hash() != genesis_hash || blocks.front().header.height != 0 ||
      blocks.front().compute_tx_root() != blocks.front().header.tx_root) {
    return fail(0, ChainRule::Genesis);
  }
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    if (auto err = check_header(blocks[i - 1].header, b.header, authorities)) return err;
    if (b.compute_tx_root() != b.header.tx_root) return fail(b.header.height, ChainRule::TxRootMismatch);
  }
  return std::nullopt;
}

}  // namespace esp2cs
