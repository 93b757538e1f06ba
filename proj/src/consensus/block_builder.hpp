#pragma once

#include <optional>
#include <string>
#include <vector>

#include "consensus/mempool.hpp"
#include "ledger/authority_set.hpp"
#include "ledger/block.hpp"
#include "ledger/crypto.hpp"
#include "runtime/executor.hpp"

namespace esp2cs::consensus {

class NotScheduled : public Error {
public:
  using Error::Error;
};

struct ExecutedBlock {
  Block block;
  runtime::WorldState state;
  std::vector<runtime::Receipt> receipts;
};

/// Draws transactions in (sender, nonce) order, skips the ones the executor
/// excludes, and signs the header. Throws NotScheduled when `proposer` does
/// not own the next height, Error when the timestamp does not advance.
ExecutedBlock build_block(const KeyPair& proposer, const AuthoritySet& authorities,
                          const runtime::Executor& executor, const Block& parent,
                          const runtime::WorldState& parent_state, const std::vector<Transaction>& candidates,
                          std::uint64_t timestamp, std::size_t max_txs = 512);

/// Re-executes `block` on top of `parent_state`. Fails when any transaction
/// would have been excluded or the resulting state root differs.
struct ApplyResult {
  std::optional<ExecutedBlock> executed;
  std::string error;
};
ApplyResult apply_block(const runtime::Executor& executor, const runtime::WorldState& parent_state,
                        const Block& block);

}  // namespace esp2cs::consensus
