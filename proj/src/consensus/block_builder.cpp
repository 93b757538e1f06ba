#include "consensus/block_builder.hpp"

namespace esp2cs::consensus {

ExecutedBlock build_block(const KeyPair& proposer, const AuthoritySet& authorities,
                          const runtime::Executor& executor, const Block& parent,
                          const runtime::WorldState& parent_state, const std::vector<Transaction>& candidates,
                          std::uint64_t timestamp, std::size_t max_txs) {
  const auto height = parent.header.height + 1;
  if (authorities.proposer_for(height) != proposer.public_key()) {
    throw NotScheduled("not scheduled for height " + std::to_string(height));
  }
  if (timestamp <= parent.header.timestamp) throw Error("block timestamp must advance");

  ExecutedBlock out;
  out.state = parent_state;
  runtime::BlockContext ctx{timestamp, proposer.public_key()};
  for (const auto& tx : candidates) {
    if (out.block.transactions.size() >= max_txs) break;
    auto result = executor.execute(out.state, tx, ctx);
    if (!result.included()) continue;
    out.block.transactions.push_back(tx);
    out.receipts.push_back(std::move(result.receipt));
  }

  auto& h = out.block.header;
  h.height = height;
  h.parent_hash = parent.hash();
  h.timestamp = timestamp;
  h.proposer = proposer.public_key();
  h.tx_root = out.block.compute_tx_root();
  h.state_root = out.state.root();
  h.sign_with(proposer);
  return out;
}

ApplyResult apply_block(const runtime::Executor& executor, const runtime::WorldState& parent_state,
                        const Block& block) {
  ApplyResult r;
  ExecutedBlock out;
  out.state = parent_state;
  runtime::BlockContext ctx{block.header.timestamp, block.header.proposer};
  for (std::size_t i = 0; i < block.transactions.size(); ++i) {
    auto result = executor.execute(out.state, block.transactions[i], ctx);
    if (!result.included()) {
      r.error = "tx " + std::to_string(i) + " excluded: " + std::string(runtime::exclusion_name(*result.excluded));
      return r;
    }
    out.receipts.push_back(std::move(result.receipt));
  }
  if (out.state.root() != block.header.state_root) {
    r.error = "state_root mismatch at height " + std::to_string(block.header.height);
    return r;
  }
  out.block = block;
  r.executed = std::move(out);
  return r;
}

}  // namespace esp2cs::consensus
