#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <set>
#include <utility>
#include <vector>

#include "ledger/transaction.hpp"
#include "runtime/executor.hpp"
#include "runtime/world_state.hpp"

namespace esp2cs::consensus {

/// Why a transaction was refused at admission. Names match the executor's
/// exclusion reasons where they overlap.
enum class Rejection { BadSignature, BadNonce, InsufficientFunds, Duplicate, NonceConflict, PoolFull };
std::string_view rejection_name(Rejection r);

/// Pending transactions keyed by (sender address, nonce); block building
/// draws them in that order.
class Mempool {
public:
  explicit Mempool(std::size_t capacity = 10'000) : capacity_(capacity) {}

  /// Admission against the head state: signature, nonce not yet used, and
  /// enough balance for this transaction's worst-case fee plus value.
  std::optional<Rejection> add(const Transaction& tx, const runtime::WorldState& head,
                               const runtime::Executor& executor);

  [[nodiscard]] std::vector<Transaction> ordered() const;
  [[nodiscard]] bool contains(const Digest& tx_hash) const { return hashes_.count(tx_hash) > 0; }
  [[nodiscard]] std::size_t size() const { return pool_.size(); }
  [[nodiscard]] bool empty() const { return pool_.empty(); }

  /// Drops everything the head state has made stale (nonce already used).
  void prune(const runtime::WorldState& head);
  void remove(const Transaction& tx);

private:
  using Key = std::pair<Address, std::uint64_t>;
  std::size_t capacity_;
  std::map<Key, Transaction> pool_;
  std::set<Digest> hashes_;
};

}  // namespace esp2cs::consensus
