#include "consensus/mempool.hpp"

namespace esp2cs::consensus {

std::string_view rejection_name(Rejection r) {
  switch (r) {
    case Rejection::BadSignature: return "BadSignature";
    case Rejection::BadNonce: return "BadNonce";
    case Rejection::InsufficientFunds: return "InsufficientFunds";
    case Rejection::Duplicate: return "Duplicate";
    case Rejection::NonceConflict: return "NonceConflict";
    case Rejection::PoolFull: return "PoolFull";
  }
  return "Unknown";
}

std::optional<Rejection> Mempool::add(const Transaction& tx, const runtime::WorldState& head,
                                      const runtime::Executor& executor) {
  auto hash = tx.hash();
  if (hashes_.count(hash)) return Rejection::Duplicate;
  if (!tx.signature_valid()) return Rejection::BadSignature;
  const auto sender = tx.sender_address();
  const auto* acct = head.find_account(sender);
  if (tx.nonce < (acct ? acct->nonce : 0)) return Rejection::BadNonce;
  auto fee = executor.max_fee_wei(tx);
  std::uint64_t balance = acct ? acct->balance : 0;
  if (!fee || *fee > balance || tx.value > balance - *fee) return Rejection::InsufficientFunds;

  Key key{sender, tx.nonce};
  if (pool_.count(key)) return Rejection::NonceConflict;
  if (pool_.size() >= capacity_) return Rejection::PoolFull;
  pool_.emplace(key, tx);
  hashes_.insert(hash);
  return std::nullopt;
}

std::vector<Transaction> Mempool::ordered() const {
  std::vector<Transaction> out;
  out.reserve(pool_.size());
  for (const auto& [_, tx] : pool_) out.push_back(tx);
  return out;
}

void Mempool::prune(const runtime::WorldState& head) {
  for (auto it = pool_.begin(); it != pool_.end();) {
    const auto* acct = head.find_account(it->first.first);
    if (it->first.second < (acct ? acct->nonce : 0)) {
      hashes_.erase(it->second.hash());
      it = pool_.erase(it);
    } else {
      ++it;
    }
  }
}

void Mempool::remove(const Transaction& tx) {
  auto it = pool_.find({tx.sender_address(), tx.nonce});
  if (it != pool_.end() && it->second == tx) {
    hashes_.erase(tx.hash());
    pool_.erase(it);
  }
}

}  // namespace esp2cs::consensus
