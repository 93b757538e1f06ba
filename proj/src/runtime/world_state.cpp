#include "runtime/world_state.hpp"

#include <algorithm>

#include "ledger/crypto.hpp"
#include "ledger/encoding.hpp"
#include "ledger/merkle.hpp"

namespace esp2cs::runtime {

Address contract_address(ContractId id) {
  auto h = sha256("esp2cs/contract/" + std::string(contract_name(id)));
  Address a;
  std::copy(h.bytes.end() - 20, h.bytes.end(), a.bytes.begin());
  return a;
}

bool is_all_zero(ByteView v) {
  return std::all_of(v.begin(), v.end(), [](std::uint8_t b) { return b == 0; });
}

const Account* WorldState::find_account(const Address& a) const {
  auto it = accounts_.find(a);
  return it == accounts_.end() ? nullptr : &it->second;
}

Account& WorldState::account(const Address& a) { return accounts_[a]; }

std::optional<Bytes> WorldState::load(ContractId c, std::string_view key) const {
  auto it = storage_.find(StorageKey{c, std::string(key)});
  if (it == storage_.end()) return std::nullopt;
  return it->second;
}

void WorldState::store(ContractId c, std::string key, Bytes value) {
  StorageKey k{c, std::move(key)};
  if (value.empty() || is_all_zero(value)) {
    storage_.erase(k);
  } else {
    storage_[std::move(k)] = std::move(value);
  }
}

std::vector<std::pair<std::string, Bytes>> WorldState::scan(ContractId c, std::string_view prefix) const {
  std::vector<std::pair<std::string, Bytes>> out;
  for (auto it = storage_.lower_bound(StorageKey{c, std::string(prefix)});
       it != storage_.end() && it->first.contract == c && it->first.key.starts_with(prefix); ++it) {
    out.emplace_back(it->first.key, it->second);
  }
  return out;
}

unsigned __int128 WorldState::total_supply() const {
  unsigned __int128 total = 0;
  for (const auto& [_, acct] : accounts_) total += acct.balance;
  return total;
}

Digest WorldState::root() const {
  std::vector<Digest> leaves;
  leaves.reserve(accounts_.size() + storage_.size());
  for (const auto& [addr, acct] : accounts_) {
    Encoder enc;
    enc.u64(0).fixed(addr).u64(acct.balance).u64(acct.nonce).boolean(acct.public_key.has_value());
    if (acct.public_key) enc.fixed(*acct.public_key);
    leaves.push_back(sha256(enc.data()));
  }
  for (const auto& [key, value] : storage_) {
    Encoder enc;
    enc.u64(1).u64(static_cast<std::uint64_t>(key.contract)).str(key.key).bytes(value);
    leaves.push_back(sha256(enc.data()));
  }
  return merkle_root_of_hashes(std::move(leaves));
}

const Account* StateOverlay::find_account(const Address& a) const {
  if (auto it = accounts_.find(a); it != accounts_.end()) return &it->second;
  return base_.find_account(a);
}

Account& StateOverlay::account(const Address& a) {
  auto it = accounts_.find(a);
  if (it != accounts_.end()) return it->second;
  const Account* existing = base_.find_account(a);
  return accounts_.emplace(a, existing ? *existing : Account{}).first->second;
}

std::optional<Bytes> StateOverlay::load(ContractId c, std::string_view key) const {
  if (auto it = storage_.find(StorageKey{c, std::string(key)}); it != storage_.end()) return it->second;
  return base_.load(c, key);
}

void StateOverlay::store(ContractId c, std::string key, Bytes value) {
  if (value.empty() || is_all_zero(value)) {
    storage_[StorageKey{c, std::move(key)}] = std::nullopt;
  } else {
    storage_[StorageKey{c, std::move(key)}] = std::move(value);
  }
}

std::vector<std::pair<std::string, Bytes>> StateOverlay::scan(ContractId c, std::string_view prefix) const {
  std::map<std::string, Bytes> merged;
  for (auto& [k, v] : base_.scan(c, prefix)) merged.emplace(std::move(k), std::move(v));
  for (auto it = storage_.lower_bound(StorageKey{c, std::string(prefix)});
       it != storage_.end() && it->first.contract == c && it->first.key.starts_with(prefix); ++it) {
    if (it->second) {
      merged[it->first.key] = *it->second;
    } else {
      merged.erase(it->first.key);
    }
  }
  return {merged.begin(), merged.end()};
}

void StateOverlay::commit(WorldState& target) const {
  for (const auto& [addr, acct] : accounts_) target.account(addr) = acct;
  for (const auto& [key, value] : storage_) target.store(key.contract, key.key, value.value_or(Bytes{}));
}

}  // namespace esp2cs::runtime
