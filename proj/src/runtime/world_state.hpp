#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ledger/bytes.hpp"
#include "ledger/transaction.hpp"

namespace esp2cs::runtime {

struct Account {
  std::uint64_t balance = 0;
  std::uint64_t nonce = 0;
  /// Learned from genesis or from the first signed transaction.
  std::optional<PublicKey> public_key;

  bool operator==(const Account&) const = default;
};

struct StorageKey {
  ContractId contract = ContractId::VehicularCommunication;
  std::string key;

  auto operator<=>(const StorageKey&) const = default;
};

/// Account that holds a contract's escrowed funds.
Address contract_address(ContractId id);

/// Accounts plus contract storage. Storage values are byte strings; an
/// all-zero value is never stored (writing one erases the key).
class WorldState {
public:
  [[nodiscard]] const Account* find_account(const Address& a) const;
  Account& account(const Address& a);

  [[nodiscard]] std::optional<Bytes> load(ContractId c, std::string_view key) const;
  void store(ContractId c, std::string key, Bytes value);
  [[nodiscard]] std::vector<std::pair<std::string, Bytes>> scan(ContractId c, std::string_view prefix) const;

  [[nodiscard]] const std::map<Address, Account>& accounts() const { return accounts_; }
  [[nodiscard]] const std::map<StorageKey, Bytes>& storage() const { return storage_; }

  /// Sum of every balance, contract escrows included.
  [[nodiscard]] unsigned __int128 total_supply() const;
  /// Merkle root over sorted account and storage entries.
  [[nodiscard]] Digest root() const;

  bool operator==(const WorldState&) const = default;

private:
  std::map<Address, Account> accounts_;
  std::map<StorageKey, Bytes> storage_;
};

bool is_all_zero(ByteView v);

/// Copy-on-write view over a WorldState used while one transaction runs.
/// Nothing reaches the base until `commit`.
class StateOverlay {
public:
  explicit StateOverlay(const WorldState& base) : base_(base) {}

  [[nodiscard]] const Account* find_account(const Address& a) const;
  Account& account(const Address& a);
  [[nodiscard]] std::optional<Bytes> load(ContractId c, std::string_view key) const;
  void store(ContractId c, std::string key, Bytes value);
  [[nodiscard]] std::vector<std::pair<std::string, Bytes>> scan(ContractId c, std::string_view prefix) const;

  void commit(WorldState& target) const;

private:
  const WorldState& base_;
  std::map<Address, Account> accounts_;
  std::map<StorageKey, std::optional<Bytes>> storage_;
};

}  // namespace esp2cs::runtime
