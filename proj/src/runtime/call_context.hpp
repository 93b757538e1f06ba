#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ledger/bytes.hpp"
#include "ledger/transaction.hpp"
#include "runtime/gas_meter.hpp"
#include "runtime/world_state.hpp"

namespace esp2cs::runtime {

struct LogRecord {
  ContractId contract = ContractId::VehicularCommunication;
  std::string event;
  std::vector<Bytes> topics;
  Bytes data;

  bool operator==(const LogRecord&) const = default;
};

/// In-contract failure. The transaction is still included; its state changes
/// are rolled back and gas is charged.
class Revert : public Error {
public:
  explicit Revert(const std::string& reason) : Error(reason) {}
};

/// What a contract function sees while it runs: metered storage, logs,
/// balance transfers and the call metadata.
class CallContext {
public:
  CallContext(StateOverlay& state, GasMeter* meter, ContractId self, const Address& caller,
              std::uint64_t value, std::uint64_t block_time)
      : state_(state), meter_(meter), self_(self), caller_(caller), value_(value), block_time_(block_time) {}

  [[nodiscard]] bool is_view() const { return meter_ == nullptr; }
  [[nodiscard]] ContractId self() const { return self_; }
  [[nodiscard]] const Address& caller() const { return caller_; }
  [[nodiscard]] std::uint64_t value() const { return value_; }
  [[nodiscard]] std::uint64_t block_time() const { return block_time_; }
  [[nodiscard]] Address self_address() const { return contract_address(self_); }

  std::optional<Bytes> load(std::string_view key);
  void store(std::string_view key, const Bytes& value);
  void erase(std::string_view key) { store(key, Bytes{}); }
  /// Every entry under `prefix`, each charged as a load.
  std::vector<std::pair<std::string, Bytes>> scan(std::string_view prefix);

  void emit(std::string event, std::vector<Bytes> topics, Bytes data);
  /// Moves funds between accounts; reverts with InsufficientFunds.
  void transfer(const Address& from, const Address& to, std::uint64_t amount);
  [[nodiscard]] std::uint64_t balance_of(const Address& a) const;
  /// Registered signing key of an account, charged as one load.
  std::optional<PublicKey> key_of(const Address& a);

  std::vector<LogRecord> take_logs() { return std::move(logs_); }

private:
  StateOverlay& state_;
  GasMeter* meter_;
  ContractId self_;
  Address caller_;
  std::uint64_t value_;
  std::uint64_t block_time_;
  std::vector<LogRecord> logs_;
};

}  // namespace esp2cs::runtime
