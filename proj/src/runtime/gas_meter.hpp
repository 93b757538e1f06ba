#pragma once

#include <cstdint>

#include "ledger/bytes.hpp"

namespace esp2cs::runtime {

/// Integer gas prices per metered action. Fixed at genesis.
struct GasSchedule {
  std::uint64_t tx_base = 21000;
  std::uint64_t calldata_per_byte = 16;
  std::uint64_t sstore_new = 20000;
  std::uint64_t sstore_update = 5000;
  std::uint64_t sload = 800;
  std::uint64_t log_base = 375;
  std::uint64_t log_per_topic = 375;
  std::uint64_t log_per_byte = 8;
  /// Credited when a non-zero storage word is cleared.
  std::uint64_t sstore_clear_refund = 15000;
  /// The refund may cover at most consumed / refund_quotient.
  std::uint64_t refund_quotient = 2;

  bool operator==(const GasSchedule&) const = default;

  /// Throws Error when a field is zero.
  void validate() const;
};

class OutOfGas : public Error {
public:
  OutOfGas() : Error("OutOfGas") {}
};

class GasMeter {
public:
  GasMeter(const GasSchedule& schedule, std::uint64_t limit) : schedule_(schedule), limit_(limit) {}

  void charge(std::uint64_t amount);
  void add_refund(std::uint64_t amount) { refund_ += amount; }

  /// Cost of rewriting storage from `old_value` to `new_value`, word by word
  /// (32-byte words, zero-padded). Equal words cost an sload; zero to
  /// non-zero costs sstore_new; clearing costs sstore_update and earns a refund.
  void charge_store(ByteView old_value, ByteView new_value);
  void charge_load(ByteView value);
  void charge_log(std::size_t topics, std::size_t data_bytes);

  [[nodiscard]] std::uint64_t consumed() const { return consumed_; }
  [[nodiscard]] std::uint64_t refund_counter() const { return refund_; }
  /// consumed - min(refund, consumed / quotient)
  [[nodiscard]] std::uint64_t net_used() const;
  [[nodiscard]] std::uint64_t limit() const { return limit_; }
  [[nodiscard]] const GasSchedule& schedule() const { return schedule_; }

private:
  const GasSchedule& schedule_;
  std::uint64_t limit_;
  std::uint64_t consumed_ = 0;
  std::uint64_t refund_ = 0;
};

std::size_t storage_words(std::size_t bytes);

}  // namespace esp2cs::runtime
