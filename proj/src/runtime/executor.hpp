#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ledger/transaction.hpp"
#include "runtime/call_context.hpp"
#include "runtime/gas_meter.hpp"
#include "runtime/world_state.hpp"

namespace esp2cs::runtime {

inline constexpr std::uint64_t kWeiPerGwei = 1'000'000'000;

struct RuntimeConfig {
  GasSchedule gas;
  /// Per-transaction gas cap; admission reserves limit * price up front.
  std::uint64_t tx_gas_limit = 1'000'000;

  bool operator==(const RuntimeConfig&) const = default;
};

struct BlockContext {
  std::uint64_t timestamp = 0;
  PublicKey proposer;
};

/// Failed preconditions. Such transactions never enter a block.
enum class Exclusion { BadSignature, BadNonce, InsufficientFunds };
std::string_view exclusion_name(Exclusion e);

struct Receipt {
  Digest tx_hash;
  bool success = true;
  std::string revert_reason;
  /// Net gas charged (after storage-clear refunds).
  std::uint64_t gas_used = 0;
  /// Gas consumed before refunds.
  std::uint64_t gas_consumed = 0;
  Bytes return_value;
  std::vector<LogRecord> logs;

  bool operator==(const Receipt&) const = default;
};

struct TxOutcome {
  std::optional<Exclusion> excluded;
  Receipt receipt;

  [[nodiscard]] bool included() const { return !excluded.has_value(); }
};

class UnknownFunction : public Error {
public:
  using Error::Error;
};

struct ViewResult {
  Bytes value;
  std::uint64_t gas_used = 0;
};

class Executor {
public:
  explicit Executor(RuntimeConfig config);

  [[nodiscard]] std::optional<Exclusion> precheck(const WorldState& state, const Transaction& tx) const;

  /// Applies `tx` to `state`. Excluded transactions leave `state` untouched.
  TxOutcome execute(WorldState& state, const Transaction& tx, const BlockContext& ctx) const;

  /// Runs a declared view against an immutable state. Throws UnknownFunction
  /// for anything that is not a view, Revert for in-contract errors.
  [[nodiscard]] ViewResult call_view(const WorldState& state, ContractId contract, std::string_view function,
                                     ByteView args, std::uint64_t at_time, const Address& caller = {}) const;

  [[nodiscard]] const RuntimeConfig& config() const { return config_; }
  /// Wei reserved at admission: tx_gas_limit * price * 1e9, nullopt on overflow.
  [[nodiscard]] std::optional<std::uint64_t> max_fee_wei(const Transaction& tx) const;

private:
  RuntimeConfig config_;
};

/// One-line structured text record for reports.
std::string format_receipt(const Receipt& r);

}  // namespace esp2cs::runtime
