#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace esp2cs::netsim {

struct NodeSummary {
  std::string name;
  bool authority = true;
  std::uint64_t height = 0;
  std::string head_hash;
  std::string state_root;
  std::uint64_t reorgs = 0;
  std::uint64_t dropped_blocks = 0;
};

struct BlockSummary {
  std::uint64_t height = 0;
  std::string hash;
  std::uint64_t timestamp = 0;
  std::string proposer;
  std::size_t tx_count = 0;
  /// Sum of every balance after this block, decimal.
  std::string supply;
};

struct ReceiptRow {
  std::uint64_t height = 0;
  std::string tx_hash;
  std::string actor;
  std::string call;
  std::string status;  // "Success" or "Reverted(reason)"
  std::uint64_t gas_used = 0;
  std::uint64_t fee_wei = 0;
  std::string return_hex;
};

struct GasTotal {
  std::uint64_t count = 0;
  std::uint64_t gas = 0;
};

struct HealRecord {
  std::uint64_t heal_ms = 0;
  std::optional<std::uint64_t> converged_ms;
  /// Distinct heads seen while the partition was active.
  std::size_t max_distinct_heads = 1;
};

struct SimulationReport {
  std::string scenario;
  std::uint64_t seed = 0;
  std::uint64_t duration_s = 0;
  std::uint64_t end_ms = 0;
  std::uint64_t messages_delivered = 0;
  std::uint64_t messages_dropped = 0;

  std::vector<NodeSummary> nodes;
  bool converged = false;
  /// Times at which all nodes came to share one head after having diverged.
  std::vector<std::uint64_t> convergence_ms;
  std::vector<HealRecord> heals;

  std::string reference_node;
  std::vector<BlockSummary> chain;
  std::vector<ReceiptRow> receipts;
  std::map<std::string, GasTotal> gas_totals;
  std::uint64_t total_fees_wei = 0;
  /// label -> balance; labels are actor names, node names and contract:Name.
  std::map<std::string, std::uint64_t> balances;

  std::string genesis_supply;
  bool conservation_ok = true;
  std::uint64_t conservation_checked_blocks = 0;
  std::vector<std::string> conservation_violations;
  std::vector<std::string> warnings;

  [[nodiscard]] std::string to_text() const;
  [[nodiscard]] std::string to_json() const;
};

std::string format_ms(std::uint64_t ms);

}  // namespace esp2cs::netsim
