#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "consensus/chain_store.hpp"

namespace esp2cs::gateway {

/// One metered parking session reconstructed from ParkingStarted/ParkingEnded logs.
struct SessionSpan {
  std::uint64_t space_id = 0;
  Address vehicle;
  std::uint64_t start = 0;
  std::optional<std::uint64_t> end;  // open while the session is active
  std::uint64_t fee = 0;
};

struct OccupancyRecord {
  std::uint64_t space_id = 0;
  std::uint64_t from = 0;
  std::uint64_t to = 0;
  std::uint64_t occupied_seconds = 0;
  std::uint64_t sessions_count = 0;
  std::uint64_t revenue = 0;

  bool operator==(const OccupancyRecord&) const = default;
};

/// Folds session events over blocks in chain order.
class SessionFolder {
public:
  void apply(const consensus::StoredBlock& block);
  [[nodiscard]] const std::vector<SessionSpan>& sessions() const { return sessions_; }

private:
  std::vector<SessionSpan> sessions_;
  std::map<Address, std::size_t> open_;  // vehicle -> index of its open session
};

std::vector<SessionSpan> fold_sessions(const std::vector<const consensus::StoredBlock*>& chain);

/// Sessions on `space_id` seen through the window [from, to). Open sessions
/// count as occupied up to `now`; revenue is the fees settled inside the window.
OccupancyRecord occupancy(const std::vector<SessionSpan>& sessions, std::uint64_t space_id, std::uint64_t from,
                          std::uint64_t to, std::uint64_t now);

/// Session index kept in step with a node's canonical chain. Extending the
/// indexed chain is incremental; a reorg rebuilds from genesis.
class OccupancyIndex {
public:
  void refresh(const consensus::ChainStore& chain);
  [[nodiscard]] const std::vector<SessionSpan>& sessions() const { return folder_.sessions(); }
  [[nodiscard]] std::uint64_t rebuilds() const { return rebuilds_; }

private:
  SessionFolder folder_;
  std::optional<Digest> tip_;
  std::uint64_t tip_height_ = 0;
  std::uint64_t rebuilds_ = 0;
};

}  // namespace esp2cs::gateway
