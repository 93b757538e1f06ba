#pragma once

#include <cstdint>
#include <optional>

#include "light/endpoint.hpp"
#include "light/header_chain.hpp"

namespace esp2cs::light {

struct SyncResult {
  std::size_t appended = 0;
  bool reorganized = false;
  /// First invalid header served; headers before it may still have been adopted.
  std::optional<ChainError> error;
};

/// Vehicle-side client: keeps a header chain, checks inclusion proofs and
/// relays transactions it signed itself. Keys never leave the caller.
class LightClient {
public:
  /// Default sync period, in block intervals.
  static constexpr std::uint64_t kSyncPeriodIntervals = 2;

  LightClient(HeaderChain chain, GatewayEndpoint& endpoint, std::size_t batch = 256);

  /// Fetches headers after the local tip.
  SyncResult sync() { return sync_headers(chain_.height() + 1); }
  SyncResult sync_headers(std::uint64_t from_height);

  /// merkle_verify against a header this client holds; false for unknown headers.
  [[nodiscard]] bool verify_tx_inclusion(const BlockHeader& header, const Transaction& tx,
                                         const MerkleProof& proof) const;

  RelayResult relay(const Transaction& tx) { return endpoint_.submit(tx); }

  /// Asks the gateway for the transaction's proof and checks it against the
  /// local header at that height. nullopt when the gateway has no proof yet
  /// or the header is not synced.
  std::optional<bool> confirm(const Transaction& tx);

  [[nodiscard]] const HeaderChain& chain() const { return chain_; }

private:
  std::vector<BlockHeader> fetch_from(std::uint64_t from);

  HeaderChain chain_;
  GatewayEndpoint& endpoint_;
  std::size_t batch_;
};

}  // namespace esp2cs::light
