#include "light/light_client.hpp"

#include <algorithm>

namespace esp2cs::light {

LightClient::LightClient(HeaderChain chain, GatewayEndpoint& endpoint, std::size_t batch)
    : chain_(std::move(chain)), endpoint_(endpoint), batch_(std::max<std::size_t>(batch, 1)) {}

std::vector<BlockHeader> LightClient::fetch_from(std::uint64_t from) {
  constexpr std::size_t kMaxHeaders = 1 << 20;
  std::vector<BlockHeader> out;
  while (out.size() < kMaxHeaders) {
    auto got = endpoint_.headers(from, batch_);
    const bool full = got.size() >= batch_;
    out.insert(out.end(), std::make_move_iterator(got.begin()), std::make_move_iterator(got.end()));
    if (!full || out.back().height < from) break;
    from = out.back().height + 1;
  }
  return out;
}

SyncResult LightClient::sync_headers(std::uint64_t from_height) {
  SyncResult result;
  const auto base = chain_.base_height();
  auto from = std::max(from_height, base + 1);
  auto branch = fetch_from(from);
  for (std::size_t i = 0; i < branch.size(); ++i) {
    if (branch[i].height != from + i) {
      result.error = ChainError{branch[i].height, ChainRule::BadHeight, "gateway skipped a height"};
      branch.resize(i);
      break;
    }
  }
  if (branch.empty()) return result;

  // Walk back until the served branch attaches to a header we hold.
  std::uint64_t step = 1;
  auto attaches = [&] {
    const auto* h = chain_.hash_at(branch.front().height - 1);
    return h && *h == branch.front().parent_hash;
  };
  while (!attaches()) {
    if (from <= base + 1) {
      result.error = ChainError{branch.front().height, ChainRule::BrokenLink, "gateway chain does not extend checkpoint"};
      return result;
    }
    from = from > base + 1 + step ? from - step : base + 1;
    step *= 2;
    branch = fetch_from(from);
    if (branch.empty() || branch.front().height != from) {
      result.error = ChainError{from, ChainRule::BadHeight, "gateway returned no header at requested height"};
      return result;
    }
  }

  auto offer = chain_.offer(branch);
  if (offer.error) {
    result.error = offer.error;
    // Keep the valid prefix below the offending header.
    const auto bad = offer.error->height;
    auto cut = std::find_if(branch.begin(), branch.end(), [&](const BlockHeader& h) { return h.height >= bad; });
    branch.erase(cut, branch.end());
    offer = chain_.offer(branch);
  }
  result.appended = offer.appended;
  result.reorganized = offer.reorganized;
  return result;
}

bool LightClient::verify_tx_inclusion(const BlockHeader& header, const Transaction& tx,
                                      const MerkleProof& proof) const {
  if (!chain_.contains(header)) return false;
  return merkle_verify(header.tx_root, tx.encode(), proof.leaf_index, proof);
}

std::optional<bool> LightClient::confirm(const Transaction& tx) {
  auto p = endpoint_.proof(tx.hash());
  if (!p) return std::nullopt;
  const auto* header = chain_.at(p->header_height);
  if (!header) return std::nullopt;
  if (*chain_.hash_at(p->header_height) != p->block_hash) return false;
  return verify_tx_inclusion(*header, tx, p->proof);
}

}  // namespace esp2cs::light
