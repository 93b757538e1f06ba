#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ledger/bytes.hpp"

namespace esp2cs {

/// Trusted block producers, sorted by key bytes, with a fixed slot length.
class AuthoritySet {
public:
  AuthoritySet() = default;
  AuthoritySet(std::vector<PublicKey> keys, std::uint64_t block_interval)
      : keys_(std::move(keys)), block_interval_(block_interval) {
    if (keys_.empty()) throw Error("authority set must not be empty");
    if (block_interval_ == 0) throw Error("block interval must be positive");
    std::sort(keys_.begin(), keys_.end());
    if (std::adjacent_find(keys_.begin(), keys_.end()) != keys_.end()) {
      throw Error("duplicate authority key");
    }
  }

  /// Round robin: authorities[height mod N].
  [[nodiscard]] const PublicKey& proposer_for(std::uint64_t height) const {
    return keys_[height % keys_.size()];
  }
  [[nodiscard]] bool contains(const PublicKey& k) const {
    return std::binary_search(keys_.begin(), keys_.end(), k);
  }
  [[nodiscard]] const std::vector<PublicKey>& keys() const { return keys_; }
  [[nodiscard]] std::size_t size() const { return keys_.size(); }
  [[nodiscard]] std::uint64_t block_interval() const { return block_interval_; }

private:
  std::vector<PublicKey> keys_;
  std::uint64_t block_interval_ = 5;
};

}  // namespace esp2cs
