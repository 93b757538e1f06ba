#pragma once

#include <cstdint>
#include <span>

#include "ledger/bytes.hpp"

namespace esp2cs::consensus {

struct HeadCandidate {
  std::uint64_t height = 0;
  Digest hash;

  bool operator==(const HeadCandidate&) const = default;
};

/// Greatest height wins; equal heights go to the lexicographically smaller hash.
bool prefer(const HeadCandidate& a, const HeadCandidate& b);

/// Deterministic in the set: the order of `candidates` does not matter.
/// `candidates` must be non-empty.
HeadCandidate choose_head(std::span<const HeadCandidate> candidates);

}  // namespace esp2cs::consensus
