#pragma once

#include <cstdint>
#include <vector>

#include "ledger/bytes.hpp"

namespace esp2cs {

/// Inclusion proof for one leaf. `siblings` holds one digest per tree level,
/// bottom-up. A level where the path node was promoted without a partner is
/// recorded as the all-zero digest, so the proof for any leaf of an n-leaf
/// tree has exactly ceil(log2 n) entries.
struct MerkleProof {
  std::uint64_t leaf_index = 0;
  std::vector<Digest> siblings;

  bool operator==(const MerkleProof&) const = default;
};

class MerkleIndexError : public Error {
public:
  using Error::Error;
};

/// Root over the leaf hashes H(leaf). Empty input hashes the empty string;
/// an odd node at the end of a level is carried up unchanged.
Digest merkle_root(const std::vector<Bytes>& leaves);
Digest merkle_root_of_hashes(std::vector<Digest> level);

MerkleProof merkle_prove(const std::vector<Bytes>& leaves, std::uint64_t index);
MerkleProof merkle_prove_hashes(std::vector<Digest> level, std::uint64_t index);

bool merkle_verify(const Digest& root, ByteView leaf, std::uint64_t index, const MerkleProof& proof);

/// ceil(log2 n) for n >= 1.
std::size_t merkle_depth(std::size_t n);

}  // namespace esp2cs
