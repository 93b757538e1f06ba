#include "ledger/merkle.hpp"

#include "ledger/crypto.hpp"

namespace esp2cs {

namespace {

std::vector<Digest> hash_leaves(const std::vector<Bytes>& leaves) {
  std::vector<Digest> out;
  out.reserve(leaves.size());
  for (const auto& l : leaves) out.push_back(sha256(l));
  return out;
}

std::vector<Digest> next_level(const std::vector<Digest>& level) {
  std::vector<Digest> up;
  up.reserve((level.size() + 1) / 2);
  for (std::size_t i = 0; i < level.size(); i += 2) {
    if (i + 1 < level.size()) {
      up.push_back(sha256_pair(level[i], level[i + 1]));
    } else {
      up.push_back(level[i]);
    }
  }
  return up;
}

}  // namespace

std::size_t merkle_depth(std::size_t n) {
  std::size_t depth = 0;
  while ((std::size_t{1} << depth) < n) ++depth;
  return depth;
}

Digest merkle_root_of_hashes(std::vector<Digest> level) {
  if (level.empty()) return sha256(ByteView{});
  while (level.size() > 1) level = next_level(level);
  return level.front();
}

Digest merkle_root(const std::vector<Bytes>& leaves) {
  return merkle_root_of_hashes(hash_leaves(leaves));
}

MerkleProof merkle_prove_hashes(std::vector<Digest> level, std::uint64_t index) {
  if (index >= level.size()) {
    throw MerkleIndexError("leaf index " + std::to_string(index) + " out of range for " +
                           std::to_string(level.size()) + " leaves");
  }
  MerkleProof proof{index, {}};
  auto idx = index;
  while (level.size() > 1) {
    auto partner = idx ^ 1;
    if (partner < level.size()) {
      proof.siblings.push_back(level[partner]);
    } else {
      proof.siblings.push_back(Digest{});  // promoted
    }
    level = next_level(level);
    idx >>= 1;
  }
  return proof;
}

MerkleProof merkle_prove(const std::vector<Bytes>& leaves, std::uint64_t index) {
  return merkle_prove_hashes(hash_leaves(leaves), index);
}

bool merkle_verify(const Digest& root, ByteView leaf, std::uint64_t index,
                   const MerkleProof& proof) {
  if (proof.leaf_index != index) return false;
  if (proof.siblings.size() > 64) return false;
  auto node = sha256(leaf);
  auto idx = index;
  for (const auto& sib : proof.siblings) {
    if (!sib.is_zero()) {
      node = (idx & 1) ? sha256_pair(sib, node) : sha256_pair(node, sib);
    } else if (idx & 1) {
      return false;  // only the last node of a level (an even index) is promoted
    }
    idx >>= 1;
  }
  return idx == 0 && node == root;
}

}  // namespace esp2cs
