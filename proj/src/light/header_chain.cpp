#include "light/header_chain.hpp"

#include "consensus/fork_choice.hpp"

namespace esp2cs::light {

HeaderChain::HeaderChain(BlockHeader checkpoint, AuthoritySet authorities)
    : authorities_(std::move(authorities)), headers_{checkpoint}, hashes_{checkpoint.hash()} {}

const BlockHeader* HeaderChain::at(std::uint64_t height) const {
  if (height < base_height() || height > this->height()) return nullptr;
  return &headers_[height - base_height()];
}

const Digest* HeaderChain::hash_at(std::uint64_t height) const {
  if (height < base_height() || height > this->height()) return nullptr;
  return &hashes_[height - base_height()];
}

bool HeaderChain::contains(const BlockHeader& h) const {
  const auto* mine = at(h.height);
  return mine && *mine == h;
}

HeaderChain::Offer HeaderChain::offer(const std::vector<BlockHeader>& branch) {
  Offer out;
  if (branch.empty()) return out;
  const auto& first = branch.front();
  const BlockHeader* parent = first.height == 0 ? nullptr : at(first.height - 1);
  if (!parent || *hash_at(first.height - 1) != first.parent_hash) {
    out.error = ChainError{first.height, ChainRule::BrokenLink, "branch does not attach to the local chain"};
    return out;
  }
  // Skip the prefix we already hold.
  std::size_t skip = 0;
  while (skip < branch.size() && contains(branch[skip])) ++skip;
  if (skip == branch.size()) return out;

  const BlockHeader* prev = skip == 0 ? parent : &branch[skip - 1];
  for (std::size_t i = skip; i < branch.size(); ++i) {
    if (auto err = check_header(*prev, branch[i], authorities_)) {
      out.error = err;
      return out;
    }
    prev = &branch[i];
  }

  const consensus::HeadCandidate mine{height(), tip_hash()};
  const consensus::HeadCandidate theirs{branch.back().height, branch.back().hash()};
  if (!consensus::prefer(theirs, mine)) return out;

  const auto fork_height = branch[skip].height;
  out.reorganized = fork_height <= height();
  headers_.resize(fork_height - base_height());
  hashes_.resize(fork_height - base_height());
  for (std::size_t i = skip; i < branch.size(); ++i) {
    headers_.push_back(branch[i]);
    hashes_.push_back(branch[i].hash());
  }
  out.adopted = true;
  out.appended = branch.size() - skip;
  return out;
}

}  // namespace esp2cs::light
