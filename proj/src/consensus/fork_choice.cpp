#include "consensus/fork_choice.hpp"

namespace esp2cs::consensus {

bool prefer(const HeadCandidate& a, const HeadCandidate& b) {
  if (a.height != b.height) return a.height > b.height;
  return a.hash < b.hash;
}

HeadCandidate choose_head(std::span<const HeadCandidate> candidates) {
  if (candidates.empty()) throw Error("choose_head: no candidates");
  auto best = candidates.front();
  for (const auto& c : candidates.subspan(1)) {
    if (prefer(c, best)) best = c;
  }
  return best;
}

}  // namespace esp2cs::consensus
