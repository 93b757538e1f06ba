#include "gateway/occupancy.hpp"

#include <algorithm>

#include "ledger/encoding.hpp"

namespace esp2cs::gateway {

namespace {
bool parking_event(const runtime::LogRecord& log, std::string_view name) {
  return log.contract == ContractId::AutomatedParkingPayments && log.event == name && log.topics.size() == 2;
}
}  // namespace

void SessionFolder::apply(const consensus::StoredBlock& block) {
  for (const auto& receipt : block.receipts) {
    if (!receipt.success) continue;
    for (const auto& log : receipt.logs) {
      if (parking_event(log, "ParkingStarted")) {
        SessionSpan s;
        s.space_id = Decoder(log.topics[0]).u64();
        s.vehicle = Address::from_view(log.topics[1]);
        s.start = Decoder(log.data).u64();
        open_[s.vehicle] = sessions_.size();
        sessions_.push_back(s);
      } else if (parking_event(log, "ParkingEnded")) {
        auto vehicle = Address::from_view(log.topics[1]);
        auto it = open_.find(vehicle);
        if (it == open_.end()) continue;
        Decoder d(log.data);
        d.u64();  // start
        auto& s = sessions_[it->second];
        s.end = d.u64();
        s.fee = d.u64();
        open_.erase(it);
      }
    }
  }
}

std::vector<SessionSpan> fold_sessions(const std::vector<const consensus::StoredBlock*>& chain) {
  SessionFolder f;
  for (const auto* b : chain) f.apply(*b);
  return f.sessions();
}

OccupancyRecord occupancy(const std::vector<SessionSpan>& sessions, std::uint64_t space_id, std::uint64_t from,
                          std::uint64_t to, std::uint64_t now) {
  OccupancyRecord r{space_id, from, to, 0, 0, 0};
  for (const auto& s : sessions) {
    if (s.space_id != space_id) continue;
    const auto end = s.end.value_or(std::max(now, s.start));
    const auto lo = std::max(s.start, from);
    const auto hi = std::min(end, to);
    if (s.start < to && (end > from || s.start >= from)) ++r.sessions_count;
    if (hi > lo) r.occupied_seconds += hi - lo;
    if (s.end && *s.end >= from && *s.end < to) r.revenue += s.fee;
  }
  return r;
}

void OccupancyIndex::refresh(const consensus::ChainStore& chain) {
  const auto& head = chain.head();
  if (tip_ && *tip_ == head.hash) return;
  const bool extends = tip_ && chain.is_canonical(*tip_);
  if (!extends) {
    folder_ = SessionFolder{};
    ++rebuilds_;
  }
  const std::uint64_t first = extends ? tip_height_ + 1 : 0;
  for (auto h = first; h <= chain.height(); ++h) folder_.apply(*chain.at_height(h));
  tip_ = head.hash;
  tip_height_ = chain.height();
}

}  // namespace esp2cs::gateway
