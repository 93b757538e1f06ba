#include "gateway/json_codec.hpp"

#include <charconv>

namespace esp2cs::gateway {

namespace {
template <typename T>
T fixed_field(const Json& j, const char* name) {
  try {
    return T::from_hex(require_string(j, name));
  } catch (const CodecError&) {
    throw;
  } catch (const Error& e) {
    throw CodecError(std::string("field '") + name + "': " + e.what());
  }
}

std::uint64_t u64_field(const Json& j, const char* name) {
  if (!j.contains(name) || !j[name].is_number_unsigned()) {
    throw CodecError(std::string("field '") + name + "' must be an unsigned integer");
  }
  return j[name].get<std::uint64_t>();
}
}  // namespace

std::string require_string(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name) || !j[name].is_string()) {
    throw CodecError(std::string("field '") + name + "' must be a string");
  }
  return j[name].get<std::string>();
}

Json header_to_json(const BlockHeader& h) {
  return Json{{"height", h.height},
              {"hash", h.hash().hex()},
              {"parent_hash", h.parent_hash.hex()},
              {"timestamp", h.timestamp},
              {"proposer", h.proposer.hex()},
              {"tx_root", h.tx_root.hex()},
              {"state_root", h.state_root.hex()},
              {"signature", h.signature.hex()}};
}

BlockHeader header_from_json(const Json& j) {
  BlockHeader h;
  h.height = u64_field(j, "height");
  h.parent_hash = fixed_field<Digest>(j, "parent_hash");
  h.timestamp = u64_field(j, "timestamp");
  h.proposer = fixed_field<PublicKey>(j, "proposer");
  h.tx_root = fixed_field<Digest>(j, "tx_root");
  h.state_root = fixed_field<Digest>(j, "state_root");
  h.signature = fixed_field<Signature>(j, "signature");
  return h;
}

Json log_to_json(const runtime::LogRecord& log) {
  Json topics = Json::array();
  for (const auto& t : log.topics) topics.push_back(to_hex(t));
  return Json{{"contract", contract_name(log.contract)},
              {"event", log.event},
              {"topics", topics},
              {"data", to_hex(log.data)}};
}

Json receipt_to_json(const runtime::Receipt& r, const consensus::TxLocation& where) {
  Json logs = Json::array();
  for (const auto& l : r.logs) logs.push_back(log_to_json(l));
  Json j{{"tx_hash", r.tx_hash.hex()},
         {"status", r.success ? "Success" : "Reverted"},
         {"revert_reason", r.success ? Json(nullptr) : Json(r.revert_reason)},
         {"gas_used", r.gas_used},
         {"return_value", to_hex(r.return_value)},
         {"logs", logs},
         {"block_height", where.height},
         {"block_hash", where.block_hash.hex()},
         {"index", where.index}};
  return j;
}

Json proof_to_json(std::uint64_t height, const Digest& block_hash, const MerkleProof& proof) {
  Json siblings = Json::array();
  for (const auto& s : proof.siblings) siblings.push_back(s.hex());
  return Json{{"header_height", height},
              {"block_hash", block_hash.hex()},
              {"leaf_index", proof.leaf_index},
              {"siblings", siblings}};
}

Json message_to_json(const contracts::Message& m) {
  return Json{{"id", m.id},
              {"sender", m.sender.hex()},
              {"recipient", m.recipient ? Json(m.recipient->hex()) : Json(nullptr)},
              {"content", to_hex(m.content)},
              {"timestamp", m.timestamp},
              {"read", m.read}};
}

Json space_to_json(const contracts::ParkingSpace& s) {
  Json slots = Json::array();
  for (const auto& sl : s.slots) slots.push_back(Json::array({sl.start, sl.end}));
  return Json{{"id", s.id},
              {"owner", s.owner.hex()},
              {"location", s.location},
              {"rate", amount(s.rate)},
              {"slots", slots},
              {"booked_by", s.booked_by ? Json(s.booked_by->hex()) : Json(nullptr)},
              {"booked_from", s.booked_from},
              {"booked_until", s.booked_until},
              {"earnings", amount(s.earnings)},
              {"lifetime_earnings", amount(s.lifetime_earnings)}};
}

Json metered_space_to_json(const contracts::app::SpaceInfo& s) {
  return Json{{"id", s.id},
              {"owner", s.space.owner.hex()},
              {"rate_per_second", amount(s.space.rate_per_second)},
              {"occupant", s.occupancy.occupant ? Json(s.occupancy.occupant->hex()) : Json(nullptr)},
              {"registered_at", s.occupancy.registered_at}};
}

Json session_to_json(const contracts::ParkingSession& s) {
  return Json{{"vehicle", s.vehicle.hex()},
              {"space_id", s.space_id},
              {"start_time", s.start_time},
              {"active", s.active},
              {"cached_fee", amount(s.cached_fee)},
              {"last_checked", s.last_checked}};
}

std::string amount(std::uint64_t wei) { return std::to_string(wei); }

std::uint64_t parse_amount(const Json& j) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_string()) return parse_u64(j.get<std::string>());
  throw CodecError("amount must be a decimal string");
}

Address parse_address(std::string_view hex) {
  try {
    return Address::from_hex(hex);
  } catch (const Error&) {
    throw CodecError("bad address '" + std::string(hex) + "'");
  }
}

Digest parse_digest(std::string_view hex) {
  try {
    return Digest::from_hex(hex);
  } catch (const Error&) {
    throw CodecError("bad hash '" + std::string(hex) + "'");
  }
}

std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || p != text.data() + text.size() || text.empty()) {
    throw CodecError("bad integer '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace esp2cs::gateway
