#pragma once

// JSON shapes of the /v1 API. Hashes, keys, signatures and byte strings are
// lowercase hex; token amounts are decimal strings so that browser clients
// never round them through a double.

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "consensus/chain_store.hpp"
#include "contracts/contracts.hpp"
#include "ledger/block.hpp"
#include "ledger/merkle.hpp"
#include "runtime/executor.hpp"

namespace esp2cs::gateway {

using Json = nlohmann::ordered_json;

class CodecError : public Error {
public:
  using Error::Error;
};

Json header_to_json(const BlockHeader& h);
BlockHeader header_from_json(const Json& j);

Json log_to_json(const runtime::LogRecord& log);
Json receipt_to_json(const runtime::Receipt& r, const consensus::TxLocation& where);

Json proof_to_json(std::uint64_t height, const Digest& block_hash, const MerkleProof& proof);

Json message_to_json(const contracts::Message& m);
Json space_to_json(const contracts::ParkingSpace& s);
Json metered_space_to_json(const contracts::app::SpaceInfo& s);
Json session_to_json(const contracts::ParkingSession& s);

std::string amount(std::uint64_t wei);
std::uint64_t parse_amount(const Json& j);

Address parse_address(std::string_view hex);
Digest parse_digest(std::string_view hex);
std::uint64_t parse_u64(std::string_view text);

/// Reads a string field that must be present.
std::string require_string(const Json& j, const char* name);

}  // namespace esp2cs::gateway
