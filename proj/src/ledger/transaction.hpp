#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ledger/bytes.hpp"
#include "ledger/crypto.hpp"

namespace esp2cs {

enum class ContractId : std::uint64_t {
  VehicularCommunication = 0,
  PaymentManagement = 1,
  ParkingSpaceManagement = 2,
  AutomatedParkingPayments = 3,
};

std::string_view contract_name(ContractId id);
std::optional<ContractId> parse_contract(std::string_view name);

/// Signed contract call. The sender is identified by its public key; the
/// account address is derived from it.
struct Transaction {
  PublicKey sender;
  std::uint64_t nonce = 0;
  ContractId contract = ContractId::VehicularCommunication;
  std::string function;
  Bytes args;
  std::uint64_t value = 0;
  std::uint64_t gas_price_gwei = 0;
  Signature signature;

  bool operator==(const Transaction&) const = default;

  [[nodiscard]] Address sender_address() const { return address_of(sender); }
  /// Encoding of every field except the signature.
  [[nodiscard]] Bytes signing_bytes() const;
  [[nodiscard]] Bytes encode() const;
  [[nodiscard]] Digest hash() const;
  [[nodiscard]] bool signature_valid() const;

  void sign_with(const KeyPair& key);
};

class Encoder;
class Decoder;
void encode_into(Encoder& enc, const Transaction& tx);
Transaction decode_transaction(Decoder& dec);
Transaction decode_transaction(ByteView bytes);

}  // namespace esp2cs
