#include "ledger/transaction.hpp"

#include <array>

#include "ledger/encoding.hpp"

namespace esp2cs {

namespace {
constexpr std::array<std::string_view, 4> kContractNames = {
    "VehicularCommunication", "PaymentManagement", "ParkingSpaceManagement",
    "AutomatedParkingPayments"};

void encode_unsigned(Encoder& enc, const Transaction& tx) {
  enc.fixed(tx.sender)
      .u64(tx.nonce)
      .u64(static_cast<std::uint64_t>(tx.contract))
      .str(tx.function)
      .bytes(tx.args)
      .u64(tx.value)
      .u64(tx.gas_price_gwei);
}
}  // namespace

std::string_view contract_name(ContractId id) {
  return kContractNames.at(static_cast<std::size_t>(id));
}

std::optional<ContractId> parse_contract(std::string_view name) {
  for (std::size_t i = 0; i < kContractNames.size(); ++i) {
    if (kContractNames[i] == name) return static_cast<ContractId>(i);
  }
  return std::nullopt;
}

Bytes Transaction::signing_bytes() const {
  Encoder enc;
  encode_unsigned(enc, *this);
  return std::move(enc).take();
}

void encode_into(Encoder& enc, const Transaction& tx) {
  encode_unsigned(enc, tx);
  enc.fixed(tx.signature);
}

Bytes Transaction::encode() const {
  Encoder enc;
  encode_into(enc, *this);
  return std::move(enc).take();
}

Digest Transaction::hash() const { return sha256(encode()); }

bool Transaction::signature_valid() const { return verify(sender, signing_bytes(), signature); }

void Transaction::sign_with(const KeyPair& key) {
  sender = key.public_key();
  signature = key.sign(signing_bytes());
}

Transaction decode_transaction(Decoder& dec) {
  Transaction tx;
  tx.sender = dec.fixed<PublicKey>();
  tx.nonce = dec.u64();
  auto contract = dec.u64();
  if (contract >= kContractNames.size()) throw DecodeError("unknown contract id");
  tx.contract = static_cast<ContractId>(contract);
  tx.function = dec.str();
  tx.args = dec.bytes();
  tx.value = dec.u64();
  tx.gas_price_gwei = dec.u64();
  tx.signature = dec.fixed<Signature>();
  return tx;
}

Transaction decode_transaction(ByteView bytes) {
  Decoder dec(bytes);
  auto tx = decode_transaction(dec);
  dec.expect_done();
  return tx;
}

}  // namespace esp2cs
