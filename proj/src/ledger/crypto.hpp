#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "ledger/bytes.hpp"

namespace esp2cs {

Digest sha256(ByteView data);
inline Digest sha256(std::string_view s) { return sha256(as_bytes(s)); }
/// SHA-256 of the concatenation a || b.
Digest sha256_pair(const Digest& a, const Digest& b);

/// Last 20 bytes of SHA-256(public key).
Address address_of(const PublicKey& pk);

using Seed = std::array<std::uint8_t, 32>;

/// Ed25519 signing key pair. The secret half never leaves this object except
/// through `seed()`, which is what key files persist.
class KeyPair {
public:
  static KeyPair generate();
  static KeyPair from_seed(const Seed& seed);
  /// Deterministic key from an arbitrary label, used by tests and scenarios.
  static KeyPair from_label(std::string_view label);

  KeyPair(const KeyPair&) = default;
  KeyPair& operator=(const KeyPair&) = default;
  ~KeyPair();

  [[nodiscard]] const PublicKey& public_key() const { return pk_; }
  [[nodiscard]] Address address() const { return address_of(pk_); }
  [[nodiscard]] const Seed& seed() const { return seed_; }
  [[nodiscard]] Signature sign(ByteView message) const;

  /// The X25519 secret derived from this signing key, for opening sealed boxes.
  [[nodiscard]] std::array<std::uint8_t, 32> box_secret() const;

private:
  KeyPair() = default;
  Seed seed_{};
  std::array<std::uint8_t, 64> sk_{};
  PublicKey pk_;
};

bool verify(const PublicKey& pk, ByteView message, const Signature& sig);

}  // namespace esp2cs
