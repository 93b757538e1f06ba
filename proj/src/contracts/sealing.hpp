#pragma once

// Client-side sealing of direct messages to a recipient's signing key
// (Ed25519 key converted to X25519, libsodium sealed-box format).

#include <optional>

#include "ledger/bytes.hpp"
#include "ledger/crypto.hpp"

namespace esp2cs::contracts {

inline constexpr std::size_t kSealOverhead = 48;

/// Seals with a fresh random ephemeral key.
Bytes seal(const PublicKey& recipient, ByteView plaintext);
/// Same wire format, ephemeral key derived from `ephemeral_seed`; used by the
/// simulator so reports stay reproducible.
Bytes seal_deterministic(const PublicKey& recipient, ByteView plaintext, const Seed& ephemeral_seed);
/// nullopt when `recipient` is not the key the box was sealed to.
std::optional<Bytes> open_sealed(const KeyPair& recipient, ByteView sealed);

}  // namespace esp2cs::contracts
