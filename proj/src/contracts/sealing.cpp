#include "contracts/sealing.hpp"

#include <sodium.h>

#include <array>

namespace esp2cs::contracts {

namespace {
std::array<std::uint8_t, crypto_box_PUBLICKEYBYTES> curve_pk(const PublicKey& pk) {
  std::array<std::uint8_t, crypto_box_PUBLICKEYBYTES> out{};
  if (crypto_sign_ed25519_pk_to_curve25519(out.data(), pk.bytes.data()) != 0) {
    throw Error("recipient key is not a valid Ed25519 point");
  }
  return out;
}
}  // namespace

Bytes seal(const PublicKey& recipient, ByteView plaintext) {
  auto rpk = curve_pk(recipient);
  Bytes out(plaintext.size() + crypto_box_SEALBYTES);
  if (crypto_box_seal(out.data(), plaintext.data(), plaintext.size(), rpk.data()) != 0) {
    throw Error("crypto_box_seal failed");
  }
  return out;
}

Bytes seal_deterministic(const PublicKey& recipient, ByteView plaintext, const Seed& ephemeral_seed) {
  auto rpk = curve_pk(recipient);
  std::array<std::uint8_t, crypto_box_PUBLICKEYBYTES> epk{};
  std::array<std::uint8_t, crypto_box_SECRETKEYBYTES> esk{};
  crypto_box_seed_keypair(epk.data(), esk.data(), ephemeral_seed.data());

  // sealed-box nonce: blake2b(epk || rpk), 24 bytes
  std::array<std::uint8_t, crypto_box_NONCEBYTES> nonce{};
  crypto_generichash_state st;
  crypto_generichash_init(&st, nullptr, 0, nonce.size());
  crypto_generichash_update(&st, epk.data(), epk.size());
  crypto_generichash_update(&st, rpk.data(), rpk.size());
  crypto_generichash_final(&st, nonce.data(), nonce.size());

  Bytes out(plaintext.size() + crypto_box_SEALBYTES);
  std::copy(epk.begin(), epk.end(), out.begin());
  if (crypto_box_easy(out.data() + epk.size(), plaintext.data(), plaintext.size(), nonce.data(), rpk.data(),
                      esk.data()) != 0) {
    throw Error("crypto_box_easy failed");
  }
  sodium_memzero(esk.data(), esk.size());
  return out;
}

std::optional<Bytes> open_sealed(const KeyPair& recipient, ByteView sealed) {
  if (sealed.size() < crypto_box_SEALBYTES) return std::nullopt;
  auto rpk = curve_pk(recipient.public_key());
  auto rsk = recipient.box_secret();
  Bytes out(sealed.size() - crypto_box_SEALBYTES);
  int rc = crypto_box_seal_open(out.data(), sealed.data(), sealed.size(), rpk.data(), rsk.data());
  sodium_memzero(rsk.data(), rsk.size());
  if (rc != 0) return std::nullopt;
  return out;
}

}  // namespace esp2cs::contracts
