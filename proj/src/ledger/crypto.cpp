#include "ledger/crypto.hpp"

#include <sodium.h>

namespace esp2cs {

namespace {
void ensure_sodium() {
  static const bool ready = [] {
    if (sodium_init() < 0) throw Error("libsodium initialisation failed");
    return true;
  }();
  (void)ready;
}
}  // namespace

Digest sha256(ByteView data) {
  ensure_sodium();
  Digest d;
  crypto_hash_sha256(d.bytes.data(), data.data(), data.size());
  return d;
}

Digest sha256_pair(const Digest& a, const Digest& b) {
  ensure_sodium();
  crypto_hash_sha256_state st;
  crypto_hash_sha256_init(&st);
  crypto_hash_sha256_update(&st, a.bytes.data(), a.bytes.size());
  crypto_hash_sha256_update(&st, b.bytes.data(), b.bytes.size());
  Digest d;
  crypto_hash_sha256_final(&st, d.bytes.data());
  return d;
}

Address address_of(const PublicKey& pk) {
  auto h = sha256(pk.view());
  Address a;
  std::copy(h.bytes.end() - 20, h.bytes.end(), a.bytes.begin());
  return a;
}

KeyPair KeyPair::generate() {
  ensure_sodium();
  Seed seed;
  randombytes_buf(seed.data(), seed.size());
  auto kp = from_seed(seed);
  sodium_memzero(seed.data(), seed.size());
  return kp;
}

KeyPair KeyPair::from_seed(const Seed& seed) {
  ensure_sodium();
  KeyPair kp;
  kp.seed_ = seed;
  crypto_sign_seed_keypair(kp.pk_.bytes.data(), kp.sk_.data(), seed.data());
  return kp;
}

KeyPair KeyPair::from_label(std::string_view label) {
  auto h = sha256(label);
  Seed seed;
  std::copy(h.bytes.begin(), h.bytes.end(), seed.begin());
  return from_seed(seed);
}

KeyPair::~KeyPair() {
  sodium_memzero(sk_.data(), sk_.size());
  sodium_memzero(seed_.data(), seed_.size());
}

Signature KeyPair::sign(ByteView message) const {
  Signature sig;
  crypto_sign_detached(sig.bytes.data(), nullptr, message.data(), message.size(), sk_.data());
  return sig;
}

std::array<std::uint8_t, 32> KeyPair::box_secret() const {
  std::array<std::uint8_t, 32> out{};
  crypto_sign_ed25519_sk_to_curve25519(out.data(), sk_.data());
  return out;
}

bool verify(const PublicKey& pk, ByteView message, const Signature& sig) {
  ensure_sodium();
  return crypto_sign_verify_detached(sig.bytes.data(), message.data(), message.size(),
                                     pk.bytes.data()) == 0;
}

}  // namespace esp2cs
