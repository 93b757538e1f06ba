#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace esp2cs {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Base class for every error thrown by the core library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string to_hex(ByteView bytes);
/// Accepts an optional "0x" prefix. Throws Error on odd length or bad digits.
Bytes from_hex(std::string_view hex);

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

inline Bytes to_bytes(std::string_view s) {
  auto v = as_bytes(s);
  return {v.begin(), v.end()};
}

/// Fixed-width byte string with a distinct type per role (Digest, Address, ...).
template <std::size_t N, typename Tag>
struct FixedBytes {
  static constexpr std::size_t size = N;
  std::array<std::uint8_t, N> bytes{};

  auto operator<=>(const FixedBytes&) const = default;

  [[nodiscard]] bool is_zero() const {
    return std::all_of(bytes.begin(), bytes.end(), [](std::uint8_t b) { return b == 0; });
  }
  [[nodiscard]] ByteView view() const { return {bytes.data(), N}; }
  [[nodiscard]] std::string hex() const { return to_hex(view()); }

  static FixedBytes from_view(ByteView v) {
    if (v.size() != N) {
      throw Error("expected " + std::to_string(N) + " bytes, got " + std::to_string(v.size()));
    }
    FixedBytes out;
    std::copy(v.begin(), v.end(), out.bytes.begin());
    return out;
  }
  static FixedBytes from_hex(std::string_view hex) {
    auto raw = esp2cs::from_hex(hex);
    return from_view(raw);
  }
};

struct DigestTag {};
struct PublicKeyTag {};
struct SignatureTag {};
struct AddressTag {};

using Digest = FixedBytes<32, DigestTag>;
using PublicKey = FixedBytes<32, PublicKeyTag>;
using Signature = FixedBytes<64, SignatureTag>;
using Address = FixedBytes<20, AddressTag>;

}  // namespace esp2cs
