#include "ledger/encoding.hpp"

namespace esp2cs {

Encoder& Encoder::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  return *this;
}

Encoder& Encoder::bytes(ByteView v) {
  u64(v.size());
  return raw(v);
}

Encoder& Encoder::raw(ByteView v) {
  buf_.insert(buf_.end(), v.begin(), v.end());
  return *this;
}

ByteView Decoder::raw(std::size_t n) {
  if (remaining() < n) {
    throw DecodeError("truncated input: need " + std::to_string(n) + " bytes at offset " +
                      std::to_string(pos_));
  }
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::uint64_t Decoder::u64() {
  auto b = raw(8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

bool Decoder::boolean() {
  auto v = u64();
  if (v > 1) throw DecodeError("boolean out of range");
  return v == 1;
}

Bytes Decoder::bytes() {
  auto n = u64();
  if (n > remaining()) throw DecodeError("byte string length exceeds input");
  auto v = raw(static_cast<std::size_t>(n));
  return {v.begin(), v.end()};
}

std::string Decoder::str() {
  auto b = bytes();
  return {b.begin(), b.end()};
}

std::uint64_t Decoder::count(std::size_t min_element_size) {
  auto n = u64();
  if (min_element_size > 0 && n > remaining() / min_element_size) {
    throw DecodeError("list count exceeds input");
  }
  return n;
}

void Decoder::expect_done() const {
  if (!done()) throw DecodeError(std::to_string(remaining()) + " trailing bytes");
}

}  // namespace esp2cs
