#pragma once

// Canonical byte encoding shared by hashing, signing, persistence and the
// wire protocol. Fields are written in declaration order:
//   integers        8-byte little-endian
//   bool / enum     as integers
//   fixed arrays    raw bytes (Digest, PublicKey, Signature, Address)
//   byte strings    8-byte little-endian length, then payload
//   optionals       integer flag 0/1, then the value when present
//   lists           8-byte little-endian count, then each element

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ledger/bytes.hpp"

namespace esp2cs {

class DecodeError : public Error {
public:
  using Error::Error;
};

class Encoder {
public:
  Encoder& u64(std::uint64_t v);
  Encoder& boolean(bool v) { return u64(v ? 1 : 0); }
  Encoder& bytes(ByteView v);
  Encoder& str(std::string_view v) { return bytes(as_bytes(v)); }
  Encoder& raw(ByteView v);
  template <std::size_t N, typename Tag>
  Encoder& fixed(const FixedBytes<N, Tag>& v) {
    return raw(v.view());
  }

  [[nodiscard]] const Bytes& data() const& { return buf_; }
  [[nodiscard]] Bytes take() { return std::move(buf_); }

private:
  Bytes buf_;
};

class Decoder {
public:
  explicit Decoder(ByteView data) : data_(data) {}

  std::uint64_t u64();
  bool boolean();
  Bytes bytes();
  std::string str();
  ByteView raw(std::size_t n);
  template <typename T>
  T fixed() {
    return T::from_view(raw(T::size));
  }
  /// Reads a list count and rejects counts that cannot fit in the remaining
  /// input given a minimum element size.
  std::uint64_t count(std::size_t min_element_size);

  [[nodiscard]] bool done() const { return pos_ == data_.size(); }
  [[nodiscard]] std::size_t remaining() const { return data_.size() - pos_; }
  void expect_done() const;

private:
  ByteView data_;
  std::size_t pos_ = 0;
};

inline Bytes encode_u64(std::uint64_t v) { return Encoder{}.u64(v).take(); }

}  // namespace esp2cs
