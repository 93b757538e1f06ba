#pragma once

// Argument, return and storage records of the four contracts. Storage
// records are laid out so that related fields share 32-byte words.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ledger/bytes.hpp"
#include "ledger/encoding.hpp"

namespace esp2cs::contracts {

inline constexpr std::size_t kMaxContentBytes = 1024;

/// Storage key: textual prefix followed by a big-endian id, so scans return
/// records in numeric order.
std::string key(std::string_view prefix, std::uint64_t id);
std::string key(std::string_view prefix, const Address& a);
std::string key(std::string_view prefix, std::uint64_t id, std::string_view suffix);
Address address_from_key(std::string_view k, std::string_view prefix);

std::uint64_t decode_u64_value(const std::optional<Bytes>& v);

inline Bytes topic(const Address& a) { return {a.bytes.begin(), a.bytes.end()}; }

// ---- VehicularCommunication ----

struct Message {
  std::uint64_t id = 0;
  Address sender;
  std::optional<Address> recipient;  // absent for broadcasts
  Bytes content;
  std::uint64_t timestamp = 0;
  bool read = false;

  bool operator==(const Message&) const = default;
};

void encode_into(Encoder& enc, const Message& m);
Message decode_message(Decoder& dec);
Bytes encode_messages(const std::vector<Message>& ms);
std::vector<Message> decode_messages(ByteView bytes);

/// Stored form: sender, optional recipient, timestamp, content.
Bytes encode_stored_message(const Message& m);
Message decode_stored_message(std::uint64_t id, ByteView bytes);

struct Inbox {
  std::uint64_t read_count = 0;
  std::vector<std::uint64_t> unread;

  [[nodiscard]] Bytes encode() const;
  static Inbox decode(const std::optional<Bytes>& v);
};

// ---- PaymentManagement ----

// Integers first: their high bytes are usually zero, and a record must not
// end in an all-zero word.
struct RefundRequest {
  std::uint64_t amount = 0;
  std::uint64_t requested_at = 0;
  Address user;

  [[nodiscard]] Bytes encode() const;
  static RefundRequest decode(ByteView v);
};

// ---- ParkingSpaceManagement ----

struct Slot {
  std::uint64_t start = 0;
  std::uint64_t end = 0;

  bool operator==(const Slot&) const = default;
};

/// Sorted, non-overlapping, each start < end, non-empty.
bool slots_well_formed(const std::vector<Slot>& slots);
void encode_slots(Encoder& enc, const std::vector<Slot>& slots);
std::vector<Slot> decode_slots(Decoder& dec);

struct SpaceHeader {
  Address owner;
  std::uint64_t rate = 0;

  [[nodiscard]] Bytes encode() const;
  static SpaceHeader decode(ByteView v);
};

struct Booking {
  std::uint64_t booked_from = 0;
  std::uint64_t booked_until = 0;
  Address booked_by;

  [[nodiscard]] Bytes encode() const;
  static std::optional<Booking> decode(const std::optional<Bytes>& v);
};

struct Earnings {
  std::uint64_t unwithdrawn = 0;
  std::uint64_t lifetime = 0;

  [[nodiscard]] Bytes encode() const;
  static Earnings decode(const std::optional<Bytes>& v);
};

struct ParkingSpace {
  std::uint64_t id = 0;
  Address owner;
  std::string location;
  std::uint64_t rate = 0;  // per started hour
  std::vector<Slot> slots;
  std::optional<Address> booked_by;
  std::uint64_t booked_from = 0;
  std::uint64_t booked_until = 0;
  std::uint64_t earnings = 0;
  std::uint64_t lifetime_earnings = 0;
};

// ---- AutomatedParkingPayments ----

struct MeteredSpace {
  Address owner;
  std::uint64_t rate_per_second = 0;

  [[nodiscard]] Bytes encode() const;
  static MeteredSpace decode(ByteView v);
};

struct Occupancy {
  std::optional<Address> occupant;
  std::uint64_t registered_at = 0;

  [[nodiscard]] Bytes encode() const;
  static Occupancy decode(const std::optional<Bytes>& v);
};

/// One 32-byte word: space, start, last_checked, active.
struct SessionCore {
  std::uint64_t space_id = 0;
  std::uint64_t start_time = 0;
  std::uint64_t last_checked = 0;
  bool active = false;

  [[nodiscard]] Bytes encode() const;
  static std::optional<SessionCore> decode(const std::optional<Bytes>& v);
};

/// Fee snapshot written by calculateParkingFee.
struct FeeQuote {
  std::uint64_t cached_fee = 0;
  std::uint64_t computed_at = 0;

  [[nodiscard]] Bytes encode() const;
  static std::optional<FeeQuote> decode(const std::optional<Bytes>& v);
};

struct ParkingSession {
  Address vehicle;
  std::uint64_t space_id = 0;
  std::uint64_t start_time = 0;
  bool active = false;
  std::uint64_t cached_fee = 0;
  std::uint64_t last_checked = 0;
};

}  // namespace esp2cs::contracts
