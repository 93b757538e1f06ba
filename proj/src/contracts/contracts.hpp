#pragma once

// The four contracts. Handlers decode their arguments from the canonical
// encoding; read helpers give the gateway direct access to committed state.

#include <cstdint>
#include <optional>
#include <vector>

#include "contracts/records.hpp"
#include "ledger/encoding.hpp"
#include "runtime/call_context.hpp"
#include "runtime/world_state.hpp"

namespace esp2cs::contracts {

using runtime::CallContext;
using runtime::WorldState;

namespace vc {
Bytes publishMessage(CallContext& ctx, Decoder& args);
Bytes readMessage(CallContext& ctx, Decoder& args);
Bytes sendMessage(CallContext& ctx, Decoder& args);
Bytes getUnreadMessages(CallContext& ctx, Decoder& args);
Bytes markAllAsRead(CallContext& ctx, Decoder& args);

std::uint64_t message_count(const WorldState& s);
std::optional<Message> message(const WorldState& s, std::uint64_t id);
std::vector<Message> unread_for(const WorldState& s, const Address& account);
}  // namespace vc

namespace pm {
Bytes makePayment(CallContext& ctx, Decoder& args);
Bytes requestRefund(CallContext& ctx, Decoder& args);
Bytes processRefund(CallContext& ctx, Decoder& args);
Bytes withdrawFunds(CallContext& ctx, Decoder& args);

/// Written at genesis.
void set_owner(WorldState& s, const Address& owner);
std::optional<Address> owner(const WorldState& s);
std::uint64_t deposit_of(const WorldState& s, const Address& a);
std::uint64_t pending_of(const WorldState& s, const Address& a);
}  // namespace pm

namespace psm {
Bytes registerParkingSpace(CallContext& ctx, Decoder& args);
Bytes bookParkingSpace(CallContext& ctx, Decoder& args);
Bytes isAvailable(CallContext& ctx, Decoder& args);
Bytes releaseParkingSpace(CallContext& ctx, Decoder& args);
Bytes withdraw(CallContext& ctx, Decoder& args);

std::uint64_t booking_fee(std::uint64_t rate, std::uint64_t from, std::uint64_t until);
std::uint64_t space_count(const WorldState& s);
std::optional<ParkingSpace> space(const WorldState& s, std::uint64_t id);
/// Same answer as the isAvailable view evaluated at block time `now`.
bool available(const ParkingSpace& space, std::uint64_t now, std::uint64_t from, std::uint64_t until);
}  // namespace psm

namespace app {
Bytes registerParkingSpace(CallContext& ctx, Decoder& args);
Bytes startParking(CallContext& ctx, Decoder& args);
Bytes endParking(CallContext& ctx, Decoder& args);
Bytes calculateParkingFee(CallContext& ctx, Decoder& args);
Bytes checkAmountDue(CallContext& ctx, Decoder& args);

struct SpaceInfo {
  std::uint64_t id = 0;
  MeteredSpace space;
  Occupancy occupancy;
};

std::uint64_t space_count(const WorldState& s);
std::optional<SpaceInfo> space(const WorldState& s, std::uint64_t id);
std::optional<ParkingSession> session(const WorldState& s, const Address& vehicle);
/// rate_per_second * (at - start) for an active session.
std::optional<std::uint64_t> amount_due(const WorldState& s, const Address& vehicle, std::uint64_t at);
}  // namespace app

}  // namespace esp2cs::contracts
