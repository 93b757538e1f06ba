#include <doctest.h>

#include "contracts/contracts.hpp"
#include "contracts/records.hpp"
#include "contracts/registry.hpp"
#include "contracts/sealing.hpp"
#include "support/fixture.hpp"

using namespace esp2cs;
using namespace esp2cs::contracts;
using esp2cs::testing::Fixture;
using esp2cs::testing::kFunds;

namespace {

constexpr std::uint64_t kWei = runtime::kWeiPerGwei;

/// Runs transactions one at a time against a world state at a chosen time.
struct Bench {
  Fixture fx{1, 4, "contracts"};
  runtime::WorldState st = fx.genesis.state;
  std::uint64_t now = fx.config.genesis_time;

  runtime::Receipt call(std::size_t user, ContractId c, const std::string& fn, Bytes args = {},
                        std::uint64_t value = 0) {
    auto tx = fx.tx(user, c, fn, std::move(args), value);
    auto out = fx.executor.execute(st, tx, {now, fx.authorities[0].public_key()});
    REQUIRE(out.included());
    return out.receipt;
  }
  std::uint64_t balance(std::size_t user) const { return st.find_account(fx.users[user].address())->balance; }
  Address addr(std::size_t user) const { return fx.users[user].address(); }
  std::uint64_t escrow(ContractId c) const {
    auto* a = st.find_account(runtime::contract_address(c));
    return a ? a->balance : 0;
  }
};

std::uint64_t as_u64(const Bytes& b) {
  Decoder d(b);
  return d.u64();
}

}  // namespace

TEST_SUITE("contracts") {

TEST_CASE("registry lists nineteen functions with four views") {
  CHECK(all_functions().size() == 19);
  int views = 0;
  for (const auto& f : all_functions()) views += f.view ? 1 : 0;
  CHECK(views == 3);  // checkAmountDue records last_checked, so it is metered
  CHECK(find_function(ContractId::ParkingSpaceManagement, "isAvailable")->view);
  CHECK_FALSE(find_function(ContractId::AutomatedParkingPayments, "checkAmountDue")->view);
  CHECK(find_function(ContractId::PaymentManagement, "nope") == nullptr);
}

TEST_CASE("payment management: deposit, refund, withdraw") {
  Bench b;
  const auto owner = 0, user = 1;
  CHECK(b.call(user, ContractId::PaymentManagement, "makePayment", {}, 1000).success);
  CHECK(pm::deposit_of(b.st, b.addr(user)) == 1000);
  CHECK(b.call(user, ContractId::PaymentManagement, "requestRefund", encode_u64(1001)).revert_reason ==
        "ExcessiveRefund");
  CHECK(b.call(user, ContractId::PaymentManagement, "requestRefund", encode_u64(400)).success);
  CHECK(pm::pending_of(b.st, b.addr(user)) == 400);
  CHECK(b.call(user, ContractId::PaymentManagement, "requestRefund", encode_u64(601)).revert_reason ==
        "ExcessiveRefund");

  CHECK(b.call(user, ContractId::PaymentManagement, "processRefund", Encoder{}.fixed(b.addr(user)).take())
            .revert_reason == "NotOwner");
  auto before = b.balance(user);
  auto r = b.call(owner, ContractId::PaymentManagement, "processRefund", Encoder{}.fixed(b.addr(user)).take());
  REQUIRE(r.success);
  CHECK(as_u64(r.return_value) == 400);
  CHECK(b.balance(user) == before + 400);
  CHECK(pm::deposit_of(b.st, b.addr(user)) == 600);
  CHECK(b.escrow(ContractId::PaymentManagement) == 600);

  auto ob = b.balance(owner);
  auto w = b.call(owner, ContractId::PaymentManagement, "withdrawFunds");
  REQUIRE(w.success);
  CHECK(b.balance(owner) == ob + 600 - w.gas_used * kWei);
  CHECK(b.escrow(ContractId::PaymentManagement) == 0);
  CHECK(b.call(owner, ContractId::PaymentManagement, "withdrawFunds").revert_reason == "NothingToWithdraw");
}

TEST_CASE("parking space management: register, availability, booking, withdraw") {
  Bench b;
  const auto g = b.now;
  Encoder reg;
  reg.str("Lot A-01").u64(100);
  encode_slots(reg, {{g, g + 86400}});
  auto r = b.call(0, ContractId::ParkingSpaceManagement, "registerParkingSpace", reg.take());
  REQUIRE(r.success);
  CHECK(as_u64(r.return_value) == 0);
  CHECK(psm::space(b.st, 0)->location == "Lot A-01");

  Encoder bad;
  bad.str("x").u64(1);
  encode_slots(bad, {{g + 10, g + 5}});
  CHECK(b.call(0, ContractId::ParkingSpaceManagement, "registerParkingSpace", bad.take()).revert_reason ==
        "BadSlots");

  auto window = [&](std::uint64_t from, std::uint64_t until) { return Encoder{}.u64(0).u64(from).u64(until).take(); };
  auto avail = [&](std::uint64_t from, std::uint64_t until) {
    return as_u64(b.fx.executor
                      .call_view(b.st, ContractId::ParkingSpaceManagement, "isAvailable", window(from, until), b.now)
                      .value);
  };
  CHECK(avail(g + 600, g + 4200) == 1);
  CHECK(avail(g + 600, g + 90000) == 0);  // outside the slot

  // 3601 s spans two started hours
  CHECK(psm::booking_fee(100, 0, 3601) == 200);
  CHECK(b.call(1, ContractId::ParkingSpaceManagement, "bookParkingSpace", window(g + 600, g + 4200), 99)
            .revert_reason == "Underpayment");
  CHECK(b.call(1, ContractId::ParkingSpaceManagement, "bookParkingSpace", window(g + 600, g + 4200), 100).success);
  CHECK(avail(g + 1000, g + 2000) == 0);
  CHECK(avail(g + 4200, g + 5000) == 1);  // half-open windows
  CHECK(b.call(2, ContractId::ParkingSpaceManagement, "bookParkingSpace", window(g + 5000, g + 6000), 100)
            .revert_reason == "Unavailable");
  CHECK(b.call(2, ContractId::ParkingSpaceManagement, "releaseParkingSpace", encode_u64(0)).revert_reason ==
        "NotBooker");
  CHECK(b.call(1, ContractId::ParkingSpaceManagement, "releaseParkingSpace", encode_u64(0)).success);
  CHECK(avail(g + 1000, g + 2000) == 1);

  CHECK(b.call(1, ContractId::ParkingSpaceManagement, "withdraw", encode_u64(0)).revert_reason == "NotOwner");
  auto ob = b.balance(0);
  auto w = b.call(0, ContractId::ParkingSpaceManagement, "withdraw", encode_u64(0));
  REQUIRE(w.success);
  CHECK(b.balance(0) == ob + 100 - w.gas_used * kWei);
  CHECK(psm::space(b.st, 0)->lifetime_earnings == 100);
  CHECK(b.call(0, ContractId::ParkingSpaceManagement, "withdraw", encode_u64(0)).revert_reason ==
        "NothingToWithdraw");
}

TEST_CASE("automated parking payments: metered session settles rate times duration") {
  Bench b;
  const auto owner = 0, car = 1;
  REQUIRE(b.call(owner, ContractId::AutomatedParkingPayments, "registerParkingSpace", encode_u64(5)).success);
  b.now += 100;
  REQUIRE(b.call(car, ContractId::AutomatedParkingPayments, "startParking", encode_u64(0)).success);
  CHECK(b.call(2, ContractId::AutomatedParkingPayments, "startParking", encode_u64(0)).revert_reason ==
        "SpaceOccupied");
  CHECK(b.call(car, ContractId::AutomatedParkingPayments, "startParking", encode_u64(0)).revert_reason ==
        "SessionExists");
  b.now += 300;
  auto q = b.call(car, ContractId::AutomatedParkingPayments, "calculateParkingFee");
  CHECK(as_u64(q.return_value) == 1500);
  CHECK(app::amount_due(b.st, b.addr(car), b.now) == 1500);
  b.now += 300;
  auto ob = b.balance(owner);
  auto cb = b.balance(car);
  auto end = b.call(car, ContractId::AutomatedParkingPayments, "endParking");
  REQUIRE(end.success);
  CHECK(as_u64(end.return_value) == 3000);
  CHECK(b.balance(owner) == ob + 3000);
  CHECK(b.balance(car) == cb - 3000 - end.gas_used * kWei);
  CHECK_FALSE(app::session(b.st, b.addr(car))->active);
  CHECK_FALSE(app::space(b.st, 0)->occupancy.occupant.has_value());
  CHECK(b.call(car, ContractId::AutomatedParkingPayments, "endParking").revert_reason == "NoSession");
  CHECK(b.call(car, ContractId::AutomatedParkingPayments, "startParking", encode_u64(9)).revert_reason ==
        "UnknownSpace");
}

TEST_CASE("vehicular communication: broadcast, sealed direct messages, inbox") {
  Bench b;
  CHECK(b.call(0, ContractId::VehicularCommunication, "publishMessage", Encoder{}.str("").take()).revert_reason ==
        "EmptyContent");
  CHECK(b.call(0, ContractId::VehicularCommunication, "publishMessage",
               Encoder{}.str(std::string(kMaxContentBytes + 1, 'x')).take())
            .revert_reason == "ContentTooLarge");
  REQUIRE(b.call(0, ContractId::VehicularCommunication, "publishMessage", Encoder{}.str("jam ahead").take()).success);
  CHECK(vc::message(b.st, 0)->content == to_bytes("jam ahead"));
  CHECK_FALSE(vc::message(b.st, 0)->recipient.has_value());

  const auto& bob = b.fx.users[2];
  auto sealed = seal(bob.public_key(), to_bytes("spot 12 free"));
  CHECK(sealed.size() == 12 + kSealOverhead);
  REQUIRE(b.call(1, ContractId::VehicularCommunication, "sendMessage",
                 Encoder{}.fixed(bob.address()).bytes(sealed).take())
              .success);
  auto unread = vc::unread_for(b.st, bob.address());
  REQUIRE(unread.size() == 1);
  CHECK(open_sealed(bob, unread[0].content) == to_bytes("spot 12 free"));
  CHECK_FALSE(open_sealed(b.fx.users[3], unread[0].content).has_value());

  auto view = b.fx.executor.call_view(b.st, ContractId::VehicularCommunication, "getUnreadMessages", {}, b.now,
                                      bob.address());
  CHECK(decode_messages(view.value).size() == 1);
  REQUIRE(b.call(2, ContractId::VehicularCommunication, "markAllAsRead").success);
  CHECK(vc::unread_for(b.st, bob.address()).empty());
  CHECK(vc::message_count(b.st) == 2);

  Address stranger;
  stranger.bytes[0] = 0xaa;
  CHECK(b.call(1, ContractId::VehicularCommunication, "sendMessage",
               Encoder{}.fixed(stranger).bytes(sealed).take())
            .revert_reason == "UnknownRecipient");
}

TEST_CASE("deterministic sealing is reproducible and opens") {
  auto k = KeyPair::from_label("contracts/seal");
  Seed s{};
  s.fill(7);
  auto a = seal_deterministic(k.public_key(), to_bytes("x"), s);
  CHECK(a == seal_deterministic(k.public_key(), to_bytes("x"), s));
  CHECK(open_sealed(k, a) == to_bytes("x"));
}

TEST_CASE("slot list validation") {
  CHECK(slots_well_formed({{1, 2}, {2, 3}}));
  CHECK_FALSE(slots_well_formed({}));
  CHECK_FALSE(slots_well_formed({{1, 3}, {2, 4}}));
  CHECK_FALSE(slots_well_formed({{3, 3}}));
}

}  // TEST_SUITE
