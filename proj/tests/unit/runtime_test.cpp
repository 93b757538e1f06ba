#include <doctest.h>

#include "runtime/call_context.hpp"
#include "runtime/cost.hpp"
#include "runtime/executor.hpp"
#include "runtime/gas_meter.hpp"
#include "runtime/world_state.hpp"
#include "support/fixture.hpp"

using namespace esp2cs;
using namespace esp2cs::runtime;
using esp2cs::testing::Fixture;

TEST_SUITE("runtime") {

TEST_CASE("cost is gas times price in exact decimal ETH") {
  // 43608 * 7e-9 and 169617 * 7e-9, worked by hand
  CHECK(format_decimal(compute_cost(43608, 7), 9) == "0.000305256");
  CHECK(format_decimal(compute_cost(169617, 7), 9) == "0.001187319");
  CHECK(compute_cost(0, 7) == 0);
  CHECK(compute_cost(1, 1) == Rational(1, 1'000'000'000));
  CHECK(format_decimal(compute_cost_usd(43608, 7, calibrated_usd_per_eth()), 3) == "0.555");
  CHECK(parse_decimal("1818.57") == Rational(181857, 100));
  CHECK(format_decimal(parse_decimal("0.0005"), 3) == "0.001");
  CHECK_THROWS_AS(parse_decimal("1.2.3"), Error);
}

TEST_CASE("storage gas by word transition") {
  GasSchedule s;
  Bytes word(32, 0);
  Bytes one = word;
  one[0] = 1;
  Bytes two = word;
  two[0] = 2;

  GasMeter m(s, 1'000'000);
  m.charge_store({}, one);
  CHECK(m.consumed() == s.sstore_new);
  m.charge_store(one, two);
  CHECK(m.consumed() == s.sstore_new + s.sstore_update);
  m.charge_store(two, two);
  CHECK(m.consumed() == s.sstore_new + s.sstore_update + s.sload);
  m.charge_store(two, {});
  CHECK(m.refund_counter() == s.sstore_clear_refund);
  // refund is capped at half the consumed gas
  GasMeter small(s, 1'000'000);
  small.charge_store(two, {});
  CHECK(small.consumed() == 5000);
  CHECK(small.net_used() == 2500);
  CHECK(storage_words(33) == 2);
}

TEST_CASE("meter throws past the limit and pins consumption") {
  GasSchedule s;
  GasMeter m(s, 1000);
  m.charge(600);
  CHECK_THROWS_AS(m.charge(600), OutOfGas);
  CHECK(m.consumed() == 1000);
}

TEST_CASE("world state root is order independent and erases zero values") {
  WorldState a, b;
  Address x, y;
  x.bytes[0] = 1;
  y.bytes[0] = 2;
  a.account(x).balance = 5;
  a.account(y).balance = 7;
  b.account(y).balance = 7;
  b.account(x).balance = 5;
  CHECK(a.root() == b.root());
  a.store(ContractId::PaymentManagement, "k", Bytes{1});
  CHECK(a.root() != b.root());
  a.store(ContractId::PaymentManagement, "k", Bytes{0, 0});
  CHECK_FALSE(a.load(ContractId::PaymentManagement, "k").has_value());
  CHECK(a.root() == b.root());
  CHECK(a.total_supply() == 12);
}

TEST_CASE("overlay changes reach the base only on commit") {
  WorldState base;
  StateOverlay o(base);
  o.store(ContractId::VehicularCommunication, "k", Bytes{9});
  o.account(Address{}).balance = 3;
  CHECK_FALSE(base.load(ContractId::VehicularCommunication, "k"));
  CHECK(o.load(ContractId::VehicularCommunication, "k") == Bytes{9});
  o.commit(base);
  CHECK(base.load(ContractId::VehicularCommunication, "k") == Bytes{9});
  CHECK(base.find_account(Address{})->balance == 3);
}

TEST_CASE("execution charges fees to the proposer and conserves supply") {
  Fixture fx(1, 2);
  WorldState st = fx.genesis.state;
  auto supply = st.total_supply();
  auto tx = fx.tx(0, ContractId::PaymentManagement, "makePayment", {}, 5000, 3);
  BlockContext ctx{fx.config.genesis_time + 5, fx.authorities[0].public_key()};
  auto out = fx.executor.execute(st, tx, ctx);
  REQUIRE(out.included());
  CHECK(out.receipt.success);
  CHECK(out.receipt.gas_used >= fx.config.runtime.gas.tx_base);
  const auto fee = out.receipt.gas_used * 3 * kWeiPerGwei;
  CHECK(st.find_account(fx.users[0].address())->balance == testing::kFunds - 5000 - fee);
  CHECK(st.find_account(fx.users[0].address())->nonce == 1);
  CHECK(st.find_account(fx.authorities[0].address())->balance == fee);
  CHECK(st.find_account(contract_address(ContractId::PaymentManagement))->balance == 5000);
  CHECK(st.total_supply() == supply);
}

TEST_CASE("reverts roll back state but still charge gas") {
  Fixture fx(1, 2);
  WorldState st = fx.genesis.state;
  BlockContext ctx{fx.config.genesis_time + 5, fx.authorities[0].public_key()};
  auto tx = fx.tx(1, ContractId::PaymentManagement, "withdrawFunds");  // not the owner
  auto out = fx.executor.execute(st, tx, ctx);
  REQUIRE(out.included());
  CHECK_FALSE(out.receipt.success);
  CHECK(out.receipt.revert_reason == "NotOwner");
  CHECK(out.receipt.gas_used > 0);
  CHECK(st.find_account(fx.users[1].address())->nonce == 1);
  CHECK(st.find_account(fx.users[1].address())->balance ==
        testing::kFunds - out.receipt.gas_used * kWeiPerGwei);

  auto bad = fx.tx(1, ContractId::PaymentManagement, "makePayment", {}, 0);
  CHECK(fx.executor.execute(st, bad, ctx).receipt.revert_reason == "ZeroValue");
  auto view = fx.tx(1, ContractId::VehicularCommunication, "readMessage", encode_u64(0));
  CHECK(fx.executor.execute(st, view, ctx).receipt.revert_reason == "UnknownFunction");
}

TEST_CASE("preconditions exclude without touching state") {
  Fixture fx(1, 2);
  WorldState st = fx.genesis.state;
  BlockContext ctx{fx.config.genesis_time + 5, fx.authorities[0].public_key()};
  auto tx = fx.tx(0, ContractId::PaymentManagement, "makePayment", {}, 1);
  auto replay = tx;
  REQUIRE(fx.executor.execute(st, tx, ctx).included());
  auto root = st.root();
  CHECK(fx.executor.execute(st, replay, ctx).excluded == Exclusion::BadNonce);
  auto rich = fx.tx(0, ContractId::PaymentManagement, "makePayment", {}, testing::kFunds);
  CHECK(fx.executor.execute(st, rich, ctx).excluded == Exclusion::InsufficientFunds);
  auto forged = rich;
  forged.value = 2;
  CHECK(fx.executor.execute(st, forged, ctx).excluded == Exclusion::BadSignature);
  CHECK(st.root() == root);
}

TEST_CASE("out of gas reverts with the whole limit charged") {
  Fixture fx(1, 1);
  RuntimeConfig cfg;
  cfg.tx_gas_limit = 30'000;
  Executor ex(cfg);
  WorldState st = fx.genesis.state;
  BlockContext ctx{fx.config.genesis_time + 5, fx.authorities[0].public_key()};
  auto out = ex.execute(st, fx.publish(0, std::string(200, 'x')), ctx);
  CHECK(out.receipt.revert_reason == "OutOfGas");
  CHECK(out.receipt.gas_used == 30'000);
}

TEST_CASE("views cost nothing and refuse state-changing functions") {
  Fixture fx(1, 1);
  WorldState st = fx.genesis.state;
  BlockContext ctx{fx.config.genesis_time + 5, fx.authorities[0].public_key()};
  REQUIRE(fx.executor.execute(st, fx.publish(0, "hi"), ctx).receipt.success);
  auto r = fx.executor.call_view(st, ContractId::VehicularCommunication, "readMessage", encode_u64(0), ctx.timestamp);
  CHECK(r.gas_used == 0);
  CHECK_THROWS_AS(
      (void)fx.executor.call_view(st, ContractId::VehicularCommunication, "readMessage", encode_u64(5), 0), Revert);
  CHECK_THROWS_AS((void)fx.executor.call_view(st, ContractId::PaymentManagement, "makePayment", {}, 0),
                  UnknownFunction);
}

}  // TEST_SUITE
