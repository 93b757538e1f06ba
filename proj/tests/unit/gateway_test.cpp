#include <doctest.h>

#include <httplib.h>

#include "consensus/chain_store.hpp"
#include "contracts/records.hpp"
#include "gateway/http_server.hpp"
#include "gateway/json_codec.hpp"
#include "gateway/occupancy.hpp"
#include "ledger/merkle.hpp"
#include "support/gateway_rig.hpp"

using namespace esp2cs;
using namespace esp2cs::gateway;
using esp2cs::testing::GatewayRig;
using nlohmann::json;

namespace {

Bytes u64_arg(std::uint64_t v) { return encode_u64(v); }

/// renter (user 1) registers a metered space at 5 wei/s; vehicle (user 2)
/// parks from slot 2 to slot 8 (30 s).
void park_once(GatewayRig& rig) {
  REQUIRE(rig.submit(rig.fx.tx(1, ContractId::AutomatedParkingPayments, "registerParkingSpace", u64_arg(5))).status ==
          202);
  rig.mine();
  REQUIRE(rig.submit(rig.fx.tx(2, ContractId::AutomatedParkingPayments, "startParking", u64_arg(0))).status == 202);
  rig.mine();
  rig.mine(5);
  REQUIRE(rig.submit(rig.fx.tx(2, ContractId::AutomatedParkingPayments, "endParking")).status == 202);
  rig.mine();
}

}  // namespace

TEST_SUITE("gateway") {

TEST_CASE("fresh chain serves the genesis header") {
  GatewayRig rig;
  auto r = rig.get("/v1/chain/headers", {{"from", "0"}});
  REQUIRE(r.status == 200);
  auto j = GatewayRig::json(r);
  REQUIRE(j["headers"].size() == 1);
  CHECK(j["headers"][0]["height"] == 0);
  CHECK(header_from_json(j["headers"][0]) == rig.fx.genesis.block.header);
  CHECK(GatewayRig::json(rig.get("/v1/chain/head"))["hash"] == rig.fx.genesis.block.hash().hex());
}

TEST_CASE("transaction relay, receipt and proof") {
  GatewayRig rig;
  auto tx = rig.fx.tx(0, ContractId::PaymentManagement, "makePayment", {}, 777);
  auto r = rig.submit(tx);
  REQUIRE(r.status == 202);
  CHECK(GatewayRig::json(r)["tx_hash"] == tx.hash().hex());

  auto pending = rig.get("/v1/receipts/" + tx.hash().hex());
  CHECK(pending.status == 404);
  CHECK(GatewayRig::json(pending)["pending"] == true);
  rig.mine();

  auto rec = GatewayRig::json(rig.get("/v1/receipts/" + tx.hash().hex()));
  CHECK(rec["status"] == "Success");
  CHECK(rec["block_height"] == 1);
  CHECK(rec["logs"][0]["event"] == "PaymentMade");

  auto p = rig.get("/v1/proofs/" + tx.hash().hex());
  REQUIRE(p.status == 200);
  auto pj = GatewayRig::json(p);
  MerkleProof proof;
  proof.leaf_index = pj["leaf_index"];
  for (const auto& s : pj["siblings"]) proof.siblings.push_back(Digest::from_hex(s.get<std::string>()));
  auto head = header_from_json(GatewayRig::json(rig.get("/v1/chain/head")));
  CHECK(pj["header_height"] == 1);
  CHECK(merkle_verify(head.tx_root, tx.encode(), proof.leaf_index, proof));

  CHECK(rig.get("/v1/proofs/" + sha256("nope").hex()).status == 404);
}

TEST_CASE("rejections surface the admission reason") {
  GatewayRig rig;
  auto tx = rig.fx.publish(0, "a");
  REQUIRE(rig.submit(tx).status == 202);
  auto dup = rig.submit(tx);
  CHECK(dup.status == 409);
  CHECK(GatewayRig::json(dup)["error"] == "Duplicate");
  rig.mine();
  auto stale = rig.submit(tx);
  CHECK(stale.status == 409);
  CHECK(GatewayRig::json(stale)["error"] == "BadNonce");
  auto forged = rig.fx.publish(0, "b");
  forged.args.push_back(0);
  auto bad = rig.submit(forged);
  CHECK(bad.status == 400);
  CHECK(GatewayRig::json(bad)["error"] == "BadSignature");
  CHECK(rig.post("/v1/transactions", R"({"tx":"zz"})").status == 400);
  CHECK(rig.post("/v1/transactions", "not json").status == 400);
  CHECK(rig.post("/v1/transactions", R"({"tx":"00"})").status == 400);
}

TEST_CASE("routing errors") {
  GatewayRig rig;
  CHECK(rig.get("/v1/nothing").status == 404);
  CHECK(rig.get("/v2/chain/head").status == 404);
  CHECK(rig.service.handle({"DELETE", "/v1/chain/head", {}, ""}).status == 405);
  CHECK(rig.get("/v1/transactions").status == 405);
  CHECK(rig.get("/v1/chain/headers", {{"from", "x"}}).status == 400);
  rig.host.set_reachable(false);
  CHECK(rig.get("/v1/chain/head").status == 503);
}

TEST_CASE("headers paginate") {
  GatewayRig rig;
  rig.mine(10);
  auto j = GatewayRig::json(rig.get("/v1/chain/headers", {{"from", "3"}, {"limit", "4"}}));
  REQUIRE(j["headers"].size() == 4);
  CHECK(j["headers"][0]["height"] == 3);
  CHECK(j["head_height"] == 10);
  CHECK(GatewayRig::json(rig.get("/v1/chain/headers", {{"from", "11"}}))["headers"].empty());
}

TEST_CASE("messages: unread list and single reads") {
  GatewayRig rig;
  REQUIRE(rig.submit(rig.fx.publish(0, "road works")).status == 202);
  rig.mine();
  const auto& bob = rig.fx.users[1];
  REQUIRE(rig.submit(rig.fx.tx(2, ContractId::VehicularCommunication, "sendMessage",
                               Encoder{}.fixed(bob.address()).str("sealed-bytes").take()))
              .status == 202);
  rig.mine();
  auto un = GatewayRig::json(rig.get("/v1/messages/unread", {{"account", bob.address().hex()}}));
  REQUIRE(un["messages"].size() == 1);
  CHECK(un["messages"][0]["recipient"] == bob.address().hex());
  CHECK(un["gas_used"] == 0);
  auto m0 = GatewayRig::json(rig.get("/v1/messages/0"));
  CHECK(m0["content"] == to_hex(to_bytes("road works")));
  CHECK(m0["recipient"].is_null());
  CHECK(rig.get("/v1/messages/9").status == 404);
  CHECK(rig.get("/v1/messages/unread").status == 400);
}

TEST_CASE("parking spaces, sessions and amounts due") {
  GatewayRig rig;
  const auto g = rig.fx.config.genesis_time;
  Encoder reg;
  reg.str("Elm 1").u64(100);
  contracts::encode_slots(reg, {{g, g + 3600}});
  REQUIRE(rig.submit(rig.fx.tx(1, ContractId::ParkingSpaceManagement, "registerParkingSpace", reg.take())).status ==
          202);
  REQUIRE(rig.submit(rig.fx.tx(1, ContractId::AutomatedParkingPayments, "registerParkingSpace", u64_arg(5))).status ==
          202);
  rig.mine();
  REQUIRE(rig.submit(rig.fx.tx(2, ContractId::AutomatedParkingPayments, "startParking", u64_arg(0))).status == 202);
  rig.mine();

  auto sp = GatewayRig::json(
      rig.get("/v1/parking/spaces", {{"available_from", std::to_string(g + 60)}, {"until", std::to_string(g + 120)}}));
  REQUIRE(sp["spaces"].size() == 1);
  CHECK(sp["spaces"][0]["available"] == true);
  CHECK(sp["spaces"][0]["rate"] == "100");
  CHECK(sp["metered_spaces"][0]["occupant"] == rig.fx.users[2].address().hex());
  auto closed = GatewayRig::json(rig.get(
      "/v1/parking/spaces", {{"available_from", std::to_string(g + 3000)}, {"until", std::to_string(g + 4000)}}));
  CHECK(closed["spaces"][0]["available"] == false);
  CHECK(GatewayRig::json(rig.get("/v1/parking/spaces"))["spaces"][0]["available"].is_null());
  CHECK(rig.get("/v1/parking/spaces", {{"until", "5"}}).status == 400);

  rig.host.set_now(rig.fx.config.slot_time(2) + 40);
  auto s = GatewayRig::json(rig.get("/v1/parking/sessions", {{"vehicle", rig.fx.users[2].address().hex()}}));
  CHECK(s["session"]["active"] == true);
  CHECK(s["amount_due"] == "200");
  auto none = GatewayRig::json(rig.get("/v1/parking/sessions", {{"vehicle", rig.fx.users[0].address().hex()}}));
  CHECK(none["session"].is_null());
  CHECK(none["amount_due"] == "0");
}

TEST_CASE("occupancy analytics match a fresh replay of the chain") {
  GatewayRig rig;
  park_once(rig);
  // a second session that is still open
  REQUIRE(rig.submit(rig.fx.tx(0, ContractId::AutomatedParkingPayments, "startParking", u64_arg(0))).status == 202);
  rig.mine(3);
  const auto g = rig.fx.config.genesis_time;
  std::map<std::string, std::string> q{{"space_id", "0"}, {"from", std::to_string(g)}, {"to", std::to_string(g + 1000)}};
  auto served = GatewayRig::json(rig.get("/v1/analytics/occupancy", q));

  // independent replay from genesis
  consensus::ChainStore replay(rig.fx.genesis);
  runtime::WorldState state = rig.fx.genesis.state;
  const runtime::Executor ex(rig.fx.config.runtime);
  std::vector<Block> blocks;
  rig.host.with_node([&](consensus::Node& n) {
    for (const auto* b : n.chain().canonical_chain()) blocks.push_back(b->block);
  });
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    auto r = consensus::apply_block(ex, state, blocks[i]);
    REQUIRE(r.executed);
    state = r.executed->state;
    replay.set_head(replay.insert(std::move(*r.executed)).hash);
  }
  auto expect = occupancy(fold_sessions(replay.canonical_chain()), 0, g, g + 1000, rig.host.now());
  CHECK(served["occupied_seconds"] == expect.occupied_seconds);
  CHECK(served["sessions_count"] == expect.sessions_count);
  CHECK(served["revenue"] == std::to_string(expect.revenue));
  // hand-worked: closed session 30 s (150 wei) plus the open one so far
  CHECK(expect.sessions_count == 2);
  CHECK(expect.revenue == 150);
  CHECK(expect.occupied_seconds == 30 + (rig.host.now() - rig.fx.config.slot_time(9)));

  CHECK(rig.get("/v1/analytics/occupancy", {{"space_id", "7"}, {"from", "0"}, {"to", "1"}}).status == 404);
  CHECK(rig.get("/v1/analytics/occupancy", {{"space_id", "0"}, {"from", "5"}, {"to", "5"}}).status == 400);
}

TEST_CASE("occupancy window arithmetic") {
  std::vector<SessionSpan> s{{0, {}, 100, 200, 50}, {0, {}, 300, std::nullopt, 0}, {1, {}, 0, 1000, 9}};
  auto a = occupancy(s, 0, 150, 350, 400);
  CHECK(a.occupied_seconds == 50 + 50);
  CHECK(a.sessions_count == 2);
  CHECK(a.revenue == 50);
  // touches both sessions without overlapping; revenue follows settlement time
  auto b = occupancy(s, 0, 200, 300, 400);
  CHECK(b.occupied_seconds == 0);
  CHECK(b.revenue == 50);
}

TEST_CASE("admin status reports liveness") {
  GatewayRig rig;
  rig.mine(2);
  rig.host.with_node([](consensus::Node& n) { n.add_peer("10.0.0.9:8545"); });
  auto j = GatewayRig::json(rig.get("/v1/admin/status"));
  CHECK(j["node"] == "cloud-1");
  CHECK(j["authority"] == true);
  CHECK(j["height"] == 2);
  CHECK(j["authorities"][0]["online"] == true);
  CHECK(j["peers"][0]["online"] == false);
  rig.host.set_now(rig.fx.config.slot_time(2) + 3 * rig.fx.config.block_interval);
  CHECK(GatewayRig::json(rig.get("/v1/admin/status"))["authorities"][0]["online"] == false);
}

TEST_CASE("accounts and their transaction history") {
  GatewayRig rig;
  auto tx = rig.fx.tx(0, ContractId::PaymentManagement, "makePayment", {}, 5);
  REQUIRE(rig.submit(tx).status == 202);
  rig.mine();
  auto a = GatewayRig::json(rig.get("/v1/accounts/" + rig.fx.users[0].address().hex()));
  CHECK(a["nonce"] == 1);
  CHECK(a["public_key"] == rig.fx.users[0].public_key().hex());
  auto h = GatewayRig::json(rig.get("/v1/accounts/" + rig.fx.users[0].address().hex() + "/transactions"));
  REQUIRE(h["transactions"].size() == 1);
  CHECK(h["transactions"][0]["function"] == "makePayment");
  CHECK(h["transactions"][0]["value"] == "5");
  auto gas = h["transactions"][0]["gas_used"].get<std::uint64_t>();
  CHECK(h["transactions"][0]["fee"] == std::to_string(gas * runtime::kWeiPerGwei));
  CHECK(a["balance"] == std::to_string(testing::kFunds - 5 - gas * runtime::kWeiPerGwei));
  CHECK(rig.get("/v1/accounts/1234").status == 400);
}

TEST_CASE("p2p endpoint feeds the node") {
  GatewayRig rig;
  auto tx = rig.fx.publish(0, "via peer");
  auto msg = consensus::encode_message(consensus::TxMsg{tx});
  auto r = rig.post("/v1/p2p", json{{"from", "peer-a:1"}, {"message", to_hex(msg)}}.dump());
  CHECK(r.status == 202);
  rig.mine();
  CHECK(GatewayRig::json(rig.get("/v1/receipts/" + tx.hash().hex()))["status"] == "Success");
  CHECK(rig.post("/v1/p2p", json{{"from", "x"}, {"message", "0102"}}.dump()).status == 400);
}

TEST_CASE("HTTP server serves the same API with CORS") {
  GatewayRig rig;
  HttpServer server(rig.service);
  int port = server.start("127.0.0.1", 0);
  REQUIRE(port > 0);
  httplib::Client cli("127.0.0.1", port);
  auto res = cli.Get("/v1/chain/head");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(json::parse(res->body)["height"] == 0);
  CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
  auto post = cli.Post("/v1/transactions", json{{"tx", to_hex(rig.fx.publish(0, "http").encode())}}.dump(),
                       "application/json");
  REQUIRE(post);
  CHECK(post->status == 202);
  auto missing = cli.Get("/v1/receipts/00");
  REQUIRE(missing);
  CHECK(missing->status == 400);
  server.stop();
}

}  // TEST_SUITE
