#pragma once
// One authority node behind an in-process gateway Service.

#include <json.hpp>

#include "gateway/service.hpp"
#include "support/fixture.hpp"

namespace esp2cs::testing {

struct GatewayRig {
  Fixture fx;
  gateway::LocalNodeHost host;
  gateway::Service service{host};
  std::uint64_t slot = 0;

  explicit GatewayRig(std::size_t users = 3)
      : fx(1, users, "gateway"), host(consensus::NodeConfig{fx.config, fx.authorities[0], "cloud-1"}) {
    host.set_now(fx.config.genesis_time);
  }

  gateway::Response get(const std::string& path, std::map<std::string, std::string> query = {}) {
    return service.handle({"GET", path, std::move(query), ""});
  }
  gateway::Response post(const std::string& path, const std::string& body) {
    return service.handle({"POST", path, {}, body});
  }
  static nlohmann::json json(const gateway::Response& r) { return nlohmann::json::parse(r.body); }

  gateway::Response submit(const Transaction& tx) {
    return post("/v1/transactions", nlohmann::json{{"tx", to_hex(tx.encode())}}.dump());
  }
  /// Runs the next slot; the single authority proposes every block.
  void mine(std::size_t blocks = 1) {
    for (std::size_t i = 0; i < blocks; ++i) host.tick(fx.config.slot_time(++slot));
  }
};

}  // namespace esp2cs::testing
