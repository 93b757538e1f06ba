#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>

#include "consensus/node.hpp"
#include "gateway/json_codec.hpp"
#include "gateway/occupancy.hpp"

namespace esp2cs::gateway {

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;  // JSON
};

/// Serialized access to the node behind a gateway.
class NodeHost {
public:
  virtual ~NodeHost() = default;
  /// Runs `f` with exclusive access to the node. Returns false, without
  /// calling `f`, when the node is not reachable.
  virtual bool with_node(const std::function<void(consensus::Node&)>& f) = 0;
  /// Current chain time in seconds.
  [[nodiscard]] virtual std::uint64_t now() const = 0;
};

/// A node owned in-process, driven explicitly by the caller. Used by tests,
/// the C API and single-node development setups.
class LocalNodeHost : public NodeHost {
public:
  explicit LocalNodeHost(consensus::NodeConfig config);

  bool with_node(const std::function<void(consensus::Node&)>& f) override;
  [[nodiscard]] std::uint64_t now() const override { return now_.load(); }

  void set_now(std::uint64_t t) { now_.store(t); }
  /// Advances the clock to `t` and runs the node's slot handler there.
  void tick(std::uint64_t t);
  void set_reachable(bool up) { reachable_.store(up); }
  /// Receives whatever the node wanted to send; dropped when unset.
  void on_outbox(std::function<void(std::vector<consensus::Outgoing>)> sink);

private:
  std::mutex mu_;
  consensus::Node node_;
  std::atomic<std::uint64_t> now_;
  std::atomic<bool> reachable_{true};
  std::function<void(std::vector<consensus::Outgoing>)> sink_;
};

/// The /v1 JSON API over one node. Reads are answered from the node's
/// current head; writes go through the node's own admission path.
class Service {
public:
  explicit Service(NodeHost& host) : host_(host) {}

  Response handle(const Request& req);

private:
  using Node = consensus::Node;

  Response route(const Request& req, Node& node);
  Response submit_transaction(const Request& req, Node& node);
  Response receipt(const std::string& hash, Node& node);
  Response headers(const Request& req, Node& node);
  Response proof(const std::string& hash, Node& node);
  Response unread(const Request& req, Node& node);
  Response message(const std::string& id, Node& node);
  Response spaces(const Request& req, Node& node);
  Response sessions(const Request& req, Node& node);
  Response occupancy_report(const Request& req, Node& node);
  Response admin_status(Node& node);
  Response account(const std::string& addr, Node& node);
  Response account_transactions(const std::string& addr, Node& node);
  Response p2p(const Request& req, Node& node);

  NodeHost& host_;
  OccupancyIndex occupancy_;  // only touched under the node lock
};

/// Liveness window: a peer or authority unseen for this long is reported offline.
std::uint64_t liveness_window(const consensus::Node& node);

}  // namespace esp2cs::gateway
