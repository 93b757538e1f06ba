#pragma once

#include <condition_variable>
#include <deque>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "gateway/service.hpp"

namespace esp2cs::gateway {

/// A node running in real time. Slot ticks follow the wall clock, and peer
/// messages travel as POST /v1/p2p to the peer's "host:port", which is also
/// the peer's name. The node's own name must be the address peers reach it at.
class LiveNode : public NodeHost {
public:
  using Clock = std::function<std::uint64_t()>;  // unix milliseconds

  LiveNode(consensus::NodeConfig config, std::vector<std::string> peers, Clock clock = {});
  ~LiveNode() override;

  void start();
  void stop();

  bool with_node(const std::function<void(consensus::Node&)>& f) override;
  [[nodiscard]] std::uint64_t now() const override { return clock_() / 1000; }

private:
  void ticker();
  void sender();
  void dispatch(std::vector<consensus::Outgoing> out);

  std::mutex node_mu_;
  consensus::Node node_;
  Clock clock_;

  std::mutex mu_;
  std::condition_variable cv_;
  bool running_ = false;
  std::deque<std::pair<std::string, std::string>> queue_;  // (peer, body)
  std::thread ticker_;
  std::thread sender_;
};

}  // namespace esp2cs::gateway
