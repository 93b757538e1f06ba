#include "gateway/live_node.hpp"

#include <httplib.h>

#include <chrono>

#include "consensus/messages.hpp"

namespace esp2cs::gateway {

namespace {
std::uint64_t system_ms() {
  using namespace std::chrono;
  return static_cast<std::uint64_t>(duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count());
}
}  // namespace

LiveNode::LiveNode(consensus::NodeConfig config, std::vector<std::string> peers, Clock clock)
    : node_(std::move(config)), clock_(clock ? std::move(clock) : Clock(system_ms)) {
  for (const auto& p : peers) node_.add_peer(p);
}

LiveNode::~LiveNode() { stop(); }

void LiveNode::start() {
  {
    std::lock_guard lock(mu_);
    if (running_) return;
    running_ = true;
  }
  ticker_ = std::thread([this] { ticker(); });
  sender_ = std::thread([this] { sender(); });
}

void LiveNode::stop() {
  {
    std::lock_guard lock(mu_);
    running_ = false;
  }
  cv_.notify_all();
  if (ticker_.joinable()) ticker_.join();
  if (sender_.joinable()) sender_.join();
}

bool LiveNode::with_node(const std::function<void(consensus::Node&)>& f) {
  std::vector<consensus::Outgoing> out;
  {
    std::lock_guard lock(node_mu_);
    f(node_);
    out = node_.take_outbox();
  }
  dispatch(std::move(out));
  return true;
}

void LiveNode::dispatch(std::vector<consensus::Outgoing> out) {
  if (out.empty()) return;
  std::vector<std::string> everyone;
  {
    std::lock_guard lock(node_mu_);
    everyone = node_.peers();
  }
  {
    std::lock_guard lock(mu_);
    for (auto& o : out) {
      Json body{{"from", node_.name()}, {"message", to_hex(consensus::encode_message(o.message))}};
      auto text = body.dump();
      if (o.to) {
        queue_.emplace_back(*o.to, text);
      } else {
        for (const auto& p : everyone) queue_.emplace_back(p, text);
      }
    }
  }
  cv_.notify_all();
}

void LiveNode::ticker() {
  const std::uint64_t interval_ms = node_.genesis().block_interval * 1000;
  const std::uint64_t origin_ms = node_.genesis().genesis_time * 1000;
  std::unique_lock lock(mu_);
  while (running_) {
    const auto t = clock_();
    const auto next = t < origin_ms ? origin_ms + interval_ms : t - (t - origin_ms) % interval_ms + interval_ms;
    cv_.wait_for(lock, std::chrono::milliseconds(next - t), [this] { return !running_; });
    if (!running_) break;
    if (clock_() < next) continue;
    lock.unlock();
    with_node([this](consensus::Node& n) { n.on_slot(now()); });
    lock.lock();
  }
}

void LiveNode::sender() {
  std::unique_lock lock(mu_);
  while (true) {
    cv_.wait(lock, [this] { return !running_ || !queue_.empty(); });
    if (!running_) break;
    auto [peer, body] = std::move(queue_.front());
    queue_.pop_front();
    lock.unlock();
    httplib::Client cli("http://" + peer);
    cli.set_connection_timeout(0, 300'000);
    cli.set_read_timeout(2, 0);
    cli.Post("/v1/p2p", body, "application/json");  // unreachable peers are caught up later by sync
    lock.lock();
  }
}

}  // namespace esp2cs::gateway
