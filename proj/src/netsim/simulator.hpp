#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "consensus/node.hpp"
#include "netsim/report.hpp"
#include "netsim/scenario.hpp"

namespace esp2cs::netsim {

/// Key of a scenario participant; a function of (seed, name) only.
KeyPair scenario_key(std::uint64_t seed, const std::string& name);
consensus::GenesisConfig scenario_genesis(const Scenario& s);

/// Deterministic discrete-event run of a scenario. Events are processed in
/// (time, sequence) order on one thread; every random draw comes from
/// generators seeded with the scenario seed.
class Simulator {
public:
  explicit Simulator(Scenario scenario);

  SimulationReport run();

  [[nodiscard]] const Scenario& scenario() const { return scenario_; }
  [[nodiscard]] const consensus::GenesisConfig& genesis() const { return genesis_; }
  [[nodiscard]] const std::vector<std::unique_ptr<consensus::Node>>& nodes() const { return nodes_; }
  [[nodiscard]] const consensus::Node& node(const std::string& name) const;
  [[nodiscard]] Address address_of_actor(const std::string& name) const;
  [[nodiscard]] std::uint64_t now_ms() const { return now_ms_; }

private:
  struct Deliver {
    std::size_t to;
    std::size_t from;
    consensus::WireMessage message;
  };
  struct Slot {
    std::size_t node;
  };
  struct Act {
    std::size_t index;
  };
  using Payload = std::variant<Deliver, Slot, Act>;
  using EventKey = std::pair<std::uint64_t, std::uint64_t>;  // (time, seq)

  void schedule(std::uint64_t at, Payload p);
  void flush(std::size_t node);
  std::uint64_t latency(std::size_t a, std::size_t b);
  std::optional<std::size_t> partition_at(std::uint64_t t) const;
  bool blocked(std::size_t a, std::size_t b, std::uint64_t t) const;
  [[nodiscard]] std::uint64_t node_time(std::uint64_t ms) const { return genesis_.genesis_time + ms / 1000; }
  void perform(const ScenarioAction& a);
  void submit(const std::string& actor, const std::string& via_node, ContractId c, const std::string& fn,
              Bytes args, std::uint64_t value, std::uint64_t gas_price);
  Bytes encode_args(const ScenarioAction& a);
  void observe();
  void warn(std::string text);
  SimulationReport build_report() const;

  Scenario scenario_;
  consensus::GenesisConfig genesis_;
  std::vector<std::unique_ptr<consensus::Node>> nodes_;
  std::map<std::string, std::size_t> node_index_;
  std::map<std::string, KeyPair> keys_;
  std::map<std::string, std::uint64_t> next_nonce_;
  std::set<std::pair<std::string, std::string>> authorizations_;  // (vehicle, gateway)
  std::map<Digest, std::string> tx_actor_;
  std::vector<std::vector<int>> partition_groups_;  // [partition][node] -> group

  std::map<EventKey, Payload> queue_;
  std::uint64_t seq_ = 0;
  std::uint64_t now_ms_ = 0;
  std::mt19937_64 net_rng_;
  std::mt19937_64 actor_rng_;
  bool all_same_ = true;
  std::vector<std::uint64_t> convergence_ms_;
  std::vector<HealRecord> heals_;
  std::vector<std::string> warnings_;
  std::uint64_t delivered_ = 0;
  std::uint64_t dropped_ = 0;
};

SimulationReport run_scenario(const Scenario& scenario);

}  // namespace esp2cs::netsim
