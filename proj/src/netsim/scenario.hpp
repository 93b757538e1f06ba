#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ledger/bytes.hpp"
#include "ledger/transaction.hpp"

namespace esp2cs::netsim {

class ScenarioError : public Error {
public:
  using Error::Error;
};

struct LatencyModel {
  std::uint64_t base_ms = 50;
  std::uint64_t jitter_ms = 30;
};

struct LinkLatency {
  std::string a;
  std::string b;
  std::uint64_t base_ms = 0;
};

struct ScenarioAccount {
  std::string name;
  std::string role = "user";
  std::uint64_t balance = 0;
  /// Node whose gateway this actor talks to.
  std::string node;
};

/// IoT parking manager bound to one metered (AutomatedParkingPayments) space.
struct ScenarioGateway {
  std::string name;
  std::uint64_t space = 0;
  std::string node;
};

using SlotList = std::vector<std::pair<std::uint64_t, std::uint64_t>>;
using ArgValue = std::variant<std::uint64_t, std::string, SlotList>;

enum class ActionKind { Call, Authorize, Arrive, Depart, Equivocate };

struct ScenarioAction {
  std::uint64_t at_ms = 0;
  std::string actor;
  ActionKind kind = ActionKind::Call;
  // Call
  ContractId contract = ContractId::VehicularCommunication;
  std::string function;
  std::map<std::string, ArgValue> args;
  std::uint64_t value = 0;
  std::optional<std::uint64_t> gas_price_gwei;
  // Authorize / Arrive / Depart
  std::string gateway;
  // Equivocate: nodes that receive the conflicting sibling
  std::vector<std::string> group;
  int line = 0;
};

struct Partition {
  std::uint64_t start_ms = 0;
  std::uint64_t end_ms = 0;
  std::vector<std::vector<std::string>> groups;
};

/// A seeded, timestamped script. Times are simulated seconds since genesis;
/// time-typed call arguments (slots, booking windows) use the same origin.
struct Scenario {
  std::string name = "scenario";
  std::uint64_t seed = 1;
  std::uint64_t duration_s = 60;
  std::uint64_t genesis_time = 1'700'000'000;
  std::uint64_t block_interval = 5;
  std::uint64_t tx_gas_limit = 1'000'000;
  std::uint64_t gas_price_gwei = 1;
  std::vector<std::string> authorities;
  std::vector<std::string> observers;
  LatencyModel latency;
  std::vector<LinkLatency> links;
  std::vector<ScenarioAccount> accounts;
  std::optional<std::string> payment_owner;
  std::vector<ScenarioGateway> gateways;
  std::vector<ScenarioAction> actions;
  std::vector<Partition> partitions;

  [[nodiscard]] std::vector<std::string> node_names() const;
  [[nodiscard]] const ScenarioAccount* account(const std::string& name) const;
  [[nodiscard]] const ScenarioGateway* gateway(const std::string& name) const;
};

/// Parses and validates. Errors carry the YAML line number.
Scenario parse_scenario_yaml(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);
/// Structural checks shared by the parser and programmatic construction.
void validate_scenario(const Scenario& s);

/// Names and types of the arguments a scenario call supplies, in wire order.
enum class ArgKind { U64, Time, Text, Account, Slots };
struct ArgField {
  std::string_view name;
  ArgKind kind;
};
std::vector<ArgField> call_arguments(ContractId contract, std::string_view function);

}  // namespace esp2cs::netsim
