#include "netsim/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "contracts/registry.hpp"

namespace esp2cs::netsim {

namespace {

[[noreturn]] void fail_at(const YAML::Node& n, const std::string& what) {
  throw ScenarioError("scenario line " + std::to_string(n.Mark().line + 1) + ": " + what);
}

template <typename T>
T get(const YAML::Node& parent, const char* name, T fallback) {
  auto v = parent[name];
  if (!v) return fallback;
  try {
    return v.as<T>();
  } catch (const YAML::Exception&) {
    fail_at(v, std::string("bad value for '") + name + "'");
  }
}

template <typename T>
T require(const YAML::Node& parent, const char* name) {
  auto v = parent[name];
  if (!v) fail_at(parent, std::string("missing '") + name + "'");
  return get<T>(parent, name, T{});
}

std::uint64_t seconds_to_ms(const YAML::Node& v, const char* what) {
  double s = 0;
  try {
    s = v.as<double>();
  } catch (const YAML::Exception&) {
    fail_at(v, std::string("bad time for '") + what + "'");
  }
  if (!(s >= 0) || s > 1e12) fail_at(v, std::string("time out of range for '") + what + "'");
  return static_cast<std::uint64_t>(std::llround(s * 1000.0));
}

std::vector<std::string> string_list(const YAML::Node& v, const char* what) {
  if (!v) return {};
  if (!v.IsSequence()) fail_at(v, std::string("'") + what + "' must be a list");
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(e.as<std::string>());
  return out;
}

const std::set<std::string>& known_keys(const char* section) {
  static const std::map<std::string, std::set<std::string>> keys{
      {"root",
       {"name", "seed", "duration", "genesis_time", "block_interval", "tx_gas_limit", "gas_price_gwei", "topology",
        "accounts", "payment_owner", "gateways", "actions", "partitions"}},
      {"topology", {"authorities", "observers", "latency", "links"}},
      {"account", {"name", "role", "balance", "node"}},
      {"gateway", {"name", "space", "node"}},
      {"action",
       {"at", "actor", "call", "args", "value", "gas_price_gwei", "authorize", "arrive", "depart", "equivocate"}},
      {"partition", {"start", "end", "groups"}},
  };
  return keys.at(section);
}

void check_keys(const YAML::Node& n, const char* section) {
  if (!n.IsMap()) fail_at(n, std::string(section) + " entry must be a mapping");
  const auto& allowed = known_keys(section);
  for (const auto& kv : n) {
    auto k = kv.first.as<std::string>();
    if (!allowed.count(k)) fail_at(kv.first, "unknown key '" + k + "' in " + section);
  }
}

ArgValue parse_arg(const YAML::Node& v, ArgKind kind, std::string_view name) {
  const std::string n(name);
  try {
    switch (kind) {
      case ArgKind::U64:
      case ArgKind::Time: return v.as<std::uint64_t>();
      case ArgKind::Text:
      case ArgKind::Account: return v.as<std::string>();
      case ArgKind::Slots: {
        if (!v.IsSequence()) fail_at(v, "'" + n + "' must be a list of [start, end] pairs");
        SlotList slots;
        for (const auto& p : v) {
          if (!p.IsSequence() || p.size() != 2) fail_at(p, "slot must be [start, end]");
          slots.emplace_back(p[0].as<std::uint64_t>(), p[1].as<std::uint64_t>());
        }
        return slots;
      }
    }
  } catch (const YAML::Exception&) {
    fail_at(v, "bad value for argument '" + n + "'");
  }
  fail_at(v, "unsupported argument");
}

ScenarioAction parse_action(const YAML::Node& a) {
  check_keys(a, "action");
  ScenarioAction act;
  act.line = a.Mark().line + 1;
  if (!a["at"]) fail_at(a, "action missing 'at'");
  act.at_ms = seconds_to_ms(a["at"], "at");
  act.actor = require<std::string>(a, "actor");

  int kinds = 0;
  if (auto c = a["call"]) {
    ++kinds;
    act.kind = ActionKind::Call;
    auto target = c.as<std::string>();
    auto dot = target.find('.');
    if (dot == std::string::npos) fail_at(c, "call must be Contract.function");
    auto contract = parse_contract(target.substr(0, dot));
    if (!contract) fail_at(c, "unknown contract '" + target.substr(0, dot) + "'");
    act.contract = *contract;
    act.function = target.substr(dot + 1);
    if (!contracts::find_function(act.contract, act.function)) fail_at(c, "unknown function '" + target + "'");
    auto args = a["args"];
    if (args && !args.IsMap()) fail_at(args, "'args' must be a mapping");
    auto fields = call_arguments(act.contract, act.function);
    for (const auto& f : fields) {
      auto v = args ? args[std::string(f.name)] : YAML::Node();
      if (!v) fail_at(a, "missing argument '" + std::string(f.name) + "' for " + target);
      act.args[std::string(f.name)] = parse_arg(v, f.kind, f.name);
    }
    if (args) {
      for (const auto& kv : args) {
        auto k = kv.first.as<std::string>();
        if (std::none_of(fields.begin(), fields.end(), [&](const ArgField& f) { return f.name == k; })) {
          fail_at(kv.first, "unexpected argument '" + k + "' for " + target);
        }
      }
    }
    act.value = get<std::uint64_t>(a, "value", 0);
    if (a["gas_price_gwei"]) act.gas_price_gwei = get<std::uint64_t>(a, "gas_price_gwei", 0);
  }
  if (auto g = a["authorize"]) {
    ++kinds;
    act.kind = ActionKind::Authorize;
    act.gateway = g.as<std::string>();
  }
  if (auto g = a["arrive"]) {
    ++kinds;
    act.kind = ActionKind::Arrive;
    act.gateway = g.as<std::string>();
  }
  if (auto g = a["depart"]) {
    ++kinds;
    act.kind = ActionKind::Depart;
    act.gateway = g.as<std::string>();
  }
  if (auto g = a["equivocate"]) {
    ++kinds;
    act.kind = ActionKind::Equivocate;
    act.group = string_list(g, "equivocate");
  }
  if (kinds != 1) fail_at(a, "action needs exactly one of call/authorize/arrive/depart/equivocate");
  return act;
}

}  // namespace

std::vector<ArgField> call_arguments(ContractId contract, std::string_view f) {
  using K = ArgKind;
  switch (contract) {
    case ContractId::VehicularCommunication:
      if (f == "publishMessage") return {{"content", K::Text}};
      if (f == "readMessage") return {{"id", K::U64}};
      if (f == "sendMessage") return {{"recipient", K::Account}, {"content", K::Text}};
      return {};
    case ContractId::PaymentManagement:
      if (f == "requestRefund") return {{"amount", K::U64}};
      if (f == "processRefund") return {{"user", K::Account}};
      return {};
    case ContractId::ParkingSpaceManagement:
      if (f == "registerParkingSpace") return {{"location", K::Text}, {"rate", K::U64}, {"slots", K::Slots}};
      if (f == "bookParkingSpace" || f == "isAvailable") {
        return {{"space_id", K::U64}, {"from", K::Time}, {"until", K::Time}};
      }
      if (f == "releaseParkingSpace" || f == "withdraw") return {{"space_id", K::U64}};
      return {};
    case ContractId::AutomatedParkingPayments:
      if (f == "registerParkingSpace") return {{"rate_per_second", K::U64}};
      if (f == "startParking") return {{"space_id", K::U64}};
      return {};
  }
  return {};
}

std::vector<std::string> Scenario::node_names() const {
  auto out = authorities;
  out.insert(out.end(), observers.begin(), observers.end());
  return out;
}

const ScenarioAccount* Scenario::account(const std::string& n) const {
  for (const auto& a : accounts) {
    if (a.name == n) return &a;
  }
  return nullptr;
}

const ScenarioGateway* Scenario::gateway(const std::string& n) const {
  for (const auto& g : gateways) {
    if (g.name == n) return &g;
  }
  return nullptr;
}

void validate_scenario(const Scenario& s) {
  auto err = [](const std::string& what, int line = 0) {
    throw ScenarioError(line ? "scenario line " + std::to_string(line) + ": " + what : "scenario: " + what);
  };
  if (s.authorities.empty()) err("topology needs at least one authority");
  if (s.block_interval == 0) err("block_interval must be positive");
  if (s.duration_s == 0) err("duration must be positive");

  std::set<std::string> names;
  auto declare = [&](const std::string& n) {
    if (n.empty()) err("empty name");
    if (!names.insert(n).second) err("duplicate name '" + n + "'");
  };
  const auto nodes = s.node_names();
  std::set<std::string> node_set(nodes.begin(), nodes.end());
  for (const auto& n : nodes) declare(n);
  for (const auto& a : s.accounts) {
    declare(a.name);
    if (!node_set.count(a.node)) err("account '" + a.name + "' uses unknown node '" + a.node + "'");
  }
  for (const auto& g : s.gateways) {
    declare(g.name);
    if (!node_set.count(g.node)) err("gateway '" + g.name + "' uses unknown node '" + g.node + "'");
  }
  if (s.payment_owner && !s.account(*s.payment_owner)) err("payment_owner is not a declared account");
  for (const auto& l : s.links) {
    if (!node_set.count(l.a) || !node_set.count(l.b)) err("link between unknown nodes");
  }

  std::uint64_t prev = 0;
  for (const auto& a : s.actions) {
    if (a.at_ms < prev) err("actions must be sorted by time", a.line);
    prev = a.at_ms;
    if (a.at_ms >= s.duration_s * 1000) err("action after end of scenario", a.line);
    if (a.kind == ActionKind::Equivocate) {
      if (std::find(s.authorities.begin(), s.authorities.end(), a.actor) == s.authorities.end()) {
        err("equivocate actor must be an authority", a.line);
      }
      for (const auto& n : a.group) {
        if (!node_set.count(n)) err("unknown node '" + n + "' in equivocate group", a.line);
      }
      continue;
    }
    if (!s.account(a.actor)) err("undeclared actor '" + a.actor + "'", a.line);
    if (a.kind != ActionKind::Call && !s.gateway(a.gateway)) err("unknown gateway '" + a.gateway + "'", a.line);
    if (a.kind == ActionKind::Call) {
      for (const auto& f : call_arguments(a.contract, a.function)) {
        auto it = a.args.find(std::string(f.name));
        if (it == a.args.end()) err("missing argument '" + std::string(f.name) + "'", a.line);
        if (f.kind == ArgKind::Account && !s.account(std::get<std::string>(it->second))) {
          err("argument '" + std::string(f.name) + "' names an undeclared account", a.line);
        }
      }
    }
  }

  auto parts = s.partitions;
  std::sort(parts.begin(), parts.end(), [](const Partition& a, const Partition& b) { return a.start_ms < b.start_ms; });
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    if (p.start_ms >= p.end_ms) err("partition start must precede end");
    if (i > 0 && p.start_ms < parts[i - 1].end_ms) err("overlapping partition windows");
    std::multiset<std::string> seen;
    for (const auto& g : p.groups) {
      for (const auto& n : g) {
        if (!node_set.count(n)) err("unknown node '" + n + "' in partition");
        seen.insert(n);
      }
    }
    if (seen.size() != node_set.size() || std::set<std::string>(seen.begin(), seen.end()).size() != seen.size()) {
      err("partition groups must cover every node exactly once");
    }
  }
}

Scenario parse_scenario_yaml(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ScenarioError("scenario line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) throw ScenarioError("scenario: top level must be a mapping");
  check_keys(root, "root");

  Scenario s;
  s.name = get<std::string>(root, "name", s.name);
  s.seed = get<std::uint64_t>(root, "seed", s.seed);
  s.duration_s = get<std::uint64_t>(root, "duration", s.duration_s);
  s.genesis_time = get<std::uint64_t>(root, "genesis_time", s.genesis_time);
  s.block_interval = get<std::uint64_t>(root, "block_interval", s.block_interval);
  s.tx_gas_limit = get<std::uint64_t>(root, "tx_gas_limit", s.tx_gas_limit);
  s.gas_price_gwei = get<std::uint64_t>(root, "gas_price_gwei", s.gas_price_gwei);

  auto topo = root["topology"];
  if (!topo) fail_at(root, "missing 'topology'");
  check_keys(topo, "topology");
  s.authorities = string_list(topo["authorities"], "authorities");
  s.observers = string_list(topo["observers"], "observers");
  if (auto lat = topo["latency"]) {
    s.latency.base_ms = get<std::uint64_t>(lat, "base_ms", s.latency.base_ms);
    s.latency.jitter_ms = get<std::uint64_t>(lat, "jitter_ms", s.latency.jitter_ms);
  }
  if (auto links = topo["links"]) {
    for (const auto& l : links) {
      auto ends = string_list(l["between"], "between");
      if (ends.size() != 2) fail_at(l, "link needs 'between: [a, b]'");
      s.links.push_back({ends[0], ends[1], require<std::uint64_t>(l, "base_ms")});
    }
  }
  const std::string default_node = s.authorities.empty() ? "" : s.authorities.front();

  if (auto accts = root["accounts"]) {
    for (const auto& a : accts) {
      check_keys(a, "account");
      ScenarioAccount acct;
      acct.name = require<std::string>(a, "name");
      acct.role = get<std::string>(a, "role", acct.role);
      acct.balance = get<std::uint64_t>(a, "balance", 0);
      acct.node = get<std::string>(a, "node", default_node);
      s.accounts.push_back(std::move(acct));
    }
  }
  if (root["payment_owner"]) s.payment_owner = root["payment_owner"].as<std::string>();
  if (auto gws = root["gateways"]) {
    for (const auto& g : gws) {
      check_keys(g, "gateway");
      s.gateways.push_back(
          {require<std::string>(g, "name"), get<std::uint64_t>(g, "space", 0), get<std::string>(g, "node", default_node)});
    }
  }
  if (auto acts = root["actions"]) {
    if (!acts.IsSequence()) fail_at(acts, "'actions' must be a list");
    for (const auto& a : acts) s.actions.push_back(parse_action(a));
  }
  if (auto parts = root["partitions"]) {
    for (const auto& p : parts) {
      check_keys(p, "partition");
      Partition part;
      if (!p["start"] || !p["end"]) fail_at(p, "partition needs 'start' and 'end'");
      part.start_ms = seconds_to_ms(p["start"], "start");
      part.end_ms = seconds_to_ms(p["end"], "end");
      if (!p["groups"] || !p["groups"].IsSequence()) fail_at(p, "partition needs 'groups'");
      for (const auto& g : p["groups"]) part.groups.push_back(string_list(g, "group"));
      s.partitions.push_back(std::move(part));
    }
  }
  validate_scenario(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot read scenario file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario_yaml(ss.str());
}

}  // namespace esp2cs::netsim
