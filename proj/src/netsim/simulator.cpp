#include "netsim/simulator.hpp"

#include <algorithm>

#include "contracts/sealing.hpp"
#include "ledger/encoding.hpp"

namespace esp2cs::netsim {

namespace {
std::string u128_to_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

std::string call_label(ContractId c, std::string_view fn) {
  return std::string(contract_name(c)) + "." + std::string(fn);
}
}  // namespace

KeyPair scenario_key(std::uint64_t seed, const std::string& name) {
  return KeyPair::from_label("esp2cs-sim/" + std::to_string(seed) + "/" + name);
}

consensus::GenesisConfig scenario_genesis(const Scenario& s) {
  consensus::GenesisConfig g;
  g.genesis_time = s.genesis_time;
  g.block_interval = s.block_interval;
  g.runtime.tx_gas_limit = s.tx_gas_limit;
  for (const auto& a : s.authorities) g.authorities.push_back(scenario_key(s.seed, a).public_key());
  for (const auto& a : s.accounts) {
    auto k = scenario_key(s.seed, a.name);
    g.accounts.push_back({k.address(), a.balance, k.public_key()});
  }
  if (s.payment_owner) g.payment_owner = scenario_key(s.seed, *s.payment_owner).address();
  return g;
}

Simulator::Simulator(Scenario scenario)
    : scenario_(std::move(scenario)),
      genesis_(scenario_genesis(scenario_)),
      net_rng_(scenario_.seed),
      actor_rng_(scenario_.seed ^ 0x9e3779b97f4a7c15ULL) {
  validate_scenario(scenario_);
  const auto names = scenario_.node_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    consensus::NodeConfig cfg;
    cfg.genesis = genesis_;
    cfg.name = names[i];
    cfg.key = scenario_key(scenario_.seed, names[i]);
    nodes_.push_back(std::make_unique<consensus::Node>(std::move(cfg)));
    node_index_[names[i]] = i;
  }
  for (auto& n : nodes_) {
    for (const auto& peer : names) n->add_peer(peer);
  }
  for (const auto& a : scenario_.accounts) {
    keys_.emplace(a.name, scenario_key(scenario_.seed, a.name));
    next_nonce_[a.name] = 0;
  }
  for (const auto& p : scenario_.partitions) {
    std::vector<int> group_of(nodes_.size(), -1);
    for (std::size_t g = 0; g < p.groups.size(); ++g) {
      for (const auto& n : p.groups[g]) group_of[node_index_.at(n)] = static_cast<int>(g);
    }
    partition_groups_.push_back(std::move(group_of));
    heals_.push_back({p.end_ms, std::nullopt, 1});
  }
}

const consensus::Node& Simulator::node(const std::string& name) const { return *nodes_.at(node_index_.at(name)); }

Address Simulator::address_of_actor(const std::string& name) const {
  if (auto it = keys_.find(name); it != keys_.end()) return it->second.address();
  return scenario_key(scenario_.seed, name).address();
}

void Simulator::schedule(std::uint64_t at, Payload p) { queue_.emplace(EventKey{at, seq_++}, std::move(p)); }

std::uint64_t Simulator::latency(std::size_t a, std::size_t b) {
  std::int64_t base = static_cast<std::int64_t>(scenario_.latency.base_ms);
  const auto& names = scenario_.node_names();
  for (const auto& l : scenario_.links) {
    if ((l.a == names[a] && l.b == names[b]) || (l.a == names[b] && l.b == names[a])) {
      base = static_cast<std::int64_t>(l.base_ms);
    }
  }
  const auto j = static_cast<std::int64_t>(scenario_.latency.jitter_ms);
  const auto draw = static_cast<std::int64_t>(net_rng_() % static_cast<std::uint64_t>(2 * j + 1));
  return static_cast<std::uint64_t>(std::max<std::int64_t>(1, base + draw - j));
}

std::optional<std::size_t> Simulator::partition_at(std::uint64_t t) const {
  for (std::size_t i = 0; i < scenario_.partitions.size(); ++i) {
    const auto& p = scenario_.partitions[i];
    if (p.start_ms <= t && t < p.end_ms) return i;
  }
  return std::nullopt;
}

bool Simulator::blocked(std::size_t a, std::size_t b, std::uint64_t t) const {
  auto p = partition_at(t);
  return p && partition_groups_[*p][a] != partition_groups_[*p][b];
}

void Simulator::flush(std::size_t from) {
  for (auto& out : nodes_[from]->take_outbox()) {
    std::vector<std::size_t> targets;
    if (out.to) {
      targets.push_back(node_index_.at(*out.to));
    } else {
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (i != from) targets.push_back(i);
      }
    }
    for (auto to : targets) {
      if (blocked(from, to, now_ms_)) {
        ++dropped_;
        continue;
      }
      schedule(now_ms_ + latency(from, to), Deliver{to, from, out.message});
    }
  }
}

void Simulator::warn(std::string text) { warnings_.push_back(format_ms(now_ms_) + " " + std::move(text)); }

Bytes Simulator::encode_args(const ScenarioAction& a) {
  Encoder enc;
  Address recipient;
  for (const auto& f : call_arguments(a.contract, a.function)) {
    const auto& v = a.args.at(std::string(f.name));
    switch (f.kind) {
      case ArgKind::U64: enc.u64(std::get<std::uint64_t>(v)); break;
      case ArgKind::Time: enc.u64(genesis_.genesis_time + std::get<std::uint64_t>(v)); break;
      case ArgKind::Account:
        recipient = address_of_actor(std::get<std::string>(v));
        enc.fixed(recipient);
        break;
      case ArgKind::Text: {
        const auto& text = std::get<std::string>(v);
        if (a.contract == ContractId::VehicularCommunication && a.function == "sendMessage") {
          // sealed client-side to the recipient's key
          const auto& to = std::get<std::string>(a.args.at("recipient"));
          Seed eph{};
          for (auto& b : eph) b = static_cast<std::uint8_t>(actor_rng_());
          enc.bytes(contracts::seal_deterministic(scenario_key(scenario_.seed, to).public_key(), as_bytes(text), eph));
        } else {
          enc.str(text);
        }
        break;
      }
      case ArgKind::Slots: {
        const auto& slots = std::get<SlotList>(v);
        enc.u64(slots.size());
        for (const auto& [s, e] : slots) enc.u64(genesis_.genesis_time + s).u64(genesis_.genesis_time + e);
        break;
      }
    }
  }
  return enc.take();
}

void Simulator::submit(const std::string& actor, const std::string& via_node, ContractId c, const std::string& fn,
                       Bytes args, std::uint64_t value, std::uint64_t gas_price) {
  const auto& key = keys_.at(actor);
  Transaction tx;
  tx.sender = key.public_key();
  tx.nonce = next_nonce_[actor];
  tx.contract = c;
  tx.function = fn;
  tx.args = std::move(args);
  tx.value = value;
  tx.gas_price_gwei = gas_price;
  tx.sign_with(key);

  auto idx = node_index_.at(via_node);
  if (auto rejected = nodes_[idx]->submit_transaction(tx)) {
    warn(actor + " " + call_label(c, fn) + " rejected by " + via_node + ": " +
         std::string(consensus::rejection_name(*rejected)));
  } else {
    ++next_nonce_[actor];
    tx_actor_[tx.hash()] = actor;
  }
  flush(idx);
}

void Simulator::perform(const ScenarioAction& a) {
  const auto price = a.gas_price_gwei.value_or(scenario_.gas_price_gwei);
  switch (a.kind) {
    case ActionKind::Call:
      submit(a.actor, scenario_.account(a.actor)->node, a.contract, a.function, encode_args(a), a.value, price);
      break;
    case ActionKind::Authorize: authorizations_.insert({a.actor, a.gateway}); break;
    case ActionKind::Arrive:
    case ActionKind::Depart: {
      const auto* gw = scenario_.gateway(a.gateway);
      const bool arrive = a.kind == ActionKind::Arrive;
      if (!authorizations_.count({a.actor, a.gateway})) {
        warn(a.actor + (arrive ? " arrived at " : " departed from ") + a.gateway +
             " without pre-authorization; no transaction emitted");
        break;
      }
      // proximity trigger: the gateway relays the vehicle-signed call
      submit(a.actor, gw->node, ContractId::AutomatedParkingPayments, arrive ? "startParking" : "endParking",
             arrive ? encode_u64(gw->space) : Bytes{}, 0, price);
      break;
    }
    case ActionKind::Equivocate: {
      auto& n = *nodes_.at(node_index_.at(a.actor));
      n.equivocate_next(a.group);
      break;
    }
  }
}

void Simulator::observe() {
  std::set<Digest> heads;
  for (const auto& n : nodes_) heads.insert(n->head().hash);
  const bool same = heads.size() == 1;
  if (same && !all_same_) convergence_ms_.push_back(now_ms_);
  all_same_ = same;
  for (std::size_t i = 0; i < heals_.size(); ++i) {
    const auto& p = scenario_.partitions[i];
    auto& h = heals_[i];
    if (p.start_ms <= now_ms_ && now_ms_ < p.end_ms) h.max_distinct_heads = std::max(h.max_distinct_heads, heads.size());
    if (now_ms_ >= p.end_ms && !h.converged_ms && same) h.converged_ms = now_ms_;
  }
}

SimulationReport Simulator::run() {
  const std::uint64_t end_ms = scenario_.duration_s * 1000;
  const std::uint64_t interval_ms = scenario_.block_interval * 1000;
  // slots first so that an action at a slot boundary lands after that slot's block
  for (std::uint64_t t = interval_ms; t <= end_ms; t += interval_ms) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) schedule(t, Slot{i});
  }
  for (std::size_t i = 0; i < scenario_.actions.size(); ++i) schedule(scenario_.actions[i].at_ms, Act{i});

  while (!queue_.empty()) {
    auto handle = queue_.extract(queue_.begin());
    now_ms_ = handle.key().first;
    auto& payload = handle.mapped();
    if (auto* d = std::get_if<Deliver>(&payload)) {
      ++delivered_;
      nodes_[d->to]->on_message(nodes_[d->from]->name(), d->message, node_time(now_ms_));
      flush(d->to);
    } else if (auto* s = std::get_if<Slot>(&payload)) {
      nodes_[s->node]->on_slot(node_time(now_ms_));
      flush(s->node);
    } else if (auto* a = std::get_if<Act>(&payload)) {
      perform(scenario_.actions[a->index]);
    }
    observe();
  }
  return build_report();
}

SimulationReport Simulator::build_report() const {
  SimulationReport r;
  r.scenario = scenario_.name;
  r.seed = scenario_.seed;
  r.duration_s = scenario_.duration_s;
  r.end_ms = now_ms_;
  r.messages_delivered = delivered_;
  r.messages_dropped = dropped_;
  r.convergence_ms = convergence_ms_;
  r.heals = heals_;
  r.warnings = warnings_;

  std::map<PublicKey, std::string> node_of_key;
  for (const auto& n : nodes_) node_of_key[n->key()->public_key()] = n->name();

  std::set<Digest> heads;
  for (const auto& n : nodes_) {
    const auto& head = n->head();
    heads.insert(head.hash);
    r.nodes.push_back({n->name(), n->is_authority(), head.block.header.height, head.hash.hex(),
                       head.block.header.state_root.hex(), n->reorg_count(), n->dropped_blocks()});
  }
  r.converged = heads.size() == 1;

  const auto& ref = *nodes_.front();
  r.reference_node = ref.name();
  const auto genesis_supply = ref.chain().genesis().state.total_supply();
  r.genesis_supply = u128_to_string(genesis_supply);

  for (const auto* sb : ref.chain().canonical_chain()) {
    const auto& h = sb->block.header;
    auto proposer = h.height == 0 ? std::string("-") : node_of_key.count(h.proposer) ? node_of_key.at(h.proposer)
                                                                                     : h.proposer.hex();
    r.chain.push_back({h.height, sb->hash.hex(), h.timestamp, proposer, sb->block.transactions.size(),
                       u128_to_string(sb->state.total_supply())});
    for (std::size_t i = 0; i < sb->block.transactions.size(); ++i) {
      const auto& tx = sb->block.transactions[i];
      const auto& rc = sb->receipts[i];
      ReceiptRow row;
      row.height = h.height;
      row.tx_hash = rc.tx_hash.hex();
      auto it = tx_actor_.find(rc.tx_hash);
      row.actor = it == tx_actor_.end() ? tx.sender_address().hex() : it->second;
      row.call = call_label(tx.contract, tx.function);
      row.status = rc.success ? "Success" : "Reverted(" + rc.revert_reason + ")";
      row.gas_used = rc.gas_used;
      row.fee_wei = rc.gas_used * tx.gas_price_gwei * runtime::kWeiPerGwei;
      row.return_hex = to_hex(rc.return_value);
      auto& total = r.gas_totals[row.call];
      ++total.count;
      total.gas += rc.gas_used;
      r.total_fees_wei += row.fee_wei;
      r.receipts.push_back(std::move(row));
    }
  }

  const auto& state = ref.head_state();
  auto balance = [&](const Address& a) {
    const auto* acct = state.find_account(a);
    return acct ? acct->balance : 0;
  };
  for (const auto& a : scenario_.accounts) r.balances[a.name] = balance(keys_.at(a.name).address());
  for (const auto& n : nodes_) r.balances[n->name()] = balance(n->key()->address());
  for (auto c : {ContractId::VehicularCommunication, ContractId::PaymentManagement,
                 ContractId::ParkingSpaceManagement, ContractId::AutomatedParkingPayments}) {
    r.balances["contract:" + std::string(contract_name(c))] = balance(runtime::contract_address(c));
  }

  for (const auto& n : nodes_) {
    for (const auto* sb : n->chain().canonical_chain()) {
      ++r.conservation_checked_blocks;
      auto supply = sb->state.total_supply();
      if (supply != genesis_supply) {
        r.conservation_ok = false;
        r.conservation_violations.push_back(n->name() + " height " + std::to_string(sb->block.header.height) +
                                            " supply " + u128_to_string(supply));
      }
    }
  }
  return r;
}

SimulationReport run_scenario(const Scenario& scenario) { return Simulator(scenario).run(); }

}  // namespace esp2cs::netsim
