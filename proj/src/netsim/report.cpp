#include "netsim/report.hpp"

#include <json.hpp>

#include <sstream>

namespace esp2cs::netsim {

std::string format_ms(std::uint64_t ms) {
  std::ostringstream os;
  os << ms / 1000 << '.';
  auto frac = ms % 1000;
  os << static_cast<char>('0' + frac / 100) << static_cast<char>('0' + frac / 10 % 10)
     << static_cast<char>('0' + frac % 10) << 's';
  return os.str();
}

std::string SimulationReport::to_text() const {
  std::ostringstream os;
  os << "scenario " << scenario << " seed=" << seed << " duration=" << duration_s << "s end=" << format_ms(end_ms)
     << "\n";
  os << "messages delivered=" << messages_delivered << " dropped=" << messages_dropped << "\n";
  os << "nodes:\n";
  for (const auto& n : nodes) {
    os << "  " << n.name << (n.authority ? "" : " (observer)") << " height=" << n.height << " head=" << n.head_hash
       << " state_root=" << n.state_root << " reorgs=" << n.reorgs << " dropped_blocks=" << n.dropped_blocks << "\n";
  }
  os << "converged: " << (converged ? "yes" : "no") << "\n";
  for (const auto& h : heals) {
    os << "  heal at " << format_ms(h.heal_ms) << ": heads during split=" << h.max_distinct_heads << ", ";
    if (h.converged_ms) {
      os << "converged at " << format_ms(*h.converged_ms) << " (+" << format_ms(*h.converged_ms - h.heal_ms) << ")\n";
    } else {
      os << "never converged\n";
    }
  }
  os << "chain (" << reference_node << "):\n";
  for (const auto& b : chain) {
    if (b.tx_count == 0 && b.height != 0) continue;
    os << "  #" << b.height << " t=" << b.timestamp << " proposer=" << b.proposer << " txs=" << b.tx_count
       << " hash=" << b.hash << "\n";
  }
  os << "receipts:\n";
  for (const auto& r : receipts) {
    os << "  #" << r.height << " " << r.actor << " " << r.call << " " << r.status << " gas=" << r.gas_used
       << " fee=" << r.fee_wei << " tx=" << r.tx_hash << "\n";
  }
  os << "gas totals:\n";
  for (const auto& [call, t] : gas_totals) os << "  " << call << " count=" << t.count << " gas=" << t.gas << "\n";
  os << "  fees=" << total_fees_wei << "\n";
  os << "balances:\n";
  for (const auto& [label, bal] : balances) os << "  " << label << " " << bal << "\n";
  os << "conservation: " << (conservation_ok ? "ok" : "VIOLATED") << " genesis_supply=" << genesis_supply
     << " checked_blocks=" << conservation_checked_blocks << "\n";
  for (const auto& v : conservation_violations) os << "  " << v << "\n";
  os << "warnings:" << (warnings.empty() ? " none" : "") << "\n";
  for (const auto& w : warnings) os << "  " << w << "\n";
  return os.str();
}

std::string SimulationReport::to_json() const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["scenario"] = scenario;
  j["seed"] = seed;
  j["duration_s"] = duration_s;
  j["end_ms"] = end_ms;
  j["messages"] = {{"delivered", messages_delivered}, {"dropped", messages_dropped}};
  j["nodes"] = ordered_json::array();
  for (const auto& n : nodes) {
    j["nodes"].push_back({{"name", n.name},
                          {"authority", n.authority},
                          {"height", n.height},
                          {"head", n.head_hash},
                          {"state_root", n.state_root},
                          {"reorgs", n.reorgs},
                          {"dropped_blocks", n.dropped_blocks}});
  }
  j["converged"] = converged;
  j["convergence_ms"] = convergence_ms;
  j["heals"] = ordered_json::array();
  for (const auto& h : heals) {
    ordered_json e{{"heal_ms", h.heal_ms}, {"max_distinct_heads", h.max_distinct_heads}};
    e["converged_ms"] = h.converged_ms ? ordered_json(*h.converged_ms) : ordered_json(nullptr);
    j["heals"].push_back(e);
  }
  j["reference_node"] = reference_node;
  j["chain"] = ordered_json::array();
  for (const auto& b : chain) {
    j["chain"].push_back({{"height", b.height},
                          {"hash", b.hash},
                          {"timestamp", b.timestamp},
                          {"proposer", b.proposer},
                          {"txs", b.tx_count},
                          {"supply", b.supply}});
  }
  j["receipts"] = ordered_json::array();
  for (const auto& r : receipts) {
    j["receipts"].push_back({{"height", r.height},
                             {"tx_hash", r.tx_hash},
                             {"actor", r.actor},
                             {"call", r.call},
                             {"status", r.status},
                             {"gas_used", r.gas_used},
                             {"fee_wei", r.fee_wei},
                             {"return", r.return_hex}});
  }
  j["gas_totals"] = ordered_json::object();
  for (const auto& [call, t] : gas_totals) j["gas_totals"][call] = {{"count", t.count}, {"gas", t.gas}};
  j["total_fees_wei"] = total_fees_wei;
  j["balances"] = ordered_json::object();
  for (const auto& [label, bal] : balances) j["balances"][label] = bal;
  j["conservation"] = {{"ok", conservation_ok},
                       {"genesis_supply", genesis_supply},
                       {"checked_blocks", conservation_checked_blocks},
                       {"violations", conservation_violations}};
  j["warnings"] = warnings;
  return j.dump(2) + "\n";
}

}  // namespace esp2cs::netsim
