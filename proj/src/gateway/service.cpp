#include "gateway/service.hpp"

#include <algorithm>

#include "consensus/messages.hpp"

namespace esp2cs::gateway {

namespace {

Response reply(int status, const Json& body) { return {status, body.dump()}; }

Response error(int status, std::string_view code, std::string_view detail = {}) {
  Json j{{"error", code}};
  if (!detail.empty()) j["detail"] = detail;
  return reply(status, j);
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < path.size()) {
    auto j = path.find('/', i);
    if (j == std::string_view::npos) j = path.size();
    if (j > i) out.emplace_back(path.substr(i, j - i));
    i = j + 1;
  }
  return out;
}

const std::string* query(const Request& req, const char* name) {
  auto it = req.query.find(name);
  return it == req.query.end() ? nullptr : &it->second;
}

const std::string& require_query(const Request& req, const char* name) {
  const auto* v = query(req, name);
  if (!v) throw CodecError(std::string("missing query parameter '") + name + "'");
  return *v;
}

int rejection_status(consensus::Rejection r) {
  switch (r) {
    case consensus::Rejection::BadSignature: return 400;
    case consensus::Rejection::PoolFull: return 503;
    default: return 409;
  }
}

}  // namespace

LocalNodeHost::LocalNodeHost(consensus::NodeConfig config)
    : node_(std::move(config)), now_(node_.genesis().genesis_time) {}

bool LocalNodeHost::with_node(const std::function<void(consensus::Node&)>& f) {
  if (!reachable_.load()) return false;
  std::vector<consensus::Outgoing> out;
  std::function<void(std::vector<consensus::Outgoing>)> sink;
  {
    std::lock_guard lock(mu_);
    f(node_);
    out = node_.take_outbox();
    sink = sink_;
  }
  if (sink && !out.empty()) sink(std::move(out));
  return true;
}

void LocalNodeHost::tick(std::uint64_t t) {
  set_now(t);
  with_node([t](consensus::Node& n) { n.on_slot(t); });
}

void LocalNodeHost::on_outbox(std::function<void(std::vector<consensus::Outgoing>)> sink) {
  std::lock_guard lock(mu_);
  sink_ = std::move(sink);
}

std::uint64_t liveness_window(const consensus::Node& node) {
  return 2 * node.authorities().size() * node.authorities().block_interval();
}

Response Service::handle(const Request& req) {
  Response out = error(503, "NodeUnavailable");
  host_.with_node([&](Node& node) {
    try {
      out = route(req, node);
    } catch (const CodecError& e) {
      out = error(400, "BadRequest", e.what());
    } catch (const nlohmann::json::exception& e) {
      out = error(400, "BadRequest", e.what());
    } catch (const Error& e) {
      out = error(400, "BadRequest", e.what());
    }
  });
  return out;
}

Response Service::route(const Request& req, Node& node) {
  const auto parts = split_path(req.path);
  if (parts.size() < 2 || parts[0] != "v1") return error(404, "NotFound");
  const auto& area = parts[1];
  const bool get = req.method == "GET";
  const bool post = req.method == "POST";
  const auto n = parts.size();

  if (area == "transactions" && n == 2) return post ? submit_transaction(req, node) : error(405, "MethodNotAllowed");
  if (area == "p2p" && n == 2) return post ? p2p(req, node) : error(405, "MethodNotAllowed");
  if (!get) return error(405, "MethodNotAllowed");

  if (area == "receipts" && n == 3) return receipt(parts[2], node);
  if (area == "proofs" && n == 3) return proof(parts[2], node);
  if (area == "chain" && n == 3 && parts[2] == "headers") return headers(req, node);
  if (area == "chain" && n == 3 && parts[2] == "head") return reply(200, header_to_json(node.head().block.header));
  if (area == "messages" && n == 3) return parts[2] == "unread" ? unread(req, node) : message(parts[2], node);
  if (area == "parking" && n == 3 && parts[2] == "spaces") return spaces(req, node);
  if (area == "parking" && n == 3 && parts[2] == "sessions") return sessions(req, node);
  if (area == "analytics" && n == 3 && parts[2] == "occupancy") return occupancy_report(req, node);
  if (area == "admin" && n == 3 && parts[2] == "status") return admin_status(node);
  if (area == "accounts" && n == 3) return account(parts[2], node);
  if (area == "accounts" && n == 4 && parts[3] == "transactions") return account_transactions(parts[2], node);
  return error(404, "NotFound");
}

Response Service::submit_transaction(const Request& req, Node& node) {
  auto body = Json::parse(req.body);
  auto tx = decode_transaction(from_hex(require_string(body, "tx")));
  if (auto rejected = node.submit_transaction(tx)) {
    return error(rejection_status(*rejected), consensus::rejection_name(*rejected));
  }
  return reply(202, Json{{"tx_hash", tx.hash().hex()}});
}

Response Service::receipt(const std::string& hash, Node& node) {
  auto h = parse_digest(hash);
  auto loc = node.chain().find_tx(h);
  if (!loc) {
    return reply(404, Json{{"error", "NotFound"}, {"pending", node.mempool().contains(h)}});
  }
  const auto* block = node.chain().find(loc->block_hash);
  return reply(200, receipt_to_json(block->receipts[loc->index], *loc));
}

Response Service::headers(const Request& req, Node& node) {
  const auto* from_q = query(req, "from");
  const auto* limit_q = query(req, "limit");
  const std::uint64_t from = from_q ? parse_u64(*from_q) : 0;
  const std::uint64_t limit = std::clamp<std::uint64_t>(limit_q ? parse_u64(*limit_q) : 256, 1, 1024);
  Json list = Json::array();
  for (auto h = from; h <= node.chain().height() && list.size() < limit; ++h) {
    list.push_back(header_to_json(node.chain().at_height(h)->block.header));
  }
  return reply(200, Json{{"headers", list}, {"head_height", node.chain().height()}});
}

Response Service::proof(const std::string& hash, Node& node) {
  auto loc = node.chain().find_tx(parse_digest(hash));
  if (!loc) return error(404, "NotFound");
  const auto* block = node.chain().find(loc->block_hash);
  auto p = merkle_prove(block->block.tx_leaves(), loc->index);
  return reply(200, proof_to_json(loc->height, loc->block_hash, p));
}

Response Service::unread(const Request& req, Node& node) {
  auto who = parse_address(require_query(req, "account"));
  auto raw = node.executor().call_view(node.head_state(), ContractId::VehicularCommunication, "getUnreadMessages", {},
                                       host_.now(), who);
  Json list = Json::array();
  for (const auto& m : contracts::decode_messages(raw.value)) list.push_back(message_to_json(m));
  return reply(200, Json{{"account", who.hex()}, {"messages", list}, {"gas_used", raw.gas_used}});
}

Response Service::message(const std::string& id, Node& node) {
  try {
    auto raw = node.executor().call_view(node.head_state(), ContractId::VehicularCommunication, "readMessage",
                                         encode_u64(parse_u64(id)), host_.now());
    Decoder d(raw.value);
    return reply(200, message_to_json(contracts::decode_message(d)));
  } catch (const runtime::Revert& e) {
    return error(404, e.what());
  }
}

Response Service::spaces(const Request& req, Node& node) {
  const auto& state = node.head_state();
  const auto* from_q = query(req, "available_from");
  const auto* until_q = query(req, "until");
  if (static_cast<bool>(from_q) != static_cast<bool>(until_q)) {
    throw CodecError("available_from and until go together");
  }
  std::optional<std::pair<std::uint64_t, std::uint64_t>> window;
  if (from_q) window.emplace(parse_u64(*from_q), parse_u64(*until_q));

  Json slot_spaces = Json::array();
  for (std::uint64_t id = 0; id < contracts::psm::space_count(state); ++id) {
    auto s = contracts::psm::space(state, id);
    if (!s) continue;
    auto j = space_to_json(*s);
    j["available"] = window ? Json(contracts::psm::available(*s, host_.now(), window->first, window->second))
                            : Json(nullptr);
    slot_spaces.push_back(std::move(j));
  }
  Json metered = Json::array();
  for (std::uint64_t id = 0; id < contracts::app::space_count(state); ++id) {
    if (auto s = contracts::app::space(state, id)) metered.push_back(metered_space_to_json(*s));
  }
  return reply(200, Json{{"now", host_.now()}, {"spaces", slot_spaces}, {"metered_spaces", metered}});
}

Response Service::sessions(const Request& req, Node& node) {
  auto vehicle = parse_address(require_query(req, "vehicle"));
  const auto& state = node.head_state();
  auto s = contracts::app::session(state, vehicle);
  Json j{{"vehicle", vehicle.hex()}, {"now", host_.now()}};
  if (s && s->active) {
    j["session"] = session_to_json(*s);
    j["amount_due"] = amount(contracts::app::amount_due(state, vehicle, host_.now()).value_or(0));
  } else {
    j["session"] = nullptr;
    j["amount_due"] = amount(0);
  }
  return reply(200, j);
}

Response Service::occupancy_report(const Request& req, Node& node) {
  const auto id = parse_u64(require_query(req, "space_id"));
  const auto from = parse_u64(require_query(req, "from"));
  const auto to = parse_u64(require_query(req, "to"));
  if (id >= contracts::app::space_count(node.head_state())) return error(404, "UnknownSpace");
  if (from >= to) return error(400, "BadWindow");
  occupancy_.refresh(node.chain());
  auto r = occupancy(occupancy_.sessions(), id, from, to, host_.now());
  return reply(200, Json{{"space_id", r.space_id},
                         {"from", r.from},
                         {"to", r.to},
                         {"occupied_seconds", r.occupied_seconds},
                         {"sessions_count", r.sessions_count},
                         {"revenue", amount(r.revenue)}});
}

Response Service::admin_status(Node& node) {
  const auto now = host_.now();
  const auto window = liveness_window(node);
  const auto& head = node.head();
  Json peers = Json::array();
  for (const auto& p : node.peers()) {
    auto it = node.peer_last_seen().find(p);
    const bool seen = it != node.peer_last_seen().end();
    peers.push_back({{"name", p},
                     {"last_seen", seen ? Json(it->second) : Json(nullptr)},
                     {"online", seen && now <= it->second + window}});
  }
  Json auths = Json::array();
  for (const auto& k : node.authorities().keys()) {
    auto it = node.authority_last_block().find(k);
    const bool seen = it != node.authority_last_block().end();
    auths.push_back({{"public_key", k.hex()},
                     {"last_block_time", seen ? Json(it->second) : Json(nullptr)},
                     {"online", seen && now <= it->second + window}});
  }
  return reply(200, Json{{"node", node.name()},
                         {"authority", node.is_authority()},
                         {"now", now},
                         {"height", head.block.header.height},
                         {"head", head.hash.hex()},
                         {"state_root", head.block.header.state_root.hex()},
                         {"last_block_time", head.block.header.timestamp},
                         {"mempool_size", node.mempool().size()},
                         {"orphans", node.orphan_count()},
                         {"reorgs", node.reorg_count()},
                         {"peers", peers},
                         {"authorities", auths}});
}

Response Service::account(const std::string& addr, Node& node) {
  auto a = parse_address(addr);
  const auto* acct = node.head_state().find_account(a);
  return reply(200, Json{{"address", a.hex()},
                         {"balance", amount(acct ? acct->balance : 0)},
                         {"nonce", acct ? acct->nonce : 0},
                         {"public_key", acct && acct->public_key ? Json(acct->public_key->hex()) : Json(nullptr)}});
}

Response Service::account_transactions(const std::string& addr, Node& node) {
  auto a = parse_address(addr);
  Json list = Json::array();
  for (const auto* b : node.chain().canonical_chain()) {
    for (std::size_t i = 0; i < b->block.transactions.size(); ++i) {
      const auto& tx = b->block.transactions[i];
      if (tx.sender_address() != a) continue;
      auto j = receipt_to_json(b->receipts[i], {b->hash, b->block.header.height, i});
      j["contract"] = contract_name(tx.contract);
      j["function"] = tx.function;
      j["value"] = amount(tx.value);
      j["gas_price_gwei"] = tx.gas_price_gwei;
      j["fee"] = amount(b->receipts[i].gas_used * tx.gas_price_gwei * runtime::kWeiPerGwei);
      j["timestamp"] = b->block.header.timestamp;
      list.push_back(std::move(j));
    }
  }
  return reply(200, Json{{"address", a.hex()}, {"transactions", list}});
}

Response Service::p2p(const Request& req, Node& node) {
  auto body = Json::parse(req.body);
  auto from = require_string(body, "from");
  auto msg = consensus::decode_message(from_hex(require_string(body, "message")));
  node.add_peer(from);
  node.on_message(from, msg, host_.now());
  return reply(202, Json{{"ok", true}});
}

}  // namespace esp2cs::gateway
