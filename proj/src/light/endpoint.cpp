#include "light/endpoint.hpp"

#include <httplib.h>

#include "gateway/json_codec.hpp"
#include "gateway/service.hpp"

namespace esp2cs::light {

using gateway::Json;

namespace {
Json parse(const std::string& body) {
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw EndpointError(std::string("malformed gateway reply: ") + e.what());
  }
}

void expect_ok(int status, const std::string& body) {
  if (status >= 200 && status < 300) return;
  throw EndpointError("gateway returned " + std::to_string(status) + ": " + body);
}
}  // namespace

std::vector<BlockHeader> JsonEndpoint::headers(std::uint64_t from, std::size_t limit) {
  auto r = get("/v1/chain/headers", {{"from", std::to_string(from)}, {"limit", std::to_string(limit)}});
  expect_ok(r.status, r.body);
  std::vector<BlockHeader> out;
  try {
    auto body = parse(r.body);
    for (const auto& h : body.at("headers")) out.push_back(gateway::header_from_json(h));
  } catch (const EndpointError&) {
    throw;
  } catch (const std::exception& e) {
    throw EndpointError(std::string("bad header list: ") + e.what());
  }
  return out;
}

RelayResult JsonEndpoint::submit(const Transaction& tx) {
  auto r = post("/v1/transactions", Json{{"tx", to_hex(tx.encode())}}.dump());
  RelayResult out;
  out.status = r.status;
  auto j = parse(r.body);
  if (r.status == 202) {
    out.tx_hash = gateway::parse_digest(gateway::require_string(j, "tx_hash"));
  } else {
    out.error = j.value("error", std::string("HTTP ") + std::to_string(r.status));
  }
  return out;
}

std::optional<RemoteReceipt> JsonEndpoint::receipt(const Digest& tx_hash) {
  auto r = get("/v1/receipts/" + tx_hash.hex(), {});
  if (r.status == 404) return std::nullopt;
  expect_ok(r.status, r.body);
  try {
    auto j = parse(r.body);
    RemoteReceipt out;
    out.tx_hash = gateway::parse_digest(j.at("tx_hash").get<std::string>());
    out.success = j.at("status") == "Success";
    if (!out.success) out.revert_reason = j.at("revert_reason").get<std::string>();
    out.gas_used = j.at("gas_used").get<std::uint64_t>();
    out.return_value = from_hex(j.at("return_value").get<std::string>());
    out.block_height = j.at("block_height").get<std::uint64_t>();
    out.block_hash = gateway::parse_digest(j.at("block_hash").get<std::string>());
    return out;
  } catch (const EndpointError&) {
    throw;
  } catch (const std::exception& e) {
    throw EndpointError(std::string("bad receipt: ") + e.what());
  }
}

std::optional<RemoteProof> JsonEndpoint::proof(const Digest& tx_hash) {
  auto r = get("/v1/proofs/" + tx_hash.hex(), {});
  if (r.status == 404) return std::nullopt;
  expect_ok(r.status, r.body);
  try {
    auto j = parse(r.body);
    RemoteProof out;
    out.header_height = j.at("header_height").get<std::uint64_t>();
    out.block_hash = gateway::parse_digest(j.at("block_hash").get<std::string>());
    out.proof.leaf_index = j.at("leaf_index").get<std::uint64_t>();
    for (const auto& s : j.at("siblings")) out.proof.siblings.push_back(gateway::parse_digest(s.get<std::string>()));
    return out;
  } catch (const EndpointError&) {
    throw;
  } catch (const std::exception& e) {
    throw EndpointError(std::string("bad proof: ") + e.what());
  }
}

JsonEndpoint::Reply InProcessEndpoint::get(const std::string& path, const std::map<std::string, std::string>& query) {
  auto res = service_.handle({"GET", path, query, ""});
  return {res.status, res.body};
}

JsonEndpoint::Reply InProcessEndpoint::post(const std::string& path, const std::string& body) {
  auto res = service_.handle({"POST", path, {}, body});
  return {res.status, res.body};
}

struct HttpEndpoint::Impl {
  httplib::Client client;
  Impl(const std::string& host, int port) : client(host, port) {
    client.set_connection_timeout(2, 0);
    client.set_read_timeout(10, 0);
  }
};

HttpEndpoint::HttpEndpoint(std::string host, int port) : impl_(std::make_unique<Impl>(host, port)) {}
HttpEndpoint::~HttpEndpoint() = default;

JsonEndpoint::Reply HttpEndpoint::get(const std::string& path, const std::map<std::string, std::string>& query) {
  httplib::Params params(query.begin(), query.end());
  auto res = impl_->client.Get(path, params, httplib::Headers{});
  if (!res) throw EndpointError("gateway unreachable: " + httplib::to_string(res.error()));
  return {res->status, res->body};
}

JsonEndpoint::Reply HttpEndpoint::post(const std::string& path, const std::string& body) {
  auto res = impl_->client.Post(path, body, "application/json");
  if (!res) throw EndpointError("gateway unreachable: " + httplib::to_string(res.error()));
  return {res->status, res->body};
}

}  // namespace esp2cs::light
