#include "esp2cs/esp2cs.h"

#include <httplib.h>
#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#include "bench/gas_bench.hpp"
#include "consensus/genesis.hpp"
#include "gateway/http_server.hpp"
#include "gateway/live_node.hpp"
#include "gateway/service.hpp"
#include "ledger/key_file.hpp"
#include "light/light_client.hpp"
#include "netsim/simulator.hpp"

using namespace esp2cs;

struct esp2cs_node {
  std::unique_ptr<gateway::LiveNode> live;
  std::unique_ptr<gateway::Service> service;
  std::unique_ptr<gateway::HttpServer> http;
  std::string listen_host;
  int listen_port = 0;
  int bound_port = 0;
};

namespace {

thread_local std::string last_error;

char* copy_out(const std::string& s) {
  auto* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

esp2cs_status fail(esp2cs_status st, std::string message) {
  last_error = std::move(message);
  return st;
}

/// Maps core exceptions onto status codes at the boundary.
template <typename F>
esp2cs_status guarded(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const KeyFileError& e) {
    return fail(ESP2CS_ERR_CONFIG, e.what());
  } catch (const consensus::ConfigError& e) {
    return fail(ESP2CS_ERR_CONFIG, e.what());
  } catch (const netsim::ScenarioError& e) {
    return fail(ESP2CS_ERR_CONFIG, e.what());
  } catch (const light::EndpointError& e) {
    return fail(ESP2CS_ERR_NETWORK, e.what());
  } catch (const Error& e) {
    return fail(ESP2CS_ERR_REJECTED, e.what());
  } catch (const std::exception& e) {
    return fail(ESP2CS_ERR_INTERNAL, e.what());
  }
}

bool blank(const char* s) { return s == nullptr || *s == '\0'; }

}  // namespace

extern "C" {

const char* esp2cs_status_name(esp2cs_status status) {
  switch (status) {
    case ESP2CS_OK: return "ok";
    case ESP2CS_ERR_ARGUMENT: return "invalid argument";
    case ESP2CS_ERR_IO: return "io error";
    case ESP2CS_ERR_CONFIG: return "configuration error";
    case ESP2CS_ERR_NETWORK: return "network error";
    case ESP2CS_ERR_REJECTED: return "rejected";
    case ESP2CS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* esp2cs_last_error(void) { return last_error.c_str(); }

void esp2cs_string_free(char* s) { std::free(s); }

const char* esp2cs_version(void) { return "0.1.0"; }

esp2cs_status esp2cs_keygen(const char* path, const char* seed_label, char** address_hex) {
  if (blank(path)) return fail(ESP2CS_ERR_ARGUMENT, "key path is required");
  return guarded([&] {
    auto key = seed_label ? KeyPair::from_label(std::string("keygen/") + seed_label) : KeyPair::generate();
    save_key_file(path, key);
    if (address_hex) *address_hex = copy_out(key.address().hex());
    return ESP2CS_OK;
  });
}

esp2cs_status esp2cs_key_inspect(const char* path, char** address_hex, char** public_key_hex) {
  if (blank(path)) return fail(ESP2CS_ERR_ARGUMENT, "key path is required");
  return guarded([&] {
    auto key = load_key_file(path);
    if (address_hex) *address_hex = copy_out(key.address().hex());
    if (public_key_hex) *public_key_hex = copy_out(key.public_key().hex());
    return ESP2CS_OK;
  });
}

esp2cs_status esp2cs_genesis_write(const char* path, uint64_t genesis_time, uint64_t block_interval,
                                   const char* const* authority_keys, size_t n_authorities,
                                   const char* const* accounts, size_t n_accounts, const char* payment_owner_key) {
  if (blank(path) || (n_authorities && !authority_keys) || (n_accounts && !accounts)) {
    return fail(ESP2CS_ERR_ARGUMENT, "missing path or list");
  }
  return guarded([&] {
    consensus::GenesisConfig g;
    g.genesis_time = genesis_time;
    g.block_interval = block_interval;
    for (size_t i = 0; i < n_authorities; ++i) g.authorities.push_back(load_key_file(authority_keys[i]).public_key());
    for (size_t i = 0; i < n_accounts; ++i) {
      std::string spec = accounts[i];
      auto eq = spec.rfind('=');
      if (eq == std::string::npos) return fail(ESP2CS_ERR_ARGUMENT, "account must be key_file=balance: " + spec);
      auto key = load_key_file(spec.substr(0, eq));
      std::uint64_t balance = 0;
      try {
        balance = std::stoull(spec.substr(eq + 1));
      } catch (const std::exception&) {
        return fail(ESP2CS_ERR_ARGUMENT, "bad balance in " + spec);
      }
      g.accounts.push_back({key.address(), balance, key.public_key()});
    }
    if (!blank(payment_owner_key)) g.payment_owner = load_key_file(payment_owner_key).address();
    (void)g.authority_set();  // rejects empty or duplicate authorities
    auto text = consensus::genesis_to_yaml(g);
    consensus::parse_genesis_yaml(text);
    std::ofstream out(path, std::ios::trunc);
    out << text;
    if (!out) return fail(ESP2CS_ERR_IO, std::string("cannot write ") + path);
    return ESP2CS_OK;
  });
}

esp2cs_status esp2cs_sim_run(const char* scenario_path, int override_seed, uint64_t seed, esp2cs_format format,
                             char** report, esp2cs_sim_summary* summary) {
  if (blank(scenario_path)) return fail(ESP2CS_ERR_ARGUMENT, "scenario path is required");
  return guarded([&] {
    auto scenario = netsim::load_scenario(scenario_path);
    if (override_seed) scenario.seed = seed;
    auto r = netsim::run_scenario(scenario);
    if (report) *report = copy_out(format == ESP2CS_FORMAT_JSON ? r.to_json() : r.to_text());
    if (summary) {
      summary->converged = r.converged;
      summary->conservation_ok = r.conservation_ok;
      summary->head_height = r.chain.empty() ? 0 : r.chain.back().height;
      summary->receipts = r.receipts.size();
      summary->warnings = r.warnings.size();
    }
    return ESP2CS_OK;
  });
}

esp2cs_status esp2cs_bench_gas(esp2cs_format format, char** report, int* all_within_tolerance) {
  return guarded([&] {
    auto r = bench::run_gas_bench();
    if (report) *report = copy_out(format == ESP2CS_FORMAT_JSON ? r.to_json() : r.to_text());
    if (all_within_tolerance) *all_within_tolerance = r.all_within();
    return ESP2CS_OK;
  });
}

esp2cs_status esp2cs_node_open(const esp2cs_node_options* options, esp2cs_node** node) {
  if (!options || !node || blank(options->genesis_path)) return fail(ESP2CS_ERR_ARGUMENT, "genesis path is required");
  if (options->n_peers && !options->peers) return fail(ESP2CS_ERR_ARGUMENT, "peer list is null");
  if (options->n_peers && options->listen_port == 0 && blank(options->advertise)) {
    return fail(ESP2CS_ERR_ARGUMENT, "a node with peers needs a fixed listen port or an advertise address");
  }
  return guarded([&] {
    auto n = std::make_unique<esp2cs_node>();
    n->listen_host = blank(options->listen_host) ? "127.0.0.1" : options->listen_host;
    n->listen_port = options->listen_port;

    consensus::NodeConfig cfg;
    cfg.genesis = consensus::load_genesis(options->genesis_path);
    if (!blank(options->key_path)) cfg.key = load_key_file(options->key_path);
    if (!blank(options->block_log)) cfg.block_log = options->block_log;
    cfg.name = blank(options->advertise) ? n->listen_host + ":" + std::to_string(n->listen_port) : options->advertise;
    std::vector<std::string> peers;
    for (size_t i = 0; i < options->n_peers; ++i) {
      if (!blank(options->peers[i])) peers.emplace_back(options->peers[i]);
    }
    n->live = std::make_unique<gateway::LiveNode>(std::move(cfg), std::move(peers));
    n->service = std::make_unique<gateway::Service>(*n->live);
    *node = n.release();
    return ESP2CS_OK;
  });
}

esp2cs_status esp2cs_node_start(esp2cs_node* node) {
  if (!node) return fail(ESP2CS_ERR_ARGUMENT, "node is null");
  return guarded([&] {
    node->http = std::make_unique<gateway::HttpServer>(*node->service);
    try {
      node->bound_port = node->http->start(node->listen_host, node->listen_port);
    } catch (const Error& e) {
      node->http.reset();
      return fail(ESP2CS_ERR_NETWORK, e.what());
    }
    node->live->start();
    return ESP2CS_OK;
  });
}

int esp2cs_node_port(const esp2cs_node* node) { return node ? node->bound_port : 0; }

esp2cs_status esp2cs_node_request(esp2cs_node* node, const char* method, const char* path, const char* query,
                                  const char* body, int* http_status, char** response) {
  if (!node || blank(method) || blank(path)) return fail(ESP2CS_ERR_ARGUMENT, "node, method and path are required");
  return guarded([&] {
    gateway::Request req{method, path, {}, body ? body : ""};
    if (!blank(query)) {
      httplib::Params params;
      httplib::detail::parse_query_text(query, params);
      for (const auto& [k, v] : params) req.query.emplace(k, v);
    }
    auto res = node->service->handle(req);
    if (http_status) *http_status = res.status;
    if (response) *response = copy_out(res.body);
    return ESP2CS_OK;
  });
}

void esp2cs_node_close(esp2cs_node* node) {
  if (!node) return;
  if (node->http) node->http->stop();
  if (node->live) node->live->stop();
  delete node;
}

esp2cs_status esp2cs_light_sync(const char* genesis_path, const char* host, int port, char** tip_json) {
  if (blank(genesis_path) || blank(host)) return fail(ESP2CS_ERR_ARGUMENT, "genesis path and host are required");
  return guarded([&] {
    auto cfg = consensus::load_genesis(genesis_path);
    auto genesis = consensus::build_genesis(cfg);
    light::HttpEndpoint endpoint(host, port);
    light::LightClient client(light::HeaderChain(genesis.block.header, cfg.authority_set()), endpoint);
    auto r = client.sync();
    nlohmann::ordered_json j{{"height", client.chain().height()},
                             {"hash", client.chain().tip_hash().hex()},
                             {"appended", r.appended},
                             {"reorganized", r.reorganized}};
    if (r.error) {
      j["error"] = {{"height", r.error->height}, {"rule", rule_name(r.error->rule)}, {"message", r.error->message}};
    }
    if (tip_json) *tip_json = copy_out(j.dump(2));
    return r.error ? fail(ESP2CS_ERR_REJECTED, "header at height " + std::to_string(r.error->height) + " rejected: " +
                                                   std::string(rule_name(r.error->rule)))
                   : ESP2CS_OK;
  });
}

}  // extern "C"
