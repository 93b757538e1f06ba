// Operator CLI. Everything goes through the C interface in libesp2cs.
#include <CLI11.hpp>

#include <esp2cs/esp2cs.h>

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

namespace {

std::atomic<bool> interrupted{false};

/// Owns a string returned by the library.
struct Owned {
  char* p = nullptr;
  ~Owned() { esp2cs_string_free(p); }
  [[nodiscard]] std::string str() const { return p ? p : ""; }
};

int report_error(esp2cs_status st, const char* what) {
  std::cerr << "esp2cs " << what << ": " << esp2cs_status_name(st);
  if (*esp2cs_last_error()) std::cerr << ": " << esp2cs_last_error();
  std::cerr << "\n";
  return st == ESP2CS_ERR_CONFIG || st == ESP2CS_ERR_ARGUMENT ? 2 : 1;
}

bool write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::trunc);
  out << text;
  if (!out) {
    std::cerr << "esp2cs: cannot write " << path << "\n";
    return false;
  }
  return true;
}

esp2cs_format parse_format(const std::string& f) {
  return f == "text" ? ESP2CS_FORMAT_TEXT : ESP2CS_FORMAT_JSON;
}

std::pair<std::string, int> split_host_port(const std::string& s) {
  auto colon = s.rfind(':');
  if (colon == std::string::npos) throw CLI::ValidationError("address", "expected host:port, got '" + s + "'");
  return {s.substr(0, colon), std::stoi(s.substr(colon + 1))};
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"esp2cs: PoA ledger nodes, scenario simulator and gas bench for smart parking and V2X messaging"};
  app.set_version_flag("--version", esp2cs_version());
  app.require_subcommand(1);
  const std::vector<std::string> formats{"text", "json", "machine-readable"};

  std::string key_out, key_seed;
  auto* keygen = app.add_subcommand("keygen", "Create a key file and print its address");
  keygen->add_option("--out,output", key_out, "Key file to write")->required();
  keygen->add_option("--seed", key_seed, "Derive the key from this label instead of fresh randomness");

  std::string inspect_path;
  auto* inspect = app.add_subcommand("key-info", "Print the address and public key of a key file");
  inspect->add_option("--key,key", inspect_path, "Key file")->required();

  std::string genesis_out, owner_key;
  std::vector<std::string> authority_keys, account_specs;
  std::uint64_t genesis_time = 1'700'000'000, block_interval = 5;
  auto* genesis = app.add_subcommand("genesis", "Write a genesis file from key files");
  genesis->add_option("--out", genesis_out, "Genesis file to write")->required();
  genesis->add_option("--authority", authority_keys, "Authority key file (repeatable)")->required();
  genesis->add_option("--account", account_specs, "Funded account as key_file=balance (repeatable)");
  genesis->add_option("--payment-owner", owner_key, "Key file of the PaymentManagement owner");
  genesis->add_option("--genesis-time", genesis_time, "Genesis timestamp, unix seconds");
  genesis->add_option("--block-interval", block_interval, "Seconds per block slot")->check(CLI::PositiveNumber);

  std::string node_genesis, node_key, node_listen = "127.0.0.1:8545", node_advertise, node_log;
  std::vector<std::string> node_peers;
  auto* node = app.add_subcommand("node", "Run an authority or follower node with its HTTP gateway");
  node->add_option("--genesis", node_genesis, "Genesis file")->required()->check(CLI::ExistingFile);
  node->add_option("--key", node_key, "Authority key file; omit to follow without proposing")
      ->check(CLI::ExistingFile);
  node->add_option("--listen", node_listen, "host:port for the gateway and peer traffic");
  node->add_option("--advertise", node_advertise, "host:port peers use to reach this node");
  node->add_option("--peers", node_peers, "Peer host:port list")->delimiter(',');
  node->add_option("--block-log", node_log, "Append-only block file, replayed on start");

  std::string sim_scenario, sim_report, sim_format = "text";
  std::uint64_t sim_seed = 0;
  auto* sim = app.add_subcommand("sim", "Run a scenario through the network simulator");
  sim->add_option("--scenario,scenario", sim_scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  sim->add_option("--report", sim_report, "Report file (default stdout)");
  auto* seed_opt = sim->add_option("--seed", sim_seed, "Override the scenario seed");
  sim->add_option("--format", sim_format, "Report format")->check(CLI::IsMember(formats));

  std::string bench_report, bench_format = "text";
  auto* bench = app.add_subcommand("bench-gas", "Measure gas for all nineteen contract functions");
  bench->add_option("--report", bench_report, "Report file (default stdout)");
  bench->add_option("--format", bench_format, "Report format")->check(CLI::IsMember(formats));

  std::string light_genesis, light_gateway;
  auto* light = app.add_subcommand("light-sync", "Sync and verify headers from a gateway like a vehicle client");
  light->add_option("--genesis", light_genesis, "Genesis file")->required()->check(CLI::ExistingFile);
  light->add_option("--gateway", light_gateway, "Gateway host:port")->required();

  CLI11_PARSE(app, argc, argv);

  if (*keygen) {
    Owned addr;
    auto st = esp2cs_keygen(key_out.c_str(), key_seed.empty() ? nullptr : key_seed.c_str(), &addr.p);
    if (st != ESP2CS_OK) return report_error(st, "keygen");
    std::cout << addr.str() << "\n";
    return 0;
  }

  if (*inspect) {
    Owned addr, pk;
    auto st = esp2cs_key_inspect(inspect_path.c_str(), &addr.p, &pk.p);
    if (st != ESP2CS_OK) return report_error(st, "key-info");
    std::cout << "address    " << addr.str() << "\npublic_key " << pk.str() << "\n";
    return 0;
  }

  if (*genesis) {
    auto auths = c_strings(authority_keys);
    auto accts = c_strings(account_specs);
    auto st = esp2cs_genesis_write(genesis_out.c_str(), genesis_time, block_interval, auths.data(), auths.size(),
                                   accts.data(), accts.size(), owner_key.empty() ? nullptr : owner_key.c_str());
    if (st != ESP2CS_OK) return report_error(st, "genesis");
    return 0;
  }

  if (*node) {
    auto [host, port] = split_host_port(node_listen);
    auto peers = c_strings(node_peers);
    esp2cs_node_options opts{};
    opts.genesis_path = node_genesis.c_str();
    opts.key_path = node_key.empty() ? nullptr : node_key.c_str();
    opts.listen_host = host.c_str();
    opts.listen_port = port;
    opts.advertise = node_advertise.empty() ? nullptr : node_advertise.c_str();
    opts.peers = peers.data();
    opts.n_peers = peers.size();
    opts.block_log = node_log.empty() ? nullptr : node_log.c_str();

    esp2cs_node* handle = nullptr;
    auto st = esp2cs_node_open(&opts, &handle);
    if (st != ESP2CS_OK) return report_error(st, "node");
    st = esp2cs_node_start(handle);
    if (st != ESP2CS_OK) {
      esp2cs_node_close(handle);
      return report_error(st, "node");
    }
    std::signal(SIGINT, [](int) { interrupted = true; });
    std::signal(SIGTERM, [](int) { interrupted = true; });
    std::cerr << "esp2cs node serving on " << host << ":" << esp2cs_node_port(handle) << "\n";
    while (!interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(200));
    esp2cs_node_close(handle);
    return 0;
  }

  if (*sim) {
    Owned report;
    esp2cs_sim_summary summary{};
    auto st = esp2cs_sim_run(sim_scenario.c_str(), seed_opt->count() > 0, sim_seed, parse_format(sim_format),
                             &report.p, &summary);
    if (st != ESP2CS_OK) return report_error(st, "sim");
    if (!write_or_print(sim_report, report.str())) return 1;
    if (!summary.conservation_ok) {
      std::cerr << "esp2cs sim: balance conservation violated\n";
      return 3;
    }
    return 0;
  }

  if (*bench) {
    Owned report;
    int ok = 0;
    auto st = esp2cs_bench_gas(parse_format(bench_format), &report.p, &ok);
    if (st != ESP2CS_OK) return report_error(st, "bench-gas");
    if (!write_or_print(bench_report, report.str())) return 1;
    return ok ? 0 : 3;
  }

  if (*light) {
    auto [host, port] = split_host_port(light_gateway);
    Owned tip;
    auto st = esp2cs_light_sync(light_genesis.c_str(), host.c_str(), port, &tip.p);
    if (!tip.str().empty()) std::cout << tip.str() << "\n";
    if (st != ESP2CS_OK) return report_error(st, "light-sync");
    return 0;
  }
  return 0;
}
