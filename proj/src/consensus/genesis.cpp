#include "consensus/genesis.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

#include "contracts/contracts.hpp"
#include "ledger/crypto.hpp"
#include "ledger/encoding.hpp"
#include "ledger/merkle.hpp"

namespace esp2cs::consensus {

namespace {
template <typename T>
T field(const YAML::Node& node, const char* name, T fallback) {
  auto v = node[name];
  if (!v) return fallback;
  try {
    return v.as<T>();
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("genesis: bad value for '") + name + "' at line " +
                      std::to_string(v.Mark().line + 1));
  }
}

template <typename Fixed>
Fixed hex_field(const YAML::Node& v, const std::string& what) {
  try {
    return Fixed::from_hex(v.as<std::string>());
  } catch (const std::exception&) {
    throw ConfigError("genesis: bad " + what + " at line " + std::to_string(v.Mark().line + 1));
  }
}

void encode_schedule(Encoder& enc, const runtime::GasSchedule& g) {
  enc.u64(g.tx_base).u64(g.calldata_per_byte).u64(g.sstore_new).u64(g.sstore_update).u64(g.sload);
  enc.u64(g.log_base).u64(g.log_per_topic).u64(g.log_per_byte).u64(g.sstore_clear_refund).u64(g.refund_quotient);
}
}  // namespace

Bytes GenesisConfig::encode() const {
  Encoder enc;
  enc.str("esp2cs-genesis/1").u64(genesis_time).u64(block_interval);
  encode_schedule(enc, runtime.gas);
  enc.u64(runtime.tx_gas_limit);
  auto keys = authority_set().keys();
  enc.u64(keys.size());
  for (const auto& k : keys) enc.fixed(k);
  enc.boolean(payment_owner.has_value());
  if (payment_owner) enc.fixed(*payment_owner);
  enc.u64(accounts.size());
  for (const auto& a : accounts) {
    enc.fixed(a.address).u64(a.balance).boolean(a.public_key.has_value());
    if (a.public_key) enc.fixed(*a.public_key);
  }
  return enc.take();
}

GenesisConfig parse_genesis_yaml(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("genesis: " + std::string(e.what()));
  }
  if (!root.IsMap()) throw ConfigError("genesis: top level must be a mapping");

  GenesisConfig cfg;
  cfg.genesis_time = field<std::uint64_t>(root, "genesis_time", cfg.genesis_time);
  cfg.block_interval = field<std::uint64_t>(root, "block_interval", cfg.block_interval);
  cfg.runtime.tx_gas_limit = field<std::uint64_t>(root, "tx_gas_limit", cfg.runtime.tx_gas_limit);
  if (auto g = root["gas_schedule"]) {
    auto& s = cfg.runtime.gas;
    s.tx_base = field(g, "tx_base", s.tx_base);
    s.calldata_per_byte = field(g, "calldata_per_byte", s.calldata_per_byte);
    s.sstore_new = field(g, "sstore_new", s.sstore_new);
    s.sstore_update = field(g, "sstore_update", s.sstore_update);
    s.sload = field(g, "sload", s.sload);
    s.log_base = field(g, "log_base", s.log_base);
    s.log_per_topic = field(g, "log_per_topic", s.log_per_topic);
    s.log_per_byte = field(g, "log_per_byte", s.log_per_byte);
    s.sstore_clear_refund = field(g, "sstore_clear_refund", s.sstore_clear_refund);
    s.refund_quotient = field(g, "refund_quotient", s.refund_quotient);
  }
  auto auths = root["authorities"];
  if (!auths || !auths.IsSequence() || auths.size() == 0) {
    throw ConfigError("genesis: 'authorities' must be a non-empty list of public keys");
  }
  for (const auto& a : auths) cfg.authorities.push_back(hex_field<PublicKey>(a, "authority key"));
  if (auto o = root["payment_owner"]) cfg.payment_owner = hex_field<Address>(o, "payment_owner");
  if (auto accts = root["accounts"]) {
    for (const auto& a : accts) {
      GenesisAccount ga;
      if (a["public_key"]) {
        ga.public_key = hex_field<PublicKey>(a["public_key"], "account public_key");
        ga.address = address_of(*ga.public_key);
        if (a["address"] && hex_field<Address>(a["address"], "account address") != ga.address) {
          throw ConfigError("genesis: account address does not match its public key at line " +
                            std::to_string(a.Mark().line + 1));
        }
      } else if (a["address"]) {
        ga.address = hex_field<Address>(a["address"], "account address");
      } else {
        throw ConfigError("genesis: account needs 'address' or 'public_key' at line " +
                          std::to_string(a.Mark().line + 1));
      }
      ga.balance = field<std::uint64_t>(a, "balance", 0);
      cfg.accounts.push_back(std::move(ga));
    }
  }
  try {
    cfg.runtime.gas.validate();
    (void)cfg.authority_set();
    runtime::Executor check(cfg.runtime);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("genesis: ") + e.what());
  }
  return cfg;
}

GenesisConfig load_genesis(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read genesis file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_genesis_yaml(ss.str());
}

std::string genesis_to_yaml(const GenesisConfig& cfg) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "genesis_time" << YAML::Value << cfg.genesis_time;
  out << YAML::Key << "block_interval" << YAML::Value << cfg.block_interval;
  out << YAML::Key << "tx_gas_limit" << YAML::Value << cfg.runtime.tx_gas_limit;
  const auto& g = cfg.runtime.gas;
  out << YAML::Key << "gas_schedule" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "tx_base" << YAML::Value << g.tx_base;
  out << YAML::Key << "calldata_per_byte" << YAML::Value << g.calldata_per_byte;
  out << YAML::Key << "sstore_new" << YAML::Value << g.sstore_new;
  out << YAML::Key << "sstore_update" << YAML::Value << g.sstore_update;
  out << YAML::Key << "sload" << YAML::Value << g.sload;
  out << YAML::Key << "log_base" << YAML::Value << g.log_base;
  out << YAML::Key << "log_per_topic" << YAML::Value << g.log_per_topic;
  out << YAML::Key << "log_per_byte" << YAML::Value << g.log_per_byte;
  out << YAML::Key << "sstore_clear_refund" << YAML::Value << g.sstore_clear_refund;
  out << YAML::Key << "refund_quotient" << YAML::Value << g.refund_quotient;
  out << YAML::EndMap;
  out << YAML::Key << "authorities" << YAML::Value << YAML::BeginSeq;
  for (const auto& k : cfg.authorities) out << k.hex();
  out << YAML::EndSeq;
  if (cfg.payment_owner) out << YAML::Key << "payment_owner" << YAML::Value << cfg.payment_owner->hex();
  out << YAML::Key << "accounts" << YAML::Value << YAML::BeginSeq;
  for (const auto& a : cfg.accounts) {
    out << YAML::BeginMap;
    out << YAML::Key << "address" << YAML::Value << a.address.hex();
    if (a.public_key) out << YAML::Key << "public_key" << YAML::Value << a.public_key->hex();
    out << YAML::Key << "balance" << YAML::Value << a.balance;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

Genesis build_genesis(const GenesisConfig& cfg) {
  Genesis g;
  for (const auto& a : cfg.accounts) {
    auto& acct = g.state.account(a.address);
    if (acct.balance > UINT64_MAX - a.balance) throw ConfigError("genesis: balance overflow");
    acct.balance += a.balance;
    if (a.public_key) acct.public_key = a.public_key;
  }
  if (cfg.payment_owner) contracts::pm::set_owner(g.state, *cfg.payment_owner);

  auto& h = g.block.header;
  h.height = 0;
  h.parent_hash = sha256(cfg.encode());
  h.timestamp = cfg.genesis_time;
  h.tx_root = merkle_root({});
  h.state_root = g.state.root();
  return g;
}

}  // namespace esp2cs::consensus
