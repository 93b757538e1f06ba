#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ledger/authority_set.hpp"
#include "ledger/block.hpp"
#include "runtime/executor.hpp"
#include "runtime/world_state.hpp"

namespace esp2cs::consensus {

struct GenesisAccount {
  Address address;
  std::uint64_t balance = 0;
  /// Known up front for accounts that must be able to receive sealed messages.
  std::optional<PublicKey> public_key;

  bool operator==(const GenesisAccount&) const = default;
};

/// Everything fixed for the life of a chain.
struct GenesisConfig {
  std::uint64_t genesis_time = 1'700'000'000;
  std::uint64_t block_interval = 5;
  runtime::RuntimeConfig runtime;
  std::vector<PublicKey> authorities;
  std::optional<Address> payment_owner;
  std::vector<GenesisAccount> accounts;

  bool operator==(const GenesisConfig&) const = default;

  [[nodiscard]] Bytes encode() const;
  [[nodiscard]] AuthoritySet authority_set() const { return {authorities, block_interval}; }
  /// Start of slot k: genesis_time + k * block_interval.
  [[nodiscard]] std::uint64_t slot_time(std::uint64_t k) const { return genesis_time + k * block_interval; }
};

class ConfigError : public Error {
public:
  using Error::Error;
};

/// YAML genesis file. Throws ConfigError naming the offending field.
GenesisConfig parse_genesis_yaml(const std::string& text);
GenesisConfig load_genesis(const std::filesystem::path& path);
std::string genesis_to_yaml(const GenesisConfig& cfg);

struct Genesis {
  Block block;
  runtime::WorldState state;
};

/// Height-0 block. Its parent_hash commits to the configuration and it
/// carries no proposer signature.
Genesis build_genesis(const GenesisConfig& cfg);

}  // namespace esp2cs::consensus
