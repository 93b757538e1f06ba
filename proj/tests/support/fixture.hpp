#pragma once
// Small signed chains for tests: N authorities, a few funded users, blocks
// built through the real block builder.

#include <cstdint>
#include <string>
#include <vector>

#include "consensus/block_builder.hpp"
#include "consensus/genesis.hpp"
#include "ledger/crypto.hpp"
#include "ledger/encoding.hpp"
#include "runtime/executor.hpp"

namespace esp2cs::testing {

inline constexpr std::uint64_t kFunds = 1'000'000'000'000'000'000ULL;

struct Fixture {
  std::vector<KeyPair> authorities;
  std::vector<KeyPair> users;
  consensus::GenesisConfig config;
  consensus::Genesis genesis;
  runtime::Executor executor;
  std::vector<consensus::ExecutedBlock> blocks;  // heights 1..n
  std::vector<std::uint64_t> nonces;

  explicit Fixture(std::size_t n_authorities = 3, std::size_t n_users = 3, std::string tag = "fx")
      : executor(runtime::RuntimeConfig{}) {
    for (std::size_t i = 0; i < n_authorities; ++i) {
      authorities.push_back(KeyPair::from_label(tag + "/authority/" + std::to_string(i)));
      config.authorities.push_back(authorities.back().public_key());
    }
    for (std::size_t i = 0; i < n_users; ++i) {
      users.push_back(KeyPair::from_label(tag + "/user/" + std::to_string(i)));
      config.accounts.push_back({users.back().address(), kFunds, users.back().public_key()});
    }
    if (!users.empty()) config.payment_owner = users[0].address();
    nonces.assign(n_users, 0);
    genesis = consensus::build_genesis(config);
  }

  [[nodiscard]] AuthoritySet authority_set() const { return config.authority_set(); }

  [[nodiscard]] const KeyPair& proposer_for(std::uint64_t height) const {
    const auto set = authority_set();
    const auto& pk = set.proposer_for(height);
    for (const auto& k : authorities) {
      if (k.public_key() == pk) return k;
    }
    throw Error("no such authority");
  }

  [[nodiscard]] const Block& tip_block() const { return blocks.empty() ? genesis.block : blocks.back().block; }
  [[nodiscard]] const runtime::WorldState& tip_state() const {
    return blocks.empty() ? genesis.state : blocks.back().state;
  }
  [[nodiscard]] std::vector<Block> chain_blocks() const {
    std::vector<Block> out{genesis.block};
    for (const auto& b : blocks) out.push_back(b.block);
    return out;
  }

  Transaction tx(std::size_t user, ContractId c, std::string fn, Bytes args = {}, std::uint64_t value = 0,
                 std::uint64_t price = 1) {
    Transaction t;
    t.sender = users[user].public_key();
    t.nonce = nonces[user]++;
    t.contract = c;
    t.function = std::move(fn);
    t.args = std::move(args);
    t.value = value;
    t.gas_price_gwei = price;
    t.sign_with(users[user]);
    return t;
  }

  Transaction publish(std::size_t user, const std::string& text) {
    return tx(user, ContractId::VehicularCommunication, "publishMessage", Encoder{}.str(text).take());
  }

  const consensus::ExecutedBlock& extend(const std::vector<Transaction>& txs) {
    const auto height = tip_block().header.height + 1;
    auto ts = config.slot_time(height);
    blocks.push_back(consensus::build_block(proposer_for(height), authority_set(), executor, tip_block(),
                                            tip_state(), txs, ts));
    return blocks.back();
  }
};

}  // namespace esp2cs::testing
