#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "ledger/block_log.hpp"
#include "ledger/chain_validation.hpp"
#include "ledger/encoding.hpp"
#include "ledger/key_file.hpp"
#include "ledger/merkle.hpp"
#include "support/fixture.hpp"

using namespace esp2cs;
using esp2cs::testing::Fixture;

namespace {

std::vector<Bytes> leaves_of(std::initializer_list<std::string_view> xs) {
  std::vector<Bytes> out;
  for (auto x : xs) out.push_back(to_bytes(x));
  return out;
}

std::filesystem::path temp_path(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("esp2cs-test-" + std::to_string(::getpid()) + "-" + name);
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST_SUITE("ledger") {

TEST_CASE("sha256 known vectors") {
  CHECK(sha256("").hex() == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256("abc").hex() == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("hex round trip and rejection") {
  Bytes b{0x00, 0xab, 0xff};
  CHECK(to_hex(b) == "00abff");
  CHECK(from_hex("0x00ABff") == b);
  CHECK_THROWS_AS(from_hex("abc"), Error);
  CHECK_THROWS_AS(from_hex("zz"), Error);
}

TEST_CASE("canonical encoding is little-endian and length-prefixed") {
  auto e = Encoder{}.u64(0x0102).str("hi").take();
  CHECK(to_hex(e) == "0201000000000000" "0200000000000000" "6869");
  Decoder d(e);
  CHECK(d.u64() == 0x0102);
  CHECK(d.str() == "hi");
  CHECK(d.done());
  Decoder short_input(Bytes{1, 2, 3});
  CHECK_THROWS_AS(short_input.u64(), DecodeError);
}

TEST_CASE("merkle root matches independent computation") {
  // values computed with Python hashlib: H(H(a)||H(b)) and the 3-leaf tree
  // with the odd leaf promoted
  CHECK(merkle_root(leaves_of({"a", "b"})).hex() ==
        "e5a01fee14e0ed5c48714f22180f25ad8365b53f9779f79dc4a3d7e93963f94a");
  CHECK(merkle_root(leaves_of({"a", "b", "c"})).hex() ==
        "7075152d03a5cd92104887b476862778ec0c87be5c2fa1c0a90f87c49fad6eff");
  CHECK(merkle_root({}) == sha256(""));
  CHECK(merkle_root(leaves_of({"a"})) == sha256("a"));
}

TEST_CASE("merkle proofs verify for every leaf and have ceil(log2 n) entries") {
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 13u, 64u, 100u}) {
    std::vector<Bytes> leaves;
    for (std::size_t i = 0; i < n; ++i) leaves.push_back(to_bytes("leaf-" + std::to_string(i)));
    auto root = merkle_root(leaves);
    for (std::size_t i = 0; i < n; ++i) {
      auto proof = merkle_prove(leaves, i);
      CHECK(proof.siblings.size() == merkle_depth(n));
      CHECK(merkle_verify(root, leaves[i], i, proof));
      CHECK_FALSE(merkle_verify(root, to_bytes("other"), i, proof));
      if (n > 1) CHECK_FALSE(merkle_verify(root, leaves[i], (i + 1) % n, proof));
    }
  }
  CHECK(merkle_depth(1) == 0);
  CHECK(merkle_depth(2) == 1);
  CHECK(merkle_depth(3) == 2);
  CHECK(merkle_depth(1024) == 10);
  CHECK(merkle_depth(1025) == 11);
  CHECK_THROWS_AS(merkle_prove(leaves_of({"a"}), 1), MerkleIndexError);
}

TEST_CASE("signatures and addresses") {
  auto k = KeyPair::from_label("ledger/sig");
  auto msg = to_bytes("hello");
  auto sig = k.sign(msg);
  CHECK(verify(k.public_key(), msg, sig));
  msg[0] ^= 1;
  CHECK_FALSE(verify(k.public_key(), msg, sig));
  auto full = sha256(k.public_key().view());
  auto addr = k.address();
  CHECK(std::equal(addr.bytes.begin(), addr.bytes.end(), full.bytes.begin() + 12));
  CHECK(KeyPair::from_label("ledger/sig").public_key() == k.public_key());
  CHECK(KeyPair::from_seed(k.seed()).public_key() == k.public_key());
}

TEST_CASE("transactions and blocks round-trip through the canonical encoding") {
  Fixture fx(2, 2);
  auto t = fx.publish(0, "hello");
  CHECK(t.signature_valid());
  CHECK(decode_transaction(t.encode()) == t);
  auto changed = t;
  changed.value = 1;
  CHECK_FALSE(changed.signature_valid());

  const auto& b = fx.extend({t}).block;
  CHECK(decode_block(b.encode()) == b);
  CHECK(decode_header(b.header.encode()) == b.header);
  CHECK(b.header.signature_valid());
  auto enc = b.encode();
  enc.push_back(0);
  CHECK_THROWS_AS(decode_block(enc), DecodeError);
}

TEST_CASE("validate_chain accepts a built chain and names the broken rule") {
  Fixture fx(3, 2);
  for (int i = 0; i < 6; ++i) fx.extend({fx.publish(i % 2, "m" + std::to_string(i))});
  auto chain = fx.chain_blocks();
  auto gh = fx.genesis.block.hash();
  auto auths = fx.authority_set();
  CHECK_FALSE(validate_chain(chain, gh, auths).has_value());

  SUBCASE("tx mutation") {
    chain[3].transactions[0].args.push_back(1);
    auto err = validate_chain(chain, gh, auths);
    REQUIRE(err);
    CHECK(err->rule == ChainRule::TxRootMismatch);
    CHECK(err->height == 3);
  }
  SUBCASE("broken link") {
    chain[2].header.parent_hash.bytes[0] ^= 1;
    auto err = validate_chain(chain, gh, auths);
    REQUIRE(err);
    CHECK(err->rule == ChainRule::BrokenLink);
  }
  SUBCASE("wrong proposer") {
    auto& h = chain[4].header;
    h.proposer = fx.proposer_for(5).public_key();
    h.sign_with(fx.proposer_for(5));
    auto err = validate_chain(chain, gh, auths);
    REQUIRE(err);
    CHECK(err->rule == ChainRule::WrongProposer);
  }
  SUBCASE("bad signature") {
    chain[5].header.signature.bytes[0] ^= 1;
    auto err = validate_chain(chain, gh, auths);
    REQUIRE(err);
    CHECK(err->rule == ChainRule::BadSignature);
    CHECK(err->height == 5);
  }
  SUBCASE("non-increasing timestamp") {
    auto& h = chain[1].header;
    h.timestamp = chain[0].header.timestamp;
    h.sign_with(fx.proposer_for(1));
    auto err = validate_chain({chain[0], chain[1]}, gh, auths);
    REQUIRE(err);
    CHECK(err->rule == ChainRule::BadTimestamp);
  }
  SUBCASE("wrong genesis") {
    auto err = validate_chain(chain, sha256("x"), auths);
    REQUIRE(err);
    CHECK(err->rule == ChainRule::Genesis);
  }
}

TEST_CASE("random single-byte tx mutations are detected") {
  Fixture fx(3, 3);
  for (int i = 0; i < 5; ++i) fx.extend({fx.publish(0, "a" + std::to_string(i)), fx.publish(1, "b")});
  auto pristine = fx.chain_blocks();
  std::mt19937_64 rng(99);
  int tried = 0;
  while (tried < 200) {
    auto chain = pristine;
    auto& blk = chain[1 + rng() % 5];
    auto& tx = blk.transactions[rng() % blk.transactions.size()];
    auto enc = tx.encode();
    enc[rng() % enc.size()] ^= static_cast<std::uint8_t>(1 + rng() % 255);
    try {
      tx = decode_transaction(enc);
    } catch (const Error&) {
      continue;  // not a well-formed transaction any more
    }
    ++tried;
    CHECK(validate_chain(chain, fx.genesis.block.hash(), fx.authority_set()).has_value());
  }
}

TEST_CASE("block log persists and detects truncation") {
  Fixture fx(2, 1);
  fx.extend({fx.publish(0, "x")});
  fx.extend({});
  auto path = temp_path("blocks.log");
  {
    BlockLog log(path);
    for (const auto& b : fx.blocks) log.append(b.block);
  }
  BlockLog reopened(path);
  auto loaded = reopened.load();
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0] == fx.blocks[0].block);
  CHECK(loaded[1] == fx.blocks[1].block);
  std::filesystem::resize_file(path, std::filesystem::file_size(path) - 3);
  CHECK_THROWS_AS(BlockLog(path).load(), DecodeError);
  std::filesystem::remove(path);
}

TEST_CASE("key files round-trip and reject corruption") {
  auto path = temp_path("key.json");
  auto k = KeyPair::from_label("ledger/keyfile");
  save_key_file(path, k);
  CHECK((std::filesystem::status(path).permissions() & std::filesystem::perms::others_read) ==
        std::filesystem::perms::none);
  CHECK(load_key_file(path).public_key() == k.public_key());
  {
    std::ofstream out(path, std::ios::trunc);
    out << R"({"seed":"00","public_key":"00","address":"00"})";
  }
  CHECK_THROWS_AS(load_key_file(path), KeyFileError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_key_file(path), KeyFileError);
}

}  // TEST_SUITE
