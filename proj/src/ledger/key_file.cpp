#include "ledger/key_file.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

#include <sys/stat.h>

namespace esp2cs {

void save_key_file(const std::filesystem::path& path, const KeyPair& key) {
  nlohmann::ordered_json j{{"seed", to_hex(key.seed())},
                           {"public_key", key.public_key().hex()},
                           {"address", key.address().hex()}};
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw KeyFileError("cannot write key file " + path.string());
  out << j.dump(2) << "\n";
  out.close();
  if (!out) throw KeyFileError("cannot write key file " + path.string());
  ::chmod(path.c_str(), 0600);
}

KeyPair load_key_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw KeyFileError("cannot read key file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    auto j = nlohmann::json::parse(ss.str());
    auto raw = from_hex(j.at("seed").get<std::string>());
    if (raw.size() != 32) throw KeyFileError("key file " + path.string() + ": seed must be 32 bytes");
    Seed seed{};
    std::copy(raw.begin(), raw.end(), seed.begin());
    auto key = KeyPair::from_seed(seed);
    if (j.contains("public_key") && PublicKey::from_hex(j["public_key"].get<std::string>()) != key.public_key()) {
      throw KeyFileError("key file " + path.string() + " is corrupt: public key does not match seed");
    }
    if (j.contains("address") && Address::from_hex(j["address"].get<std::string>()) != key.address()) {
      throw KeyFileError("key file " + path.string() + " is corrupt: address does not match seed");
    }
    return key;
  } catch (const KeyFileError&) {
    throw;
  } catch (const std::exception& e) {
    throw KeyFileError("key file " + path.string() + " is corrupt: " + e.what());
  }
}

}  // namespace esp2cs
