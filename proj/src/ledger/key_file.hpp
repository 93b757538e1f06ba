#pragma once

#include <filesystem>

#include "ledger/crypto.hpp"

namespace esp2cs {

class KeyFileError : public Error {
public:
  using Error::Error;
};

/// JSON key file: {"seed", "public_key", "address"}, all hex. The public
/// parts are redundant and checked on load, which catches corruption.
void save_key_file(const std::filesystem::path& path, const KeyPair& key);
KeyPair load_key_file(const std::filesystem::path& path);

}  // namespace esp2cs
