#pragma once

#include <filesystem>
#include <fstream>
#include <vector>

#include "ledger/block.hpp"

namespace esp2cs {

/// Append-only chain file: each record is an 8-byte little-endian length
/// followed by the canonical block encoding.
class BlockLog {
public:
  explicit BlockLog(std::filesystem::path path);

  void append(const Block& block);
  /// Reads every record. A truncated trailing record raises DecodeError.
  [[nodiscard]] std::vector<Block> load() const;
  [[nodiscard]] const std::filesystem::path& path() const { return path_; }

private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace esp2cs
