#include "ledger/block_log.hpp"

#include <iterator>

#include "ledger/encoding.hpp"

namespace esp2cs {

BlockLog::BlockLog(std::filesystem::path path) : path_(std::move(path)) {
  out_.open(path_, std::ios::binary | std::ios::app);
  if (!out_) throw Error("cannot open block log " + path_.string());
}

void BlockLog::append(const Block& block) {
  auto body = block.encode();
  auto len = encode_u64(body.size());
  out_.write(reinterpret_cast<const char*>(len.data()), static_cast<std::streamsize>(len.size()));
  out_.write(reinterpret_cast<const char*>(body.data()), static_cast<std::streamsize>(body.size()));
  out_.flush();
  if (!out_) throw Error("write to block log failed");
}

std::vector<Block> BlockLog::load() const {
  std::ifstream in(path_, std::ios::binary);
  if (!in) throw Error("cannot read block log " + path_.string());
  Bytes data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  Decoder dec(data);
  std::vector<Block> blocks;
  while (!dec.done()) {
    auto len = dec.u64();
    if (len > dec.remaining()) throw DecodeError("truncated block record");
    blocks.push_back(decode_block(dec.raw(static_cast<std::size_t>(len))));
  }
  return blocks;
}

}  // namespace esp2cs
