#include "runtime/gas_meter.hpp"

#include <algorithm>
#include <array>

namespace esp2cs::runtime {

namespace {
constexpr std::size_t kWord = 32;

std::array<std::uint8_t, kWord> word_at(ByteView v, std::size_t i) {
  std::array<std::uint8_t, kWord> w{};
  auto start = i * kWord;
  if (start < v.size()) {
    auto n = std::min(kWord, v.size() - start);
    std::copy_n(v.begin() + static_cast<std::ptrdiff_t>(start), n, w.begin());
  }
  return w;
}

bool zero_word(const std::array<std::uint8_t, kWord>& w) {
  return std::all_of(w.begin(), w.end(), [](std::uint8_t b) { return b == 0; });
}
}  // namespace

void GasSchedule::validate() const {
  for (auto v : {tx_base, calldata_per_byte, sstore_new, sstore_update, sload, log_base, log_per_topic,
                 log_per_byte, sstore_clear_refund, refund_quotient}) {
    if (v == 0) throw Error("gas schedule entries must be strictly positive");
  }
}

std::size_t storage_words(std::size_t bytes) { return (bytes + kWord - 1) / kWord; }

void GasMeter::charge(std::uint64_t amount) {
  if (amount > limit_ - consumed_) {
    consumed_ = limit_;
    throw OutOfGas();
  }
  consumed_ += amount;
}

void GasMeter::charge_store(ByteView old_value, ByteView new_value) {
  auto words = std::max<std::size_t>(
      1, std::max(storage_words(old_value.size()), storage_words(new_value.size())));
  for (std::size_t i = 0; i < words; ++i) {
    auto before = word_at(old_value, i);
    auto after = word_at(new_value, i);
    if (before == after) {
      charge(schedule_.sload);
    } else if (zero_word(before)) {
      charge(schedule_.sstore_new);
    } else {
      charge(schedule_.sstore_update);
      if (zero_word(after)) add_refund(schedule_.sstore_clear_refund);
    }
  }
}

void GasMeter::charge_load(ByteView value) {
  charge(schedule_.sload * std::max<std::size_t>(1, storage_words(value.size())));
}

void GasMeter::charge_log(std::size_t topics, std::size_t data_bytes) {
  charge(schedule_.log_base + schedule_.log_per_topic * topics + schedule_.log_per_byte * data_bytes);
}

std::uint64_t GasMeter::net_used() const {
  return consumed_ - std::min(refund_, consumed_ / schedule_.refund_quotient);
}

}  // namespace esp2cs::runtime
