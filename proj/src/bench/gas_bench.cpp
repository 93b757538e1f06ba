#include "bench/gas_bench.hpp"

#include <json.hpp>

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include "consensus/node.hpp"
#include "contracts/contracts.hpp"
#include "contracts/registry.hpp"
#include "contracts/sealing.hpp"

namespace esp2cs::bench {

namespace {

using runtime::Rational;

class BenchChain {
public:
  explicit BenchChain(const BenchManifest& m)
      : manifest_(m),
        authority_(KeyPair::from_label("bench/authority")),
        driver_(KeyPair::from_label("bench/driver")),
        owner_(KeyPair::from_label("bench/owner")),
        node_(config()) {}

  const KeyPair& driver() const { return driver_; }
  const KeyPair& owner() const { return owner_; }
  std::uint64_t time() const { return node_.head().block.header.timestamp; }
  const runtime::WorldState& state() const { return node_.head_state(); }
  const runtime::Executor& executor() const { return node_.executor(); }

  /// Submits one transaction and seals it alone in a block at `at`.
  const runtime::Receipt& call(const KeyPair& key, ContractId c, std::string fn, Bytes args, std::uint64_t value,
                               std::uint64_t at) {
    Transaction tx;
    tx.sender = key.public_key();
    const auto* acct = node_.head_state().find_account(key.address());
    tx.nonce = acct ? acct->nonce : 0;
    tx.contract = c;
    tx.function = std::move(fn);
    tx.args = std::move(args);
    tx.value = value;
    tx.gas_price_gwei = manifest_.gas_price_gwei;
    tx.sign_with(key);
    if (auto rejected = node_.submit_transaction(tx)) {
      throw Error("bench transaction " + tx.function + " rejected: " + std::string(consensus::rejection_name(*rejected)));
    }
    node_.on_slot(at);
    node_.take_outbox();
    auto loc = node_.chain().find_tx(tx.hash());
    if (!loc) throw Error("bench transaction " + tx.function + " was not included");
    return node_.chain().find(loc->block_hash)->receipts[loc->index];
  }

  /// Next block time after the head.
  std::uint64_t next() const { return time() + manifest_.block_interval; }

private:
  consensus::NodeConfig config() const {
    consensus::GenesisConfig g;
    g.genesis_time = manifest_.genesis_time;
    g.block_interval = manifest_.block_interval;
    g.authorities = {authority_.public_key()};
    for (const auto* k : {&driver_, &owner_}) {
      g.accounts.push_back({k->address(), 1'000'000'000'000'000'000ULL, k->public_key()});
    }
    g.payment_owner = owner_.address();
    consensus::NodeConfig cfg;
    cfg.genesis = g;
    cfg.key = authority_;
    cfg.name = "bench";
    return cfg;
  }

  BenchManifest manifest_;
  KeyPair authority_;
  KeyPair driver_;
  KeyPair owner_;
  consensus::Node node_;
};

struct Measured {
  std::uint64_t gas = 0;
  std::string status;
};

std::string key_of(ContractId c, std::string_view fn) { return std::string(contract_name(c)) + "." + std::string(fn); }

std::map<std::string, Measured> measure(const BenchManifest& m) {
  using C = ContractId;
  BenchChain chain(m);
  std::map<std::string, Measured> out;
  auto record = [&](C c, std::string_view fn, const runtime::Receipt& r) {
    out[key_of(c, fn)] = {r.gas_used, r.success ? "Success" : "Reverted(" + r.revert_reason + ")"};
  };
  auto view = [&](C c, std::string_view fn, Bytes args, const Address& caller) {
    auto v = chain.executor().call_view(chain.state(), c, fn, args, chain.time(), caller);
    out[key_of(c, fn)] = {v.gas_used, "View"};
  };
  const auto& driver = chain.driver();
  const auto& owner = chain.owner();

  // PaymentManagement: deposit, partial refund request, owner drains the rest, then refunds.
  record(C::PaymentManagement, "makePayment",
         chain.call(driver, C::PaymentManagement, "makePayment", {}, m.deposit, chain.next()));
  record(C::PaymentManagement, "requestRefund",
         chain.call(driver, C::PaymentManagement, "requestRefund", encode_u64(m.refund), 0, chain.next()));
  record(C::PaymentManagement, "withdrawFunds",
         chain.call(owner, C::PaymentManagement, "withdrawFunds", {}, 0, chain.next()));
  record(C::PaymentManagement, "processRefund",
         chain.call(owner, C::PaymentManagement, "processRefund", Encoder{}.fixed(driver.address()).take(), 0,
                    chain.next()));

  // ParkingSpaceManagement: one space with one slot, one booking.
  {
    Encoder e;
    e.str(m.location).u64(m.hourly_rate);
    contracts::encode_slots(e, {{m.genesis_time, m.genesis_time + m.slot_seconds}});
    record(C::ParkingSpaceManagement, "registerParkingSpace",
           chain.call(owner, C::ParkingSpaceManagement, "registerParkingSpace", e.take(), 0, chain.next()));
  }
  const auto from = m.genesis_time + m.booking_offset;
  const auto until = from + m.booking_seconds;
  const auto window = Encoder{}.u64(0).u64(from).u64(until).take();
  view(C::ParkingSpaceManagement, "isAvailable", window, driver.address());
  record(C::ParkingSpaceManagement, "bookParkingSpace",
         chain.call(driver, C::ParkingSpaceManagement, "bookParkingSpace", window,
                    contracts::psm::booking_fee(m.hourly_rate, from, until), chain.next()));
  record(C::ParkingSpaceManagement, "releaseParkingSpace",
         chain.call(driver, C::ParkingSpaceManagement, "releaseParkingSpace", encode_u64(0), 0, chain.next()));
  record(C::ParkingSpaceManagement, "withdraw",
         chain.call(owner, C::ParkingSpaceManagement, "withdraw", encode_u64(0), 0, chain.next()));

  // VehicularCommunication: one broadcast, one sealed direct message, one unread to clear.
  Bytes content(m.message_bytes);
  for (std::size_t i = 0; i < content.size(); ++i) content[i] = static_cast<std::uint8_t>('a' + i % 26);
  record(C::VehicularCommunication, "publishMessage",
         chain.call(driver, C::VehicularCommunication, "publishMessage", Encoder{}.bytes(content).take(), 0,
                    chain.next()));
  view(C::VehicularCommunication, "readMessage", encode_u64(0), driver.address());
  Seed eph{};
  eph.fill(0x42);
  auto sealed = contracts::seal_deterministic(owner.public_key(), content, eph);
  record(C::VehicularCommunication, "sendMessage",
         chain.call(driver, C::VehicularCommunication, "sendMessage",
                    Encoder{}.fixed(owner.address()).bytes(sealed).take(), 0, chain.next()));
  view(C::VehicularCommunication, "getUnreadMessages", {}, owner.address());
  record(C::VehicularCommunication, "markAllAsRead",
         chain.call(owner, C::VehicularCommunication, "markAllAsRead", {}, 0, chain.next()));

  // AutomatedParkingPayments: one metered session of session_seconds.
  record(C::AutomatedParkingPayments, "registerParkingSpace",
         chain.call(owner, C::AutomatedParkingPayments, "registerParkingSpace", encode_u64(m.rate_per_second), 0,
                    chain.next()));
  const auto start = chain.next();
  record(C::AutomatedParkingPayments, "startParking",
         chain.call(driver, C::AutomatedParkingPayments, "startParking", encode_u64(0), 0, start));
  const auto half = start + m.session_seconds / 2;
  record(C::AutomatedParkingPayments, "calculateParkingFee",
         chain.call(driver, C::AutomatedParkingPayments, "calculateParkingFee", {}, 0, half));
  record(C::AutomatedParkingPayments, "checkAmountDue",
         chain.call(driver, C::AutomatedParkingPayments, "checkAmountDue", {}, 0, half + m.block_interval));
  record(C::AutomatedParkingPayments, "endParking",
         chain.call(driver, C::AutomatedParkingPayments, "endParking", {}, 0, start + m.session_seconds));
  return out;
}

std::string rational_text(const Rational& r, unsigned places) { return runtime::format_decimal(r, places); }

}  // namespace

BenchReport run_gas_bench(const BenchManifest& manifest) {
  const auto measured = measure(manifest);
  const auto usd_per_eth = runtime::calibrated_usd_per_eth();
  BenchReport report{manifest, {}};
  for (const auto& p : kPublishedTable) {
    const auto& got = measured.at(key_of(p.contract, p.function));
    BenchRow row;
    row.contract = p.contract;
    row.function = std::string(p.function);
    row.view = contracts::find_function(p.contract, p.function)->view;
    row.gas = got.gas;
    row.status = got.status;
    row.published_gas = p.gas;
    row.published_usd = std::string(p.usd);
    row.cost_eth = runtime::compute_cost(row.gas, manifest.gas_price_gwei);
    row.cost_usd = rational_text(runtime::compute_cost_usd(row.gas, manifest.gas_price_gwei, usd_per_eth), 3);
    row.published_gas_usd =
        rational_text(runtime::compute_cost_usd(p.gas, runtime::kCalibratedGasPriceGwei, usd_per_eth), 3);
    if (row.view) {
      row.within_tolerance = row.gas == 0 && p.gas == 0;
      row.note = "view";
    } else if (p.gas == 0) {
      row.anomaly = true;
      row.note = "paper anomaly: 0 gas for a state-changing call";
    } else {
      row.deviation = (static_cast<double>(row.gas) - static_cast<double>(p.gas)) / static_cast<double>(p.gas);
      row.within_tolerance = std::abs(*row.deviation) <= kGasTolerance;
      if (!row.within_tolerance) row.note = "OUT OF TOLERANCE";
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

const BenchRow* BenchReport::row(ContractId c, std::string_view fn) const {
  for (const auto& r : rows) {
    if (r.contract == c && r.function == fn) return &r;
  }
  return nullptr;
}

bool BenchReport::all_within() const {
  return std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.anomaly || r.within_tolerance; });
}

std::string BenchReport::to_text() const {
  std::ostringstream os;
  os << "gas bench " << manifest.version << "  price=" << manifest.gas_price_gwei
     << " gwei  usd/eth=" << runtime::kCalibratedUsdPerEth << "  tolerance=" << kGasTolerance * 100 << "%\n";
  os << std::left << std::setw(26) << "contract" << std::setw(22) << "function" << std::right << std::setw(8)
     << "gas" << std::setw(9) << "paper" << std::setw(9) << "dev%" << std::setw(14) << "eth" << std::setw(8)
     << "usd" << std::setw(10) << "paper_usd" << std::setw(10) << "eq1_usd" << "  note\n";
  for (const auto& r : rows) {
    std::ostringstream dev;
    if (r.deviation) dev << std::fixed << std::setprecision(1) << *r.deviation * 100;
    else dev << "-";
    os << std::left << std::setw(26) << contract_name(r.contract) << std::setw(22) << r.function << std::right
       << std::setw(8) << r.gas << std::setw(9) << r.published_gas << std::setw(9) << dev.str() << std::setw(14)
       << rational_text(r.cost_eth, 9) << std::setw(8) << r.cost_usd << std::setw(10) << r.published_usd
       << std::setw(10) << r.published_gas_usd << "  " << r.note << "\n";
  }
  os << "result: " << (all_within() ? "all rows within tolerance" : "rows out of tolerance") << "\n";
  return os.str();
}

std::string BenchReport::to_json() const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["manifest"] = {{"version", manifest.version},
                   {"gas_price_gwei", manifest.gas_price_gwei},
                   {"usd_per_eth", runtime::kCalibratedUsdPerEth},
                   {"message_bytes", manifest.message_bytes},
                   {"deposit", manifest.deposit},
                   {"refund", manifest.refund},
                   {"hourly_rate", manifest.hourly_rate},
                   {"booking_seconds", manifest.booking_seconds},
                   {"rate_per_second", manifest.rate_per_second},
                   {"session_seconds", manifest.session_seconds}};
  j["tolerance"] = kGasTolerance;
  j["rows"] = ordered_json::array();
  for (const auto& r : rows) {
    j["rows"].push_back({{"contract", contract_name(r.contract)},
                         {"function", r.function},
                         {"view", r.view},
                         {"gas", r.gas},
                         {"published_gas", r.published_gas},
                         {"deviation", r.deviation ? ordered_json(*r.deviation) : ordered_json(nullptr)},
                         {"within_tolerance", r.within_tolerance},
                         {"anomaly", r.anomaly},
                         {"cost_eth", rational_text(r.cost_eth, 9)},
                         {"cost_usd", r.cost_usd},
                         {"published_usd", r.published_usd},
                         {"published_gas_usd", r.published_gas_usd},
                         {"status", r.status},
                         {"note", r.note}});
  }
  j["all_within"] = all_within();
  return j.dump(2) + "\n";
}

}  // namespace esp2cs::bench
