#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace esp2cs::runtime {

using Rational = boost::multiprecision::cpp_rational;

/// Gas price and exchange rate whose product reproduces the published cost
/// column: k = 7 Gwei * 1818.57 USD/ETH * 1e-9 = 1.2730e-5 USD per gas.
inline constexpr std::uint64_t kCalibratedGasPriceGwei = 7;
inline constexpr std::string_view kCalibratedUsdPerEth = "1818.57";

struct CostQuote {
  std::uint64_t gas = 0;
  std::uint64_t gas_price_gwei = 0;
  Rational cost_eth;
  Rational cost_usd;
};

/// C = G * P * 1e-9 ETH, exact.
Rational compute_cost(std::uint64_t gas, std::uint64_t gas_price_gwei);
Rational compute_cost_usd(std::uint64_t gas, std::uint64_t gas_price_gwei, const Rational& usd_per_eth);
CostQuote quote(std::uint64_t gas, std::uint64_t gas_price_gwei, const Rational& usd_per_eth);

/// Parses a plain decimal literal such as "1818.57" into an exact rational.
Rational parse_decimal(std::string_view text);
/// Rounds half away from zero to `places` fractional digits.
std::string format_decimal(const Rational& value, unsigned places);

inline Rational calibrated_usd_per_eth() { return parse_decimal(kCalibratedUsdPerEth); }

}  // namespace esp2cs::runtime
