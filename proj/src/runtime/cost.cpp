#include "runtime/cost.hpp"

#include <cctype>

#include "ledger/bytes.hpp"

namespace esp2cs::runtime {

using boost::multiprecision::cpp_int;

Rational compute_cost(std::uint64_t gas, std::uint64_t gas_price_gwei) {
  return Rational(cpp_int(gas) * gas_price_gwei, cpp_int(1'000'000'000));
}

Rational compute_cost_usd(std::uint64_t gas, std::uint64_t gas_price_gwei,
                          const Rational& usd_per_eth) {
  return compute_cost(gas, gas_price_gwei) * usd_per_eth;
}

CostQuote quote(std::uint64_t gas, std::uint64_t gas_price_gwei, const Rational& usd_per_eth) {
  return {gas, gas_price_gwei, compute_cost(gas, gas_price_gwei),
          compute_cost_usd(gas, gas_price_gwei, usd_per_eth)};
}

Rational parse_decimal(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) throw Error("empty decimal");
  cpp_int numer = 0;
  cpp_int denom = 1;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_point) throw Error("malformed decimal");
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) throw Error("malformed decimal");
    seen_digit = true;
    numer = numer * 10 + (c - '0');
    if (seen_point) denom *= 10;
  }
  if (!seen_digit) throw Error("malformed decimal");
  Rational r(numer, denom);
  return negative ? Rational(-r) : r;
}

std::string format_decimal(const Rational& value, unsigned places) {
  cpp_int scale = 1;
  for (unsigned i = 0; i < places; ++i) scale *= 10;
  cpp_int num = boost::multiprecision::numerator(value) * scale;
  cpp_int den = boost::multiprecision::denominator(value);
  bool negative = num < 0;
  if (negative) num = -num;
  cpp_int q = num / den;
  cpp_int r = num % den;
  if (r * 2 >= den) q += 1;
  std::string digits = q.str();
  if (places > 0) {
    if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
    digits.insert(digits.size() - places, ".");
  }
  if (negative && q != 0) digits.insert(0, "-");
  return digits;
}

}  // namespace esp2cs::runtime
