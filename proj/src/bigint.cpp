#include "indep/bigint.hpp"

#include <cmath>

namespace indep {

BigInt pow2(std::uint32_t exponent) {
  BigInt r = 1;
  r <<= exponent;
  return r;
}

double to_double(const BigInt& value) { return value.convert_to<double>(); }

double to_double(const Rational& value) {
  return boost::multiprecision::numerator(value).convert_to<double>() /
         boost::multiprecision::denominator(value).convert_to<double>();
}

BigInt ceil_exp2(double log2_value) {
  if (!(log2_value > 0.0)) return 1;
  if (log2_value < 62.0) {
    return BigInt(static_cast<std::uint64_t>(std::ceil(std::exp2(log2_value))));
  }
  // Split into an integer exponent and a 53-bit mantissa so the result stays exact.
  const double whole = std::floor(log2_value);
  const double mantissa = std::exp2(log2_value - whole);  // in [1, 2)
  const auto scaled = static_cast<std::uint64_t>(std::ceil(mantissa * 0x1.0p52));
  const auto shift = static_cast<std::int64_t>(whole) - 52;
  BigInt r = scaled;
  r <<= static_cast<unsigned>(shift);
  return r;
}

std::string to_string(const BigInt& value) { return value.str(); }

}  // namespace indep
