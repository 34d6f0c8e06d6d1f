#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace indep {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt pow2(std::uint32_t exponent);

double to_double(const BigInt& value);
double to_double(const Rational& value);

/// An integer >= 2^log2_value and >= 1. Exact ceiling below 2^62; above that
/// the mantissa is rounded up at 52 bits.
BigInt ceil_exp2(double log2_value);

std::string to_string(const BigInt& value);

}  // namespace indep
