#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ufg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "num/den" in lowest terms; zero renders as "0/1".
std::string to_fraction_string(const Rational& value);

// Accepts "num/den" or a plain integer.
Rational parse_fraction(std::string_view text);

double to_double(const Rational& value);

// Rounded half away from zero to `places` decimals, e.g. "0.7000".
std::string to_decimal_string(const Rational& value, int places = 4);

}  // namespace ufg
