#include "ufg/rational.hpp"

#include <string>

#include "ufg/errors.hpp"

namespace ufg {

std::string to_fraction_string(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational parse_fraction(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    if (part.empty()) {
      throw Error(ErrorCode::kParseError,
                  "malformed fraction '" + std::string(text) + "'");
    }
    std::size_t start = (part.front() == '-' || part.front() == '+') ? 1 : 0;
    if (start == part.size()) {
      throw Error(ErrorCode::kParseError,
                  "malformed fraction '" + std::string(text) + "'");
    }
    for (std::size_t i = start; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') {
        throw Error(ErrorCode::kParseError,
                    "malformed fraction '" + std::string(text) + "'");
      }
    }
    return BigInt(std::string(part));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) {
    throw Error(ErrorCode::kParseError, "zero denominator in '" +
                                            std::string(text) + "'");
  }
  return Rational(num, den);
}

double to_double(const Rational& value) {
  return value.convert_to<double>();
}

std::string to_decimal_string(const Rational& value, int places) {
  BigInt scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const bool negative = value < 0;
  const Rational magnitude = negative ? Rational(-value) : value;
  const BigInt num = numerator(magnitude) * scale;
  const BigInt den = denominator(magnitude);
  BigInt q = num / den;
  const BigInt r = num % den;
  if (2 * r >= den) ++q;

  std::string digits = q.str();
  if (places > 0) {
    if (static_cast<int>(digits.size()) <= places) {
      digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(),
                    '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  if (negative && q != 0) digits.insert(0, "-");
  return digits;
}

}  // namespace ufg
