// Copyright 2026 The cellimit Authors
// SPDX-License-Identifier: Apache-2.0

#include "cellimit/numeric.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "cellimit/error.hpp"

namespace cellimit {

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidArgument, "non-finite coefficient");
  }
  if (value == 0.0) return Rational(0);
  int exp = 0;
  const double mant = std::frexp(value, &exp);
  // mant in [0.5, 1): scale to a 53-bit integer.
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rational result{Integer(scaled)};
  if (exp > 0) {
    result *= Rational(Integer(1) << exp);
  } else if (exp < 0) {
    result /= Rational(Integer(1) << -exp);
  }
  return result;
}

Rational parse_rational(const std::string& text) {
  const auto bad = [&] {
    return Error(ErrorCode::kInvalidArgument, "cannot parse number '" + text + "'");
  };
  if (text.empty()) throw bad();
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const Rational num = parse_rational(text.substr(0, slash));
    const Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw bad();
    return num / den;
  }
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  Integer digits = 0;
  std::int64_t scale = 0;
  bool any_digit = false;
  bool in_fraction = false;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits = digits * 10 + (ch - '0');
      if (in_fraction) ++scale;
      any_digit = true;
    } else if (ch == '.' && !in_fraction) {
      in_fraction = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw bad();
  std::int64_t exp10 = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') throw bad();
    try {
      std::size_t used = 0;
      exp10 = std::stoll(text.substr(i + 1), &used);
      if (used != text.size() - i - 1) throw bad();
    } catch (const std::logic_error&) {
      throw bad();
    }
  }
  exp10 -= scale;
  if (exp10 > 4000 || exp10 < -4000) throw bad();
  Rational result{digits};
  Integer power = 1;
  for (std::int64_t k = 0; k < (exp10 < 0 ? -exp10 : exp10); ++k) power *= 10;
  if (exp10 >= 0) {
    result *= Rational(power);
  } else {
    result /= Rational(power);
  }
  return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& value) {
  const Integer num = boost::multiprecision::numerator(value);
  const Integer den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_string(const Exponent& value) {
  if (value.denominator() == 1) return std::to_string(value.numerator());
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

double to_double(const BigFloat& value) { return value.convert_to<double>(); }

BigFloat to_big(const Rational& value) {
  return BigFloat(to_big(boost::multiprecision::numerator(value))) /
         to_big(boost::multiprecision::denominator(value));
}

BigFloat to_big(const Integer& value) {
  BigFloat out;
  mpfr_set_z(out.backend().data(), value.backend().data(), MPFR_RNDN);
  return out;
}

Integer binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return Integer(0);
  Integer out;
  mpz_bin_uiui(out.backend().data(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return out;
}

Integer round_half_up(const BigFloat& x) {
  const BigFloat shifted = floor(x + BigFloat(0.5));
  Integer out;
  mpfr_get_z(out.backend().data(), shifted.backend().data(), MPFR_RNDZ);
  return out;
}

BigFloat rational_power(const Integer& x, const Exponent& e) {
  if (x < 0) throw Error(ErrorCode::kDomainError, "negative base in rational power");
  if (e.numerator() == 0) return BigFloat(1);
  if (e.numerator() < 0) {
    return BigFloat(1) / rational_power(x, Exponent(-e.numerator(), e.denominator()));
  }
  const BigFloat base = to_big(Integer(pow(x, static_cast<unsigned>(e.numerator()))));
  if (e.denominator() == 1) return base;
  BigFloat out;
  mpfr_rootn_ui(out.backend().data(), base.backend().data(),
                static_cast<unsigned long>(e.denominator()), MPFR_RNDN);
  return out;
}

}  // namespace cellimit
