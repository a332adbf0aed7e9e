// Copyright 2026 The cellimit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace cellimit {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
// 80 decimal digits, roughly 266 bits of mantissa.
using BigFloat = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<80>>;

/// Rational exponent of a power-sum term (n^gamma).
using Exponent = boost::rational<std::int64_t>;

/// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double value);

/// Parses "p/q", "p" or a decimal literal ("0.25", "-1.5e-3") exactly.
Rational parse_rational(const std::string& text);

/// "numerator/denominator" (denominator omitted when it is 1).
std::string to_string(const Rational& value);
std::string to_string(const Exponent& value);

double to_double(const Rational& value);
double to_double(const BigFloat& value);

BigFloat to_big(const Rational& value);
BigFloat to_big(const Integer& value);

/// C(n, k) as an exact integer, zero outside 0 <= k <= n.
Integer binomial(std::int64_t n, std::int64_t k);

/// floor(x + 1/2).
Integer round_half_up(const BigFloat& x);

/// x^(p/q) for x >= 0, correctly rounded root of the exact power.
BigFloat rational_power(const Integer& x, const Exponent& e);

}  // namespace cellimit
