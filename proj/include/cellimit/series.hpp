// Copyright 2026 The cellimit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "cellimit/numeric.hpp"

namespace cellimit {

/// A finite sum  sum_k c_k n^{e_k}  with exact rational coefficients and
/// rational exponents, optionally followed by a remainder O(n^r).
///
/// Margin growth specifications are exact power sums. Asymptotic expansions
/// (for instance 1/(n-1)) carry a remainder; arithmetic propagates it so that
/// every stored term is guaranteed correct. Terms never have a zero
/// coefficient and never sit at or below the remainder exponent.
class PowerSeries {
 public:
  using Terms = std::map<Exponent, Rational, std::greater<>>;

  PowerSeries() = default;

  static PowerSeries constant(const Rational& c);
  static PowerSeries monomial(const Rational& c, const Exponent& e);
  /// The grand total n itself.
  static PowerSeries grand_total();
  /// n^{-1} + n^{-2} + ... + n^{-terms} + O(n^{-terms-1}).
  static PowerSeries reciprocal_n_minus_one(int terms);

  const Terms& terms() const { return terms_; }
  const std::optional<Exponent>& remainder() const { return remainder_; }
  bool exact() const { return !remainder_.has_value(); }
  bool is_zero() const { return exact() && terms_.empty(); }

  /// Largest exponent with a known nonzero coefficient. Returns nullopt for
  /// the exact zero series; throws Unclassifiable when every term has been
  /// absorbed by the remainder.
  std::optional<std::pair<Exponent, Rational>> leading() const;

  Rational coefficient(const Exponent& e) const;

  /// Exact series made of the terms with exponent >= e.
  PowerSeries terms_at_least(const Exponent& e) const;

  /// Multiplies by n^e.
  PowerSeries times_power(const Exponent& e) const;

  /// Adds the O(n^r) remainder, dropping terms it absorbs.
  PowerSeries with_remainder(const Exponent& r) const;

  /// Evaluates the known terms at n (the remainder is ignored).
  BigFloat evaluate(const BigFloat& n) const;

  /// Human-readable form, e.g. "-n + 3*n^(1/2) + n^(1/4)".
  std::string to_string() const;

  PowerSeries operator-() const;
  PowerSeries& operator+=(const PowerSeries& rhs);
  PowerSeries& operator-=(const PowerSeries& rhs);
  PowerSeries& operator*=(const PowerSeries& rhs);

  friend PowerSeries operator+(PowerSeries lhs, const PowerSeries& rhs) { return lhs += rhs; }
  friend PowerSeries operator-(PowerSeries lhs, const PowerSeries& rhs) { return lhs -= rhs; }
  friend PowerSeries operator*(PowerSeries lhs, const PowerSeries& rhs) { return lhs *= rhs; }
  friend bool operator==(const PowerSeries& lhs, const PowerSeries& rhs) {
    return lhs.terms_ == rhs.terms_ && lhs.remainder_ == rhs.remainder_;
  }

 private:
  // Upper bound on the growth exponent of the whole series (terms and
  // remainder); nullopt for the exact zero series.
  std::optional<Exponent> growth_bound() const;
  void normalize();

  Terms terms_;
  std::optional<Exponent> remainder_;
};

/// Sign of the leading coefficient of lhs - rhs (0 when identical). Both
/// operands must be exact.
int asymptotic_compare(const PowerSeries& lhs, const PowerSeries& rhs);

}  // namespace cellimit
