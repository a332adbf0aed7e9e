// Copyright 2026 The cellimit Authors
// SPDX-License-Identifier: Apache-2.0

#include "cellimit/series.hpp"

#include <algorithm>

#include "cellimit/error.hpp"

namespace cellimit {

PowerSeries PowerSeries::constant(const Rational& c) { return monomial(c, Exponent(0)); }

PowerSeries PowerSeries::monomial(const Rational& c, const Exponent& e) {
  PowerSeries s;
  if (c != 0) s.terms_.emplace(e, c);
  return s;
}

PowerSeries PowerSeries::grand_total() { return monomial(Rational(1), Exponent(1)); }

PowerSeries PowerSeries::reciprocal_n_minus_one(int terms) {
  PowerSeries s;
  for (int k = 1; k <= terms; ++k) s.terms_.emplace(Exponent(-k), Rational(1));
  s.remainder_ = Exponent(-terms - 1);
  return s;
}

std::optional<std::pair<Exponent, Rational>> PowerSeries::leading() const {
  if (terms_.empty()) {
    if (exact()) return std::nullopt;
    throw Error(ErrorCode::kUnclassifiable,
                "expansion truncated before its leading term (remainder O(n^" +
                    cellimit::to_string(*remainder_) + "))");
  }
  return *terms_.begin();
}

Rational PowerSeries::coefficient(const Exponent& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

PowerSeries PowerSeries::terms_at_least(const Exponent& e) const {
  PowerSeries s;
  for (const auto& [exp, c] : terms_) {
    if (exp >= e) s.terms_.emplace(exp, c);
  }
  return s;
}

PowerSeries PowerSeries::times_power(const Exponent& e) const {
  PowerSeries s;
  for (const auto& [exp, c] : terms_) s.terms_.emplace(exp + e, c);
  if (remainder_) s.remainder_ = *remainder_ + e;
  return s;
}

PowerSeries PowerSeries::with_remainder(const Exponent& r) const {
  PowerSeries s = *this;
  s.remainder_ = remainder_ ? std::max(*remainder_, r) : r;
  s.normalize();
  return s;
}

BigFloat PowerSeries::evaluate(const BigFloat& n) const {
  BigFloat sum = 0;
  for (const auto& [exp, c] : terms_) {
    BigFloat power;
    if (exp.denominator() == 1) {
      power = pow(n, BigFloat(exp.numerator()));
    } else {
      power = pow(n, BigFloat(exp.numerator()) / BigFloat(exp.denominator()));
    }
    sum += to_big(c) * power;
  }
  return sum;
}

namespace {

std::string power_string(const Exponent& e) {
  if (e == Exponent(1)) return "n";
  if (e.denominator() == 1 && e.numerator() > 0) return "n^" + cellimit::to_string(e);
  return "n^(" + cellimit::to_string(e) + ")";
}

std::string term_string(const Exponent& e, const Rational& c) {
  if (e == Exponent(0)) return cellimit::to_string(c);
  const std::string power = power_string(e);
  const Integer num = boost::multiprecision::numerator(c);
  const Integer den = boost::multiprecision::denominator(c);
  if (den == 1) {
    if (num == 1) return power;
    if (num == -1) return "-" + power;
    return num.str() + "*" + power;
  }
  if (num == 1) return power + "/" + den.str();
  if (num == -1) return "-" + power + "/" + den.str();
  return cellimit::to_string(c) + "*" + power;
}

}  // namespace

std::string PowerSeries::to_string() const {
  std::string out;
  for (const auto& [exp, c] : terms_) {
    std::string term = term_string(exp, c);
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  if (remainder_) {
    const std::string big_o = "O(" + power_string(*remainder_) + ")";
    out = out.empty() ? big_o : out + " + " + big_o;
  }
  return out.empty() ? "0" : out;
}

PowerSeries PowerSeries::operator-() const {
  PowerSeries s = *this;
  for (auto& [exp, c] : s.terms_) c = -c;
  return s;
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& rhs) {
  for (const auto& [exp, c] : rhs.terms_) terms_[exp] += c;
  if (rhs.remainder_) remainder_ = remainder_ ? std::max(*remainder_, *rhs.remainder_) : *rhs.remainder_;
  normalize();
  return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& rhs) { return *this += -rhs; }

PowerSeries& PowerSeries::operator*=(const PowerSeries& rhs) {
  if (is_zero() || rhs.is_zero()) {
    *this = PowerSeries();
    return *this;
  }
  std::optional<Exponent> remainder;
  const auto widen = [&remainder](const Exponent& r) {
    remainder = remainder ? std::max(*remainder, r) : r;
  };
  if (remainder_) widen(*remainder_ + *rhs.growth_bound());
  if (rhs.remainder_) widen(*rhs.remainder_ + *growth_bound());

  Terms product;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : rhs.terms_) product[e1 + e2] += c1 * c2;
  }
  terms_ = std::move(product);
  remainder_ = remainder;
  normalize();
  return *this;
}

std::optional<Exponent> PowerSeries::growth_bound() const {
  std::optional<Exponent> bound = remainder_;
  if (!terms_.empty()) {
    const Exponent top = terms_.begin()->first;
    bound = bound ? std::max(*bound, top) : top;
  }
  return bound;
}

void PowerSeries::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0 || (remainder_ && it->first <= *remainder_)) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

int asymptotic_compare(const PowerSeries& lhs, const PowerSeries& rhs) {
  if (!lhs.exact() || !rhs.exact()) {
    throw Error(ErrorCode::kSpecError, "asymptotic comparison needs exact power sums");
  }
  const auto lead = (lhs - rhs).leading();
  if (!lead) return 0;
  return lead->second > 0 ? 1 : -1;
}

}  // namespace cellimit
