// Copyright 2026 The cellimit Authors
// SPDX-License-Identifier: Apache-2.0

#include "cellimit/exact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cellimit/error.hpp"

namespace cellimit {

namespace {

constexpr double kTailCutoff = 1e-300;
// Relative cutoff when walking a hypergeometric row away from its mode.
constexpr double kRowCutoff = 1e-305;

struct HypergeomSupport {
  std::int64_t lo;
  std::int64_t hi;
};

HypergeomSupport hypergeom_support(std::int64_t n, std::int64_t successes, std::int64_t draws) {
  return {std::max<std::int64_t>(0, draws + successes - n), std::min(successes, draws)};
}

void check_hypergeom_args(std::int64_t n, std::int64_t successes, std::int64_t draws) {
  if (n < 0 || successes < 0 || draws < 0) {
    throw Error(ErrorCode::kDomainError, "hypergeometric arguments must be nonnegative");
  }
  if (successes > n || draws > n) {
    throw Error(ErrorCode::kDomainError, "hypergeometric successes and draws must not exceed n");
  }
}

// Normalized hypergeometric row written into `row`, indexed from `first`.
// Walks outward from the mode with the term ratio
//   p(y+1)/p(y) = (K-y)(d-y) / ((y+1)(n-K-d+y+1)),
// so no factorials are formed and the result is accurate to a few ulps per
// step for any n.
void hypergeom_row(std::int64_t n, std::int64_t successes, std::int64_t draws,
                   std::int64_t& first, std::vector<double>& row) {
  const auto [lo, hi] = hypergeom_support(n, successes, draws);
  const long double approx_mode =
      std::floor(static_cast<long double>(draws + 1) * static_cast<long double>(successes + 1) /
                 static_cast<long double>(n + 2));
  const std::int64_t mode =
      std::clamp(static_cast<std::int64_t>(approx_mode), lo, hi);
  const double K = static_cast<double>(successes);
  const double d = static_cast<double>(draws);
  const double rest = static_cast<double>(n - successes - draws);

  std::vector<double> below;  // p(mode-1), p(mode-2), ...
  double value = 1.0;
  for (std::int64_t y = mode; y > lo; --y) {
    const double yd = static_cast<double>(y);
    value *= yd * (rest + yd) / ((K - yd + 1.0) * (d - yd + 1.0));
    if (value < kRowCutoff) break;
    below.push_back(value);
  }
  std::vector<double> above;  // p(mode+1), ...
  value = 1.0;
  for (std::int64_t y = mode; y < hi; ++y) {
    const double yd = static_cast<double>(y);
    value *= (K - yd) * (d - yd) / ((yd + 1.0) * (rest + yd + 1.0));
    if (value < kRowCutoff) break;
    above.push_back(value);
  }
  first = mode - static_cast<std::int64_t>(below.size());
  row.assign(below.rbegin(), below.rend());
  row.push_back(1.0);
  row.insert(row.end(), above.begin(), above.end());
  double total = 0.0;
  for (const double p : row) total += p;
  for (double& p : row) p /= total;
}

ExactPmf hypergeom_exact_unchecked(std::int64_t n, std::int64_t successes, std::int64_t draws) {
  const auto [lo, hi] = hypergeom_support(n, successes, draws);
  ExactPmf pmf;
  pmf.offset = lo;
  pmf.probs.reserve(static_cast<std::size_t>(hi - lo + 1));
  Rational p(binomial(successes, lo) * binomial(n - successes, draws - lo), binomial(n, draws));
  pmf.probs.push_back(p);
  for (std::int64_t y = lo; y < hi; ++y) {
    p *= Rational(Integer(successes - y) * Integer(draws - y),
                  Integer(y + 1) * Integer(n - successes - draws + y + 1));
    pmf.probs.push_back(p);
  }
  return pmf;
}

void check_support_cap(const MarginVector& mv, const CellPmfOptions& options) {
  const auto [lo, hi] = cell_support(mv);
  if (hi - lo + 1 > options.support_cap) {
    throw Error(ErrorCode::kResourceLimit,
                "support width " + std::to_string(hi - lo + 1) + " exceeds cap " +
                    std::to_string(options.support_cap));
  }
}

}  // namespace

double Pmf::prob(std::int64_t x) const {
  if (x < lowest() || x > highest()) return 0.0;
  return probs[static_cast<std::size_t>(x - offset)];
}

double Pmf::cdf(std::int64_t x) const {
  double total = 0.0;
  for (std::int64_t y = offset; y <= std::min(x, highest()); ++y) total += prob(y);
  return total;
}

double Pmf::mean() const {
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) total += static_cast<double>(i) * probs[i];
  return static_cast<double>(offset) + total;
}

double Pmf::variance() const {
  const double mu = mean() - static_cast<double>(offset);
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double dev = static_cast<double>(i) - mu;
    total += dev * dev * probs[i];
  }
  return total;
}

Pmf Pmf::affine(int sign, std::int64_t shift) const {
  Pmf out = *this;
  if (sign >= 0) {
    out.offset = offset + shift;
  } else {
    out.offset = shift - highest();
    std::reverse(out.probs.begin(), out.probs.end());
  }
  return out;
}

Rational ExactPmf::prob(std::int64_t x) const {
  const auto idx = x - offset;
  if (idx < 0 || idx >= static_cast<std::int64_t>(probs.size())) return Rational(0);
  return probs[static_cast<std::size_t>(idx)];
}

Rational ExactPmf::mean() const {
  Rational total = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    total += probs[i] * Rational(offset + static_cast<std::int64_t>(i));
  }
  return total;
}

Rational ExactPmf::variance() const {
  const Rational mu = mean();
  Rational total = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const Rational dev = Rational(offset + static_cast<std::int64_t>(i)) - mu;
    total += dev * dev * probs[i];
  }
  return total;
}

ExactPmf ExactPmf::affine(int sign, std::int64_t shift) const {
  ExactPmf out = *this;
  if (sign >= 0) {
    out.offset = offset + shift;
  } else {
    out.offset = shift - (offset + static_cast<std::int64_t>(probs.size()) - 1);
    std::reverse(out.probs.begin(), out.probs.end());
  }
  return out;
}

Pmf ExactPmf::to_float() const {
  Pmf out;
  out.offset = offset;
  out.probs.reserve(probs.size());
  for (const Rational& p : probs) out.probs.push_back(to_double(p));
  return out;
}

ExactPmf hypergeom_pmf_exact(std::int64_t n, std::int64_t successes, std::int64_t draws) {
  check_hypergeom_args(n, successes, draws);
  return hypergeom_exact_unchecked(n, successes, draws);
}

Pmf hypergeom_pmf(std::int64_t n, std::int64_t successes, std::int64_t draws) {
  check_hypergeom_args(n, successes, draws);
  Pmf pmf;
  hypergeom_row(n, successes, draws, pmf.offset, pmf.probs);
  return pmf;
}

std::pair<std::int64_t, std::int64_t> cell_support(const MarginVector& mv) {
  std::int64_t lo = mv.a(0);
  for (std::size_t k = 1; k < mv.m(); ++k) lo = std::max<std::int64_t>(0, lo + mv.a(k) - mv.n());
  return {lo, mv.a(0)};
}

ExactPmf cell_pmf_exact(const MarginVector& mv, const CellPmfOptions& options) {
  check_support_cap(mv, options);
  const std::int64_t n = mv.n();
  ExactPmf cur;
  cur.offset = mv.a(0);
  cur.probs = {Rational(1)};
  for (std::size_t k = 1; k < mv.m(); ++k) {
    const std::int64_t draws = mv.a(k);
    const std::int64_t hi = std::min(cur.offset + static_cast<std::int64_t>(cur.probs.size()) - 1, draws);
    const std::int64_t lo = std::max<std::int64_t>(0, cur.offset + draws - n);
    ExactPmf next;
    next.offset = lo;
    next.probs.assign(static_cast<std::size_t>(hi - lo + 1), Rational(0));
    for (std::size_t i = 0; i < cur.probs.size(); ++i) {
      if (cur.probs[i] == 0) continue;
      const std::int64_t x = cur.offset + static_cast<std::int64_t>(i);
      const ExactPmf row = hypergeom_exact_unchecked(n, x, draws);
      for (std::size_t j = 0; j < row.probs.size(); ++j) {
        next.probs[static_cast<std::size_t>(row.offset - lo) + j] += cur.probs[i] * row.probs[j];
      }
    }
    cur = std::move(next);
  }
  while (!cur.probs.empty() && cur.probs.back() == 0) cur.probs.pop_back();
  std::size_t lead = 0;
  while (lead < cur.probs.size() && cur.probs[lead] == 0) ++lead;
  cur.probs.erase(cur.probs.begin(), cur.probs.begin() + static_cast<std::ptrdiff_t>(lead));
  cur.offset += static_cast<std::int64_t>(lead);
  return cur;
}

Pmf cell_pmf(const MarginVector& mv, const CellPmfOptions& options) {
  check_support_cap(mv, options);
  const std::int64_t n = mv.n();
  Pmf cur;
  cur.offset = mv.a(0);
  cur.probs = {1.0};
  std::vector<double> row;
  for (std::size_t k = 1; k < mv.m(); ++k) {
    const std::int64_t draws = mv.a(k);
    const std::int64_t hi = std::min(cur.highest(), draws);
    const std::int64_t lo = std::max<std::int64_t>(0, cur.offset + draws - n);
    Pmf next;
    next.offset = lo;
    next.probs.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (std::size_t i = 0; i < cur.probs.size(); ++i) {
      const double weight = cur.probs[i];
      if (weight == 0.0) continue;
      std::int64_t first = 0;
      hypergeom_row(n, cur.offset + static_cast<std::int64_t>(i), draws, first, row);
      double* dst = next.probs.data() + (first - lo);
      for (std::size_t j = 0; j < row.size(); ++j) dst[j] += weight * row[j];
    }
    // Trim the exact zeros left by row truncation.
    std::size_t lead = 0;
    while (lead + 1 < next.probs.size() && next.probs[lead] == 0.0) ++lead;
    while (next.probs.size() > lead + 1 && next.probs.back() == 0.0) next.probs.pop_back();
    next.probs.erase(next.probs.begin(), next.probs.begin() + static_cast<std::ptrdiff_t>(lead));
    next.offset += static_cast<std::int64_t>(lead);
    cur = std::move(next);
  }
  double cut = 0.0;
  std::size_t lead = 0;
  while (lead + 1 < cur.probs.size() && cur.probs[lead] < kTailCutoff) cut += cur.probs[lead++];
  while (cur.probs.size() > lead + 1 && cur.probs.back() < kTailCutoff) {
    cut += cur.probs.back();
    cur.probs.pop_back();
  }
  cur.probs.erase(cur.probs.begin(), cur.probs.begin() + static_cast<std::ptrdiff_t>(lead));
  cur.offset += static_cast<std::int64_t>(lead);
  cur.truncated_mass = cut;
  return cur;
}

MomentSequence moments_recursive(const MarginVector& mv) {
  const Rational n(mv.n());
  MomentSequence out;
  out.E.push_back(Rational(mv.a(0)));
  out.V.push_back(Rational(0));
  for (std::size_t k = 1; k < mv.m(); ++k) {
    const Rational ak(mv.a(k));
    const Rational& e_prev = out.E.back();
    const Rational& v_prev = out.V.back();
    const Rational between = ak * (n - ak) * e_prev * (n - e_prev) / (n * n * (n - 1));
    const Rational within = ak * (ak - 1) / (n * (n - 1)) * v_prev;
    out.V.push_back(between + within);
    out.E.push_back(ak / n * e_prev);
  }
  return out;
}

Rational variance_m2(std::int64_t n, std::int64_t a1, std::int64_t a2) {
  if (n < 2 || a1 < 1 || a2 < 1 || a1 > n - 1 || a2 > n - 1) {
    throw Error(ErrorCode::kDomainError, "variance_m2 needs 1 <= a1, a2 <= n-1");
  }
  const Integer nn(n);
  return Rational(Integer(a1) * Integer(a2) * (nn - a1) * (nn - a2), nn * nn * (nn - 1));
}

}  // namespace cellimit
