// Copyright 2026 The cellimit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "cellimit/model.hpp"
#include "cellimit/numeric.hpp"

namespace cellimit {

enum class Arithmetic { kExact, kLogFloat };

/// Floating-point law on the integers offset, offset+1, ... Entries below
/// 1e-300 are cut from the tails and their total kept in truncated_mass.
struct Pmf {
  std::int64_t offset = 0;
  std::vector<double> probs;
  double truncated_mass = 0.0;

  std::int64_t lowest() const { return offset; }
  std::int64_t highest() const { return offset + static_cast<std::int64_t>(probs.size()) - 1; }
  double prob(std::int64_t x) const;
  double cdf(std::int64_t x) const;
  double mean() const;
  double variance() const;
  /// Law of sign * X + shift, sign in {-1, +1}.
  Pmf affine(int sign, std::int64_t shift) const;
};

/// Exact rational law; the first and last entries are nonzero.
struct ExactPmf {
  std::int64_t offset = 0;
  std::vector<Rational> probs;

  Rational prob(std::int64_t x) const;
  Rational mean() const;
  Rational variance() const;
  ExactPmf affine(int sign, std::int64_t shift) const;
  Pmf to_float() const;
};

/// E_1..E_m and V_1..V_m of the running intersections X^{(k)}.
struct MomentSequence {
  std::vector<Rational> E;
  std::vector<Rational> V;
};

struct CellPmfOptions {
  /// Largest admissible support width of X_1.
  std::int64_t support_cap = 1'000'000;
};

/// Hypergeometric(n, successes, draws) law.
ExactPmf hypergeom_pmf_exact(std::int64_t n, std::int64_t successes, std::int64_t draws);
Pmf hypergeom_pmf(std::int64_t n, std::int64_t successes, std::int64_t draws);

/// Law of X_1 by propagating the hypergeometric chain
///   X^{(1)} = a_1,  X^{(k)} | X^{(k-1)} = x  ~  Hypergeometric(n, x, a_k).
/// Cost is O(m * w^2) where w is the support width, which is bounded by the
/// smallest margin; that is what makes n = 10^8 instances tractable.
ExactPmf cell_pmf_exact(const MarginVector& mv, const CellPmfOptions& options = {});
Pmf cell_pmf(const MarginVector& mv, const CellPmfOptions& options = {});

/// Nominal support [max(0, sum a_i - (m-1) n), a_1] of X_1.
std::pair<std::int64_t, std::int64_t> cell_support(const MarginVector& mv);

MomentSequence moments_recursive(const MarginVector& mv);

/// Variance of the two-collector cell, a1 a2 (n-a1)(n-a2) / (n^2 (n-1)).
Rational variance_m2(std::int64_t n, std::int64_t a1, std::int64_t a2);

}  // namespace cellimit
