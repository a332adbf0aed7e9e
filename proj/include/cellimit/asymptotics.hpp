// Copyright 2026 The cellimit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cellimit/model.hpp"
#include "cellimit/numeric.hpp"
#include "cellimit/series.hpp"

namespace cellimit {

enum class Regime { kDegenerate, kPoissonI, kPoissonII, kPoissonIII, kNormal };

/// Which functional of X_1 is the Bernoulli/NA sum that goes Poisson:
///   kI: X_1,  kII: a_1 - X_1,  kIII: X_1 + (m-1) n - sum a_i.
enum class PoissonCase { kI, kII, kIII };

std::string_view regime_name(Regime regime);
std::string_view poisson_case_name(PoissonCase c);

/// Leading term c * n^e of ((n-a_1)(n-a_2)/n) * prod_i (a_i/n), which has
/// the same order as Var(X_1).
struct VarianceOrder {
  Exponent exponent;
  Rational coefficient;
};

/// Collectors sorted by asymptotic size (alpha first, then lower-order
/// terms). Ties are exact equalities and do not affect any result.
GrowthSpec canonical_order(const GrowthSpec& g);

/// alpha_i = lim a_i/n in canonical order.
std::vector<Rational> alpha_limits(const GrowthSpec& g);

VarianceOrder variance_order(const GrowthSpec& g);

/// E(X_1) = n^{1-m} prod a_i as an exact power sum.
PowerSeries mean_series(const GrowthSpec& g);

/// Exact power sum of the matching mean E(X_1), E(a_1 - X_1) or
/// E(X_1 + (m-1) n - sum a_i).
PowerSeries matching_mean_series(const GrowthSpec& g, PoissonCase c);

/// Asymptotic expansion of Var(X_1) from the variance recursion, with
/// 1/(n-1) expanded to `inverse_terms` terms. Deepens the expansion
/// automatically until the leading term is resolved.
PowerSeries variance_series(const GrowthSpec& g, int inverse_terms = 8);

struct RhoOptions {
  double tolerance = 1e-6;
  /// Successive differences that must fall below tolerance.
  int stable_steps = 2;
  /// Grid cap: n runs over n_min * 2^j, j = 0..max_doublings.
  int max_doublings = 180;
};

struct RhoTracePoint {
  Integer n;
  double value;
};

struct RhoEstimate {
  double rho = 0.0;         // extrapolated limit
  double last_value = 0.0;  // matching mean at the last grid point
  double last_difference = 0.0;
  bool converged = false;
  std::vector<RhoTracePoint> trace;
};

/// Evaluates the matching mean exactly (rational arithmetic on the rounded
/// margins) along a geometric grid and extrapolates. Throws NoConvergence
/// when the grid cap is reached first.
RhoEstimate rho_estimate(const GrowthSpec& g, PoissonCase c, const RhoOptions& options = {});

struct Classification {
  Regime regime = Regime::kNormal;
  /// Set for every regime except Normal.
  std::optional<PoissonCase> subcase;
  double rho = 0.0;
  /// Constant term of the exact matching-mean expansion (Poisson regimes).
  std::optional<Rational> rho_exact;
  std::vector<Rational> alphas;
  VarianceOrder order;
  std::optional<RhoEstimate> rho_trace;
};

/// Degenerate / Poisson(I, II, III) / Normal. Requires a_i -> inf and
/// n - a_i -> inf for every collector (SpecError otherwise).
Classification classify(const GrowthSpec& g, const RhoOptions& options = {});

enum class LimitLaw { kPoisson, kStandardNormal, kPointMass };

/// sign * X_1 + shift(n) -> law for Poisson and degenerate regimes;
/// (X_1 - center(n)) / scale(n) -> N(0, 1) for the normal regime, where the
/// closed forms below keep only the terms that matter at leading order.
struct LimitStatement {
  Regime regime = Regime::kNormal;
  std::optional<PoissonCase> subcase;
  LimitLaw law = LimitLaw::kStandardNormal;
  double rho = 0.0;
  std::optional<Rational> rho_exact;
  int sign = 1;
  PowerSeries shift;
  PowerSeries center;
  /// scale(n) ~ sqrt(scale_variance) * n^{scale_exponent}.
  Exponent scale_exponent{0};
  Rational scale_variance{1};

  std::string describe() const;
};

LimitStatement limit_statement(const Classification& c, const GrowthSpec& g);

/// Integer shift C_n of the Poisson transform for concrete margins.
std::int64_t poisson_shift(const MarginVector& mv, PoissonCase c);
int poisson_sign(PoissonCase c);

}  // namespace cellimit
