// Copyright 2026 The cellimit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cellimit/asymptotics.hpp"
#include "cellimit/exact.hpp"
#include "cellimit/model.hpp"

namespace cellimit {

/// Half the L1 distance between two laws on the integers.
double tv_distance(const Pmf& p, const Pmf& q);

/// Total variation to Poisson(lambda). Mass the Poisson law puts outside
/// [p.lowest(), p.highest()] is added in closed form from the regularized
/// incomplete gamma function.
double tv_to_poisson(const Pmf& p, double lambda);

/// 1 - V/E, the Stein-Chen bound for a sum of negatively related
/// Bernoulli variables. DomainError if E <= 0 or V > E.
double stein_chen_bound_I_II(double mean, double variance);

/// Law of the number of collectors that miss a fixed coupon: independent
/// Bernoulli(q_i) with q_i = (n - a_i)/n.
ExactPmf miss_count_dist_exact(const MarginVector& mv);
Pmf miss_count_dist(std::span<const double> miss_probs);

struct MissCountParams {
  double theta = 0.0;  // E(W), W = X_1 + (m-1) n - sum a_i
  double p = 0.0;      // n P(exactly two misses) / theta
  std::vector<double> miss_probs;
};

struct SteinChenIII {
  MissCountParams params;
  Rational theta_exact;
  double variance = 0.0;
  /// 1 + theta + (1 - 2p)(Var(X_1)/theta + theta), as printed.
  double bound = 0.0;
  bool vacuous = false;
};

SteinChenIII stein_chen_bound_III(const MarginVector& mv);

/// sup over the support (and the point just below it) of
/// |F(x) - Phi((x + 1/2 - center)/scale)|.
double ks_to_normal(const Pmf& p, double center, double scale);

Pmf empirical_pmf(std::span<const std::int64_t> samples);

double poisson_pmf(std::int64_t k, double lambda);

/// Finite-n certificate for a classified cell.
struct DiagnosticReport {
  Regime regime = Regime::kNormal;
  std::optional<PoissonCase> subcase;
  std::int64_t n = 0;
  std::vector<std::int64_t> margins;  // canonical order
  std::string transform;
  double rho = 0.0;              // limiting parameter
  double matching_mean = 0.0;    // E of the transformed cell at this n (theta in case iii)
  double variance = 0.0;         // Var(X_1) at this n
  std::optional<double> tv_exact;     // TV(transformed law, Pois(matching mean))
  std::optional<double> tv_limit;     // TV(transformed law, limit law)
  std::optional<double> tv_bound;
  std::optional<double> ks;
  std::optional<double> p;            // case iii only
  bool bound_vacuous = false;
  double truncated_mass = 0.0;
  std::vector<std::string> notes;
};

/// Classifies g, evaluates its margins at n, computes the exact law of X_1
/// in floating point and measures it against the limit.
DiagnosticReport diagnose(const GrowthSpec& g, std::int64_t n, const CellPmfOptions& options = {});

/// Same, for an already computed classification.
DiagnosticReport diagnose(const GrowthSpec& g, const Classification& c, std::int64_t n,
                          const CellPmfOptions& options = {});

}  // namespace cellimit
