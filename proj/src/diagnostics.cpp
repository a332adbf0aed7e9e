// Copyright 2026 The cellimit Authors
// SPDX-License-Identifier: Apache-2.0

#include "cellimit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/distributions/poisson.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "cellimit/error.hpp"

namespace cellimit {

double poisson_pmf(std::int64_t k, double lambda) {
  if (k < 0) return 0.0;
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  return boost::math::pdf(boost::math::poisson_distribution<double>(lambda), static_cast<double>(k));
}

double tv_distance(const Pmf& p, const Pmf& q) {
  const std::int64_t lo = std::min(p.lowest(), q.lowest());
  const std::int64_t hi = std::max(p.highest(), q.highest());
  double total = 0.0;
  for (std::int64_t x = lo; x <= hi; ++x) total += std::abs(p.prob(x) - q.prob(x));
  return std::min(1.0, 0.5 * total);
}

double tv_to_poisson(const Pmf& p, double lambda) {
  if (lambda < 0.0 || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kDomainError, "Poisson parameter must be finite and nonnegative");
  }
  double total = 0.0;
  for (std::int64_t x = p.lowest(); x <= p.highest(); ++x) total += std::abs(p.prob(x) - poisson_pmf(x, lambda));
  // Poisson mass below and above the finite support.
  if (p.lowest() >= 1) {
    total += lambda == 0.0 ? 1.0 : boost::math::gamma_q(static_cast<double>(p.lowest()), lambda);
  }
  if (p.highest() < 0) {
    total += 1.0;
  } else if (lambda > 0.0) {
    total += boost::math::gamma_p(static_cast<double>(p.highest() + 1), lambda);
  }
  return std::min(1.0, 0.5 * total);
}

double stein_chen_bound_I_II(double mean, double variance) {
  if (!(mean > 0.0)) throw Error(ErrorCode::kDomainError, "Stein-Chen bound needs E > 0");
  if (variance < 0.0) throw Error(ErrorCode::kDomainError, "negative variance");
  if (variance > mean) {
    throw Error(ErrorCode::kDomainError, "V > E: not a sum of negatively related Bernoulli variables");
  }
  return 1.0 - variance / mean;
}

ExactPmf miss_count_dist_exact(const MarginVector& mv) {
  ExactPmf dist;
  dist.offset = 0;
  dist.probs = {Rational(1)};
  const Rational n(mv.n());
  for (const std::int64_t a : mv.a()) {
    const Rational q = (n - Rational(a)) / n;
    std::vector<Rational> next(dist.probs.size() + 1, Rational(0));
    for (std::size_t k = 0; k < dist.probs.size(); ++k) {
      next[k] += dist.probs[k] * (1 - q);
      next[k + 1] += dist.probs[k] * q;
    }
    dist.probs = std::move(next);
  }
  while (dist.probs.size() > 1 && dist.probs.back() == 0) dist.probs.pop_back();
  return dist;
}

Pmf miss_count_dist(std::span<const double> miss_probs) {
  Pmf dist;
  dist.offset = 0;
  dist.probs = {1.0};
  for (const double q : miss_probs) {
    if (q < 0.0 || q > 1.0) throw Error(ErrorCode::kDomainError, "miss probability outside [0, 1]");
    std::vector<double> next(dist.probs.size() + 1, 0.0);
    for (std::size_t k = 0; k < dist.probs.size(); ++k) {
      next[k] += dist.probs[k] * (1.0 - q);
      next[k + 1] += dist.probs[k] * q;
    }
    dist.probs = std::move(next);
  }
  while (dist.probs.size() > 1 && dist.probs.back() == 0.0) dist.probs.pop_back();
  return dist;
}

SteinChenIII stein_chen_bound_III(const MarginVector& mv) {
  const MomentSequence moments = moments_recursive(mv);
  const Rational n(mv.n());
  Rational theta = moments.E.back() + Rational(static_cast<std::int64_t>(mv.m()) - 1) * n;
  for (const std::int64_t a : mv.a()) theta -= Rational(a);
  if (theta <= 0) throw Error(ErrorCode::kDomainError, "theta = E(W) must be positive");
  const ExactPmf misses = miss_count_dist_exact(mv);
  const Rational p = n * misses.prob(2) / theta;

  SteinChenIII out;
  out.theta_exact = theta;
  out.params.theta = to_double(theta);
  out.params.p = to_double(p);
  for (const std::int64_t a : mv.a()) out.params.miss_probs.push_back(to_double((n - Rational(a)) / n));
  out.variance = to_double(moments.V.back());
  const double th = out.params.theta;
  out.bound = 1.0 + th + (1.0 - 2.0 * out.params.p) * (out.variance / th + th);
  out.vacuous = out.bound > 1.0;
  return out;
}

double ks_to_normal(const Pmf& p, double center, double scale) {
  if (!(scale > 0.0)) throw Error(ErrorCode::kDomainError, "scale must be positive");
  const auto phi = [&](double x) { return 0.5 * std::erfc(-(x + 0.5 - center) / (scale * std::sqrt(2.0))); };
  double worst = phi(static_cast<double>(p.lowest() - 1));
  double cdf = 0.0;
  for (std::int64_t x = p.lowest(); x <= p.highest(); ++x) {
    cdf += p.prob(x);
    worst = std::max(worst, std::abs(cdf - phi(static_cast<double>(x))));
  }
  return worst;
}

Pmf empirical_pmf(std::span<const std::int64_t> samples) {
  if (samples.empty()) throw Error(ErrorCode::kEmptyInput, "no samples");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  Pmf pmf;
  pmf.offset = *lo_it;
  pmf.probs.assign(static_cast<std::size_t>(*hi_it - *lo_it + 1), 0.0);
  for (const std::int64_t s : samples) pmf.probs[static_cast<std::size_t>(s - pmf.offset)] += 1.0;
  for (double& v : pmf.probs) v /= static_cast<double>(samples.size());
  return pmf;
}

DiagnosticReport diagnose(const GrowthSpec& g, std::int64_t n, const CellPmfOptions& options) {
  return diagnose(g, classify(g), n, options);
}

DiagnosticReport diagnose(const GrowthSpec& g, const Classification& c, std::int64_t n,
                          const CellPmfOptions& options) {
  const GrowthSpec canon = canonical_order(g);
  const MarginVector mv = eval_growth(canon, n);
  const LimitStatement limit = limit_statement(c, canon);
  const MomentSequence moments = moments_recursive(mv);
  const Pmf law = cell_pmf(mv, options);

  DiagnosticReport r;
  r.regime = c.regime;
  r.subcase = c.subcase;
  r.n = n;
  r.margins.assign(mv.a().begin(), mv.a().end());
  r.transform = limit.describe();
  r.rho = c.rho;
  r.variance = to_double(moments.V.back());
  r.truncated_mass = law.truncated_mass;

  if (c.regime == Regime::kNormal) {
    r.matching_mean = to_double(moments.E.back());
    r.ks = ks_to_normal(law, r.matching_mean, std::sqrt(r.variance));
    return r;
  }

  const PoissonCase subcase = *c.subcase;
  const std::int64_t shift = poisson_shift(mv, subcase);
  const int sign = poisson_sign(subcase);
  const Pmf transformed = law.affine(sign, shift);
  const Rational matching = Rational(sign) * moments.E.back() + Rational(shift);
  r.matching_mean = to_double(matching);
  r.tv_exact = tv_to_poisson(transformed, std::max(0.0, r.matching_mean));
  r.tv_limit = tv_to_poisson(transformed, r.rho);

  if (subcase == PoissonCase::kIII) {
    const SteinChenIII sc = stein_chen_bound_III(mv);
    r.tv_bound = sc.bound;
    r.p = sc.params.p;
    r.bound_vacuous = sc.vacuous;
    if (sc.vacuous) r.notes.push_back("negative-association bound exceeds 1 at this n (vacuous)");
  } else if (r.matching_mean > 0.0) {
    try {
      r.tv_bound = stein_chen_bound_I_II(r.matching_mean, r.variance);
    } catch (const Error& e) {
      r.notes.push_back(e.what());
    }
  }
  if (law.truncated_mass > 0.0) r.notes.push_back("tail mass below 1e-300 truncated");
  return r;
}

}  // namespace cellimit
