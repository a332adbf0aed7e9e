// Copyright 2026 The cellimit Authors
// SPDX-License-Identifier: Apache-2.0

#include "cellimit/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cellimit/error.hpp"

namespace cellimit {

std::string_view regime_name(Regime regime) {
  switch (regime) {
    case Regime::kDegenerate: return "Degenerate";
    case Regime::kPoissonI: return "PoissonI";
    case Regime::kPoissonII: return "PoissonII";
    case Regime::kPoissonIII: return "PoissonIII";
    case Regime::kNormal: return "Normal";
  }
  return "Unknown";
}

std::string_view poisson_case_name(PoissonCase c) {
  switch (c) {
    case PoissonCase::kI: return "i";
    case PoissonCase::kII: return "ii";
    case PoissonCase::kIII: return "iii";
  }
  return "?";
}

GrowthSpec canonical_order(const GrowthSpec& g) {
  std::vector<PowerSeries> sorted = g.collectors();
  std::stable_sort(sorted.begin(), sorted.end(), [](const PowerSeries& l, const PowerSeries& r) {
    return asymptotic_compare(l, r) < 0;
  });
  return GrowthSpec::make(g.n_min(), std::move(sorted));
}

std::vector<Rational> alpha_limits(const GrowthSpec& g) {
  const GrowthSpec canon = canonical_order(g);
  std::vector<Rational> alphas;
  for (std::size_t i = 0; i < canon.m(); ++i) alphas.push_back(canon.alpha(i));
  return alphas;
}

namespace {

const PowerSeries& n_series() {
  static const PowerSeries n = PowerSeries::grand_total();
  return n;
}

// (A2): a_i -> infinity and n - a_i -> infinity.
void check_growth_assumptions(const GrowthSpec& g) {
  for (std::size_t i = 0; i < g.m(); ++i) {
    const auto lead = g.collector(i).leading();
    const auto complement = (n_series() - g.collector(i)).leading();
    const std::string label = "collector " + std::to_string(i + 1) + " (" + g.collector(i).to_string() + ")";
    if (!lead || lead->first <= Exponent(0) || lead->second <= 0) {
      throw Error(ErrorCode::kSpecError, label + " does not tend to infinity");
    }
    if (!complement || complement->first <= Exponent(0) || complement->second <= 0) {
      throw Error(ErrorCode::kSpecError, label + ": n - a_i does not tend to infinity");
    }
  }
}

PoissonCase subcase_from_alphas(const Rational& alpha1, const Rational& alpha2) {
  if (alpha1 == 0 && alpha2 == 0) return PoissonCase::kI;
  if (alpha1 == 0 && alpha2 == 1) return PoissonCase::kII;
  if (alpha1 == 1 && alpha2 == 1) return PoissonCase::kIII;
  throw Error(ErrorCode::kUnclassifiable,
              "bounded variance requires alpha_1, alpha_2 in {0, 1}; got (" + to_string(alpha1) +
                  ", " + to_string(alpha2) + ")");
}

Regime poisson_regime(PoissonCase c) {
  switch (c) {
    case PoissonCase::kI: return Regime::kPoissonI;
    case PoissonCase::kII: return Regime::kPoissonII;
    case PoissonCase::kIII: return Regime::kPoissonIII;
  }
  return Regime::kPoissonI;
}

Rational matching_mean_value(const std::vector<Integer>& a, const Integer& n, PoissonCase c) {
  Integer product = 1;
  for (const Integer& ai : a) product *= ai;
  const Rational mean(product, pow(n, static_cast<unsigned>(a.size() - 1)));
  switch (c) {
    case PoissonCase::kI: return mean;
    case PoissonCase::kII: return Rational(a.front()) - mean;
    case PoissonCase::kIII: {
      Integer shift = Integer(a.size() - 1) * n;
      for (const Integer& ai : a) shift -= ai;
      return mean + Rational(shift);
    }
  }
  return mean;
}

std::string law_string(const std::optional<Rational>& exact, double value) {
  if (exact) return to_string(*exact);
  std::ostringstream out;
  out.precision(6);
  out << value;
  return out.str();
}

std::string scale_string(const Exponent& e, const Rational& variance) {
  const Integer p = boost::multiprecision::numerator(variance);
  const Integer q = boost::multiprecision::denominator(variance);
  const Integer rp = sqrt(p);
  const Integer rq = sqrt(q);
  if (rp * rp == p && rq * rq == q) {
    return PowerSeries::monomial(Rational(rp, rq), e).to_string();
  }
  const std::string power = PowerSeries::monomial(Rational(1), e).to_string();
  return "sqrt(" + to_string(variance) + ")" + (e == Exponent(0) ? "" : "*" + power);
}

}  // namespace

VarianceOrder variance_order(const GrowthSpec& g) {
  const GrowthSpec canon = canonical_order(g);
  PowerSeries expr = (n_series() - canon.collector(0)) * (n_series() - canon.collector(1));
  for (const PowerSeries& a : canon.collectors()) expr *= a;
  expr = expr.times_power(Exponent(-static_cast<std::int64_t>(canon.m()) - 1));
  const auto lead = expr.leading();
  if (!lead) throw Error(ErrorCode::kUnclassifiable, "variance order expression vanishes identically");
  return {lead->first, lead->second};
}

PowerSeries mean_series(const GrowthSpec& g) {
  PowerSeries product = PowerSeries::constant(Rational(1));
  for (const PowerSeries& a : g.collectors()) product *= a;
  return product.times_power(Exponent(1 - static_cast<std::int64_t>(g.m())));
}

PowerSeries matching_mean_series(const GrowthSpec& g, PoissonCase c) {
  const GrowthSpec canon = canonical_order(g);
  const PowerSeries mean = mean_series(canon);
  switch (c) {
    case PoissonCase::kI: return mean;
    case PoissonCase::kII: return canon.collector(0) - mean;
    case PoissonCase::kIII: {
      PowerSeries w = mean + n_series() * PowerSeries::constant(Rational(static_cast<std::int64_t>(canon.m()) - 1));
      for (const PowerSeries& a : canon.collectors()) w -= a;
      return w;
    }
  }
  return mean;
}

PowerSeries variance_series(const GrowthSpec& g, int inverse_terms) {
  const GrowthSpec canon = canonical_order(g);
  for (int terms = std::max(inverse_terms, 1); terms <= 256; terms *= 2) {
    const PowerSeries inv = PowerSeries::reciprocal_n_minus_one(terms);
    const PowerSeries one = PowerSeries::constant(Rational(1));
    PowerSeries e = canon.collector(0);
    PowerSeries v;
    for (std::size_t k = 1; k < canon.m(); ++k) {
      const PowerSeries& ak = canon.collector(k);
      const PowerSeries between =
          (ak * (n_series() - ak) * e * (n_series() - e)).times_power(Exponent(-2)) * inv;
      const PowerSeries within = (ak * (ak - one) * v).times_power(Exponent(-1)) * inv;
      v = between + within;
      e = (ak * e).times_power(Exponent(-1));
    }
    try {
      v.leading();
      return v;
    } catch (const Error&) {
      // Expansion too shallow; deepen.
    }
  }
  throw Error(ErrorCode::kUnclassifiable, "variance expansion did not resolve its leading term");
}

RhoEstimate rho_estimate(const GrowthSpec& g, PoissonCase c, const RhoOptions& options) {
  const GrowthSpec canon = canonical_order(g);
  RhoEstimate est;
  Integer n = canon.n_min();
  int stable = 0;
  for (int j = 0; j <= options.max_doublings; ++j, n *= 2) {
    std::vector<Integer> a;
    a.reserve(canon.m());
    for (const PowerSeries& s : canon.collectors()) a.push_back(evaluate_margin(s, n));
    std::sort(a.begin(), a.end());
    const double value = to_double(matching_mean_value(a, n, c));
    if (!est.trace.empty()) {
      est.last_difference = std::abs(value - est.trace.back().value);
      stable = est.last_difference < options.tolerance ? stable + 1 : 0;
    }
    est.trace.push_back({n, value});
    est.last_value = value;
    if (stable >= options.stable_steps) {
      est.converged = true;
      break;
    }
  }
  if (!est.converged) {
    throw Error(ErrorCode::kNoConvergence,
                "matching mean still moving by " + std::to_string(est.last_difference) +
                    " at n = " + est.trace.back().n.str());
  }
  // Aitken's delta-squared on the last three grid values; the correction is
  // accepted only when it stays within the geometric-tail bound.
  est.rho = est.last_value;
  const std::size_t k = est.trace.size();
  if (k >= 3) {
    const double x0 = est.trace[k - 3].value;
    const double x1 = est.trace[k - 2].value;
    const double x2 = est.trace[k - 1].value;
    const double d1 = x1 - x0;
    const double d2 = x2 - x1;
    const double denom = d2 - d1;
    if (denom != 0.0 && std::abs(d2) < std::abs(d1)) {
      const double extrapolated = x2 - d2 * d2 / denom;
      if (std::abs(extrapolated - x2) <= 10.0 * std::abs(d2)) est.rho = extrapolated;
    }
  }
  return est;
}

Classification classify(const GrowthSpec& g, const RhoOptions& options) {
  const GrowthSpec canon = canonical_order(g);
  check_growth_assumptions(canon);
  Classification out;
  out.alphas = alpha_limits(canon);
  out.order = variance_order(canon);
  if (out.order.exponent > Exponent(0)) {
    out.regime = Regime::kNormal;
    return out;
  }
  const PoissonCase subcase = subcase_from_alphas(out.alphas[0], out.alphas[1]);
  out.subcase = subcase;
  const PowerSeries matching = matching_mean_series(canon, subcase);
  const auto lead = matching.leading();
  if (lead && lead->first > Exponent(0)) {
    throw Error(ErrorCode::kUnclassifiable, "matching mean " + matching.to_string() +
                                                " diverges although the variance is bounded");
  }
  out.rho_exact = matching.coefficient(Exponent(0));
  if (out.order.exponent < Exponent(0)) {
    out.regime = Regime::kDegenerate;
    out.rho = 0.0;
    return out;
  }
  out.regime = poisson_regime(subcase);
  out.rho_trace = rho_estimate(canon, subcase, options);
  out.rho = out.rho_trace->rho;
  return out;
}

LimitStatement limit_statement(const Classification& c, const GrowthSpec& g) {
  const GrowthSpec canon = canonical_order(g);
  LimitStatement ls;
  ls.regime = c.regime;
  ls.subcase = c.subcase;
  ls.rho = c.rho;
  ls.rho_exact = c.rho_exact;
  if (c.regime == Regime::kNormal) {
    ls.law = LimitLaw::kStandardNormal;
    const PowerSeries variance = variance_series(canon);
    const auto lead = variance.leading();
    ls.scale_exponent = lead->first / Exponent(2);
    ls.scale_variance = lead->second;
    ls.center = mean_series(canon).terms_at_least(ls.scale_exponent);
    return ls;
  }
  ls.law = c.regime == Regime::kDegenerate ? LimitLaw::kPointMass : LimitLaw::kPoisson;
  const PoissonCase subcase = *c.subcase;
  ls.sign = poisson_sign(subcase);
  switch (subcase) {
    case PoissonCase::kI: break;
    case PoissonCase::kII: ls.shift = canon.collector(0); break;
    case PoissonCase::kIII: {
      ls.shift = n_series() * PowerSeries::constant(Rational(static_cast<std::int64_t>(canon.m()) - 1));
      for (const PowerSeries& a : canon.collectors()) ls.shift -= a;
      break;
    }
  }
  return ls;
}

std::string LimitStatement::describe() const {
  if (law == LimitLaw::kStandardNormal) {
    return "(X - (" + center.to_string() + ")) / (" + scale_string(scale_exponent, scale_variance) +
           ") -> N(0,1)";
  }
  std::string lhs;
  if (sign > 0) {
    lhs = "X";
    if (!shift.is_zero()) {
      const std::string s = shift.to_string();
      lhs += s.front() == '-' ? " - " + s.substr(1) : " + " + s;
    }
  } else {
    lhs = shift.to_string() + " - X";
  }
  if (law == LimitLaw::kPointMass) return lhs + " -> 0";
  return lhs + " -> Pois(" + law_string(rho_exact, rho) + ")";
}

int poisson_sign(PoissonCase c) { return c == PoissonCase::kII ? -1 : 1; }

std::int64_t poisson_shift(const MarginVector& mv, PoissonCase c) {
  switch (c) {
    case PoissonCase::kI: return 0;
    case PoissonCase::kII: return mv.a(0);
    case PoissonCase::kIII: {
      std::int64_t shift = static_cast<std::int64_t>(mv.m() - 1) * mv.n();
      for (const std::int64_t a : mv.a()) shift -= a;
      return shift;
    }
  }
  return 0;
}

}  // namespace cellimit
