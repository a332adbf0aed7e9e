// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cellimit/asymptotics.hpp"
#include "cellimit/diagnostics.hpp"
#include "cellimit/example_tables.hpp"
#include "cellimit/exact.hpp"
#include "cellimit/sampler.hpp"
#include "oracles.hpp"

using namespace cellimit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Every instance (n, a) with 2 <= n <= n_max, m in [2, m_max] and
// 1 <= a_1 <= ... <= a_m <= n-1.
std::vector<std::pair<int, std::vector<int>>> small_battery(int n_max, int m_max) {
  std::vector<std::pair<int, std::vector<int>>> out;
  for (int n = 2; n <= n_max; ++n) {
    for (int m = 2; m <= m_max; ++m) {
      std::vector<int> a(static_cast<std::size_t>(m), 1);
      while (true) {
        out.emplace_back(n, a);
        int d = m - 1;
        while (d >= 0 && a[static_cast<std::size_t>(d)] == n - 1) --d;
        if (d < 0) break;
        const int v = a[static_cast<std::size_t>(d)] + 1;
        for (int k = d; k < m; ++k) a[static_cast<std::size_t>(k)] = v;
      }
    }
  }
  return out;
}

MarginVector to_mv(int n, const std::vector<int>& a) {
  return MarginVector::make(n, std::vector<std::int64_t>(a.begin(), a.end()));
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome oracle_equivalence() {
  int instances = 0;
  int mismatches = 0;
  for (int n = 2; n <= 6; ++n) {
    for (int m = 2; m <= 3; ++m) {
      // Unsorted tuples too, so the canonical sort is exercised.
      std::vector<int> a(static_cast<std::size_t>(m), 1);
      while (true) {
        const auto want = oracle::cell_law(n, a);
        const ExactPmf got = cell_pmf_exact(to_mv(n, a));
        bool same = got.probs.size() == want.size();
        for (const auto& [x, p] : want) same = same && got.prob(x) == p;
        mismatches += same ? 0 : 1;
        ++instances;
        std::size_t d = 0;
        while (d < a.size() && ++a[d] == n) a[d++] = 1;
        if (d == a.size()) break;
      }
    }
  }
  const ExactPmf worked = cell_pmf_exact(MarginVector::make(4, {2, 2, 2}));
  const bool worked_ok =
      worked.probs == std::vector<Rational>{Rational(19, 36), Rational(16, 36), Rational(1, 36)};
  return {mismatches == 0 && worked_ok, std::to_string(instances) + " instances, " + std::to_string(mismatches) +
                                            " mismatches; (4;2,2,2) -> 19/36,16/36,1/36 " +
                                            (worked_ok ? "ok" : "WRONG")};
}

Outcome moment_consistency() {
  int exact_bad = 0;
  const auto battery = small_battery(8, 3);
  for (const auto& [n, a] : battery) {
    const MarginVector mv = to_mv(n, a);
    const ExactPmf p = cell_pmf_exact(mv);
    const MomentSequence ms = moments_recursive(mv);
    exact_bad += (p.mean() == ms.E.back() && p.variance() == ms.V.back()) ? 0 : 1;
  }
  std::mt19937_64 rng(2);
  double worst = 0.0;
  for (int t = 0; t < 40; ++t) {
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(2000, 10000000)(rng);
    const std::int64_t a1 = std::uniform_int_distribution<std::int64_t>(1, 1000)(rng);
    std::vector<std::int64_t> a = {a1};
    const auto m = std::uniform_int_distribution<int>(2, 5)(rng);
    for (int i = 1; i < m; ++i) a.push_back(std::uniform_int_distribution<std::int64_t>(a1, n - 1)(rng));
    const MarginVector mv = MarginVector::make(n, a);
    const Pmf p = cell_pmf(mv);
    const MomentSequence ms = moments_recursive(mv);
    const double e = to_double(ms.E.back());
    const double v = to_double(ms.V.back());
    worst = std::max(worst, std::abs(p.mean() - e) / e);
    if (v > 0) worst = std::max(worst, std::abs(p.variance() - v) / v);
  }
  return {exact_bad == 0 && worst <= 1e-10, std::to_string(battery.size()) + " exact instances, " +
                                                std::to_string(exact_bad) + " mismatches; float max rel err " +
                                                fmt("%.2e", worst) + " (tol 1e-10, a1 <= 1000)"};
}

Outcome two_collector_variance() {
  std::mt19937_64 rng(3);
  int bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(2, 1000000000000LL)(rng);
    const std::int64_t a1 = std::uniform_int_distribution<std::int64_t>(1, n - 1)(rng);
    const std::int64_t a2 = std::uniform_int_distribution<std::int64_t>(1, n - 1)(rng);
    bad += variance_m2(n, a1, a2) == moments_recursive(MarginVector::make(n, {a1, a2})).V[1] ? 0 : 1;
  }
  return {bad == 0, "1000 random instances, " + std::to_string(bad) + " mismatches"};
}

Outcome corollary_counterexample() {
  const GrowthSpec g = GrowthSpec::make(16, {PowerSeries::monomial(1, Exponent(2, 3)),
                                             PowerSeries::monomial(1, Exponent(2, 3))});
  std::vector<double> ratios;
  std::string detail;
  for (const std::int64_t n : {1000000LL, 100000000LL, 10000000000LL}) {
    const MarginVector mv = eval_growth(g, n);
    const Rational v = variance_m2(n, mv.a(0), mv.a(1));
    const BigFloat ratio = to_big(v) / rational_power(Integer(n), Exponent(1, 3));
    ratios.push_back(to_double(ratio));
    detail += "n=" + std::to_string(n) + " a=" + std::to_string(mv.a(0)) + " ratio " + fmt("%.5f", ratios.back()) + "; ";
  }
  const bool first = ratios[0] >= 0.95 && ratios[0] <= 1.0;
  const bool monotone = ratios[0] < ratios[1] && ratios[1] < ratios[2] && ratios[2] <= 1.0;
  return {first && monotone, detail + "range [0.95,1] and monotone to 1"};
}

Outcome variance_order_slopes() {
  const std::vector<std::int64_t> grid = {10000, 100000, 1000000, 10000000, 100000000};
  double worst = 0.0;
  std::string worst_cell;
  int specs = 0;
  for (const int which : {2, 3}) {
    const GrowthTable t = example_table(which);
    for (const CellRef& cell : t.cells()) {
      const GrowthSpec g = reduce_cell(t, cell);
      const double target = boost::rational_cast<double>(variance_order(canonical_order(g)).exponent);
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (const std::int64_t n : grid) {
        const double x = std::log(static_cast<double>(n));
        const double y = std::log(to_double(moments_recursive(eval_growth(g, n)).V.back()));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
      }
      const double k = static_cast<double>(grid.size());
      const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
      ++specs;
      if (std::abs(slope - target) > worst) {
        worst = std::abs(slope - target);
        worst_cell = "table " + std::to_string(which) + " cell " + std::to_string(cell.v[0]) +
                     std::to_string(cell.v[1]) + std::to_string(cell.v[2]) + " slope " + fmt("%.4f", slope) +
                     " vs " + fmt("%.4f", target);
      }
    }
  }
  return {worst <= 0.02, std::to_string(specs) + " specs, max |slope - exponent| " + fmt("%.4f", worst) + " (" +
                             worst_cell + "), tol 0.02"};
}

Outcome poisson_certificates() {
  const GrowthTable t = example_table(2);
  const std::int64_t n = 1000000;
  const DiagnosticReport d311 = diagnose(reduce_cell(t, CellRef{{3, 1, 1}}), n);
  const DiagnosticReport d321 = diagnose(reduce_cell(t, CellRef{{3, 2, 1}}), n);
  const GrowthSpec g322 = reduce_cell(t, CellRef{{3, 2, 2}});
  const Classification c322 = classify(g322);
  const DiagnosticReport d322 = diagnose(g322, c322, n);
  const std::size_t width = cell_pmf(eval_growth(canonical_order(g322), n)).probs.size();

  const bool ok311 = *d311.tv_exact <= 0.01 && d311.tv_bound && *d311.tv_exact <= *d311.tv_bound;
  const bool ok321 = d321.subcase == PoissonCase::kII && *d321.tv_exact <= 0.02;
  const bool ok322 = d322.subcase == PoissonCase::kIII && *d322.tv_exact <= 0.05 && std::abs(c322.rho - 3.0) <= 0.01;
  return {ok311 && ok321 && ok322,
          "311 TV " + fmt("%.2e", *d311.tv_exact) + " <= bound " + fmt("%.2e", d311.tv_bound.value_or(-1)) +
              "; 321 TV " + fmt("%.2e", *d321.tv_exact) + " (tol 0.02); 322 TV " + fmt("%.2e", *d322.tv_exact) +
              " (tol 0.05), rho " + fmt("%.6f", c322.rho) + ", support width " + std::to_string(width)};
}

Outcome normal_certificate() {
  const DiagnosticReport r = diagnose(reduce_cell(example_table(3), CellRef{{2, 2, 2}}), 10000);
  return {r.ks && *r.ks <= 0.05, "KS " + fmt("%.2e", r.ks.value_or(1)) + " at n=10^4 (tol 0.05)"};
}

Outcome classifier_golden() {
  const PowerSeries n = PowerSeries::grand_total();
  const PowerSeries s = PowerSeries::monomial(1, Exponent(1, 2));
  const PowerSeries q = PowerSeries::monomial(1, Exponent(1, 4));
  const auto half = [](const PowerSeries& p) { return PowerSeries::constant(Rational(1, 2)) * p; };
  struct Golden {
    Regime regime;
    Rational rho;
    int sign;
    PowerSeries shift;
  };
  // Row-major over (i, j, k), k fastest.
  const std::vector<Golden> table2 = {
      {Regime::kDegenerate, 0, 1, {}},         {Regime::kDegenerate, 0, 1, {}},
      {Regime::kDegenerate, 0, 1, {}},         {Regime::kDegenerate, 0, -1, q},
      {Regime::kDegenerate, 0, 1, {}},         {Regime::kPoissonI, 1, 1, {}},
      {Regime::kPoissonI, 1, 1, {}},           {Regime::kPoissonII, 2, -1, s},
      {Regime::kPoissonI, 1, 1, {}},           {Regime::kPoissonII, 2, -1, s},
      {Regime::kPoissonII, 2, -1, s},          {Regime::kPoissonIII, 3, 1, -n + q + PowerSeries::constant(3) * s},
  };
  struct NormalGolden {
    PowerSeries center;
    Exponent scale_exponent;
    Rational scale_variance;
  };
  const NormalGolden n122{half(q), Exponent(1, 8), Rational(1, 4)};
  const NormalGolden n222{half(s), Exponent(1, 4), Rational(1, 4)};
  const NormalGolden n322{half(n) - s - half(q), Exponent(1, 4), Rational(1, 2)};
  const std::vector<std::optional<NormalGolden>> table3_normal = {
      std::nullopt, std::nullopt, n122, n122, std::nullopt, std::nullopt, n222, n222, n222, n222, n322, n322};
  const std::vector<Rational> table3_rho = {0, 0, 0, 0, Rational(1, 2), Rational(1, 2), 0, 0, 0, 0, 0, 0};

  int bad = 0;
  std::string first_bad;
  const auto mark = [&](bool ok, int which, std::size_t i) {
    if (ok) return;
    if (bad++ == 0) first_bad = " first mismatch: table " + std::to_string(which) + " index " + std::to_string(i);
  };
  const ExampleTableResult r2 = reproduce_example_table(2, {});
  for (std::size_t i = 0; i < table2.size(); ++i) {
    const ExampleCell& c = r2.cells[i];
    const Golden& g = table2[i];
    const bool ok = c.classification.regime == g.regime && c.limit.rho_exact && *c.limit.rho_exact == g.rho &&
                    std::abs(c.classification.rho - to_double(g.rho)) < 1e-6 && c.limit.sign == g.sign &&
                    c.limit.shift == g.shift;
    mark(ok, 2, i);
  }
  const ExampleTableResult r3 = reproduce_example_table(3, {});
  for (std::size_t i = 0; i < table3_normal.size(); ++i) {
    const ExampleCell& c = r3.cells[i];
    bool ok = false;
    if (table3_normal[i]) {
      ok = c.classification.regime == Regime::kNormal && c.limit.center == table3_normal[i]->center &&
           c.limit.scale_exponent == table3_normal[i]->scale_exponent &&
           c.limit.scale_variance == table3_normal[i]->scale_variance;
    } else {
      const Regime want = table3_rho[i] == 0 ? Regime::kDegenerate : Regime::kPoissonI;
      ok = c.classification.regime == want && c.limit.rho_exact && *c.limit.rho_exact == table3_rho[i] &&
           c.limit.sign == 1 && c.limit.shift.is_zero();
    }
    mark(ok, 3, i);
  }
  return {bad == 0, "24 cells, " + std::to_string(bad) + " mismatches;" + (bad ? first_bad : std::string(" e.g. 322: ") +
                                                                                              r2.cells[11].limit.describe())};
}

Outcome decomposition_identities() {
  std::mt19937_64 rng(9);
  const int configs = 20;
  const std::uint64_t per = 50000;
  std::uint64_t violations = 0;
  for (int c = 0; c < configs; ++c) {
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(2, 60)(rng);
    const int m = std::uniform_int_distribution<int>(2, 6)(rng);
    std::vector<std::int64_t> a;
    for (int i = 0; i < m; ++i) a.push_back(std::uniform_int_distribution<std::int64_t>(1, n - 1)(rng));
    const MarginVector mv = MarginVector::make(n, a);
    std::int64_t sum = 0;
    for (const std::int64_t v : mv.a()) sum += v;
    for (std::uint64_t r = 0; r < per; ++r) {
      Philox4x32 gen(static_cast<std::uint64_t>(c), r);
      const IndicatorMatrix im = sample_indicators(mv, gen);
      const DecompositionSums d = decompose(im);
      const std::int64_t x = tabulate(im).counts[0];
      const bool ok = d.Y == x && d.Yp == mv.a(0) - x && d.Ypp == x + static_cast<std::int64_t>(m - 1) * n - sum;
      violations += ok ? 0 : 1;
    }
  }
  return {violations == 0, std::to_string(configs * per) + " samples over " + std::to_string(configs) +
                               " configurations, " + std::to_string(violations) + " violations"};
}

Outcome birthday() {
  const BirthdaySummary s = birthday_scenario(1000000, 1414, 10000, 1, 1);
  Pmf emp;
  for (const std::int64_t c : s.histogram) emp.probs.push_back(static_cast<double>(c) / 1e4);
  const double tv = tv_to_poisson(emp, 1.0);
  const bool ok = std::abs(s.mean - 0.9997) <= 0.03 && std::abs(s.variance - 1.0) <= 0.1 && tv <= 0.03;
  return {ok, "mean " + fmt("%.4f", s.mean) + " (0.9997 +- 0.03), var " + fmt("%.4f", s.variance) +
                  " (1 +- 0.1), TV to Pois(1) " + fmt("%.4f", tv) + " (tol 0.03)"};
}

Outcome sampler_fidelity() {
  const auto battery = small_battery(6, 3);
  double worst = 0.0;
  for (std::size_t i = 0; i < battery.size(); ++i) {
    const MarginVector mv = to_mv(battery[i].first, battery[i].second);
    const std::vector<std::int64_t> s = sample_cells(mv, 1000 + i, 100000, 1);
    worst = std::max(worst, tv_distance(empirical_pmf(s), cell_pmf_exact(mv).to_float()));
  }
  const MarginVector mv = MarginVector::make(100000, {300, 5000, 90000});
  const auto one = sample_cells(mv, 5, 20000, 1);
  const bool same = one == sample_cells(mv, 5, 20000, 4) && one == sample_cells(mv, 5, 20000, 16);
  return {worst < 0.01 && same, std::to_string(battery.size()) + " instances x 1e5 draws, max TV " +
                                    fmt("%.4f", worst) + " (tol 0.01); workers 1/4/16 " +
                                    (same ? "identical" : "DIFFER")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"exact law equals enumeration", oracle_equivalence},
      {"moment consistency", moment_consistency},
      {"two-collector variance cross-check", two_collector_variance},
      {"two-thirds power counterexample", corollary_counterexample},
      {"variance order log-log slopes", variance_order_slopes},
      {"Poisson certificates", poisson_certificates},
      {"normal certificate", normal_certificate},
      {"example table golden classifications", classifier_golden},
      {"decomposition identities", decomposition_identities},
      {"birthday scenario", birthday},
      {"sampler fidelity and reproducibility", sampler_fidelity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += o.pass ? 0 : 1;
    std::printf("[%s] %2zu. %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
