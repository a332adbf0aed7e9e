// Copyright 2026 The cellimit Authors
// SPDX-License-Identifier: Apache-2.0

#include "cellimit/example_tables.hpp"

#include <cstdio>
#include <sstream>

#include "cellimit/error.hpp"
#include "cellimit/report.hpp"
#include "cellimit/sampler.hpp"

namespace cellimit {

namespace {

constexpr std::int64_t kExampleNMin = 16;

std::string cell_label(const CellRef& c) {
  std::string s;
  for (const std::int64_t v : c.v) s += std::to_string(v);
  return s;
}

std::string short_regime(const ExampleCell& cell) {
  std::string s(regime_name(cell.classification.regime));
  if (cell.classification.regime == Regime::kDegenerate && cell.classification.subcase) {
    s += " (" + std::string(poisson_case_name(*cell.classification.subcase)) + ")";
  }
  return s;
}

std::string fmt(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", *v);
  return buf;
}

}  // namespace

GrowthTable example_table(int which) {
  if (which != 2 && which != 3) {
    throw Error(ErrorCode::kInvalidArgument, "example table must be 2 or 3, got " + std::to_string(which));
  }
  const PowerSeries n = PowerSeries::grand_total();
  const PowerSeries q = PowerSeries::monomial(Rational(1), Exponent(1, 4));
  const PowerSeries s = PowerSeries::monomial(Rational(1), Exponent(1, 2));
  const PowerSeries h = PowerSeries::monomial(Rational(1, 2), Exponent(1));
  std::vector<std::vector<PowerSeries>> margins = {{q, s, n - q - s}, {s, n - s}};
  if (which == 2) {
    margins.push_back({s, n - s});
  } else {
    margins.push_back({h, h});
  }
  return GrowthTable::make(kExampleNMin, {3, 2, 2}, std::move(margins));
}

std::vector<std::int64_t> default_example_grid() { return {10'000, 1'000'000, 100'000'000}; }

ExampleTableResult reproduce_example_table(int which, const std::vector<std::int64_t>& grid, unsigned workers) {
  const GrowthTable table = example_table(which);
  ExampleTableResult result;
  result.which = which;
  result.grid = grid;
  const std::vector<CellRef> cells = table.cells();
  result.cells.resize(cells.size());
  parallel_for(cells.size(), workers, [&](std::uint64_t idx) {
    ExampleCell& out = result.cells[idx];
    out.cell = cells[idx];
    const GrowthSpec g = reduce_cell(table, cells[idx]);
    out.classification = classify(g);
    out.limit = limit_statement(out.classification, canonical_order(g));
    for (const std::int64_t n : grid) out.certificates.push_back(diagnose(g, out.classification, n));
  });
  return result;
}

std::string render_text(const ExampleTableResult& result) {
  std::ostringstream out;
  out << "Example table " << result.which << " (3 x 2 x 2)\n";
  for (std::int64_t k = 1; k <= 2; ++k) {
    out << "\nk = " << k << "\n";
    for (std::int64_t i = 1; i <= 3; ++i) {
      for (std::int64_t j = 1; j <= 2; ++j) {
        for (const ExampleCell& c : result.cells) {
          if (c.cell.v != std::vector<std::int64_t>{i, j, k}) continue;
          out << "  (" << i << "," << j << "," << k << ")  " << c.limit.describe() << "   [" << short_regime(c)
              << "]\n";
        }
      }
    }
  }
  out << "\nfinite-n certificates\n";
  char line[256];
  std::snprintf(line, sizeof line, "  %-5s %12s %10s %10s %10s %10s\n", "cell", "n", "tv_exact", "tv_limit",
                "tv_bound", "ks");
  out << line;
  for (const ExampleCell& c : result.cells) {
    for (const DiagnosticReport& r : c.certificates) {
      std::snprintf(line, sizeof line, "  %-5s %12lld %10s %10s %10s %10s%s\n", cell_label(c.cell).c_str(),
                    static_cast<long long>(r.n), fmt(r.tv_exact).c_str(), fmt(r.tv_limit).c_str(),
                    fmt(r.tv_bound).c_str(), fmt(r.ks).c_str(), r.bound_vacuous ? "  (bound vacuous)" : "");
      out << line;
    }
  }
  return out.str();
}

nlohmann::json to_json(const ExampleTableResult& result) {
  nlohmann::json cells = nlohmann::json::array();
  for (const ExampleCell& c : result.cells) {
    nlohmann::json certs = nlohmann::json::array();
    for (const DiagnosticReport& r : c.certificates) certs.push_back(io::to_json(r));
    nlohmann::json entry = io::to_json(c.classification, c.limit);
    entry["cell"] = c.cell.v;
    entry["certificates"] = certs;
    cells.push_back(entry);
  }
  return {{"table", result.which}, {"shape", {3, 2, 2}}, {"grid", result.grid}, {"cells", cells}};
}

}  // namespace cellimit
