// Copyright 2026 The cellimit Authors
// SPDX-License-Identifier: Apache-2.0

#include "cellimit/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "cellimit/error.hpp"

namespace cellimit::io {

namespace {

Error bad_input(const std::string& what) { return Error(ErrorCode::kInvalidArgument, what); }

Rational number_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number()) return parse_rational(j.dump());
  throw bad_input("expected a number or a \"p/q\" string, got " + j.dump());
}

// Exponents are small rationals; decimal inputs such as 0.3333333333 are
// snapped to the nearest fraction with denominator <= 1000.
Exponent exponent_from_json(const json& j) {
  const Rational value = number_from_json(j);
  const double target = to_double(value);
  for (std::int64_t q = 1; q <= 1000; ++q) {
    const auto p = static_cast<std::int64_t>(std::llround(target * static_cast<double>(q)));
    if (Rational(p, q) == value || std::abs(static_cast<double>(p) / static_cast<double>(q) - target) < 1e-9) {
      return Exponent(p, q);
    }
  }
  throw bad_input("exponent " + j.dump() + " is not a fraction with denominator <= 1000");
}

std::int64_t int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw bad_input(std::string("missing integer field '") + key + "'");
  }
  return j.at(key).get<std::int64_t>();
}

std::vector<std::int64_t> int_list(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw bad_input(std::string("missing array '") + key + "'");
  std::vector<std::int64_t> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number_integer()) throw bad_input(std::string("non-integer entry in '") + key + "'");
    out.push_back(v.get<std::int64_t>());
  }
  return out;
}

bool is_table(const json& j) { return j.is_object() && j.contains("shape"); }

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

PowerSeries power_sum_from_json(const json& j) {
  if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array()) {
    throw bad_input("power sum must be {\"terms\":[{\"c\":..,\"gamma\":..}, ...]}");
  }
  PowerSeries s;
  for (const auto& term : j.at("terms")) {
    if (!term.contains("c") || !term.contains("gamma")) throw bad_input("term needs 'c' and 'gamma'");
    s += PowerSeries::monomial(number_from_json(term.at("c")), exponent_from_json(term.at("gamma")));
  }
  return s;
}

MarginTable margin_table_from_json(const json& j) {
  std::vector<std::vector<std::int64_t>> margins;
  if (!j.contains("margins") || !j.at("margins").is_array()) throw bad_input("missing 'margins'");
  for (const auto& row : j.at("margins")) {
    std::vector<std::int64_t> b;
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw bad_input("table margins must be integers");
      b.push_back(v.get<std::int64_t>());
    }
    margins.push_back(std::move(b));
  }
  return MarginTable::make(int_list(j, "shape"), int_field(j, "n"), std::move(margins));
}

GrowthTable growth_table_from_json(const json& j) {
  std::vector<std::vector<PowerSeries>> margins;
  if (!j.contains("margins") || !j.at("margins").is_array()) throw bad_input("missing 'margins'");
  for (const auto& row : j.at("margins")) {
    std::vector<PowerSeries> b;
    for (const auto& v : row) b.push_back(power_sum_from_json(v));
    margins.push_back(std::move(b));
  }
  return GrowthTable::make(int_field(j, "n_min"), int_list(j, "shape"), std::move(margins));
}

MarginVector margins_from_json(const json& j, const std::optional<CellRef>& cell) {
  if (is_table(j)) {
    if (!cell) throw bad_input("a table input needs a cell (--cell i,j,...)");
    return reduce_cell(margin_table_from_json(j), *cell);
  }
  if (cell) throw bad_input("--cell only applies to table inputs");
  return MarginVector::make(int_field(j, "n"), int_list(j, "a"));
}

GrowthSpec growth_from_json(const json& j, const std::optional<CellRef>& cell) {
  if (is_table(j)) {
    if (!cell) throw bad_input("a growth table needs a cell (--cell i,j,...)");
    return reduce_cell(growth_table_from_json(j), *cell);
  }
  if (cell) throw bad_input("--cell only applies to table inputs");
  if (!j.contains("collectors") || !j.at("collectors").is_array()) throw bad_input("missing 'collectors'");
  std::vector<PowerSeries> collectors;
  for (const auto& c : j.at("collectors")) collectors.push_back(power_sum_from_json(c));
  return GrowthSpec::make(int_field(j, "n_min"), std::move(collectors));
}

CellRef parse_cell(const std::string& text) {
  CellRef cell;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      cell.v.push_back(std::stoll(part, &used));
      if (used != part.size()) throw bad_input("bad cell index '" + part + "'");
    } catch (const std::logic_error&) {
      throw bad_input("bad cell index '" + part + "'");
    }
  }
  if (cell.v.empty()) throw bad_input("empty cell");
  return cell;
}

json to_json(const PowerSeries& s) {
  json terms = json::array();
  for (const auto& [e, c] : s.terms()) terms.push_back({{"c", to_string(c)}, {"gamma", to_string(e)}});
  return {{"terms", terms}, {"text", s.to_string()}};
}

json to_json(const Pmf& p) {
  return {{"mode", "logfloat"}, {"offset", p.offset}, {"probs", p.probs}, {"truncated_mass", p.truncated_mass}};
}

json to_json(const ExactPmf& p) {
  json probs = json::array();
  for (const Rational& r : p.probs) probs.push_back(to_string(r));
  return {{"mode", "exact"}, {"offset", p.offset}, {"probs", probs}, {"truncated_mass", "0"}};
}

std::string to_csv(const Pmf& p) {
  std::string out = "x,prob\n";
  for (std::size_t i = 0; i < p.probs.size(); ++i) {
    out += std::to_string(p.offset + static_cast<std::int64_t>(i)) + "," + format_double(p.probs[i]) + "\n";
  }
  return out;
}

std::string to_csv(const ExactPmf& p) {
  std::string out = "x,prob\n";
  for (std::size_t i = 0; i < p.probs.size(); ++i) {
    out += std::to_string(p.offset + static_cast<std::int64_t>(i)) + "," + to_string(p.probs[i]) + "\n";
  }
  return out;
}

json moments_json(const MarginVector& mv, const MomentSequence& ms) {
  json rows = json::array();
  for (std::size_t k = 0; k < ms.E.size(); ++k) {
    rows.push_back({{"k", k + 1},
                    {"E", to_string(ms.E[k])},
                    {"V", to_string(ms.V[k])},
                    {"E_float", to_double(ms.E[k])},
                    {"V_float", to_double(ms.V[k])}});
  }
  return {{"n", mv.n()},
          {"margins", std::vector<std::int64_t>(mv.a().begin(), mv.a().end())},
          {"permutation", std::vector<std::size_t>(mv.permutation().begin(), mv.permutation().end())},
          {"moments", rows}};
}

std::string moments_csv(const MomentSequence& ms) {
  std::string out = "k,E,V,E_exact,V_exact\n";
  for (std::size_t k = 0; k < ms.E.size(); ++k) {
    out += std::to_string(k + 1) + "," + format_double(to_double(ms.E[k])) + "," +
           format_double(to_double(ms.V[k])) + "," + to_string(ms.E[k]) + "," + to_string(ms.V[k]) + "\n";
  }
  return out;
}

std::string moments_text(const MarginVector& mv, const MomentSequence& ms) {
  std::ostringstream out;
  out << "n = " << mv.n() << ", a =";
  for (const std::int64_t a : mv.a()) out << ' ' << a;
  out << "\n";
  char line[256];
  std::snprintf(line, sizeof line, "%3s  %20s  %20s  %s\n", "k", "E_k", "V_k", "exact (E_k ; V_k)");
  out << line;
  for (std::size_t k = 0; k < ms.E.size(); ++k) {
    std::snprintf(line, sizeof line, "%3zu  %20.10g  %20.10g  ", k + 1, to_double(ms.E[k]), to_double(ms.V[k]));
    out << line << to_string(ms.E[k]) << " ; " << to_string(ms.V[k]) << "\n";
  }
  return out.str();
}

json to_json(const Classification& c, const LimitStatement& limit) {
  json alphas = json::array();
  for (const Rational& a : c.alphas) alphas.push_back(to_string(a));
  json out = {
      {"regime", regime_name(c.regime)},
      {"subcase", c.subcase ? json(poisson_case_name(*c.subcase)) : json(nullptr)},
      {"rho", c.rho},
      {"rho_exact", c.rho_exact ? json(to_string(*c.rho_exact)) : json(nullptr)},
      {"alphas", alphas},
      {"variance_order", {{"exponent", to_string(c.order.exponent)}, {"coefficient", to_string(c.order.coefficient)}}},
      {"transform", limit.describe()},
  };
  if (limit.law == LimitLaw::kStandardNormal) {
    out["center"] = limit.center.to_string();
    out["scale"] = {{"exponent", to_string(limit.scale_exponent)}, {"variance_coefficient", to_string(limit.scale_variance)}};
  } else {
    out["sign"] = limit.sign;
    out["shift"] = limit.shift.to_string();
  }
  if (c.rho_trace) {
    json points = json::array();
    for (const auto& p : c.rho_trace->trace) points.push_back({p.n.str(), p.value});
    out["rho_trace"] = {{"converged", c.rho_trace->converged},
                        {"last_difference", c.rho_trace->last_difference},
                        {"last_value", c.rho_trace->last_value},
                        {"points", points}};
  }
  return out;
}

json to_json(const DiagnosticReport& r) {
  json out = {
      {"regime", regime_name(r.regime)},
      {"subcase", r.subcase ? json(poisson_case_name(*r.subcase)) : json(nullptr)},
      {"n", r.n},
      {"margins", r.margins},
      {"transform", r.transform},
      {"rho", r.rho},
      {"matching_mean", r.matching_mean},
      {"variance", r.variance},
      {"tv_exact", optional_number(r.tv_exact)},
      {"tv_limit", optional_number(r.tv_limit)},
      {"tv_bound", optional_number(r.tv_bound)},
      {"bound_vacuous", r.bound_vacuous},
      {"ks", optional_number(r.ks)},
      {"truncated_mass", r.truncated_mass},
      {"notes", r.notes},
  };
  if (r.subcase == PoissonCase::kIII) {
    out["theta"] = r.matching_mean;
    out["p"] = optional_number(r.p);
  }
  return out;
}

json simulation_summary(const MarginVector& mv, const std::vector<std::int64_t>& samples, std::uint64_t seed,
                        const std::optional<double>& tv_to_exact) {
  double sum = 0.0;
  for (const std::int64_t s : samples) sum += static_cast<double>(s);
  const double mean = samples.empty() ? 0.0 : sum / static_cast<double>(samples.size());
  double ss = 0.0;
  for (const std::int64_t s : samples) ss += (static_cast<double>(s) - mean) * (static_cast<double>(s) - mean);
  const double var = samples.size() > 1 ? ss / static_cast<double>(samples.size() - 1) : 0.0;
  const MomentSequence ms = moments_recursive(mv);
  return {{"n", mv.n()},
          {"margins", std::vector<std::int64_t>(mv.a().begin(), mv.a().end())},
          {"reps", samples.size()},
          {"seed", seed},
          {"mean", mean},
          {"var", var},
          {"exact_mean", to_double(ms.E.back())},
          {"exact_var", to_double(ms.V.back())},
          {"tv_to_exact", optional_number(tv_to_exact)}};
}

json to_json(const BirthdaySummary& s) {
  return {{"scenario", "birthday"}, {"n", s.n},       {"m", s.m},
          {"reps", s.reps},         {"seed", s.seed}, {"statistic", "m - n + X_1"},
          {"mean", s.mean},         {"var", s.variance}};
}

std::string histogram_csv(std::int64_t offset, const std::vector<std::int64_t>& counts) {
  std::string out = "value,count\n";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out += std::to_string(offset + static_cast<std::int64_t>(i)) + "," + std::to_string(counts[i]) + "\n";
  }
  return out;
}

}  // namespace cellimit::io
