// Copyright 2026 The cellimit Authors
// SPDX-License-Identifier: Apache-2.0

#include "cellimit.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "cellimit/asymptotics.hpp"
#include "cellimit/diagnostics.hpp"
#include "cellimit/error.hpp"
#include "cellimit/example_tables.hpp"
#include "cellimit/exact.hpp"
#include "cellimit/model.hpp"
#include "cellimit/report.hpp"
#include "cellimit/sampler.hpp"

struct cl_margins {
  cellimit::MarginVector mv;
};

struct cl_growth {
  cellimit::GrowthSpec g;
};

struct cl_pmf {
  std::variant<cellimit::Pmf, cellimit::ExactPmf> law;
  cellimit::Pmf view;  // double copy backing cl_pmf_prob
};

namespace {

using cellimit::Error;
using cellimit::ErrorCode;
using nlohmann::json;

thread_local std::string last_error;

cl_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMarginOutOfRange: return CL_MARGIN_OUT_OF_RANGE;
    case ErrorCode::kDimensionError: return CL_DIMENSION_ERROR;
    case ErrorCode::kCellOutOfRange: return CL_CELL_OUT_OF_RANGE;
    case ErrorCode::kResourceLimit: return CL_RESOURCE_LIMIT;
    case ErrorCode::kDomainError: return CL_DOMAIN_ERROR;
    case ErrorCode::kSpecError: return CL_SPEC_ERROR;
    case ErrorCode::kUnclassifiable: return CL_UNCLASSIFIABLE;
    case ErrorCode::kNoConvergence: return CL_NO_CONVERGENCE;
    case ErrorCode::kEmptyInput: return CL_EMPTY_INPUT;
    case ErrorCode::kInvalidArgument: return CL_INVALID_ARGUMENT;
  }
  return CL_INTERNAL_ERROR;
}

template <typename F>
cl_status guarded(F&& f) {
  last_error.clear();
  try {
    f();
    return CL_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const json::exception& e) {
    last_error = std::string("InvalidArgument: malformed JSON: ") + e.what();
    return CL_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "ResourceLimit: out of memory";
    return CL_RESOURCE_LIMIT;
  } catch (const std::exception& e) {
    last_error = std::string("Internal: ") + e.what();
    return CL_INTERNAL_ERROR;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json parse_document(const char* text) {
  require(text != nullptr, "null JSON document");
  return json::parse(text);
}

std::optional<cellimit::CellRef> parse_cell(const char* cell) {
  if (cell == nullptr) return std::nullopt;
  return cellimit::io::parse_cell(cell);
}

std::string classify_text(const cellimit::Classification& c, const cellimit::LimitStatement& limit) {
  std::ostringstream out;
  out << "regime: " << cellimit::regime_name(c.regime);
  if (c.subcase) out << " (" << cellimit::poisson_case_name(*c.subcase) << ")";
  out << "\nlimit: " << limit.describe() << "\n";
  out << "variance order: " << cellimit::to_string(c.order.coefficient) << " * n^("
      << cellimit::to_string(c.order.exponent) << ")\n";
  if (c.regime != cellimit::Regime::kNormal) {
    out << "rho: " << c.rho;
    if (c.rho_exact) out << " (exact " << cellimit::to_string(*c.rho_exact) << ")";
    out << "\n";
  }
  return out.str();
}

std::string diagnose_text(const cellimit::DiagnosticReport& r) {
  const auto opt = [](const std::optional<double>& v) { return v ? std::to_string(*v) : std::string("-"); };
  std::ostringstream out;
  out << "n = " << r.n << "  regime " << cellimit::regime_name(r.regime) << "  " << r.transform << "\n";
  out << "  rho " << r.rho << "  matching mean " << r.matching_mean << "  variance " << r.variance << "\n";
  out << "  tv_exact " << opt(r.tv_exact) << "  tv_limit " << opt(r.tv_limit) << "  tv_bound " << opt(r.tv_bound)
      << "  ks " << opt(r.ks) << "\n";
  for (const std::string& note : r.notes) out << "  note: " << note << "\n";
  return out.str();
}

std::vector<std::int64_t> histogram_of(const std::vector<std::int64_t>& samples, std::int64_t& offset) {
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  offset = *lo;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(*hi - *lo + 1), 0);
  for (const std::int64_t s : samples) ++counts[static_cast<std::size_t>(s - offset)];
  return counts;
}

}  // namespace

extern "C" {

const char* cl_status_name(cl_status status) {
  switch (status) {
    case CL_OK: return "OK";
    case CL_MARGIN_OUT_OF_RANGE: return "MarginOutOfRange";
    case CL_DIMENSION_ERROR: return "DimensionError";
    case CL_CELL_OUT_OF_RANGE: return "CellOutOfRange";
    case CL_RESOURCE_LIMIT: return "ResourceLimit";
    case CL_DOMAIN_ERROR: return "DomainError";
    case CL_SPEC_ERROR: return "SpecError";
    case CL_UNCLASSIFIABLE: return "Unclassifiable";
    case CL_NO_CONVERGENCE: return "NoConvergence";
    case CL_EMPTY_INPUT: return "EmptyInput";
    case CL_INVALID_ARGUMENT: return "InvalidArgument";
    case CL_IO_ERROR: return "IOError";
    case CL_INTERNAL_ERROR: return "Internal";
  }
  return "Unknown";
}

const char* cl_last_error(void) { return last_error.c_str(); }

void cl_string_free(char* s) { std::free(s); }

cl_status cl_margins_create(int64_t n, const int64_t* a, size_t m, cl_margins** out) {
  return guarded([&] {
    require(out != nullptr && (a != nullptr || m == 0), "null argument");
    *out = new cl_margins{cellimit::MarginVector::make(n, std::vector<std::int64_t>(a, a + m))};
  });
}

cl_status cl_margins_from_json(const char* text, const char* cell, cl_margins** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = new cl_margins{cellimit::io::margins_from_json(parse_document(text), parse_cell(cell))};
  });
}

void cl_margins_free(cl_margins* mv) { delete mv; }
int64_t cl_margins_n(const cl_margins* mv) { return mv->mv.n(); }
size_t cl_margins_m(const cl_margins* mv) { return mv->mv.m(); }
int64_t cl_margins_a(const cl_margins* mv, size_t i) { return i < mv->mv.m() ? mv->mv.a(i) : -1; }

cl_status cl_growth_from_json(const char* text, const char* cell, cl_growth** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = new cl_growth{cellimit::io::growth_from_json(parse_document(text), parse_cell(cell))};
  });
}

void cl_growth_free(cl_growth* g) { delete g; }
size_t cl_growth_m(const cl_growth* g) { return g->g.m(); }

cl_status cl_cell_pmf(const cl_margins* mv, cl_arithmetic mode, cl_pmf** out) {
  return guarded([&] {
    require(mv != nullptr && out != nullptr, "null argument");
    if (mode == CL_EXACT) {
      cellimit::ExactPmf law = cellimit::cell_pmf_exact(mv->mv);
      cellimit::Pmf view = law.to_float();
      *out = new cl_pmf{std::move(law), std::move(view)};
    } else {
      cellimit::Pmf law = cellimit::cell_pmf(mv->mv);
      *out = new cl_pmf{law, law};
    }
  });
}

cl_status cl_hypergeom_pmf(int64_t n, int64_t successes, int64_t draws, cl_arithmetic mode, cl_pmf** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    if (mode == CL_EXACT) {
      cellimit::ExactPmf law = cellimit::hypergeom_pmf_exact(n, successes, draws);
      cellimit::Pmf view = law.to_float();
      *out = new cl_pmf{std::move(law), std::move(view)};
    } else {
      cellimit::Pmf law = cellimit::hypergeom_pmf(n, successes, draws);
      *out = new cl_pmf{law, law};
    }
  });
}

void cl_pmf_free(cl_pmf* p) { delete p; }
int64_t cl_pmf_offset(const cl_pmf* p) { return p->view.offset; }
size_t cl_pmf_size(const cl_pmf* p) { return p->view.probs.size(); }
double cl_pmf_prob(const cl_pmf* p, size_t i) { return i < p->view.probs.size() ? p->view.probs[i] : 0.0; }

cl_status cl_pmf_render(const cl_pmf* p, cl_format format, char** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "null argument");
    std::visit(
        [&](const auto& law) {
          *out = dup(format == CL_FORMAT_JSON ? cellimit::io::to_json(law).dump() + "\n" : cellimit::io::to_csv(law));
        },
        p->law);
  });
}

cl_status cl_moments(const cl_margins* mv, cl_format format, char** out) {
  return guarded([&] {
    require(mv != nullptr && out != nullptr, "null argument");
    const cellimit::MomentSequence ms = cellimit::moments_recursive(mv->mv);
    switch (format) {
      case CL_FORMAT_JSON: *out = dup(cellimit::io::moments_json(mv->mv, ms).dump(2) + "\n"); break;
      case CL_FORMAT_CSV: *out = dup(cellimit::io::moments_csv(ms)); break;
      default: *out = dup(cellimit::io::moments_text(mv->mv, ms)); break;
    }
  });
}

cl_status cl_variance_m2(int64_t n, int64_t a1, int64_t a2, char** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = dup(cellimit::to_string(cellimit::variance_m2(n, a1, a2)));
  });
}

cl_status cl_classify(const cl_growth* g, cl_format format, char** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    const cellimit::Classification c = cellimit::classify(g->g);
    const cellimit::LimitStatement limit = cellimit::limit_statement(c, cellimit::canonical_order(g->g));
    *out = dup(format == CL_FORMAT_JSON ? cellimit::io::to_json(c, limit).dump(2) + "\n" : classify_text(c, limit));
  });
}

cl_status cl_diagnose(const cl_growth* g, const int64_t* grid, size_t grid_len, cl_format format, char** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr && grid != nullptr && grid_len > 0, "diagnose needs at least one n");
    const cellimit::Classification c = cellimit::classify(g->g);
    json reports = json::array();
    std::string text;
    for (size_t i = 0; i < grid_len; ++i) {
      const cellimit::DiagnosticReport r = cellimit::diagnose(g->g, c, grid[i]);
      reports.push_back(cellimit::io::to_json(r));
      text += diagnose_text(r);
    }
    if (format == CL_FORMAT_JSON) {
      *out = dup((grid_len == 1 ? reports[0] : reports).dump(2) + "\n");
    } else {
      *out = dup(text);
    }
  });
}

cl_status cl_simulate(const cl_margins* mv, uint64_t reps, uint64_t seed, unsigned workers, char** histogram_csv,
                      char** summary_json) {
  return guarded([&] {
    require(mv != nullptr && histogram_csv != nullptr && summary_json != nullptr, "null argument");
    if (reps == 0) throw Error(ErrorCode::kEmptyInput, "reps must be positive");
    const std::vector<std::int64_t> samples = cellimit::sample_cells(mv->mv, seed, reps, workers);
    std::optional<double> tv;
    try {
      tv = cellimit::tv_distance(cellimit::empirical_pmf(samples), cellimit::cell_pmf(mv->mv));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kResourceLimit) throw;
    }
    std::int64_t offset = 0;
    const std::vector<std::int64_t> counts = histogram_of(samples, offset);
    const std::string csv = cellimit::io::histogram_csv(offset, counts);
    const std::string summary = cellimit::io::simulation_summary(mv->mv, samples, seed, tv).dump(2) + "\n";
    *histogram_csv = dup(csv);
    *summary_json = dup(summary);
  });
}

cl_status cl_birthday(int64_t n, int64_t m, uint64_t reps, uint64_t seed, unsigned workers, char** histogram_csv,
                      char** summary_json) {
  return guarded([&] {
    require(histogram_csv != nullptr && summary_json != nullptr, "null argument");
    const cellimit::BirthdaySummary s = cellimit::birthday_scenario(n, m, reps, seed, workers);
    cellimit::Pmf empirical;
    empirical.offset = 0;
    for (const std::int64_t c : s.histogram) empirical.probs.push_back(static_cast<double>(c) / static_cast<double>(reps));
    const double lambda = static_cast<double>(m) * static_cast<double>(m) / (2.0 * static_cast<double>(n));
    json summary = cellimit::io::to_json(s);
    summary["lambda"] = lambda;
    summary["tv_to_poisson"] = cellimit::tv_to_poisson(empirical, lambda);
    const std::string csv = cellimit::io::histogram_csv(0, s.histogram);
    const std::string text = summary.dump(2) + "\n";
    *histogram_csv = dup(csv);
    *summary_json = dup(text);
  });
}

cl_status cl_example_table(int which, const int64_t* grid, size_t grid_len, unsigned workers, cl_format format,
                           char** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const std::vector<std::int64_t> points =
        grid == nullptr ? cellimit::default_example_grid() : std::vector<std::int64_t>(grid, grid + grid_len);
    const cellimit::ExampleTableResult result = cellimit::reproduce_example_table(which, points, workers);
    *out = dup(format == CL_FORMAT_JSON ? cellimit::to_json(result).dump(2) + "\n" : cellimit::render_text(result));
  });
}

}  // extern "C"
