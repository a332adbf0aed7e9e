// Copyright 2026 The cellimit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cellimit/asymptotics.hpp"
#include "cellimit/diagnostics.hpp"
#include "cellimit/model.hpp"

namespace cellimit {

/// The two worked 3 x 2 x 2 examples. Both use
///   b_1 = (n^(1/4), n^(1/2), n - n^(1/4) - n^(1/2)),  b_2 = (n^(1/2), n - n^(1/2)),
/// and b_3 = b_2 (which = 2) or b_3 = (n/2, n/2) (which = 3).
/// Any other `which` is an InvalidArgument error.
GrowthTable example_table(int which);

struct ExampleCell {
  CellRef cell;
  Classification classification;
  LimitStatement limit;
  std::vector<DiagnosticReport> certificates;  // one per grid point
};

struct ExampleTableResult {
  int which = 0;
  std::vector<std::int64_t> grid;
  std::vector<ExampleCell> cells;  // row-major
};

std::vector<std::int64_t> default_example_grid();

/// Classifies every cell and certifies it at each grid point. Cells are
/// spread over `workers` threads; the result does not depend on it.
ExampleTableResult reproduce_example_table(int which, const std::vector<std::int64_t>& grid,
                                           unsigned workers = 1);

/// One sub-table per index of the last collector, rows i, columns j,
/// followed by the finite-n certificates.
std::string render_text(const ExampleTableResult& result);
nlohmann::json to_json(const ExampleTableResult& result);

}  // namespace cellimit
