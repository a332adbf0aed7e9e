// Copyright 2026 The cellimit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "cellimit/asymptotics.hpp"
#include "cellimit/diagnostics.hpp"
#include "cellimit/exact.hpp"
#include "cellimit/model.hpp"
#include "cellimit/sampler.hpp"

namespace cellimit::io {

using nlohmann::json;

// Inputs.
//   MarginVector: {"n":10,"a":[4,5,6]}
//   MarginTable:  {"shape":[3,2,2],"n":16,"margins":[[2,4,10],[4,12],[4,12]]}
//   GrowthSpec:   {"n_min":256,"collectors":[{"terms":[{"c":1.0,"gamma":0.5}]}, ...]}
//   GrowthTable:  {"n_min":16,"shape":[3,2,2],"margins":[[{"terms":[...]}, ...], ...]}
// Coefficients and exponents may be JSON numbers or "p/q" strings.

PowerSeries power_sum_from_json(const json& j);
MarginTable margin_table_from_json(const json& j);
GrowthTable growth_table_from_json(const json& j);

/// A MarginVector document, or a MarginTable document reduced at `cell`.
MarginVector margins_from_json(const json& j, const std::optional<CellRef>& cell);

/// A GrowthSpec document, or a GrowthTable document reduced at `cell`.
GrowthSpec growth_from_json(const json& j, const std::optional<CellRef>& cell);

/// Parses "3,2,2".
CellRef parse_cell(const std::string& text);

// Outputs.

json to_json(const PowerSeries& s);
json to_json(const Pmf& p);
json to_json(const ExactPmf& p);
/// CSV with header "x,prob"; exact probabilities as "num/den".
std::string to_csv(const Pmf& p);
std::string to_csv(const ExactPmf& p);

json moments_json(const MarginVector& mv, const MomentSequence& ms);
std::string moments_csv(const MomentSequence& ms);
std::string moments_text(const MarginVector& mv, const MomentSequence& ms);

json to_json(const Classification& c, const LimitStatement& limit);
json to_json(const DiagnosticReport& r);

json simulation_summary(const MarginVector& mv, const std::vector<std::int64_t>& samples,
                        std::uint64_t seed, const std::optional<double>& tv_to_exact);
json to_json(const BirthdaySummary& s);
/// "value,count" rows for value = offset, offset+1, ...
std::string histogram_csv(std::int64_t offset, const std::vector<std::int64_t>& counts);

}  // namespace cellimit::io
