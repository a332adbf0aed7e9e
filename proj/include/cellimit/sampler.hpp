// Copyright 2026 The cellimit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cellimit/model.hpp"
#include "cellimit/rng.hpp"

namespace cellimit {

/// m x n membership matrix, I(i, j) = 1 iff coupon j is held by collector i.
/// Rows follow the canonical (ascending margin) order.
class IndicatorMatrix {
 public:
  IndicatorMatrix(std::size_t m, std::int64_t n);

  /// Builds the matrix from explicit 0-based coupon sets.
  static IndicatorMatrix from_sets(std::int64_t n, const std::vector<std::vector<std::int64_t>>& sets);

  std::size_t m() const { return m_; }
  std::int64_t n() const { return n_; }
  bool held(std::size_t i, std::int64_t j) const { return bits_[index(i, j)] != 0; }
  void set(std::size_t i, std::int64_t j, bool value) { bits_[index(i, j)] = value ? 1 : 0; }
  std::int64_t row_sum(std::size_t i) const;

 private:
  std::size_t index(std::size_t i, std::int64_t j) const {
    return i * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  std::size_t m_;
  std::int64_t n_;
  std::vector<std::uint8_t> bits_;
};

/// The three coupon-wise decompositions
///   Y   = sum_j min_i I_ij                       = X_1
///   Yp  = sum_j I_1j * max_{i>=2} J_ij           = a_1 - X_1
///   Ypp = sum_j max(-1 + sum_i J_ij, 0)          = X_1 + (m-1) n - sum a_i
/// with J = 1 - I.
struct DecompositionSums {
  std::int64_t Y = 0;
  std::int64_t Yp = 0;
  std::int64_t Ypp = 0;
};

DecompositionSums decompose(const IndicatorMatrix& im);

/// All 2^m cell counts. Cell v in {1,2}^m lives at index sum_i (v_i - 1) 2^i
/// with i in canonical order, so counts[0] is X_1.
struct CellCounts {
  std::size_t m = 0;
  std::vector<std::int64_t> counts;

  std::int64_t at(std::span<const int> v) const;
};

struct SamplerLimits {
  std::int64_t max_table_n = 100'000'000;
  std::size_t max_table_m = 24;
};

/// One uniform a_i-subset per collector by partial Fisher-Yates shuffle.
IndicatorMatrix sample_indicators(const MarginVector& mv, Philox4x32& rng,
                                  const SamplerLimits& limits = {});
CellCounts tabulate(const IndicatorMatrix& im);
CellCounts sample_table(const MarginVector& mv, std::uint64_t seed, std::uint64_t stream = 0,
                        const SamplerLimits& limits = {});

/// Hypergeometric(n, successes, draws) variate. Exact sequential urn
/// when the smaller of the two symmetric parameters is at most 32, otherwise
/// inverse CDF over the mode-anchored probability row.
std::int64_t sample_hypergeometric(Philox4x32& rng, std::int64_t n, std::int64_t successes,
                                   std::int64_t draws);

/// X_1 by m-1 sequential hypergeometric draws along the intersection chain.
std::int64_t sample_cell(const MarginVector& mv, Philox4x32& rng);
std::int64_t sample_cell(const MarginVector& mv, std::uint64_t seed, std::uint64_t stream);

/// count independent draws; draw r uses stream r, so the result does not
/// depend on the number of workers.
std::vector<std::int64_t> sample_cells(const MarginVector& mv, std::uint64_t seed, std::uint64_t count,
                                       unsigned workers = 1);

struct BirthdaySummary {
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double variance = 0.0;
  /// histogram[k] = replications with m - n + X_1 = k.
  std::vector<std::int64_t> histogram;
};

/// a_i = n - 1 for all m collectors: each collector misses one uniform
/// coupon, and m - n + X_1 counts the repeated misses.
BirthdaySummary birthday_scenario(std::int64_t n, std::int64_t m, std::uint64_t reps,
                                  std::uint64_t seed, unsigned workers = 1);

/// Runs body(i) for i in [0, count) on `workers` threads with contiguous
/// static chunks.
void parallel_for(std::uint64_t count, unsigned workers, const std::function<void(std::uint64_t)>& body);

}  // namespace cellimit
