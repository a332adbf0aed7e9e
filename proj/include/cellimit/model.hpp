// Copyright 2026 The cellimit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cellimit/numeric.hpp"
#include "cellimit/series.hpp"

namespace cellimit {

/// Concrete coupon-collector instance: n coupons, m collectors, collector i
/// takes a_i distinct coupons. Margins are held in ascending order; the
/// permutation records, for each canonical slot, the 1-based position the
/// margin had in the caller's ordering.
class MarginVector {
 public:
  /// Validates 1 <= a_i <= n-1 and m >= 2, then sorts (stable).
  static MarginVector make(std::int64_t n, std::vector<std::int64_t> a);

  std::int64_t n() const { return n_; }
  std::size_t m() const { return a_.size(); }
  std::span<const std::int64_t> a() const { return a_; }
  std::int64_t a(std::size_t i) const { return a_[i]; }
  std::span<const std::size_t> permutation() const { return permutation_; }

  /// Margins in the caller's original order.
  std::vector<std::int64_t> original() const;

  friend bool operator==(const MarginVector&, const MarginVector&) = default;

 private:
  MarginVector() = default;

  std::int64_t n_ = 0;
  std::vector<std::int64_t> a_;
  std::vector<std::size_t> permutation_;
};

/// validate_margins: canonical form of (n, a) or MarginOutOfRange /
/// DimensionError.
inline MarginVector validate_margins(std::int64_t n, std::vector<std::int64_t> a) {
  return MarginVector::make(n, std::move(a));
}

/// 1-based cell position (v_1, ..., v_m).
struct CellRef {
  std::vector<std::int64_t> v;
};

/// General r_1 x ... x r_m table with fixed one-dimensional margins b_i(j).
class MarginTable {
 public:
  static MarginTable make(std::vector<std::int64_t> shape, std::int64_t n,
                          std::vector<std::vector<std::int64_t>> margins);

  const std::vector<std::int64_t>& shape() const { return shape_; }
  std::int64_t n() const { return n_; }
  const std::vector<std::vector<std::int64_t>>& margins() const { return margins_; }

 private:
  std::vector<std::int64_t> shape_;
  std::int64_t n_ = 0;
  std::vector<std::vector<std::int64_t>> margins_;
};

/// The cell at v has the law of X_1 in the coupon model with a_i = b_i(v_i).
MarginVector reduce_cell(const MarginTable& table, const CellRef& cell);

/// Symbolic margins a_i(n) = round_half_up(sum_k c_k n^{gamma_k}) with
/// gamma_k in [0, 1], valid for n >= n_min.
class GrowthSpec {
 public:
  static GrowthSpec make(std::int64_t n_min, std::vector<PowerSeries> collectors);

  std::int64_t n_min() const { return n_min_; }
  std::size_t m() const { return collectors_.size(); }
  const std::vector<PowerSeries>& collectors() const { return collectors_; }
  const PowerSeries& collector(std::size_t i) const { return collectors_[i]; }

  /// lim a_i(n)/n: the sum of the gamma = 1 coefficients.
  Rational alpha(std::size_t i) const;

 private:
  std::int64_t n_min_ = 1;
  std::vector<PowerSeries> collectors_;
};

/// Table whose margins are power sums; used for the worked examples.
class GrowthTable {
 public:
  /// Checks sum_j b_i(j) == n exactly in power-sum arithmetic.
  static GrowthTable make(std::int64_t n_min, std::vector<std::int64_t> shape,
                          std::vector<std::vector<PowerSeries>> margins);

  std::int64_t n_min() const { return n_min_; }
  const std::vector<std::int64_t>& shape() const { return shape_; }
  const std::vector<std::vector<PowerSeries>>& margins() const { return margins_; }

  /// All cells in row-major order (last index fastest).
  std::vector<CellRef> cells() const;

 private:
  std::int64_t n_min_ = 1;
  std::vector<std::int64_t> shape_;
  std::vector<std::vector<PowerSeries>> margins_;
};

GrowthSpec reduce_cell(const GrowthTable& table, const CellRef& cell);

/// a(n) for one power sum, in >= 256-bit arithmetic.
Integer evaluate_margin(const PowerSeries& a, const Integer& n);

/// Concrete margins at n; MarginOutOfRange if any escapes [1, n-1].
MarginVector eval_growth(const GrowthSpec& g, std::int64_t n);

}  // namespace cellimit
