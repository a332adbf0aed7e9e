// Copyright 2026 The cellimit Authors
// SPDX-License-Identifier: Apache-2.0

#include "cellimit/model.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cellimit/error.hpp"

namespace cellimit {

MarginVector MarginVector::make(std::int64_t n, std::vector<std::int64_t> a) {
  if (a.size() < 2) {
    throw Error(ErrorCode::kDimensionError,
                "need at least two collectors, got " + std::to_string(a.size()));
  }
  if (n < 2) throw Error(ErrorCode::kMarginOutOfRange, "grand total n must be >= 2");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 1 || a[i] > n - 1) {
      throw Error(ErrorCode::kMarginOutOfRange,
                  "a_" + std::to_string(i + 1) + " = " + std::to_string(a[i]) +
                      " outside [1, " + std::to_string(n - 1) + "]");
    }
  }
  MarginVector mv;
  mv.n_ = n;
  std::vector<std::size_t> order(a.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&a](std::size_t l, std::size_t r) { return a[l] < a[r]; });
  mv.a_.reserve(a.size());
  mv.permutation_.reserve(a.size());
  for (const std::size_t idx : order) {
    mv.a_.push_back(a[idx]);
    mv.permutation_.push_back(idx + 1);
  }
  return mv;
}

std::vector<std::int64_t> MarginVector::original() const {
  std::vector<std::int64_t> out(a_.size());
  for (std::size_t k = 0; k < a_.size(); ++k) out[permutation_[k] - 1] = a_[k];
  return out;
}

MarginTable MarginTable::make(std::vector<std::int64_t> shape, std::int64_t n,
                              std::vector<std::vector<std::int64_t>> margins) {
  if (shape.size() < 2) throw Error(ErrorCode::kDimensionError, "table needs at least two dimensions");
  if (margins.size() != shape.size()) {
    throw Error(ErrorCode::kDimensionError, "one margin list per dimension required");
  }
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (shape[i] < 2) throw Error(ErrorCode::kDimensionError, "every r_i must be >= 2");
    if (static_cast<std::int64_t>(margins[i].size()) != shape[i]) {
      throw Error(ErrorCode::kDimensionError,
                  "margin " + std::to_string(i + 1) + " has " + std::to_string(margins[i].size()) +
                      " entries, shape says " + std::to_string(shape[i]));
    }
    std::int64_t total = 0;
    for (const std::int64_t b : margins[i]) {
      if (b < 0) throw Error(ErrorCode::kMarginOutOfRange, "negative margin total");
      total += b;
    }
    if (total != n) {
      throw Error(ErrorCode::kSpecError, "margin " + std::to_string(i + 1) + " sums to " +
                                             std::to_string(total) + ", expected n = " +
                                             std::to_string(n));
    }
  }
  MarginTable t;
  t.shape_ = std::move(shape);
  t.n_ = n;
  t.margins_ = std::move(margins);
  return t;
}

namespace {

void check_cell(const std::vector<std::int64_t>& shape, const CellRef& cell) {
  if (cell.v.size() != shape.size()) {
    throw Error(ErrorCode::kCellOutOfRange, "cell has " + std::to_string(cell.v.size()) +
                                                " indices, table has " +
                                                std::to_string(shape.size()) + " dimensions");
  }
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (cell.v[i] < 1 || cell.v[i] > shape[i]) {
      throw Error(ErrorCode::kCellOutOfRange, "index " + std::to_string(cell.v[i]) +
                                                  " outside [1, " + std::to_string(shape[i]) +
                                                  "]");
    }
  }
}

}  // namespace

MarginVector reduce_cell(const MarginTable& table, const CellRef& cell) {
  check_cell(table.shape(), cell);
  std::vector<std::int64_t> a;
  a.reserve(cell.v.size());
  for (std::size_t i = 0; i < cell.v.size(); ++i) {
    const std::int64_t b = table.margins()[i][cell.v[i] - 1];
    if (b == 0 || b == table.n()) {
      throw Error(ErrorCode::kMarginOutOfRange,
                  "margin b_" + std::to_string(i + 1) + "(" + std::to_string(cell.v[i]) +
                      ") = " + std::to_string(b) + " makes the cell deterministic");
    }
    a.push_back(b);
  }
  return MarginVector::make(table.n(), std::move(a));
}

Rational GrowthSpec::alpha(std::size_t i) const {
  return collectors_[i].coefficient(Exponent(1));
}

GrowthSpec GrowthSpec::make(std::int64_t n_min, std::vector<PowerSeries> collectors) {
  if (collectors.size() < 2) throw Error(ErrorCode::kDimensionError, "need at least two collectors");
  if (n_min < 2) throw Error(ErrorCode::kSpecError, "n_min must be >= 2");
  GrowthSpec g;
  g.n_min_ = n_min;
  g.collectors_ = std::move(collectors);
  for (std::size_t i = 0; i < g.collectors_.size(); ++i) {
    const PowerSeries& c = g.collectors_[i];
    const std::string label = "collector " + std::to_string(i + 1);
    if (!c.exact() || c.terms().empty()) throw Error(ErrorCode::kSpecError, label + " has no terms");
    for (const auto& [e, coef] : c.terms()) {
      if (e < Exponent(0) || e > Exponent(1)) {
        throw Error(ErrorCode::kSpecError, label + " has exponent " + to_string(e) + " outside [0, 1]");
      }
    }
    const Rational alpha = g.alpha(i);
    if (alpha < 0 || alpha > 1) {
      throw Error(ErrorCode::kSpecError, label + " has a_i/n -> " + to_string(alpha) + " outside [0, 1]");
    }
  }
  eval_growth(g, n_min);
  return g;
}

GrowthTable GrowthTable::make(std::int64_t n_min, std::vector<std::int64_t> shape,
                              std::vector<std::vector<PowerSeries>> margins) {
  if (shape.size() < 2) throw Error(ErrorCode::kDimensionError, "table needs at least two dimensions");
  if (margins.size() != shape.size()) {
    throw Error(ErrorCode::kDimensionError, "one margin list per dimension required");
  }
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (shape[i] < 2 || static_cast<std::int64_t>(margins[i].size()) != shape[i]) {
      throw Error(ErrorCode::kDimensionError, "margin " + std::to_string(i + 1) + " does not match shape");
    }
    PowerSeries total;
    for (const PowerSeries& b : margins[i]) total += b;
    if (!(total == PowerSeries::grand_total())) {
      throw Error(ErrorCode::kSpecError, "margin " + std::to_string(i + 1) + " sums to " +
                                             total.to_string() + ", expected n");
    }
  }
  GrowthTable t;
  t.n_min_ = n_min;
  t.shape_ = std::move(shape);
  t.margins_ = std::move(margins);
  return t;
}

std::vector<CellRef> GrowthTable::cells() const {
  std::vector<CellRef> out;
  std::vector<std::int64_t> v(shape_.size(), 1);
  while (true) {
    out.push_back(CellRef{v});
    std::size_t d = shape_.size();
    while (d > 0) {
      --d;
      if (++v[d] <= shape_[d]) break;
      v[d] = 1;
      if (d == 0) return out;
    }
  }
}

GrowthSpec reduce_cell(const GrowthTable& table, const CellRef& cell) {
  check_cell(table.shape(), cell);
  std::vector<PowerSeries> collectors;
  for (std::size_t i = 0; i < cell.v.size(); ++i) {
    collectors.push_back(table.margins()[i][cell.v[i] - 1]);
  }
  return GrowthSpec::make(table.n_min(), std::move(collectors));
}

Integer evaluate_margin(const PowerSeries& a, const Integer& n) {
  BigFloat sum = 0;
  for (const auto& [e, c] : a.terms()) sum += to_big(c) * rational_power(n, e);
  return round_half_up(sum);
}

MarginVector eval_growth(const GrowthSpec& g, std::int64_t n) {
  if (n < g.n_min()) {
    throw Error(ErrorCode::kDomainError,
                "n = " + std::to_string(n) + " below n_min = " + std::to_string(g.n_min()));
  }
  std::vector<std::int64_t> a;
  a.reserve(g.m());
  for (std::size_t i = 0; i < g.m(); ++i) {
    const Integer value = evaluate_margin(g.collector(i), Integer(n));
    if (value < 1 || value > n - 1) {
      throw Error(ErrorCode::kMarginOutOfRange, "a_" + std::to_string(i + 1) + "(" +
                                                    std::to_string(n) + ") = " + value.str() +
                                                    " outside [1, n-1]");
    }
    a.push_back(value.convert_to<std::int64_t>());
  }
  return MarginVector::make(n, std::move(a));
}

}  // namespace cellimit
