// Copyright 2026 The cellimit Authors
// SPDX-License-Identifier: Apache-2.0

#include "cellimit/sampler.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <thread>

#include "cellimit/error.hpp"
#include "cellimit/exact.hpp"

namespace cellimit {

namespace {

constexpr std::int64_t kUrnLimit = 32;

// Successes among `draws` sequential draws without replacement.
std::int64_t urn(Philox4x32& rng, std::int64_t n, std::int64_t successes, std::int64_t draws) {
  std::int64_t hits = 0;
  std::int64_t left = successes;
  for (std::int64_t t = 0; t < draws && left > 0; ++t) {
    if (static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n - t))) < left) {
      ++hits;
      --left;
    }
  }
  return hits;
}

}  // namespace

IndicatorMatrix::IndicatorMatrix(std::size_t m, std::int64_t n)
    : m_(m), n_(n), bits_(m * static_cast<std::size_t>(n), 0) {}

IndicatorMatrix IndicatorMatrix::from_sets(std::int64_t n, const std::vector<std::vector<std::int64_t>>& sets) {
  IndicatorMatrix im(sets.size(), n);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (const std::int64_t j : sets[i]) {
      if (j < 0 || j >= n) throw Error(ErrorCode::kDomainError, "coupon index out of range");
      im.set(i, j, true);
    }
  }
  return im;
}

std::int64_t IndicatorMatrix::row_sum(std::size_t i) const {
  std::int64_t total = 0;
  for (std::int64_t j = 0; j < n_; ++j) total += held(i, j) ? 1 : 0;
  return total;
}

DecompositionSums decompose(const IndicatorMatrix& im) {
  DecompositionSums sums;
  for (std::int64_t j = 0; j < im.n(); ++j) {
    bool all_held = true;
    bool missed_by_other = false;
    std::int64_t misses = 0;
    for (std::size_t i = 0; i < im.m(); ++i) {
      const bool h = im.held(i, j);
      all_held = all_held && h;
      if (!h) {
        ++misses;
        if (i > 0) missed_by_other = true;
      }
    }
    sums.Y += all_held ? 1 : 0;
    sums.Yp += (im.held(0, j) && missed_by_other) ? 1 : 0;
    sums.Ypp += std::max<std::int64_t>(misses - 1, 0);
  }
  return sums;
}

std::int64_t CellCounts::at(std::span<const int> v) const {
  if (v.size() != m) throw Error(ErrorCode::kCellOutOfRange, "cell dimension mismatch");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (v[i] != 1 && v[i] != 2) throw Error(ErrorCode::kCellOutOfRange, "cell index must be 1 or 2");
    if (v[i] == 2) idx |= std::size_t{1} << i;
  }
  return counts[idx];
}

IndicatorMatrix sample_indicators(const MarginVector& mv, Philox4x32& rng, const SamplerLimits& limits) {
  if (mv.n() > limits.max_table_n || mv.m() > limits.max_table_m) {
    throw Error(ErrorCode::kResourceLimit, "full-table sampling limited to n <= " +
                                               std::to_string(limits.max_table_n) + " and m <= " +
                                               std::to_string(limits.max_table_m));
  }
  const std::int64_t n = mv.n();
  IndicatorMatrix im(mv.m(), n);
  std::vector<std::int64_t> deck(static_cast<std::size_t>(n));
  std::iota(deck.begin(), deck.end(), 0);
  for (std::size_t i = 0; i < mv.m(); ++i) {
    // Partial Fisher-Yates: the first a_i slots become a uniform subset
    // whatever arrangement the deck starts in.
    for (std::int64_t t = 0; t < mv.a(i); ++t) {
      const auto pick = t + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n - t)));
      std::swap(deck[static_cast<std::size_t>(t)], deck[static_cast<std::size_t>(pick)]);
      im.set(i, deck[static_cast<std::size_t>(t)], true);
    }
  }
  return im;
}

CellCounts tabulate(const IndicatorMatrix& im) {
  CellCounts cc;
  cc.m = im.m();
  cc.counts.assign(std::size_t{1} << im.m(), 0);
  for (std::int64_t j = 0; j < im.n(); ++j) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < im.m(); ++i) {
      if (!im.held(i, j)) idx |= std::size_t{1} << i;
    }
    ++cc.counts[idx];
  }
  return cc;
}

CellCounts sample_table(const MarginVector& mv, std::uint64_t seed, std::uint64_t stream,
                        const SamplerLimits& limits) {
  Philox4x32 rng(seed, stream);
  return tabulate(sample_indicators(mv, rng, limits));
}

std::int64_t sample_hypergeometric(Philox4x32& rng, std::int64_t n, std::int64_t successes,
                                   std::int64_t draws) {
  if (n < 0 || successes < 0 || draws < 0 || successes > n || draws > n) {
    throw Error(ErrorCode::kDomainError, "invalid hypergeometric parameters");
  }
  const std::int64_t smallest = std::min({draws, n - draws, successes, n - successes});
  if (smallest <= kUrnLimit) {
    if (smallest == draws) return urn(rng, n, successes, draws);
    if (smallest == n - draws) return successes - urn(rng, n, successes, n - draws);
    if (smallest == successes) return urn(rng, n, draws, successes);
    return draws - urn(rng, n, draws, n - successes);
  }
  const Pmf row = hypergeom_pmf(n, successes, draws);
  const double u = rng.uniform();
  double cumulative = 0.0;
  for (std::size_t i = 0; i < row.probs.size(); ++i) {
    cumulative += row.probs[i];
    if (u < cumulative) return row.offset + static_cast<std::int64_t>(i);
  }
  return row.highest();
}

std::int64_t sample_cell(const MarginVector& mv, Philox4x32& rng) {
  std::int64_t x = mv.a(0);
  for (std::size_t k = 1; k < mv.m(); ++k) x = sample_hypergeometric(rng, mv.n(), x, mv.a(k));
  return x;
}

std::int64_t sample_cell(const MarginVector& mv, std::uint64_t seed, std::uint64_t stream) {
  Philox4x32 rng(seed, stream);
  return sample_cell(mv, rng);
}

void parallel_for(std::uint64_t count, unsigned workers, const std::function<void(std::uint64_t)>& body) {
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  const std::uint64_t chunk = (count + workers - 1) / workers;
  std::vector<std::jthread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = w * chunk;
    const std::uint64_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, &errors, w, begin, end] {
      try {
        for (std::uint64_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  pool.clear();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<std::int64_t> sample_cells(const MarginVector& mv, std::uint64_t seed, std::uint64_t count,
                                       unsigned workers) {
  std::vector<std::int64_t> out(count);
  parallel_for(count, workers, [&](std::uint64_t r) { out[r] = sample_cell(mv, seed, r); });
  return out;
}

BirthdaySummary birthday_scenario(std::int64_t n, std::int64_t m, std::uint64_t reps, std::uint64_t seed,
                                  unsigned workers) {
  if (m < 2) throw Error(ErrorCode::kDimensionError, "birthday scenario needs m >= 2");
  if (n < 2) throw Error(ErrorCode::kDomainError, "birthday scenario needs n >= 2");
  if (reps == 0) throw Error(ErrorCode::kEmptyInput, "reps must be positive");
  std::vector<std::int64_t> repeats(reps);
  parallel_for(reps, workers, [&](std::uint64_t r) {
    Philox4x32 rng(seed, r);
    std::vector<std::uint64_t> missed(static_cast<std::size_t>(m));
    for (auto& c : missed) c = rng.below(static_cast<std::uint64_t>(n));
    std::sort(missed.begin(), missed.end());
    const auto distinct = std::unique(missed.begin(), missed.end()) - missed.begin();
    // X_1 = n - distinct, so m - n + X_1 = m - distinct.
    repeats[r] = m - distinct;
  });
  BirthdaySummary s;
  s.n = n;
  s.m = m;
  s.reps = reps;
  s.seed = seed;
  double sum = 0.0;
  for (const std::int64_t v : repeats) {
    sum += static_cast<double>(v);
    if (static_cast<std::size_t>(v) >= s.histogram.size()) s.histogram.resize(static_cast<std::size_t>(v) + 1, 0);
    ++s.histogram[static_cast<std::size_t>(v)];
  }
  s.mean = sum / static_cast<double>(reps);
  double ss = 0.0;
  for (const std::int64_t v : repeats) ss += (static_cast<double>(v) - s.mean) * (static_cast<double>(v) - s.mean);
  s.variance = reps > 1 ? ss / static_cast<double>(reps - 1) : 0.0;
  return s;
}

}  // namespace cellimit
