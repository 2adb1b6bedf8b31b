// Copyright 2026, The driftkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "driftkit/numerics/ecdf.hpp"

namespace driftkit::numerics {

enum class BinStrategy { kEqualWidth, kEqualFrequency };

// Reference-anchored histogram pair. Bin edges come from the reference only;
// test values outside the reference range are clipped into the end bins and
// the clip counts surfaced for diagnostics. Probabilities are epsilon-smoothed
// and renormalized: p_i = (c_i + eps) / (n + k * eps).
struct HistogramPair {
  std::vector<double> edges;  // size k + 1, strictly increasing
  std::vector<double> p;      // reference probabilities
  std::vector<double> q;      // test probabilities
  double epsilon = 0.0;
  std::size_t clipped_low = 0;
  std::size_t clipped_high = 0;
  bool degenerate_reference = false;
  std::vector<std::size_t> ref_counts;
  std::vector<std::size_t> test_counts;
};

namespace detail {

inline std::vector<double> smooth_counts(const std::vector<std::size_t>& counts,
                                         double eps) {
  const std::size_t k = counts.size();
  double n = 0.0;
  for (auto c : counts) n += static_cast<double>(c);
  std::vector<double> out(k);
  const double denom = n + static_cast<double>(k) * eps;
  for (std::size_t i = 0; i < k; ++i) {
    out[i] = (static_cast<double>(counts[i]) + eps) / denom;
  }
  return out;
}

// Bin index for x given strictly increasing edges; end bins absorb values
// outside [edges.front(), edges.back()].
inline std::size_t bin_index(const std::vector<double>& edges, double x) {
  const std::size_t k = edges.size() - 1;
  if (x < edges.front()) return 0;
  if (x >= edges.back()) return k - 1;
  const auto it = std::upper_bound(edges.begin(), edges.end(), x);
  const auto idx = static_cast<std::size_t>(it - edges.begin());
  return std::min(idx - 1, k - 1);
}

}  // namespace detail

inline HistogramPair build_histogram_pair(std::span<const double> reference,
                                          std::span<const double> test,
                                          std::size_t k = 10,
                                          BinStrategy strategy = BinStrategy::kEqualWidth,
                                          std::optional<double> epsilon = std::nullopt) {
  if (reference.empty()) throw std::invalid_argument("build_histogram_pair: empty reference");
  if (test.empty()) throw std::invalid_argument("build_histogram_pair: empty test");
  if (k < 2) throw std::invalid_argument("build_histogram_pair: k must be >= 2");
  require_finite(reference, "build_histogram_pair(reference)");
  require_finite(test, "build_histogram_pair(test)");

  HistogramPair out;
  out.epsilon = epsilon.value_or(1e-9 * static_cast<double>(reference.size()));

  const auto [lo_it, hi_it] = std::minmax_element(reference.begin(), reference.end());
  double lo = *lo_it;
  double hi = *hi_it;

  if (lo == hi) {
    // All reference values identical: a single interval widened by a pad at
    // machine-epsilon scale, flagged for the caller.
    const double pad = std::max(std::abs(lo), 1.0) * 16.0 * std::numeric_limits<double>::epsilon();
    out.edges = {lo - pad, hi + pad};
    out.degenerate_reference = true;
  } else if (strategy == BinStrategy::kEqualWidth) {
    out.edges.resize(k + 1);
    for (std::size_t i = 0; i <= k; ++i) {
      out.edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(k);
    }
    out.edges.front() = lo;
    out.edges.back() = hi;
  } else {
    std::vector<double> sorted(reference.begin(), reference.end());
    std::sort(sorted.begin(), sorted.end());
    out.edges.push_back(lo);
    for (std::size_t i = 1; i < k; ++i) {
      const double pos = static_cast<double>(i) * static_cast<double>(sorted.size() - 1) /
                         static_cast<double>(k);
      const auto base = static_cast<std::size_t>(pos);
      const double frac = pos - static_cast<double>(base);
      const double qv = sorted[base] +
                        frac * (sorted[std::min(base + 1, sorted.size() - 1)] - sorted[base]);
      if (qv > out.edges.back()) out.edges.push_back(qv);
    }
    if (hi > out.edges.back()) {
      out.edges.push_back(hi);
    } else {
      // Heavily tied reference collapsed the top quantiles.
      const double pad = std::max(std::abs(hi), 1.0) * 16.0 * std::numeric_limits<double>::epsilon();
      out.edges.push_back(hi + pad);
    }
    if (out.edges.size() < 2) throw std::logic_error("build_histogram_pair: edge construction failed");
  }

  const std::size_t bins = out.edges.size() - 1;
  out.ref_counts.assign(bins, 0);
  out.test_counts.assign(bins, 0);
  for (double v : reference) ++out.ref_counts[detail::bin_index(out.edges, v)];
  for (double v : test) {
    if (v < out.edges.front()) ++out.clipped_low;
    if (v > out.edges.back()) ++out.clipped_high;
    ++out.test_counts[detail::bin_index(out.edges, v)];
  }
  out.p = detail::smooth_counts(out.ref_counts, out.epsilon);
  out.q = detail::smooth_counts(out.test_counts, out.epsilon);
  return out;
}

}  // namespace driftkit::numerics
