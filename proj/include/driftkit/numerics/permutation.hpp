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
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "driftkit/numerics/rng.hpp"

namespace driftkit::numerics {

// Larger statistic = more extreme. Exact enumeration is used when the number
// of distinct index splits fits under exact_threshold; otherwise Monte-Carlo
// with the add-one p-value p = (1 + #{perm >= obs}) / (1 + n_permutations) so
// the result is never zero. Each Monte-Carlo draw derives its own substream
// from (seed, draw index), so the work can be split across workers without
// changing the result.
struct PermutationPlan {
  std::size_t n_permutations = 2000;
  std::uint64_t seed = 0x5eed;
  bool allow_exact = true;
  std::size_t exact_threshold = 20000;
  std::string statistic;  // descriptor, informational
};

struct PermutationOutcome {
  double p_value = 1.0;
  bool exact = false;
  std::size_t evaluations = 0;
};

// Statistic evaluated on a split of pooled indices [0, n_x + n_y).
using SplitStatistic =
    std::function<double(const std::vector<std::size_t>&, const std::vector<std::size_t>&)>;

namespace detail {

inline std::uint64_t binomial_capped(std::size_t n, std::size_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(result);
}

}  // namespace detail

inline PermutationOutcome permutation_p_value(const PermutationPlan& plan, std::size_t n_x,
                                              std::size_t n_y, const SplitStatistic& statistic) {
  if (plan.n_permutations < 1) throw std::invalid_argument("permutation: n_permutations < 1");
  if (n_x == 0 || n_y == 0) throw std::invalid_argument("permutation: empty group");
  if (!statistic) throw std::invalid_argument("permutation: missing statistic");

  const std::size_t total = n_x + n_y;
  std::vector<std::size_t> identity_x(n_x), identity_y(n_y);
  std::iota(identity_x.begin(), identity_x.end(), std::size_t{0});
  std::iota(identity_y.begin(), identity_y.end(), n_x);
  const double observed = statistic(identity_x, identity_y);
  // Relative slack so permutations that recompute the observed statistic along
  // a different summation order still count as ties.
  const double tie_slack = 1e-12 * std::max(1.0, std::abs(observed));

  PermutationOutcome out;
  const std::uint64_t splits = detail::binomial_capped(total, n_x, plan.exact_threshold);
  if (plan.allow_exact && splits <= plan.exact_threshold) {
    // Exact mode: raw proportion of splits with statistic >= observed.
    std::vector<std::size_t> comb(n_x);
    std::iota(comb.begin(), comb.end(), std::size_t{0});
    std::vector<char> member(total);
    std::vector<std::size_t> other;
    other.reserve(n_y);
    std::size_t count = 0;
    std::size_t evaluated = 0;
    while (true) {
      std::fill(member.begin(), member.end(), 0);
      for (auto c : comb) member[c] = 1;
      other.clear();
      for (std::size_t i = 0; i < total; ++i) {
        if (!member[i]) other.push_back(i);
      }
      if (statistic(comb, other) >= observed - tie_slack) ++count;
      ++evaluated;
      // next combination in lexicographic order
      std::ptrdiff_t i = static_cast<std::ptrdiff_t>(n_x) - 1;
      while (i >= 0 && comb[static_cast<std::size_t>(i)] ==
                           static_cast<std::size_t>(i) + total - n_x) {
        --i;
      }
      if (i < 0) break;
      ++comb[static_cast<std::size_t>(i)];
      for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n_x; ++j) {
        comb[j] = comb[j - 1] + 1;
      }
    }
    out.p_value = static_cast<double>(count) / static_cast<double>(evaluated);
    out.exact = true;
    out.evaluations = evaluated;
    return out;
  }

  std::vector<std::size_t> pooled(total);
  std::size_t count = 0;
  for (std::size_t draw = 0; draw < plan.n_permutations; ++draw) {
    CounterRng rng(substream_seed(plan.seed, draw + 1));
    std::iota(pooled.begin(), pooled.end(), std::size_t{0});
    rng.shuffle(pooled.begin(), pooled.end());
    std::vector<std::size_t> gx(pooled.begin(), pooled.begin() + static_cast<std::ptrdiff_t>(n_x));
    std::vector<std::size_t> gy(pooled.begin() + static_cast<std::ptrdiff_t>(n_x), pooled.end());
    std::sort(gx.begin(), gx.end());
    std::sort(gy.begin(), gy.end());
    if (statistic(gx, gy) >= observed - tie_slack) ++count;
  }
  out.p_value = (1.0 + static_cast<double>(count)) /
                (1.0 + static_cast<double>(plan.n_permutations));
  out.exact = false;
  out.evaluations = plan.n_permutations;
  return out;
}

// Convenience overload over two value vectors; the statistic sees value spans.
inline PermutationOutcome permutation_p_value(
    const PermutationPlan& plan, std::span<const double> x, std::span<const double> y,
    const std::function<double(std::span<const double>, std::span<const double>)>& statistic) {
  std::vector<double> pooled(x.begin(), x.end());
  pooled.insert(pooled.end(), y.begin(), y.end());
  SplitStatistic on_indices = [&pooled, &statistic](const std::vector<std::size_t>& a,
                                                    const std::vector<std::size_t>& b) {
    std::vector<double> ga, gb;
    ga.reserve(a.size());
    gb.reserve(b.size());
    for (auto i : a) ga.push_back(pooled[i]);
    for (auto i : b) gb.push_back(pooled[i]);
    return statistic(ga, gb);
  };
  return permutation_p_value(plan, x.size(), y.size(), on_indices);
}

}  // namespace driftkit::numerics
