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
#include <array>
#include <cmath>
#include <utility>

#include "driftkit/data_drift/batch_detector.hpp"
#include "driftkit/numerics/ecdf.hpp"
#include "driftkit/numerics/permutation.hpp"
#include "driftkit/numerics/ranks.hpp"
#include "driftkit/numerics/tails.hpp"

namespace driftkit::data_drift {

// Two-sample Kolmogorov-Smirnov test. D = sup |F_ref - F_test|; p from the
// asymptotic Kolmogorov tail with effective size ne = nm/(n+m).
class KsTest final : public NumericStatisticalTest {
 public:
  using NumericStatisticalTest::NumericStatisticalTest;

  std::string method_name() const override { return "ks"; }

 protected:
  ComparisonResult compute(std::span<const double> ref,
                           std::span<const double> test) const override {
    ComparisonResult result;
    result.statistic = numerics::ks_statistic({ref.begin(), ref.end()}, {test.begin(), test.end()});
    const double n = static_cast<double>(ref.size());
    const double m = static_cast<double>(test.size());
    const double ne = n * m / (n + m);
    result.p_value = numerics::kolmogorov_tail(std::sqrt(ne) * result.statistic);
    return result;
  }
};

namespace detail {

// Combined midranks of (a ++ b), returned split per sample.
inline std::pair<std::vector<double>, std::vector<double>> combined_midranks(
    std::span<const double> a, std::span<const double> b) {
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = numerics::midranks(pooled);
  std::vector<double> ra(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(a.size()));
  std::vector<double> rb(ranks.begin() + static_cast<std::ptrdiff_t>(a.size()), ranks.end());
  return {std::move(ra), std::move(rb)};
}

}  // namespace detail

// Two-sample Cramer-von Mises test in rank form: with combined ranks r_i of
// the first sample and s_j of the second (both sorted within sample),
//   U = n * sum_i (r_i - i)^2 + m * sum_j (s_j - j)^2,
//   T = U / (nm(n+m)) - (4mn - 1) / (6(m+n)).
// Ties use midranks. p by permutation (exact on small inputs).
class CramerVonMisesTest final : public NumericStatisticalTest {
 public:
  explicit CramerVonMisesTest(double alpha = 0.05, numerics::PermutationPlan plan = {},
                              CallbackSet callbacks = {})
      : NumericStatisticalTest(alpha, std::move(callbacks)), plan_(std::move(plan)) {
    plan_.statistic = "cvm";
  }

  std::string method_name() const override { return "cvm"; }

  static double statistic(std::span<const double> a, std::span<const double> b) {
    auto [ra, rb] = detail::combined_midranks(a, b);
    std::sort(ra.begin(), ra.end());
    std::sort(rb.begin(), rb.end());
    const double n = static_cast<double>(a.size());
    const double m = static_cast<double>(b.size());
    double u = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
      const double d = ra[i] - static_cast<double>(i + 1);
      u += n * d * d;
    }
    for (std::size_t j = 0; j < rb.size(); ++j) {
      const double d = rb[j] - static_cast<double>(j + 1);
      u += m * d * d;
    }
    return u / (n * m * (n + m)) - (4.0 * m * n - 1.0) / (6.0 * (m + n));
  }

 protected:
  ComparisonResult compute(std::span<const double> ref,
                           std::span<const double> test) const override {
    ComparisonResult result;
    result.statistic = statistic(ref, test);
    const auto outcome = numerics::permutation_p_value(
        plan_, ref, test,
        [](std::span<const double> a, std::span<const double> b) { return statistic(a, b); });
    result.p_value = outcome.p_value;
    result.extras["permutation_exact"] = outcome.exact ? 1.0 : 0.0;
    return result;
  }

 private:
  numerics::PermutationPlan plan_;
};

// Two-sample (k = 2) Anderson-Darling test. With combined sorted values
// Z_(1..N) and M_ij = #{sample i <= Z_(j)},
//   A^2 = sum_i (1/n_i) sum_j (N M_ij - j n_i)^2 / (j (N - j)),
// summing over distinct cut points only (tie handling). p by permutation
// (exact on small inputs); the standardized large-sample approximation is an
// opt-in.
class AndersonDarlingTest final : public NumericStatisticalTest {
 public:
  explicit AndersonDarlingTest(double alpha = 0.05, numerics::PermutationPlan plan = {},
                               bool use_approximation = false, CallbackSet callbacks = {})
      : NumericStatisticalTest(alpha, std::move(callbacks)),
        plan_(std::move(plan)),
        use_approximation_(use_approximation) {
    plan_.statistic = "anderson_darling";
  }

  std::string method_name() const override { return "anderson_darling"; }

  static double statistic(std::span<const double> a, std::span<const double> b) {
    std::vector<std::pair<double, int>> pooled;
    pooled.reserve(a.size() + b.size());
    for (double v : a) pooled.emplace_back(v, 0);
    for (double v : b) pooled.emplace_back(v, 1);
    std::sort(pooled.begin(), pooled.end());
    const std::size_t total = pooled.size();
    const double nn = static_cast<double>(total);
    const std::array<double, 2> sizes{static_cast<double>(a.size()),
                                      static_cast<double>(b.size())};
    std::array<double, 2> cum{0.0, 0.0};
    std::array<double, 2> acc{0.0, 0.0};
    for (std::size_t j = 1; j < total; ++j) {
      cum[static_cast<std::size_t>(pooled[j - 1].second)] += 1.0;
      if (pooled[j - 1].first == pooled[j].first) continue;  // cut inside a tie group
      const double jd = static_cast<double>(j);
      const double w = jd * (nn - jd);
      for (std::size_t i = 0; i < 2; ++i) {
        const double d = nn * cum[i] - jd * sizes[i];
        acc[i] += d * d / w;
      }
    }
    return acc[0] / sizes[0] + acc[1] / sizes[1];
  }

  // Large-sample p: standardize A^2/N with the published variance form and
  // interpolate log(alpha) across the m = 1 critical points.
  static double approximate_p_value(double statistic_value, std::size_t n_ref,
                                    std::size_t n_test) {
    const double nn = static_cast<double>(n_ref + n_test);
    const double a2 = statistic_value / nn;  // standard normalization
    const double k = 2.0;
    const double h = 1.0 / static_cast<double>(n_ref) + 1.0 / static_cast<double>(n_test);
    double hs = 0.0;
    for (std::size_t i = 1; i <= n_ref + n_test - 1; ++i) hs += 1.0 / static_cast<double>(i);
    double g = 0.0;
    for (std::size_t i = 1; i + 1 <= n_ref + n_test - 1; ++i) {
      for (std::size_t j = i + 1; j <= n_ref + n_test - 1; ++j) {
        g += 1.0 / (static_cast<double>(n_ref + n_test - i) * static_cast<double>(j));
      }
    }
    const double aa = (4.0 * g - 6.0) * (k - 1.0) + (10.0 - 6.0 * g) * h;
    const double bb = (2.0 * g - 4.0) * k * k + 8.0 * hs * k +
                      (2.0 * g - 14.0 * hs - 4.0) * h - 8.0 * hs + 4.0 * g - 6.0;
    const double cc = (6.0 * hs + 2.0 * g - 2.0) * k * k + (4.0 * hs - 4.0 * g + 6.0) * k +
                      (2.0 * hs - 6.0) * h + 4.0 * hs;
    const double dd = (2.0 * hs + 6.0) * k * k - 4.0 * hs * k;
    const double var = (aa * nn * nn * nn + bb * nn * nn + cc * nn + dd) /
                       ((nn - 1.0) * (nn - 2.0) * (nn - 3.0));
    const double t = (a2 - (k - 1.0)) / std::sqrt(std::max(var, 1e-12));
    // m = k - 1 = 1 critical points at alpha = 0.25, 0.10, 0.05, 0.025, 0.01.
    static constexpr std::array<double, 5> kT{0.326, 1.225, 1.960, 2.719, 3.752};
    static constexpr std::array<double, 5> kLogAlpha{-1.386294, -2.302585, -2.995732, -3.688879,
                                                     -4.605170};
    double log_alpha;
    if (t <= kT.front()) {
      log_alpha = kLogAlpha.front() +
                  (t - kT.front()) * (kLogAlpha[1] - kLogAlpha[0]) / (kT[1] - kT[0]);
    } else if (t >= kT.back()) {
      log_alpha = kLogAlpha.back() +
                  (t - kT.back()) * (kLogAlpha[4] - kLogAlpha[3]) / (kT[4] - kT[3]);
    } else {
      std::size_t seg = 0;
      while (seg + 2 < kT.size() && t > kT[seg + 1]) ++seg;
      log_alpha = kLogAlpha[seg] +
                  (t - kT[seg]) * (kLogAlpha[seg + 1] - kLogAlpha[seg]) / (kT[seg + 1] - kT[seg]);
    }
    return std::clamp(std::exp(log_alpha), 0.0, 1.0);
  }

 protected:
  ComparisonResult compute(std::span<const double> ref,
                           std::span<const double> test) const override {
    ComparisonResult result;
    result.statistic = statistic(ref, test);
    if (use_approximation_) {
      result.p_value = approximate_p_value(result.statistic, ref.size(), test.size());
      result.extras["approximate"] = 1.0;
    } else {
      const auto outcome = numerics::permutation_p_value(
          plan_, ref, test,
          [](std::span<const double> a, std::span<const double> b) { return statistic(a, b); });
      result.p_value = outcome.p_value;
      result.extras["permutation_exact"] = outcome.exact ? 1.0 : 0.0;
    }
    return result;
  }

 private:
  numerics::PermutationPlan plan_;
  bool use_approximation_;
};

// Mann-Whitney U with midranks; two-sided p from the normal approximation
// with tie-corrected variance and continuity correction. The reported U
// counts pairs where the reference value exceeds the test value (ties half).
class MannWhitneyTest final : public NumericStatisticalTest {
 public:
  using NumericStatisticalTest::NumericStatisticalTest;

  std::string method_name() const override { return "mann_whitney"; }

  static double statistic(std::span<const double> a, std::span<const double> b) {
    auto [ra, rb] = detail::combined_midranks(a, b);
    double rank_sum = 0.0;
    for (double r : ra) rank_sum += r;
    const double n = static_cast<double>(a.size());
    return rank_sum - n * (n + 1.0) / 2.0;
  }

 protected:
  ComparisonResult compute(std::span<const double> ref,
                           std::span<const double> test) const override {
    ComparisonResult result;
    const double n = static_cast<double>(ref.size());
    const double m = static_cast<double>(test.size());
    const double u = statistic(ref, test);
    result.statistic = u;

    // Tie correction from pooled tie group sizes.
    std::vector<double> pooled(ref.begin(), ref.end());
    pooled.insert(pooled.end(), test.begin(), test.end());
    std::sort(pooled.begin(), pooled.end());
    const double total = n + m;
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < pooled.size()) {
      std::size_t j = i;
      while (j + 1 < pooled.size() && pooled[j + 1] == pooled[i]) ++j;
      const double t = static_cast<double>(j - i + 1);
      tie_term += t * t * t - t;
      i = j + 1;
    }
    const double mu = n * m / 2.0;
    const double sigma_sq =
        n * m / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
    double p = 1.0;
    if (sigma_sq > 0.0) {
      const double diff = u - mu;
      const double cc = diff > 0.0 ? -0.5 : (diff < 0.0 ? 0.5 : 0.0);
      const double z = (diff + cc) / std::sqrt(sigma_sq);
      p = std::min(1.0, 2.0 * numerics::normal_tail(std::abs(z)));
      result.extras["z"] = z;
    }
    result.p_value = p;
    return result;
  }
};

// Welch's unequal-variance t-test with Welch-Satterthwaite degrees of
// freedom and a two-sided p. Degenerate batches (both variances zero) yield
// p = 1 when the means agree and p = 0 with a flag when they differ.
class WelchTTest final : public NumericStatisticalTest {
 public:
  using NumericStatisticalTest::NumericStatisticalTest;

  std::string method_name() const override { return "welch_t"; }

 protected:
  ComparisonResult compute(std::span<const double> ref,
                           std::span<const double> test) const override {
    ComparisonResult result;
    const double n1 = static_cast<double>(ref.size());
    const double n2 = static_cast<double>(test.size());
    double m1 = 0.0, m2 = 0.0;
    for (double v : ref) m1 += v;
    for (double v : test) m2 += v;
    m1 /= n1;
    m2 /= n2;
    double v1 = 0.0, v2 = 0.0;
    for (double v : ref) v1 += (v - m1) * (v - m1);
    for (double v : test) v2 += (v - m2) * (v - m2);
    v1 = n1 > 1.0 ? v1 / (n1 - 1.0) : 0.0;
    v2 = n2 > 1.0 ? v2 / (n2 - 1.0) : 0.0;

    const double se_sq = v1 / n1 + v2 / n2;
    if (se_sq <= 0.0) {
      result.statistic = 0.0;
      result.extras["degenerate"] = 1.0;
      result.p_value = (m1 == m2) ? 1.0 : 0.0;
      return result;
    }
    const double t = (m1 - m2) / std::sqrt(se_sq);
    double df_den = 0.0;
    if (n1 > 1.0) df_den += (v1 / n1) * (v1 / n1) / (n1 - 1.0);
    if (n2 > 1.0) df_den += (v2 / n2) * (v2 / n2) / (n2 - 1.0);
    const double df = df_den > 0.0 ? se_sq * se_sq / df_den : 1.0;
    result.statistic = t;
    result.extras["df"] = df;
    result.p_value = std::min(1.0, 2.0 * numerics::student_t_tail(std::abs(t), std::max(df, 1.0)));
    return result;
  }
};

}  // namespace driftkit::data_drift
