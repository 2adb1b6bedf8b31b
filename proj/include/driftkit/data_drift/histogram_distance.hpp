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

#include <optional>
#include <utility>

#include "driftkit/data_drift/batch_detector.hpp"
#include "driftkit/data_drift/distance_kernels.hpp"
#include "driftkit/numerics/histogram.hpp"

namespace driftkit::data_drift {

// Histogram-based distances over numeric samples. Bins are anchored on the
// reference (default 10 equal-width bins over its range); test values outside
// that range clip into the end bins and the clip counts are surfaced. KL and
// PSI read from epsilon-smoothed probabilities; when raw support differs the
// result carries a saturation flag alongside the finite smoothed value.
struct HistogramDistanceConfig {
  std::size_t bins = 10;
  numerics::BinStrategy strategy = numerics::BinStrategy::kEqualWidth;
  std::optional<double> epsilon;  // default: 1e-9 * n_ref

  void validate() const {
    if (bins < 2) throw std::invalid_argument("histogram distance: bins must be >= 2");
  }
};

class HistogramDistanceDetector final : public NumericDistanceDetector {
 public:
  explicit HistogramDistanceDetector(DistanceMethod method, HistogramDistanceConfig config = {},
                                     std::optional<double> drift_threshold = std::nullopt,
                                     double alpha = 0.05, CallbackSet callbacks = {})
      : NumericDistanceDetector(drift_threshold, alpha, std::move(callbacks)),
        method_(method),
        config_(config) {
    config_.validate();
  }

  std::string method_name() const override { return distance_method_name(method_); }

  const HistogramDistanceConfig& config() const { return config_; }

 protected:
  ComparisonResult compute(std::span<const double> ref,
                           std::span<const double> test) const override {
    const auto pair = numerics::build_histogram_pair(ref, test, config_.bins, config_.strategy,
                                                     config_.epsilon);
    ComparisonResult result;
    result.statistic = histogram_distance(method_, pair.p, pair.q);
    result.extras["epsilon"] = pair.epsilon;
    result.extras["clipped_low"] = static_cast<double>(pair.clipped_low);
    result.extras["clipped_high"] = static_cast<double>(pair.clipped_high);
    if (pair.degenerate_reference) result.extras["degenerate_reference"] = 1.0;
    if (method_ == DistanceMethod::kKl || method_ == DistanceMethod::kPsi ||
        method_ == DistanceMethod::kBhattacharyya) {
      for (std::size_t i = 0; i < pair.ref_counts.size(); ++i) {
        if ((pair.ref_counts[i] == 0) != (pair.test_counts[i] == 0)) {
          result.extras["saturated"] = 1.0;
          break;
        }
      }
    }
    return result;
  }

 private:
  DistanceMethod method_;
  HistogramDistanceConfig config_;
};

// Earth mover's distance between the raw empirical distributions of two
// numeric samples (1-D optimal transport): the integral of |F_ref - F_test|,
// computed exactly from the sorted samples with weights 1/n and 1/m.
class EmdDetector final : public NumericDistanceDetector {
 public:
  using NumericDistanceDetector::NumericDistanceDetector;

  std::string method_name() const override { return "emd"; }

  static double statistic(std::span<const double> a, std::span<const double> b) {
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    std::size_t i = 0, j = 0;
    double prev = std::min(sa.front(), sb.front());
    double emd = 0.0;
    while (i < sa.size() || j < sb.size()) {
      double v;
      if (j >= sb.size() || (i < sa.size() && sa[i] <= sb[j])) {
        v = sa[i];
      } else {
        v = sb[j];
      }
      const double fa = static_cast<double>(i) / na;
      const double fb = static_cast<double>(j) / nb;
      emd += std::abs(fa - fb) * (v - prev);
      prev = v;
      while (i < sa.size() && sa[i] <= v) ++i;
      while (j < sb.size() && sb[j] <= v) ++j;
    }
    return emd;
  }

 protected:
  ComparisonResult compute(std::span<const double> ref,
                           std::span<const double> test) const override {
    ComparisonResult result;
    result.statistic = statistic(ref, test);
    return result;
  }
};

}  // namespace driftkit::data_drift
