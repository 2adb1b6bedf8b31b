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
#include <chrono>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "driftkit/core/callbacks.hpp"
#include "driftkit/core/errors.hpp"
#include "driftkit/data_drift/comparison_result.hpp"
#include "driftkit/data_drift/distance_kernels.hpp"
#include "driftkit/numerics/tails.hpp"

namespace driftkit::data_drift {

// Category counts for two samples over the union of observed categories
// (sorted lexicographically, so orderings are deterministic).
struct CategoryCounts {
  std::vector<std::string> categories;
  std::vector<double> ref_counts;
  std::vector<double> test_counts;
};

inline CategoryCounts build_category_counts(std::span<const std::string> ref,
                                            std::span<const std::string> test) {
  std::map<std::string, std::pair<double, double>> counts;
  for (const auto& c : ref) counts[c].first += 1.0;
  for (const auto& c : test) counts[c].second += 1.0;
  CategoryCounts out;
  out.categories.reserve(counts.size());
  for (auto& [name, pair] : counts) {
    out.categories.push_back(name);
    out.ref_counts.push_back(pair.first);
    out.test_counts.push_back(pair.second);
  }
  return out;
}

// fit/compare base over categorical samples; same callback flow as the
// numeric base.
class CategoricalBatchDetector {
 public:
  explicit CategoricalBatchDetector(CallbackSet callbacks = {}) : callbacks_(std::move(callbacks)) {}
  virtual ~CategoricalBatchDetector() = default;

  CategoricalBatchDetector(const CategoricalBatchDetector&) = delete;
  CategoricalBatchDetector& operator=(const CategoricalBatchDetector&) = delete;

  virtual std::string method_name() const = 0;
  virtual bool is_distance() const { return false; }

  void fit(std::span<const std::string> reference) {
    if (reference.empty()) throw std::invalid_argument(method_name() + ": empty reference");
    callbacks_.fit_start(FitEvent{reference.size(), 1});
    reference_.assign(reference.begin(), reference.end());
    fitted_at_ = std::chrono::system_clock::now();
    callbacks_.fit_end(FitEvent{reference.size(), 1});
  }

  ComparisonResult compare(std::span<const std::string> test) {
    if (reference_.empty()) throw NotFittedError(method_name() + ": compare before fit");
    if (test.empty()) throw std::invalid_argument(method_name() + ": empty test batch");
    CompareEvent ev;
    ev.n_ref = reference_.size();
    ev.n_test = test.size();
    ev.split_statistic = make_split_statistic(test);
    callbacks_.compare_start(ev);
    ComparisonResult result = compute(reference_, test);
    result.method = method_name();
    ev.result = &result;
    callbacks_.compare_end(ev);
    decide_drift(result);
    if (result.drift) callbacks_.drift_detected(DriftEvent{});
    return result;
  }

  void reset() {
    reference_.clear();
    callbacks_.detector_reset();
  }

  bool fitted() const { return !reference_.empty(); }
  const std::vector<std::string>& reference() const { return reference_; }
  CallbackSet& callbacks() { return callbacks_; }

 protected:
  virtual ComparisonResult compute(std::span<const std::string> ref,
                                   std::span<const std::string> test) const = 0;
  virtual void decide_drift(ComparisonResult& result) const = 0;

  numerics::SplitStatistic make_split_statistic(std::span<const std::string> test) const {
    auto pooled = std::make_shared<std::vector<std::string>>(reference_);
    pooled->insert(pooled->end(), test.begin(), test.end());
    return [this, pooled](const std::vector<std::size_t>& a,
                          const std::vector<std::size_t>& b) {
      std::vector<std::string> ga, gb;
      ga.reserve(a.size());
      gb.reserve(b.size());
      for (auto i : a) ga.push_back((*pooled)[i]);
      for (auto i : b) gb.push_back((*pooled)[i]);
      return this->compute(ga, gb).statistic;
    };
  }

  CallbackSet callbacks_;
  std::vector<std::string> reference_;
  std::chrono::system_clock::time_point fitted_at_{};
};

// Chi-squared homogeneity test over the union of observed categories.
// Expected counts come from pooled proportions, so every included cell has a
// positive expectation. df = #categories - 1.
class ChiSquaredTest final : public CategoricalBatchDetector {
 public:
  explicit ChiSquaredTest(double alpha = 0.05, CallbackSet callbacks = {})
      : CategoricalBatchDetector(std::move(callbacks)), alpha_(alpha) {
    if (!(alpha_ > 0.0) || alpha_ >= 1.0) {
      throw std::invalid_argument("chi2: alpha must be in (0, 1)");
    }
  }

  std::string method_name() const override { return "chi2"; }
  double alpha() const { return alpha_; }

 protected:
  ComparisonResult compute(std::span<const std::string> ref,
                           std::span<const std::string> test) const override {
    const CategoryCounts counts = build_category_counts(ref, test);
    const double n_ref = static_cast<double>(ref.size());
    const double n_test = static_cast<double>(test.size());
    const double total = n_ref + n_test;
    double stat = 0.0;
    for (std::size_t i = 0; i < counts.categories.size(); ++i) {
      const double pooled = counts.ref_counts[i] + counts.test_counts[i];
      const double e_ref = n_ref * pooled / total;
      const double e_test = n_test * pooled / total;
      stat += (counts.ref_counts[i] - e_ref) * (counts.ref_counts[i] - e_ref) / e_ref;
      stat += (counts.test_counts[i] - e_test) * (counts.test_counts[i] - e_test) / e_test;
    }
    ComparisonResult result;
    result.statistic = stat;
    const double df = static_cast<double>(counts.categories.size()) - 1.0;
    result.extras["df"] = df;
    result.p_value = df >= 1.0 ? numerics::chi_squared_tail(stat, df) : 1.0;
    return result;
  }

  void decide_drift(ComparisonResult& result) const override {
    if (result.p_value.has_value()) result.drift = *result.p_value < alpha_;
  }

 private:
  double alpha_;
};

// Histogram distances over category-indexed bins with the same epsilon
// smoothing rule as numeric histograms (eps = 1e-9 * n_ref).
class CategoricalDistance final : public CategoricalBatchDetector {
 public:
  explicit CategoricalDistance(DistanceMethod method,
                               std::optional<double> drift_threshold = std::nullopt,
                               double alpha = 0.05, CallbackSet callbacks = {})
      : CategoricalBatchDetector(std::move(callbacks)),
        method_(method),
        threshold_(drift_threshold),
        alpha_(alpha) {}

  std::string method_name() const override { return distance_method_name(method_); }
  bool is_distance() const override { return true; }

 protected:
  ComparisonResult compute(std::span<const std::string> ref,
                           std::span<const std::string> test) const override {
    const CategoryCounts counts = build_category_counts(ref, test);
    const double eps = 1e-9 * static_cast<double>(ref.size());
    const std::size_t k = counts.categories.size();
    std::vector<double> p(k), q(k);
    double ref_total = 0.0, test_total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      ref_total += counts.ref_counts[i];
      test_total += counts.test_counts[i];
    }
    bool saturated = false;
    for (std::size_t i = 0; i < k; ++i) {
      p[i] = (counts.ref_counts[i] + eps) / (ref_total + static_cast<double>(k) * eps);
      q[i] = (counts.test_counts[i] + eps) / (test_total + static_cast<double>(k) * eps);
      if ((counts.ref_counts[i] == 0.0) != (counts.test_counts[i] == 0.0)) saturated = true;
    }
    ComparisonResult result;
    result.statistic = histogram_distance(method_, p, q);
    result.extras["epsilon"] = eps;
    if (saturated &&
        (method_ == DistanceMethod::kKl || method_ == DistanceMethod::kPsi ||
         method_ == DistanceMethod::kBhattacharyya)) {
      result.extras["saturated"] = 1.0;
    }
    return result;
  }

  void decide_drift(ComparisonResult& result) const override {
    if (threshold_.has_value()) {
      result.drift = result.statistic > *threshold_;
    } else if (result.p_value.has_value()) {
      result.drift = *result.p_value < alpha_;
    }
  }

 private:
  DistanceMethod method_;
  std::optional<double> threshold_;
  double alpha_;
};

}  // namespace driftkit::data_drift
