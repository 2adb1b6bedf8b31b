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

#include <chrono>
#include <cmath>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "driftkit/core/callbacks.hpp"
#include "driftkit/core/errors.hpp"
#include "driftkit/data_drift/comparison_result.hpp"

namespace driftkit::data_drift {

// Batch detectors follow the fit/compare split: fit stores the reference
// sample, compare tests a batch against it and never mutates the reference.
// Refitting replaces the reference completely. compare fires
// on_compare_start / on_compare_end around the computation and
// on_drift_detected afterwards when the result flags drift.
class NumericBatchDetector {
 public:
  explicit NumericBatchDetector(CallbackSet callbacks = {}) : callbacks_(std::move(callbacks)) {}
  virtual ~NumericBatchDetector() = default;

  NumericBatchDetector(const NumericBatchDetector&) = delete;
  NumericBatchDetector& operator=(const NumericBatchDetector&) = delete;

  virtual std::string method_name() const = 0;
  virtual bool is_distance() const { return false; }

  void fit(std::span<const double> reference) {
    if (reference.empty()) {
      throw std::invalid_argument(method_name() + ": empty reference");
    }
    for (double v : reference) {
      if (!std::isfinite(v)) throw std::invalid_argument(method_name() + ": non-finite reference");
    }
    callbacks_.fit_start(FitEvent{reference.size(), 1});
    reference_.assign(reference.begin(), reference.end());
    fitted_at_ = std::chrono::system_clock::now();
    callbacks_.fit_end(FitEvent{reference.size(), 1});
  }

  ComparisonResult compare(std::span<const double> test) {
    if (reference_.empty()) throw NotFittedError(method_name() + ": compare before fit");
    if (test.empty()) throw std::invalid_argument(method_name() + ": empty test batch");
    for (double v : test) {
      if (!std::isfinite(v)) throw std::invalid_argument(method_name() + ": non-finite test value");
    }
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
  const std::vector<double>& reference() const { return reference_; }
  std::chrono::system_clock::time_point fitted_at() const { return fitted_at_; }
  CallbackSet& callbacks() { return callbacks_; }

 protected:
  virtual ComparisonResult compute(std::span<const double> ref,
                                   std::span<const double> test) const = 0;

  // Default drift decision; statistical tests flag p < alpha, distance
  // methods only decide when a threshold or permutation p-value exists.
  virtual void decide_drift(ComparisonResult& result) const = 0;

  numerics::SplitStatistic make_split_statistic(std::span<const double> test) const {
    auto pooled = std::make_shared<std::vector<double>>(reference_);
    pooled->insert(pooled->end(), test.begin(), test.end());
    return [this, pooled](const std::vector<std::size_t>& a,
                          const std::vector<std::size_t>& b) {
      std::vector<double> ga, gb;
      ga.reserve(a.size());
      gb.reserve(b.size());
      for (auto i : a) ga.push_back((*pooled)[i]);
      for (auto i : b) gb.push_back((*pooled)[i]);
      return this->compute(ga, gb).statistic;
    };
  }

  CallbackSet callbacks_;
  std::vector<double> reference_;
  std::chrono::system_clock::time_point fitted_at_{};
};

// Statistical tests carry a significance level and always produce a p-value.
class NumericStatisticalTest : public NumericBatchDetector {
 public:
  explicit NumericStatisticalTest(double alpha = 0.05, CallbackSet callbacks = {})
      : NumericBatchDetector(std::move(callbacks)), alpha_(alpha) {
    if (!(alpha_ > 0.0) || alpha_ >= 1.0) {
      throw std::invalid_argument("statistical test: alpha must be in (0, 1)");
    }
  }

  double alpha() const { return alpha_; }

 protected:
  void decide_drift(ComparisonResult& result) const override {
    if (result.p_value.has_value()) result.drift = *result.p_value < alpha_;
  }

 private:
  double alpha_;
};

// Distance methods report a distance; a drift decision needs either an
// explicit distance threshold or a permutation p-value attached by callback.
class NumericDistanceDetector : public NumericBatchDetector {
 public:
  explicit NumericDistanceDetector(std::optional<double> drift_threshold = std::nullopt,
                                   double alpha = 0.05, CallbackSet callbacks = {})
      : NumericBatchDetector(std::move(callbacks)), threshold_(drift_threshold), alpha_(alpha) {}

  bool is_distance() const override { return true; }
  std::optional<double> drift_threshold() const { return threshold_; }
  double alpha() const { return alpha_; }

 protected:
  void decide_drift(ComparisonResult& result) const override {
    if (threshold_.has_value()) {
      result.drift = result.statistic > *threshold_;
    } else if (result.p_value.has_value()) {
      result.drift = *result.p_value < alpha_;
    }
  }

 private:
  std::optional<double> threshold_;
  double alpha_;
};

}  // namespace driftkit::data_drift
