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
#include <deque>
#include <vector>

#include "driftkit/core/streaming_detector.hpp"
#include "driftkit/data_drift/comparison_result.hpp"
#include "driftkit/data_drift/detail/order_stat_tree.hpp"
#include "driftkit/numerics/tails.hpp"

namespace driftkit::data_drift {

// Streaming Kolmogorov-Smirnov against a fitted reference: a sliding test
// window (default size = reference size) lives in an order-statistic tree
// with O(log w) insert/delete/rank, and after every update the exact KS
// statistic between the reference and the current window is recomputed from
// the tree's ordered walk plus reference ranks. Drift flags when the
// asymptotic p-value falls under alpha and the window is full.
struct IncrementalKsConfig {
  std::size_t window_size = 0;  // 0: use the reference size
  double alpha = 0.01;

  void validate() const {
    if (!(alpha > 0.0) || alpha >= 1.0) {
      throw std::invalid_argument("incremental_ks: alpha must be in (0, 1)");
    }
  }
};

class IncrementalKs final : public StreamingDetector {
 public:
  explicit IncrementalKs(IncrementalKsConfig config = {}, CallbackSet callbacks = {})
      : StreamingDetector(std::move(callbacks)), config_(config) {
    config_.validate();
  }

  std::string method_name() const override { return "incremental_ks"; }

  void fit(std::span<const double> reference) {
    if (reference.empty()) throw std::invalid_argument("incremental_ks: empty reference");
    for (double v : reference) {
      if (!std::isfinite(v)) throw std::invalid_argument("incremental_ks: non-finite reference");
    }
    callbacks_.fit_start(FitEvent{reference.size(), 1});
    reference_.assign(reference.begin(), reference.end());
    std::sort(reference_.begin(), reference_.end());
    window_.clear();
    tree_.clear();
    callbacks_.fit_end(FitEvent{reference.size(), 1});
  }

  bool fitted() const { return !reference_.empty(); }

  const ComparisonResult& last_result() const { return last_result_; }

  // Spec-shaped update: advances one sample and returns the comparison.
  ComparisonResult update_compare(double value) {
    update(value);
    return last_result_;
  }

  std::size_t window_capacity() const {
    return config_.window_size == 0 ? reference_.size() : config_.window_size;
  }

  std::map<std::string, double> summary() const override {
    return {{"window_fill", static_cast<double>(window_.size())},
            {"statistic", last_result_.statistic},
            {"p_value", last_result_.p_value.value_or(1.0)}};
  }

  const IncrementalKsConfig& config() const { return config_; }

 protected:
  void validate_value(double value) const override {
    if (reference_.empty()) throw NotFittedError("incremental_ks: update before fit");
    StreamingDetector::validate_value(value);
  }

  DetectionStatus do_update(double value) override {
    window_.push_back(value);
    tree_.insert(value);
    if (window_.size() > window_capacity()) {
      tree_.erase_one(window_.front());
      window_.pop_front();
    }

    const double d = current_statistic();
    const double n = static_cast<double>(reference_.size());
    const double m = static_cast<double>(tree_.size());
    const double ne = n * m / (n + m);
    const double p = numerics::kolmogorov_tail(std::sqrt(ne) * d);

    const bool full = window_.size() == window_capacity();
    last_result_ = ComparisonResult{};
    last_result_.method = method_name();
    last_result_.statistic = d;
    last_result_.p_value = p;
    last_result_.extras["window_fill"] = m;
    last_result_.drift = full && p < config_.alpha;

    DetectionStatus status;
    status.drift = last_result_.drift;
    return status;
  }

  void do_reset() override {
    window_.clear();
    tree_.clear();
    last_result_ = ComparisonResult{};
  }

  nlohmann::json config_json() const override {
    return {{"window_size", config_.window_size}, {"alpha", config_.alpha}};
  }

  nlohmann::json state_json() const override {
    return {{"reference", reference_},
            {"window", std::vector<double>(window_.begin(), window_.end())}};
  }

  void restore_state(const nlohmann::json& state) override {
    reference_ = state.at("reference").get<std::vector<double>>();
    const auto values = state.at("window").get<std::vector<double>>();
    window_.assign(values.begin(), values.end());
    tree_.clear();
    for (double v : values) tree_.insert(v);
    last_result_ = ComparisonResult{};
  }

 private:
  // sup |F_ref - F_win| over the union of jump points: walk the window in
  // order (running index / rank against the reference), then sweep reference
  // points against window ranks from the tree.
  double current_statistic() const {
    const double n = static_cast<double>(reference_.size());
    const double m = static_cast<double>(tree_.size());
    double d = 0.0;
    const auto eval_window_point = [&](double v, std::size_t count_le) {
      const auto ref_le = static_cast<double>(
          std::upper_bound(reference_.begin(), reference_.end(), v) - reference_.begin());
      d = std::max(d, std::abs(ref_le / n - static_cast<double>(count_le) / m));
    };
    // Evaluate only at the last occurrence of each distinct window value;
    // earlier duplicates are not jump points.
    double prev = 0.0;
    bool have_prev = false;
    std::size_t count_le = 0;
    tree_.for_each_in_order([&](double v) {
      if (have_prev && v != prev) eval_window_point(prev, count_le);
      ++count_le;
      prev = v;
      have_prev = true;
    });
    if (have_prev) eval_window_point(prev, count_le);
    for (std::size_t i = 0; i < reference_.size(); ++i) {
      // Skip duplicate reference values; only the last of a tie group is a
      // distinct jump point.
      if (i + 1 < reference_.size() && reference_[i + 1] == reference_[i]) continue;
      const double f_ref = static_cast<double>(i + 1) / n;
      const double f_win = static_cast<double>(tree_.rank_upper(reference_[i])) / m;
      d = std::max(d, std::abs(f_ref - f_win));
    }
    return d;
  }

  IncrementalKsConfig config_;
  std::vector<double> reference_;
  std::deque<double> window_;
  detail::OrderStatTree tree_;
  ComparisonResult last_result_;
};

}  // namespace driftkit::data_drift
