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

#include <cmath>

#include "driftkit/core/streaming_detector.hpp"

namespace driftkit::concept_drift {

// Hoeffding deviation bound for a mean over m effective samples at
// confidence delta: eps(m, delta) = sqrt(ln(1/delta) / (2m)). For the
// difference of two disjoint means with sizes n_a, n_b the effective size is
// the harmonic combination 1/m = 1/n_a + 1/n_b.
inline double hoeffding_bound(double m, double delta) {
  return std::sqrt(std::log(1.0 / delta) / (2.0 * m));
}

struct HddmConfig {
  double drift_confidence = 0.001;
  double warning_confidence = 0.005;
  bool two_sided = false;

  void validate() const {
    if (!(drift_confidence > 0.0) || drift_confidence >= 1.0 || !(warning_confidence > 0.0) ||
        warning_confidence >= 1.0) {
      throw std::invalid_argument("hddm: confidences must be in (0, 1)");
    }
    if (drift_confidence >= warning_confidence) {
      throw std::invalid_argument("hddm: drift_confidence must be < warning_confidence");
    }
  }
};

// A-test variant: compares the post-cut sample mean against the mean of the
// prefix with the lowest bounded estimate; the cut advances whenever the full
// sample's bounded mean is at least as low as the stored prefix's.
class HddmA final : public StreamingDetector {
 public:
  explicit HddmA(HddmConfig config = {}, CallbackSet callbacks = {})
      : StreamingDetector(std::move(callbacks)), config_(config) {
    config_.validate();
  }

  std::string method_name() const override { return "hddm_a"; }

  std::map<std::string, double> summary() const override {
    return {{"n", static_cast<double>(n_)},
            {"mean", n_ == 0 ? 0.0 : sum_ / static_cast<double>(n_)},
            {"cut_n", static_cast<double>(cut_n_)},
            {"cut_mean", cut_n_ == 0 ? 0.0 : cut_sum_ / static_cast<double>(cut_n_)}};
  }

  const HddmConfig& config() const { return config_; }

 protected:
  void validate_value(double value) const override { require_unit_interval(value); }

  DetectionStatus do_update(double value) override {
    ++n_;
    sum_ += value;
    const double mean = sum_ / static_cast<double>(n_);
    const double delta = config_.drift_confidence;

    if (cut_n_ == 0 || mean + hoeffding_bound(static_cast<double>(n_), delta) <=
                           cut_sum_ / static_cast<double>(cut_n_) +
                               hoeffding_bound(static_cast<double>(cut_n_), delta)) {
      cut_n_ = n_;
      cut_sum_ = sum_;
    }
    if (config_.two_sided &&
        (hi_cut_n_ == 0 || mean - hoeffding_bound(static_cast<double>(n_), delta) >=
                               hi_cut_sum_ / static_cast<double>(hi_cut_n_) -
                                   hoeffding_bound(static_cast<double>(hi_cut_n_), delta))) {
      hi_cut_n_ = n_;
      hi_cut_sum_ = sum_;
    }

    DetectionStatus status;
    apply_side(cut_n_, cut_sum_, /*increase=*/true, status);
    if (config_.two_sided) apply_side(hi_cut_n_, hi_cut_sum_, /*increase=*/false, status);
    return status;
  }

  void do_reset() override {
    n_ = 0;
    sum_ = 0.0;
    cut_n_ = 0;
    cut_sum_ = 0.0;
    hi_cut_n_ = 0;
    hi_cut_sum_ = 0.0;
  }

  nlohmann::json config_json() const override {
    return {{"drift_confidence", config_.drift_confidence},
            {"warning_confidence", config_.warning_confidence},
            {"two_sided", config_.two_sided}};
  }

  nlohmann::json state_json() const override {
    return {{"n", n_},           {"sum", sum_},
            {"cut_n", cut_n_},   {"cut_sum", cut_sum_},
            {"hi_cut_n", hi_cut_n_}, {"hi_cut_sum", hi_cut_sum_}};
  }

  void restore_state(const nlohmann::json& state) override {
    n_ = state.at("n").get<std::size_t>();
    sum_ = state.at("sum").get<double>();
    cut_n_ = state.at("cut_n").get<std::size_t>();
    cut_sum_ = state.at("cut_sum").get<double>();
    hi_cut_n_ = state.at("hi_cut_n").get<std::size_t>();
    hi_cut_sum_ = state.at("hi_cut_sum").get<double>();
  }

 private:
  void apply_side(std::size_t cut_n, double cut_sum, bool increase, DetectionStatus& status) const {
    if (cut_n == 0 || cut_n >= n_) return;
    const auto post_n = static_cast<double>(n_ - cut_n);
    const double pre_mean = cut_sum / static_cast<double>(cut_n);
    const double post_mean = (sum_ - cut_sum) / post_n;
    const double m = 1.0 / (1.0 / static_cast<double>(cut_n) + 1.0 / post_n);
    const double diff = increase ? post_mean - pre_mean : pre_mean - post_mean;
    if (diff > hoeffding_bound(m, config_.drift_confidence)) {
      status.drift = true;
    } else if (diff > hoeffding_bound(m, config_.warning_confidence)) {
      status.warning = true;
    }
  }

  HddmConfig config_;
  std::size_t n_ = 0;
  double sum_ = 0.0;
  std::size_t cut_n_ = 0;
  double cut_sum_ = 0.0;
  std::size_t hi_cut_n_ = 0;
  double hi_cut_sum_ = 0.0;
};

// W-test variant: exponentially weighted moving averages with the
// McDiarmid-style bound on weighted sums, eps = sqrt(sum(w^2) ln(1/delta)/2).
// Keeps a baseline snapshot at the cut and a fresh EWMA started after it.
struct HddmWConfig {
  double drift_confidence = 0.001;
  double warning_confidence = 0.005;
  double weight = 0.05;  // EWMA smoothing
  bool two_sided = false;

  void validate() const {
    HddmConfig{drift_confidence, warning_confidence, two_sided}.validate();
    if (!(weight > 0.0) || weight > 1.0) {
      throw std::invalid_argument("hddm_w: weight must be in (0, 1]");
    }
  }
};

class HddmW final : public StreamingDetector {
 public:
  explicit HddmW(HddmWConfig config = {}, CallbackSet callbacks = {})
      : StreamingDetector(std::move(callbacks)), config_(config) {
    config_.validate();
  }

  std::string method_name() const override { return "hddm_w"; }

  std::map<std::string, double> summary() const override {
    return {{"ewma", total_.ewma},
            {"weight_norm", total_.weight_sq},
            {"baseline_ewma", lo_.baseline.ewma},
            {"post_ewma", lo_.post.ewma}};
  }

  const HddmWConfig& config() const { return config_; }

 protected:
  void validate_value(double value) const override { require_unit_interval(value); }

  DetectionStatus do_update(double value) override {
    advance(total_, value);
    DetectionStatus status;
    update_side(lo_, value, /*increase=*/true, status);
    if (config_.two_sided) update_side(hi_, value, /*increase=*/false, status);
    return status;
  }

  void do_reset() override {
    total_ = {};
    lo_ = {};
    hi_ = {};
  }

  nlohmann::json config_json() const override {
    return {{"drift_confidence", config_.drift_confidence},
            {"warning_confidence", config_.warning_confidence},
            {"weight", config_.weight},
            {"two_sided", config_.two_sided}};
  }

  nlohmann::json state_json() const override {
    return {{"total", sample_json(total_)},
            {"lo_baseline", sample_json(lo_.baseline)},
            {"lo_post", sample_json(lo_.post)},
            {"hi_baseline", sample_json(hi_.baseline)},
            {"hi_post", sample_json(hi_.post)}};
  }

  void restore_state(const nlohmann::json& state) override {
    total_ = sample_from_json(state.at("total"));
    lo_.baseline = sample_from_json(state.at("lo_baseline"));
    lo_.post = sample_from_json(state.at("lo_post"));
    hi_.baseline = sample_from_json(state.at("hi_baseline"));
    hi_.post = sample_from_json(state.at("hi_post"));
  }

 private:
  struct WeightedSample {
    bool init = false;
    double ewma = 0.0;
    double weight_sq = 0.0;  // sum of squared normalized weights
  };

  struct Side {
    WeightedSample baseline;
    WeightedSample post;
  };

  void advance(WeightedSample& s, double value) const {
    const double lam = config_.weight;
    if (!s.init) {
      s.init = true;
      s.ewma = value;
      s.weight_sq = 1.0;
      return;
    }
    s.ewma = (1.0 - lam) * s.ewma + lam * value;
    s.weight_sq = (1.0 - lam) * (1.0 - lam) * s.weight_sq + lam * lam;
  }

  double bound(const WeightedSample& s, double delta) const {
    return std::sqrt(s.weight_sq * std::log(1.0 / delta) / 2.0);
  }

  void update_side(Side& side, double value, bool increase, DetectionStatus& status) {
    const double delta = config_.drift_confidence;
    const double sign = increase ? 1.0 : -1.0;
    const bool move_cut =
        !side.baseline.init ||
        sign * (total_.ewma + sign * bound(total_, delta)) <=
            sign * (side.baseline.ewma + sign * bound(side.baseline, delta));
    if (move_cut) {
      side.baseline = total_;
      side.post = {};
      return;
    }
    advance(side.post, value);
    if (!side.post.init) return;
    const double diff = sign * (side.post.ewma - side.baseline.ewma);
    const double eps_scale = std::sqrt((side.baseline.weight_sq + side.post.weight_sq) / 2.0);
    const double eps_drift = eps_scale * std::sqrt(std::log(1.0 / config_.drift_confidence));
    const double eps_warn = eps_scale * std::sqrt(std::log(1.0 / config_.warning_confidence));
    if (diff > eps_drift) {
      status.drift = true;
    } else if (diff > eps_warn) {
      status.warning = true;
    }
  }

  static nlohmann::json sample_json(const WeightedSample& s) {
    return {{"init", s.init}, {"ewma", s.ewma}, {"weight_sq", s.weight_sq}};
  }

  static WeightedSample sample_from_json(const nlohmann::json& j) {
    WeightedSample s;
    s.init = j.at("init").get<bool>();
    s.ewma = j.at("ewma").get<double>();
    s.weight_sq = j.at("weight_sq").get<double>();
    return s;
  }

  HddmWConfig config_;
  WeightedSample total_;
  Side lo_;
  Side hi_;
};

}  // namespace driftkit::concept_drift
