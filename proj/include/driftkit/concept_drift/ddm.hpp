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
#include <limits>

#include "driftkit/core/streaming_detector.hpp"

namespace driftkit::concept_drift {

// Error-rate control with two-tier minima tracking. After the warm-up gate
// the pair (p_min, s_min) records the minimum of p + s; warning fires at
// p + s > p_min + warning_level * s_min, drift at drift_level.
struct DdmConfig {
  std::size_t min_num_instances = 30;
  double warning_level = 2.0;
  double drift_level = 3.0;

  void validate() const {
    if (min_num_instances < 1) throw std::invalid_argument("ddm: min_num_instances must be >= 1");
    if (!(warning_level > 0.0) || !(drift_level > warning_level)) {
      throw std::invalid_argument("ddm: require 0 < warning_level < drift_level");
    }
  }
};

class Ddm final : public StreamingDetector {
 public:
  explicit Ddm(DdmConfig config = {}, CallbackSet callbacks = {})
      : StreamingDetector(std::move(callbacks)), config_(config) {
    config_.validate();
    do_reset();
  }

  std::string method_name() const override { return "ddm"; }

  std::map<std::string, double> summary() const override {
    const double p = error_rate();
    return {{"n", static_cast<double>(n_)},
            {"error_rate", p},
            {"min_error_rate", min_rate_},
            {"min_std", min_std_}};
  }

  double error_rate() const { return n_ == 0 ? 0.0 : error_sum_ / static_cast<double>(n_); }

  const DdmConfig& config() const { return config_; }

 protected:
  void validate_value(double value) const override { require_binary(value); }

  DetectionStatus do_update(double value) override {
    ++n_;
    error_sum_ += value;
    const double p = error_sum_ / static_cast<double>(n_);
    const double s = std::sqrt(p * (1.0 - p) / static_cast<double>(n_));
    DetectionStatus status;
    if (n_ >= config_.min_num_instances) {
      // Minima tracking starts at the gate: earlier estimates are too noisy
      // to pin the baseline (a single leading zero would lock it at 0).
      if (p + s < min_rate_ + min_std_) {
        min_rate_ = p;
        min_std_ = s;
      }
      if (p + s > min_rate_ + config_.drift_level * min_std_) {
        status.drift = true;
      } else if (p + s > min_rate_ + config_.warning_level * min_std_) {
        status.warning = true;
      }
    }
    return status;
  }

  void do_reset() override {
    n_ = 0;
    error_sum_ = 0.0;
    min_rate_ = std::numeric_limits<double>::max();
    min_std_ = std::numeric_limits<double>::max();
  }

  nlohmann::json config_json() const override {
    return {{"min_num_instances", config_.min_num_instances},
            {"warning_level", config_.warning_level},
            {"drift_level", config_.drift_level}};
  }

  nlohmann::json state_json() const override {
    return {{"n", n_},
            {"error_sum", error_sum_},
            {"min_rate", min_rate_},
            {"min_std", min_std_}};
  }

  void restore_state(const nlohmann::json& state) override {
    n_ = state.at("n").get<std::size_t>();
    error_sum_ = state.at("error_sum").get<double>();
    min_rate_ = state.at("min_rate").get<double>();
    min_std_ = state.at("min_std").get<double>();
  }

 private:
  DdmConfig config_;
  std::size_t n_ = 0;
  double error_sum_ = 0.0;
  double min_rate_ = std::numeric_limits<double>::max();
  double min_std_ = std::numeric_limits<double>::max();
};

}  // namespace driftkit::concept_drift
