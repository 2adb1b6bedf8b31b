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

#include "driftkit/concept_drift/stream_stats.hpp"
#include "driftkit/core/streaming_detector.hpp"

namespace driftkit::concept_drift {

// Geometric (exponentially weighted) moving average control chart:
//   Z_t = (1 - lambda) Z_{t-1} + lambda x_t,
// drift when |Z_t - mu| > L * sigma * sqrt(lambda / (2 - lambda)). The
// baseline mu/sigma is learned during warm-up and frozen at its end; Z starts
// from the warm-up mean.
struct GmaConfig {
  std::size_t min_num_instances = 30;
  double smoothing = 0.1;      // lambda in (0, 1]
  double control_limit = 3.0;  // L

  void validate() const {
    if (min_num_instances < 1) throw std::invalid_argument("gma: min_num_instances must be >= 1");
    if (!(smoothing > 0.0) || smoothing > 1.0) {
      throw std::invalid_argument("gma: smoothing must be in (0, 1]");
    }
    if (!(control_limit > 0.0)) throw std::invalid_argument("gma: control_limit must be positive");
  }
};

class GeometricMovingAverage final : public StreamingDetector {
 public:
  explicit GeometricMovingAverage(GmaConfig config = {}, CallbackSet callbacks = {})
      : StreamingDetector(std::move(callbacks)), config_(config) {
    config_.validate();
  }

  std::string method_name() const override { return "gma"; }

  std::map<std::string, double> summary() const override {
    return {{"n", static_cast<double>(warmup_.count())},
            {"z", z_},
            {"baseline_mean", baseline_mean_},
            {"baseline_std", baseline_std_}};
  }

  double ewma() const { return z_; }
  const GmaConfig& config() const { return config_; }

 protected:
  DetectionStatus do_update(double value) override {
    DetectionStatus status;
    if (!warmed_) {
      warmup_.update(value);
      if (warmup_.count() == config_.min_num_instances) {
        baseline_mean_ = warmup_.mean();
        baseline_std_ = warmup_.std_sample();
        z_ = warmup_.mean();
        warmed_ = true;
      }
      return status;
    }
    z_ = (1.0 - config_.smoothing) * z_ + config_.smoothing * value;
    const double limit = config_.control_limit * baseline_std_ *
                         std::sqrt(config_.smoothing / (2.0 - config_.smoothing));
    if (std::abs(z_ - baseline_mean_) > limit) status.drift = true;
    return status;
  }

  void do_reset() override {
    warmup_.reset();
    warmed_ = false;
    z_ = 0.0;
    baseline_mean_ = 0.0;
    baseline_std_ = 0.0;
  }

  nlohmann::json config_json() const override {
    return {{"min_num_instances", config_.min_num_instances},
            {"smoothing", config_.smoothing},
            {"control_limit", config_.control_limit}};
  }

  nlohmann::json state_json() const override {
    return {{"warmup", warmup_.to_json()},
            {"warmed", warmed_},
            {"z", z_},
            {"baseline_mean", baseline_mean_},
            {"baseline_std", baseline_std_}};
  }

  void restore_state(const nlohmann::json& state) override {
    warmup_ = StreamStats::from_json(state.at("warmup"));
    warmed_ = state.at("warmed").get<bool>();
    z_ = state.at("z").get<double>();
    baseline_mean_ = state.at("baseline_mean").get<double>();
    baseline_std_ = state.at("baseline_std").get<double>();
  }

 private:
  GmaConfig config_;
  StreamStats warmup_;
  bool warmed_ = false;
  double z_ = 0.0;
  double baseline_mean_ = 0.0;
  double baseline_std_ = 0.0;
};

}  // namespace driftkit::concept_drift
