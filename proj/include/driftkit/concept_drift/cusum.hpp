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
#include <optional>

#include "driftkit/concept_drift/stream_stats.hpp"
#include "driftkit/core/streaming_detector.hpp"

namespace driftkit::concept_drift {

// Two-sided cumulative sums of standardized values:
//   g+ <- max(0, g+ + z - delta),  g- <- max(0, g- - z - delta),
// drift when max(g+, g-) > lambda. Values are standardized with the running
// mean/std once past the warm-up gate; fixed_mean / fixed_std pin the
// standardization instead (useful when the baseline is known).
struct CusumConfig {
  std::size_t min_num_instances = 30;
  double drift_allowance = 0.005;  // delta
  double threshold = 50.0;         // lambda
  std::optional<double> fixed_mean;
  std::optional<double> fixed_std;

  void validate() const {
    if (drift_allowance < 0.0) throw std::invalid_argument("cusum: drift_allowance must be >= 0");
    if (!(threshold > 0.0)) throw std::invalid_argument("cusum: threshold must be positive");
    if (fixed_std && !(*fixed_std > 0.0)) {
      throw std::invalid_argument("cusum: fixed_std must be positive");
    }
  }
};

class Cusum final : public StreamingDetector {
 public:
  explicit Cusum(CusumConfig config = {}, CallbackSet callbacks = {})
      : StreamingDetector(std::move(callbacks)), config_(config) {
    config_.validate();
  }

  std::string method_name() const override { return "cusum"; }

  std::map<std::string, double> summary() const override {
    return {{"n", static_cast<double>(stats_.count())},
            {"mean", stats_.mean()},
            {"g_pos", g_pos_},
            {"g_neg", g_neg_}};
  }

  const CusumConfig& config() const { return config_; }

 protected:
  DetectionStatus do_update(double value) override {
    stats_.update(value);
    DetectionStatus status;
    if (stats_.count() < config_.min_num_instances) return status;
    const double mean = config_.fixed_mean.value_or(stats_.mean());
    const double sd = config_.fixed_std ? *config_.fixed_std : stats_.std_population();
    const double z = sd > 0.0 ? (value - mean) / sd : 0.0;
    g_pos_ = std::max(0.0, g_pos_ + z - config_.drift_allowance);
    g_neg_ = std::max(0.0, g_neg_ - z - config_.drift_allowance);
    if (std::max(g_pos_, g_neg_) > config_.threshold) status.drift = true;
    return status;
  }

  void do_reset() override {
    stats_.reset();
    g_pos_ = 0.0;
    g_neg_ = 0.0;
  }

  nlohmann::json config_json() const override {
    nlohmann::json j{{"min_num_instances", config_.min_num_instances},
                     {"drift_allowance", config_.drift_allowance},
                     {"threshold", config_.threshold}};
    if (config_.fixed_mean) j["fixed_mean"] = *config_.fixed_mean;
    if (config_.fixed_std) j["fixed_std"] = *config_.fixed_std;
    return j;
  }

  nlohmann::json state_json() const override {
    return {{"stats", stats_.to_json()}, {"g_pos", g_pos_}, {"g_neg", g_neg_}};
  }

  void restore_state(const nlohmann::json& state) override {
    stats_ = StreamStats::from_json(state.at("stats"));
    g_pos_ = state.at("g_pos").get<double>();
    g_neg_ = state.at("g_neg").get<double>();
  }

 private:
  CusumConfig config_;
  StreamStats stats_;
  double g_pos_ = 0.0;
  double g_neg_ = 0.0;
};

}  // namespace driftkit::concept_drift
