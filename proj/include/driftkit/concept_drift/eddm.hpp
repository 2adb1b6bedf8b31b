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

// Tracks the spacing between consecutive misclassifications. Shrinking
// spacing signals drift: with distance mean p' and std s', the detector
// compares (p' + 2s') against its recorded maximum and alarms when the ratio
// falls under the drift threshold.
struct EddmConfig {
  std::size_t min_num_misclassified = 30;
  double warning_ratio = 0.95;
  double drift_ratio = 0.90;

  void validate() const {
    if (min_num_misclassified < 2) {
      throw std::invalid_argument("eddm: min_num_misclassified must be >= 2");
    }
    if (!(drift_ratio > 0.0) || !(warning_ratio > drift_ratio) || warning_ratio > 1.0) {
      throw std::invalid_argument("eddm: require 0 < drift_ratio < warning_ratio <= 1");
    }
  }
};

class Eddm final : public StreamingDetector {
 public:
  explicit Eddm(EddmConfig config = {}, CallbackSet callbacks = {})
      : StreamingDetector(std::move(callbacks)), config_(config) {
    config_.validate();
    do_reset();
  }

  std::string method_name() const override { return "eddm"; }

  std::map<std::string, double> summary() const override {
    return {{"n", static_cast<double>(index_)},
            {"errors", static_cast<double>(errors_)},
            {"distance_mean", dist_mean_},
            {"distance_std", distance_std()},
            {"max_combo", max_combo_ == std::numeric_limits<double>::lowest() ? 0.0 : max_combo_}};
  }

  double distance_std() const {
    return dist_n_ == 0 ? 0.0 : std::sqrt(dist_m2_ / static_cast<double>(dist_n_));
  }

  const EddmConfig& config() const { return config_; }

 protected:
  void validate_value(double value) const override { require_binary(value); }

  DetectionStatus do_update(double value) override {
    ++index_;
    DetectionStatus status;
    if (value != 1.0) return status;

    ++errors_;
    if (last_error_index_ >= 0) {
      const double distance = static_cast<double>(index_) - static_cast<double>(last_error_index_);
      ++dist_n_;
      const double d1 = distance - dist_mean_;
      dist_mean_ += d1 / static_cast<double>(dist_n_);
      dist_m2_ += d1 * (distance - dist_mean_);
      const double combo = dist_mean_ + 2.0 * distance_std();
      if (errors_ >= config_.min_num_misclassified) {
        if (combo > max_combo_) max_combo_ = combo;
        if (max_combo_ > 0.0) {
          const double ratio = combo / max_combo_;
          if (ratio < config_.drift_ratio) {
            status.drift = true;
          } else if (ratio < config_.warning_ratio) {
            status.warning = true;
          }
        }
      }
    }
    last_error_index_ = static_cast<long long>(index_);
    return status;
  }

  void do_reset() override {
    index_ = 0;
    last_error_index_ = -1;
    errors_ = 0;
    dist_n_ = 0;
    dist_mean_ = 0.0;
    dist_m2_ = 0.0;
    max_combo_ = std::numeric_limits<double>::lowest();
  }

  nlohmann::json config_json() const override {
    return {{"min_num_misclassified", config_.min_num_misclassified},
            {"warning_ratio", config_.warning_ratio},
            {"drift_ratio", config_.drift_ratio}};
  }

  nlohmann::json state_json() const override {
    return {{"index", index_},         {"last_error_index", last_error_index_},
            {"errors", errors_},       {"dist_n", dist_n_},
            {"dist_mean", dist_mean_}, {"dist_m2", dist_m2_},
            {"max_combo", max_combo_}};
  }

  void restore_state(const nlohmann::json& state) override {
    index_ = state.at("index").get<std::size_t>();
    last_error_index_ = state.at("last_error_index").get<long long>();
    errors_ = state.at("errors").get<std::size_t>();
    dist_n_ = state.at("dist_n").get<std::size_t>();
    dist_mean_ = state.at("dist_mean").get<double>();
    dist_m2_ = state.at("dist_m2").get<double>();
    max_combo_ = state.at("max_combo").get<double>();
  }

 private:
  EddmConfig config_;
  std::size_t index_ = 0;
  long long last_error_index_ = -1;
  std::size_t errors_ = 0;
  std::size_t dist_n_ = 0;
  double dist_mean_ = 0.0;
  double dist_m2_ = 0.0;
  double max_combo_ = std::numeric_limits<double>::lowest();
};

}  // namespace driftkit::concept_drift
