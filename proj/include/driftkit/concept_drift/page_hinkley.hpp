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
#include <limits>

#include "driftkit/concept_drift/stream_stats.hpp"
#include "driftkit/core/streaming_detector.hpp"

namespace driftkit::concept_drift {

// Cumulative deviation from the running mean:
//   m_t = m_{t-1} + (x_t - mean_t - delta), M_t = min_{s<=t} m_s,
// drift when m_t - M_t > lambda (detects increases). The two-sided variant
// also tracks the running maximum and flags m falling lambda below it.
struct PageHinkleyConfig {
  std::size_t min_num_instances = 30;
  double delta = 0.005;
  double threshold = 50.0;  // lambda
  bool two_sided = false;

  void validate() const {
    if (delta < 0.0) throw std::invalid_argument("page_hinkley: delta must be >= 0");
    if (!(threshold > 0.0)) throw std::invalid_argument("page_hinkley: threshold must be positive");
  }
};

class PageHinkley final : public StreamingDetector {
 public:
  explicit PageHinkley(PageHinkleyConfig config = {}, CallbackSet callbacks = {})
      : StreamingDetector(std::move(callbacks)), config_(config) {
    config_.validate();
    do_reset();
  }

  std::string method_name() const override { return "page_hinkley"; }

  std::map<std::string, double> summary() const override {
    return {{"n", static_cast<double>(stats_.count())},
            {"mean", stats_.mean()},
            {"m", m_},
            {"m_min", m_min_ == std::numeric_limits<double>::max() ? 0.0 : m_min_}};
  }

  const PageHinkleyConfig& config() const { return config_; }

 protected:
  DetectionStatus do_update(double value) override {
    stats_.update(value);
    DetectionStatus status;
    if (stats_.count() < config_.min_num_instances) return status;
    m_ += value - stats_.mean() - config_.delta;
    m_min_ = std::min(m_min_, m_);
    m_max_ = std::max(m_max_, m_);
    if (m_ - m_min_ > config_.threshold) {
      status.drift = true;
    } else if (config_.two_sided && m_max_ - m_ > config_.threshold) {
      status.drift = true;
    }
    return status;
  }

  void do_reset() override {
    stats_.reset();
    m_ = 0.0;
    m_min_ = std::numeric_limits<double>::max();
    m_max_ = std::numeric_limits<double>::lowest();
  }

  nlohmann::json config_json() const override {
    return {{"min_num_instances", config_.min_num_instances},
            {"delta", config_.delta},
            {"threshold", config_.threshold},
            {"two_sided", config_.two_sided}};
  }

  nlohmann::json state_json() const override {
    return {{"stats", stats_.to_json()}, {"m", m_}, {"m_min", m_min_}, {"m_max", m_max_}};
  }

  void restore_state(const nlohmann::json& state) override {
    stats_ = StreamStats::from_json(state.at("stats"));
    m_ = state.at("m").get<double>();
    m_min_ = state.at("m_min").get<double>();
    m_max_ = state.at("m_max").get<double>();
  }

 private:
  PageHinkleyConfig config_;
  StreamStats stats_;
  double m_ = 0.0;
  double m_min_ = std::numeric_limits<double>::max();
  double m_max_ = std::numeric_limits<double>::lowest();
};

}  // namespace driftkit::concept_drift
