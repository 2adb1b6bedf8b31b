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

#include "driftkit/core/streaming_detector.hpp"
#include "driftkit/numerics/tails.hpp"

namespace driftkit::concept_drift {

// Statistical test of equal proportions: accuracy over the recent window of
// size W against accuracy over the older history, using the two-proportion
// z-test with continuity correction. Input is a correctness indicator
// (1 = correct prediction). Testing starts once the older history holds at
// least W samples.
struct StepdConfig {
  std::size_t window_size = 30;
  double alpha_warning = 0.05;
  double alpha_drift = 0.003;

  void validate() const {
    if (window_size < 2) throw std::invalid_argument("stepd: window_size must be >= 2");
    if (!(alpha_drift > 0.0) || !(alpha_warning > alpha_drift) || alpha_warning >= 1.0) {
      throw std::invalid_argument("stepd: require 0 < alpha_drift < alpha_warning < 1");
    }
  }
};

class Stepd final : public StreamingDetector {
 public:
  explicit Stepd(StepdConfig config = {}, CallbackSet callbacks = {})
      : StreamingDetector(std::move(callbacks)), config_(config) {
    config_.validate();
  }

  std::string method_name() const override { return "stepd"; }

  std::map<std::string, double> summary() const override {
    const double n_r = static_cast<double>(recent_.size());
    const double n_o = static_cast<double>(total_n_) - n_r;
    return {{"n", static_cast<double>(total_n_)},
            {"recent_accuracy", n_r > 0 ? recent_correct_ / n_r : 0.0},
            {"older_accuracy", n_o > 0 ? (total_correct_ - recent_correct_) / n_o : 0.0}};
  }

  const StepdConfig& config() const { return config_; }

 protected:
  void validate_value(double value) const override { require_binary(value); }

  DetectionStatus do_update(double value) override {
    recent_.push_back(value != 0.0);
    recent_correct_ += value;
    if (recent_.size() > config_.window_size) {
      recent_correct_ -= recent_.front() ? 1.0 : 0.0;
      recent_.pop_front();
    }
    ++total_n_;
    total_correct_ += value;

    DetectionStatus status;
    const std::size_t n_r = recent_.size();
    const std::size_t n_o = total_n_ - n_r;
    if (n_r < config_.window_size || n_o < config_.window_size) return status;

    const double r_r = recent_correct_;
    const double r_o = total_correct_ - recent_correct_;
    const double p_r = r_r / static_cast<double>(n_r);
    const double p_o = r_o / static_cast<double>(n_o);
    const double pooled = (r_r + r_o) / static_cast<double>(n_r + n_o);
    const double inv = 1.0 / static_cast<double>(n_o) + 1.0 / static_cast<double>(n_r);
    const double se = std::sqrt(pooled * (1.0 - pooled) * inv);
    if (se <= 0.0) return status;  // both proportions equal and degenerate
    const double z = std::max(0.0, std::abs(p_o - p_r) - 0.5 * inv) / se;
    const double p = std::min(1.0, 2.0 * numerics::normal_tail(z));
    if (p < config_.alpha_drift) {
      status.drift = true;
    } else if (p < config_.alpha_warning) {
      status.warning = true;
    }
    return status;
  }

  void do_reset() override {
    recent_.clear();
    recent_correct_ = 0.0;
    total_n_ = 0;
    total_correct_ = 0.0;
  }

  nlohmann::json config_json() const override {
    return {{"window_size", config_.window_size},
            {"alpha_warning", config_.alpha_warning},
            {"alpha_drift", config_.alpha_drift}};
  }

  nlohmann::json state_json() const override {
    std::vector<int> recent;
    recent.reserve(recent_.size());
    for (bool b : recent_) recent.push_back(b ? 1 : 0);
    return {{"recent", recent},
            {"recent_correct", recent_correct_},
            {"total_n", total_n_},
            {"total_correct", total_correct_}};
  }

  void restore_state(const nlohmann::json& state) override {
    const auto recent = state.at("recent").get<std::vector<int>>();
    recent_.clear();
    for (int b : recent) recent_.push_back(b != 0);
    recent_correct_ = state.at("recent_correct").get<double>();
    total_n_ = state.at("total_n").get<std::size_t>();
    total_correct_ = state.at("total_correct").get<double>();
  }

 private:
  StepdConfig config_;
  std::deque<bool> recent_;
  double recent_correct_ = 0.0;
  std::size_t total_n_ = 0;
  double total_correct_ = 0.0;
};

}  // namespace driftkit::concept_drift
