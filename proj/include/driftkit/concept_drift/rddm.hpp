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
#include <deque>
#include <limits>

#include "driftkit/core/streaming_detector.hpp"

namespace driftkit::concept_drift {

// DDM decision rule plus a reactive mechanism: recent predictions are kept in
// a bounded window; statistics are rebuilt from that window after a drift,
// after a warning that lasted longer than warning_limit updates, or when the
// tracked concept grows past max_concept_size. Defaults follow the original
// reactive formulation (sensitivity levels 1.773 / 2.258, minimum 129
// instances, 40000-instance concept cap, 7000-instance stable window,
// 1400-update warning patience).
struct RddmConfig {
  std::size_t min_num_instances = 129;
  double warning_level = 1.773;
  double drift_level = 2.258;
  std::size_t max_concept_size = 40000;
  std::size_t min_size_stable_concept = 7000;
  std::size_t warning_limit = 1400;

  void validate() const {
    if (min_num_instances < 1) throw std::invalid_argument("rddm: min_num_instances must be >= 1");
    if (!(warning_level > 0.0) || !(drift_level > warning_level)) {
      throw std::invalid_argument("rddm: require 0 < warning_level < drift_level");
    }
    if (min_size_stable_concept < 1 || max_concept_size < min_size_stable_concept) {
      throw std::invalid_argument("rddm: require max_concept_size >= min_size_stable_concept >= 1");
    }
    if (warning_limit < 1) throw std::invalid_argument("rddm: warning_limit must be >= 1");
  }
};

class Rddm final : public StreamingDetector {
 public:
  explicit Rddm(RddmConfig config = {}, CallbackSet callbacks = {})
      : StreamingDetector(std::move(callbacks)), config_(config) {
    config_.validate();
    do_reset();
  }

  std::string method_name() const override { return "rddm"; }

  std::map<std::string, double> summary() const override {
    const double p = n_ == 0 ? 0.0 : error_sum_ / static_cast<double>(n_);
    return {{"n", static_cast<double>(n_)},
            {"error_rate", p},
            {"min_error_rate", min_rate_},
            {"min_std", min_std_},
            {"stored", static_cast<double>(stored_.size())}};
  }

  const RddmConfig& config() const { return config_; }

 protected:
  void validate_value(double value) const override { require_binary(value); }

  DetectionStatus do_update(double value) override {
    if (pending_rebuild_) rebuild_from_stored();

    stored_.push_back(value != 0.0);
    if (stored_.size() > config_.min_size_stable_concept) stored_.pop_front();

    ++n_;
    error_sum_ += value;
    const double p = error_sum_ / static_cast<double>(n_);
    const double s = std::sqrt(p * (1.0 - p) / static_cast<double>(n_));

    DetectionStatus status;
    if (n_ < config_.min_num_instances) return status;

    if (p + s < min_rate_ + min_std_) {
      min_rate_ = p;
      min_std_ = s;
    }

    if (p + s > min_rate_ + config_.drift_level * min_std_) {
      status.drift = true;
      pending_rebuild_ = true;
      rebuild_resets_minima_ = true;
      if (warning_run_ == 0) {
        // Drift without a preceding warning: only the triggering sample is a
        // trustworthy member of the new concept.
        stored_.clear();
        stored_.push_back(value != 0.0);
      }
      warning_run_ = 0;
      return status;
    }

    if (p + s > min_rate_ + config_.warning_level * min_std_) {
      status.warning = true;
      ++warning_run_;
      if (warning_run_ >= config_.warning_limit) {
        status.drift = true;
        pending_rebuild_ = true;
        rebuild_resets_minima_ = true;
        warning_run_ = 0;
      }
      return status;
    }

    warning_run_ = 0;
    if (n_ > config_.max_concept_size) {
      // Concept grew too large: rebuild statistics from the stable window so
      // the error estimate can still move. Not a drift signal.
      pending_rebuild_ = true;
      rebuild_resets_minima_ = false;
    }
    return status;
  }

  void do_reset() override {
    stored_.clear();
    n_ = 0;
    error_sum_ = 0.0;
    min_rate_ = std::numeric_limits<double>::max();
    min_std_ = std::numeric_limits<double>::max();
    warning_run_ = 0;
    pending_rebuild_ = false;
    rebuild_resets_minima_ = false;
  }

  nlohmann::json config_json() const override {
    return {{"min_num_instances", config_.min_num_instances},
            {"warning_level", config_.warning_level},
            {"drift_level", config_.drift_level},
            {"max_concept_size", config_.max_concept_size},
            {"min_size_stable_concept", config_.min_size_stable_concept},
            {"warning_limit", config_.warning_limit}};
  }

  nlohmann::json state_json() const override {
    std::vector<int> stored(stored_.begin(), stored_.end());
    return {{"stored", stored},
            {"n", n_},
            {"error_sum", error_sum_},
            {"min_rate", min_rate_},
            {"min_std", min_std_},
            {"warning_run", warning_run_},
            {"pending_rebuild", pending_rebuild_},
            {"rebuild_resets_minima", rebuild_resets_minima_}};
  }

  void restore_state(const nlohmann::json& state) override {
    const auto stored = state.at("stored").get<std::vector<int>>();
    stored_.assign(stored.begin(), stored.end());
    n_ = state.at("n").get<std::size_t>();
    error_sum_ = state.at("error_sum").get<double>();
    min_rate_ = state.at("min_rate").get<double>();
    min_std_ = state.at("min_std").get<double>();
    warning_run_ = state.at("warning_run").get<std::size_t>();
    pending_rebuild_ = state.at("pending_rebuild").get<bool>();
    rebuild_resets_minima_ = state.at("rebuild_resets_minima").get<bool>();
  }

 private:
  void rebuild_from_stored() {
    n_ = 0;
    error_sum_ = 0.0;
    if (rebuild_resets_minima_) {
      min_rate_ = std::numeric_limits<double>::max();
      min_std_ = std::numeric_limits<double>::max();
    }
    for (bool err : stored_) {
      ++n_;
      error_sum_ += err ? 1.0 : 0.0;
      if (rebuild_resets_minima_ && n_ >= config_.min_num_instances) {
        const double p = error_sum_ / static_cast<double>(n_);
        const double s = std::sqrt(p * (1.0 - p) / static_cast<double>(n_));
        if (p + s < min_rate_ + min_std_) {
          min_rate_ = p;
          min_std_ = s;
        }
      }
    }
    pending_rebuild_ = false;
    rebuild_resets_minima_ = false;
  }

  RddmConfig config_;
  std::deque<bool> stored_;
  std::size_t n_ = 0;
  double error_sum_ = 0.0;
  double min_rate_ = std::numeric_limits<double>::max();
  double min_std_ = std::numeric_limits<double>::max();
  std::size_t warning_run_ = 0;
  bool pending_rebuild_ = false;
  bool rebuild_resets_minima_ = false;
};

}  // namespace driftkit::concept_drift
