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
#include <optional>
#include <vector>

#include "driftkit/core/streaming_detector.hpp"
#include "driftkit/numerics/ecdf.hpp"
#include "driftkit/numerics/rng.hpp"
#include "driftkit/numerics/tails.hpp"

namespace driftkit::concept_drift {

// Sliding window of size w; once full, every update runs a KS test between
// the stat_size most recent values and stat_size values sampled (seeded,
// without replacement) from the remaining w - stat_size. Drift when the
// asymptotic p-value falls under alpha. The window always slides by one per
// update; alarms do not reset it. Subsample draws derive from
// (seed, update index), so a restored snapshot reproduces the run exactly.
struct KswinConfig {
  std::size_t window_size = 100;
  std::size_t stat_size = 30;
  double alpha = 1e-4;
  std::uint64_t seed = 1;

  void validate() const {
    if (stat_size < 2) throw std::invalid_argument("kswin: stat_size must be >= 2");
    if (window_size <= 2 * stat_size) {
      throw std::invalid_argument("kswin: window_size must exceed 2 * stat_size");
    }
    if (!(alpha > 0.0) || alpha >= 1.0) throw std::invalid_argument("kswin: alpha must be in (0, 1)");
  }
};

class Kswin final : public StreamingDetector {
 public:
  struct TestRecord {
    std::vector<double> recent;
    std::vector<double> sampled;
    double statistic = 0.0;
    double p_value = 1.0;
  };

  explicit Kswin(KswinConfig config = {}, CallbackSet callbacks = {})
      : StreamingDetector(std::move(callbacks)), config_(config) {
    config_.validate();
  }

  std::string method_name() const override { return "kswin"; }

  std::map<std::string, double> summary() const override {
    return {{"window_fill", static_cast<double>(window_.size())},
            {"tests", static_cast<double>(tests_)},
            {"last_statistic", last_test_ ? last_test_->statistic : 0.0},
            {"last_p_value", last_test_ ? last_test_->p_value : 1.0}};
  }

  // Subwindows and outcome of the most recent test, for verification.
  const std::optional<TestRecord>& last_test() const { return last_test_; }
  std::size_t tests_performed() const { return tests_; }

  const KswinConfig& config() const { return config_; }

 protected:
  DetectionStatus do_update(double value) override {
    window_.push_back(value);
    if (window_.size() > config_.window_size) window_.pop_front();
    DetectionStatus status;
    if (window_.size() < config_.window_size) return status;

    const std::size_t r = config_.stat_size;
    const std::size_t rest = config_.window_size - r;
    TestRecord rec;
    rec.recent.assign(window_.end() - static_cast<std::ptrdiff_t>(r), window_.end());
    numerics::CounterRng rng(numerics::substream_seed(config_.seed, steps_ + 1));
    rec.sampled.reserve(r);
    for (std::size_t idx : rng.sample_without_replacement(rest, r)) {
      rec.sampled.push_back(window_[idx]);
    }
    rec.statistic = numerics::ks_statistic(rec.recent, rec.sampled);
    const double ne = static_cast<double>(r) / 2.0;
    rec.p_value = numerics::kolmogorov_tail(std::sqrt(ne) * rec.statistic);
    ++tests_;
    if (rec.p_value < config_.alpha) status.drift = true;
    last_test_ = std::move(rec);
    return status;
  }

  void do_reset() override {
    window_.clear();
    last_test_.reset();
    tests_ = 0;
  }

  nlohmann::json config_json() const override {
    return {{"window_size", config_.window_size},
            {"stat_size", config_.stat_size},
            {"alpha", config_.alpha},
            {"seed", config_.seed}};
  }

  nlohmann::json state_json() const override {
    return {{"window", std::vector<double>(window_.begin(), window_.end())}, {"tests", tests_}};
  }

  void restore_state(const nlohmann::json& state) override {
    const auto values = state.at("window").get<std::vector<double>>();
    window_.assign(values.begin(), values.end());
    tests_ = state.at("tests").get<std::size_t>();
    last_test_.reset();
  }

 private:
  KswinConfig config_;
  std::deque<double> window_;
  std::size_t tests_ = 0;
  std::optional<TestRecord> last_test_;
};

}  // namespace driftkit::concept_drift
