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
#include <optional>
#include <span>
#include <vector>

#include "driftkit/core/streaming_detector.hpp"
#include "driftkit/streamgen/scenario.hpp"

namespace driftkit::streamgen {

struct SeedOutcome {
  std::uint64_t seed = 0;
  std::optional<std::size_t> detection_step;  // first drift at index >= t0
  std::optional<std::size_t> delay;           // detection_step - t0
  std::size_t false_alarms = 0;               // drift steps strictly before t0
};

struct DetectionReport {
  std::vector<SeedOutcome> per_seed;
  double detection_rate = 0.0;
  std::optional<double> median_delay;
  // Fraction of seeds with at least one pre-change drift.
  double false_alarm_rate = 0.0;
};

// Runs the detector over the scenario once per seed (reset in between) and
// aggregates detection delay and false-alarm statistics. The scenario is
// never mutated; thanks to reset-equivalence the report does not depend on
// seed order.
inline DetectionReport evaluate(StreamingDetector& detector, const DriftScenario& scenario,
                                std::span<const std::uint64_t> seeds) {
  scenario.validate();
  DetectionReport report;
  report.per_seed.reserve(seeds.size());
  std::vector<double> delays;
  std::size_t detected = 0;
  std::size_t seeds_with_false_alarm = 0;
  for (std::uint64_t seed : seeds) {
    detector.reset();
    const auto stream = generate(scenario, seed);
    SeedOutcome outcome;
    outcome.seed = seed;
    for (std::size_t i = 0; i < stream.size(); ++i) {
      const DetectionStatus status = detector.update(stream[i]);
      if (!status.drift) continue;
      if (i < scenario.changepoint) {
        ++outcome.false_alarms;
      } else if (!outcome.detection_step.has_value()) {
        outcome.detection_step = i;
        outcome.delay = i - scenario.changepoint;
      }
    }
    if (outcome.detection_step.has_value()) {
      ++detected;
      delays.push_back(static_cast<double>(*outcome.delay));
    }
    if (outcome.false_alarms > 0) ++seeds_with_false_alarm;
    report.per_seed.push_back(outcome);
  }
  const double n_seeds = static_cast<double>(seeds.size());
  if (!seeds.empty()) {
    report.detection_rate = static_cast<double>(detected) / n_seeds;
    report.false_alarm_rate = static_cast<double>(seeds_with_false_alarm) / n_seeds;
  }
  if (!delays.empty()) {
    std::sort(delays.begin(), delays.end());
    const std::size_t mid = delays.size() / 2;
    report.median_delay = delays.size() % 2 == 1
                              ? delays[mid]
                              : 0.5 * (delays[mid - 1] + delays[mid]);
  }
  return report;
}

}  // namespace driftkit::streamgen
