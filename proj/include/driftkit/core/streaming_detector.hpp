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
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

#include "driftkit/core/callbacks.hpp"
#include "driftkit/core/detection_status.hpp"

namespace driftkit {

inline constexpr int kSnapshotSchemaVersion = 1;

// Lifecycle shared by all streaming detectors: one value per update, a
// DetectionStatus per update, reset back to the freshly-constructed state
// (callbacks retained), and a versioned key-value snapshot for save/resume.
//
// Single-writer: no concurrent updates to one detector. Callback dispatch is
// synchronous on the updating thread; the state transition is committed
// before on_update_end fires, so a failing callback cannot corrupt detection.
class StreamingDetector {
 public:
  explicit StreamingDetector(CallbackSet callbacks = {}) : callbacks_(std::move(callbacks)) {}
  virtual ~StreamingDetector() = default;

  StreamingDetector(const StreamingDetector&) = delete;
  StreamingDetector& operator=(const StreamingDetector&) = delete;

  DetectionStatus update(double value) {
    validate_value(value);  // rejects without state change
    UpdateEvent ev;
    ev.step = steps_ + 1;
    ev.value = value;
    callbacks_.update_start(ev);
    const DetectionStatus status = do_update(value);
    ++steps_;
    last_status_ = status;
    const auto snapshot_summary = summary();
    ev.status = status;
    ev.summary = &snapshot_summary;
    callbacks_.update_end(ev);
    if (status.drift) {
      callbacks_.drift_detected(DriftEvent{steps_, status});
    }
    return status;
  }

  void reset() {
    do_reset();
    steps_ = 0;
    last_status_ = DetectionStatus{};
    callbacks_.detector_reset();
  }

  DetectionStatus status() const { return last_status_; }
  std::size_t num_updates() const { return steps_; }
  CallbackSet& callbacks() { return callbacks_; }
  const CallbackSet& callbacks() const { return callbacks_; }

  virtual std::string method_name() const = 0;
  // Small read-only view of the internals, used by the history callback.
  virtual std::map<std::string, double> summary() const = 0;

  // Versioned key-value snapshot; restoring it reproduces the status sequence
  // of the uninterrupted run exactly.
  nlohmann::json snapshot() const {
    nlohmann::json state = state_json();
    state["steps"] = steps_;
    state["last_drift"] = last_status_.drift;
    state["last_warning"] = last_status_.warning;
    return nlohmann::json{{"schema_version", kSnapshotSchemaVersion},
                          {"method", method_name()},
                          {"config", config_json()},
                          {"state", std::move(state)}};
  }

  void restore(const nlohmann::json& snapshot_doc) {
    if (!snapshot_doc.contains("schema_version") ||
        snapshot_doc.at("schema_version").get<int>() != kSnapshotSchemaVersion) {
      throw std::invalid_argument("snapshot: unsupported schema version");
    }
    if (snapshot_doc.at("method").get<std::string>() != method_name()) {
      throw std::invalid_argument("snapshot: method mismatch");
    }
    const nlohmann::json& state = snapshot_doc.at("state");
    restore_state(state);
    steps_ = state.at("steps").get<std::size_t>();
    last_status_.drift = state.at("last_drift").get<bool>();
    last_status_.warning = state.at("last_warning").get<bool>();
  }

 protected:
  virtual void validate_value(double value) const {
    if (!std::isfinite(value)) {
      throw std::invalid_argument(method_name() + ": non-finite value");
    }
  }

  virtual DetectionStatus do_update(double value) = 0;
  virtual void do_reset() = 0;
  virtual nlohmann::json config_json() const = 0;
  virtual nlohmann::json state_json() const = 0;
  virtual void restore_state(const nlohmann::json& state) = 0;

  void require_binary(double value) const {
    if (!std::isfinite(value) || (value != 0.0 && value != 1.0)) {
      throw std::invalid_argument(method_name() + ": value must be 0 or 1");
    }
  }

  void require_unit_interval(double value) const {
    if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
      throw std::invalid_argument(method_name() + ": value must lie in [0, 1]");
    }
  }

  CallbackSet callbacks_;
  std::size_t steps_ = 0;
  DetectionStatus last_status_{};
};

}  // namespace driftkit
