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

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "driftkit/core/detection_status.hpp"
#include "driftkit/core/errors.hpp"
#include "driftkit/data_drift/comparison_result.hpp"
#include "driftkit/numerics/permutation.hpp"

namespace driftkit {

struct FitEvent {
  std::size_t n_samples = 0;
  std::size_t n_features = 1;
};

struct UpdateEvent {
  std::size_t step = 0;  // 1-based update count, the step being processed
  double value = 0.0;
  DetectionStatus status;                              // filled for update_end
  const std::map<std::string, double>* summary = nullptr;  // read-only detector view
};

struct DriftEvent {
  std::size_t step = 0;
  DetectionStatus status;
};

struct CompareEvent {
  std::size_t n_ref = 0;
  std::size_t n_test = 0;
  // Null during on_compare_start; points at the result during on_compare_end.
  // Callbacks may attach extras / a p-value but see detector internals
  // read-only.
  data_drift::ComparisonResult* result = nullptr;
  // Pure statistic over index splits of the pooled (ref ++ test) sample, for
  // permutation-style callbacks. Empty if the detector cannot provide one.
  numerics::SplitStatistic split_statistic;
};

// Hooks fire in registration order. Update hooks fire on streaming detectors
// only, compare hooks on batch detectors only; fit hooks are shared by data
// detectors of either kind.
class Callback {
 public:
  virtual ~Callback() = default;
  virtual std::string name() const { return "callback"; }

  virtual void on_fit_start(const FitEvent&) {}
  virtual void on_fit_end(const FitEvent&) {}
  virtual void on_update_start(const UpdateEvent&) {}
  virtual void on_update_end(const UpdateEvent&) {}
  virtual void on_compare_start(CompareEvent&) {}
  virtual void on_compare_end(CompareEvent&) {}
  virtual void on_drift_detected(const DriftEvent&) {}

  // Not one of the dispatch stages: lets stateful callbacks react to
  // detector.reset() (e.g. history clearing).
  virtual void on_detector_reset() {}
};

class CallbackSet {
 public:
  CallbackSet() = default;
  CallbackSet(std::initializer_list<std::shared_ptr<Callback>> cbs) : items_(cbs) {}

  void add(std::shared_ptr<Callback> cb) { items_.push_back(std::move(cb)); }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const std::vector<std::shared_ptr<Callback>>& items() const { return items_; }

  void fit_start(const FitEvent& ev) const {
    dispatch("on_fit_start", [&](Callback& cb) { cb.on_fit_start(ev); });
  }
  void fit_end(const FitEvent& ev) const {
    dispatch("on_fit_end", [&](Callback& cb) { cb.on_fit_end(ev); });
  }
  void update_start(const UpdateEvent& ev) const {
    dispatch("on_update_start", [&](Callback& cb) { cb.on_update_start(ev); });
  }
  void update_end(const UpdateEvent& ev) const {
    dispatch("on_update_end", [&](Callback& cb) { cb.on_update_end(ev); });
  }
  void compare_start(CompareEvent& ev) const {
    dispatch("on_compare_start", [&](Callback& cb) { cb.on_compare_start(ev); });
  }
  void compare_end(CompareEvent& ev) const {
    dispatch("on_compare_end", [&](Callback& cb) { cb.on_compare_end(ev); });
  }
  void drift_detected(const DriftEvent& ev) const {
    dispatch("on_drift_detected", [&](Callback& cb) { cb.on_drift_detected(ev); });
  }
  void detector_reset() const {
    dispatch("on_detector_reset", [&](Callback& cb) { cb.on_detector_reset(); });
  }

 private:
  // A failing hook aborts the remaining callbacks for that stage and surfaces
  // as CallbackError.
  template <class F>
  void dispatch(const char* stage, F&& fire) const {
    for (std::size_t i = 0; i < items_.size(); ++i) {
      try {
        fire(*items_[i]);
      } catch (const std::exception& e) {
        throw CallbackError(stage, i, items_[i]->name(), e.what());
      } catch (...) {
        throw CallbackError(stage, i, items_[i]->name(), "unknown error");
      }
    }
  }

  std::vector<std::shared_ptr<Callback>> items_;
};

// Records one entry per update: step index, observed value, returned status
// and the detector's summary statistics at that step. Cleared on detector
// reset unless constructed with retain_on_reset.
class HistoryCallback final : public Callback {
 public:
  struct Record {
    std::size_t step = 0;
    double value = 0.0;
    DetectionStatus status;
    std::map<std::string, double> summary;
  };

  explicit HistoryCallback(bool retain_on_reset = false) : retain_(retain_on_reset) {}

  std::string name() const override { return "history"; }

  void on_update_end(const UpdateEvent& ev) override {
    Record rec;
    rec.step = ev.step;
    rec.value = ev.value;
    rec.status = ev.status;
    if (ev.summary != nullptr) rec.summary = *ev.summary;
    records_.push_back(std::move(rec));
  }

  void on_drift_detected(const DriftEvent& ev) override { drift_steps_.push_back(ev.step); }

  void on_detector_reset() override {
    if (!retain_) {
      records_.clear();
      drift_steps_.clear();
    }
  }

  const std::vector<Record>& records() const { return records_; }
  const std::vector<std::size_t>& drift_steps() const { return drift_steps_; }

 private:
  bool retain_;
  std::vector<Record> records_;
  std::vector<std::size_t> drift_steps_;
};

// Attaches a permutation-test p-value to compare results; the natural way to
// obtain a p-value from distance detectors, which otherwise only report the
// distance.
class PermutationTestCallback final : public Callback {
 public:
  explicit PermutationTestCallback(numerics::PermutationPlan plan = {}) : plan_(std::move(plan)) {}

  std::string name() const override { return "permutation_test"; }

  void on_compare_end(CompareEvent& ev) override {
    if (ev.result == nullptr || !ev.split_statistic) return;
    const auto outcome = numerics::permutation_p_value(plan_, ev.n_ref, ev.n_test,
                                                       ev.split_statistic);
    ev.result->extras["permutation_p_value"] = outcome.p_value;
    ev.result->extras["permutation_exact"] = outcome.exact ? 1.0 : 0.0;
    if (!ev.result->p_value.has_value()) ev.result->p_value = outcome.p_value;
  }

  const numerics::PermutationPlan& plan() const { return plan_; }

 private:
  numerics::PermutationPlan plan_;
};

}  // namespace driftkit
