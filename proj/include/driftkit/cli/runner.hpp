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

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "driftkit/cli/csv.hpp"
#include "driftkit/cli/registry.hpp"
#include "driftkit/cli/run_config.hpp"

namespace driftkit::cli {

// Exit codes: 0 = no drift, 3 = drift, 1 = usage error, 2 = data error.
inline constexpr int kExitNoDrift = 0;
inline constexpr int kExitUsageError = 1;
inline constexpr int kExitDataError = 2;
inline constexpr int kExitDrift = 3;

inline constexpr int kReportSchemaVersion = 1;

struct RunOutcome {
  nlohmann::ordered_json report;
  int exit_code = kExitNoDrift;
};

namespace detail {

inline nlohmann::ordered_json report_skeleton(const RunConfig& config) {
  nlohmann::ordered_json report;
  report["schema_version"] = kReportSchemaVersion;
  report["mode"] = config.mode;
  report["method"] = config.method;
  report["config"] = config.echo();
  return report;
}

inline nlohmann::ordered_json feature_json(const data_drift::FeatureResult& fr) {
  nlohmann::ordered_json j;
  j["feature"] = fr.feature;
  j["statistic"] = fr.statistic;
  if (fr.p_value) {
    j["p_value"] = *fr.p_value;
  } else {
    j["p_value"] = nullptr;
  }
  j["drift"] = fr.drift;
  return j;
}

inline void collect_result_warnings(const data_drift::ComparisonResult& result,
                                    std::vector<std::string>& warnings) {
  const auto has = [&](const char* key) {
    const auto it = result.extras.find(key);
    return it != result.extras.end() && it->second > 0.0;
  };
  if (has("clipped_low") || has("clipped_high")) {
    warnings.push_back("test values outside the reference range were clipped into end bins");
  }
  if (has("degenerate_reference")) {
    warnings.push_back("degenerate reference (all values equal): single widened bin");
  }
  if (has("saturated")) {
    warnings.push_back("disjoint support: divergence saturates, reported value is "
                       "epsilon-smoothed");
  }
  if (has("degenerate")) {
    warnings.push_back("degenerate variance: both batches are constant");
  }
}

inline void check_columns_match(const data_drift::Frame& ref, const data_drift::Frame& test) {
  if (ref.size() != test.size()) throw DataError("reference/test column count mismatch");
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (ref[i].name != test[i].name) {
      throw DataError("column name mismatch: '" + ref[i].name + "' vs '" + test[i].name + "'");
    }
    if (ref[i].categorical != test[i].categorical) {
      throw DataError("column kind mismatch for '" + ref[i].name + "'");
    }
  }
}

}  // namespace detail

inline RunOutcome run_batch(const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  if (!is_batch_method(config.method)) {
    throw UsageError("method '" + config.method + "' is not a batch method");
  }
  const auto ref_table = read_csv(config.reference_path, config.delimiter);
  const auto test_table = read_csv(config.test_path, config.delimiter);
  auto ref_frame = to_frame(ref_table, config.column_kinds, config.features);
  auto test_frame = to_frame(test_table, config.column_kinds, config.features);
  // Kinds are inferred per file; the reference decides, the test must comply.
  for (std::size_t i = 0; i < ref_frame.size() && i < test_frame.size(); ++i) {
    if (ref_frame[i].categorical && !test_frame[i].categorical) {
      auto& col = test_frame[i];
      col.categorical = true;
      col.labels.clear();
      for (double v : col.numbers) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        col.labels.emplace_back(buf);
      }
      col.numbers.clear();
    }
  }
  detail::check_columns_match(ref_frame, test_frame);

  std::vector<std::string> warnings;
  BatchOptions opts;
  opts.alpha = config.alpha;
  opts.distance_threshold = config.distance_threshold;
  opts.permutations = config.permutations;
  opts.seed = config.seed;

  data_drift::ComparisonResult result;
  const std::size_t n_ref = ref_frame.front().size();
  const std::size_t n_test = test_frame.front().size();

  if (config.method == "mmd" && ref_frame.size() > 1) {
    // MMD is natively multivariate: joint kernel over rows.
    for (const auto& col : ref_frame) {
      if (col.categorical) throw DataError("mmd requires numeric features");
    }
    data_drift::Matrix ref_m(n_ref, ref_frame.size());
    data_drift::Matrix test_m(n_test, test_frame.size());
    for (std::size_t c = 0; c < ref_frame.size(); ++c) {
      for (std::size_t r = 0; r < n_ref; ++r) ref_m.at(r, c) = ref_frame[c].numbers[r];
      for (std::size_t r = 0; r < n_test; ++r) test_m.at(r, c) = test_frame[c].numbers[r];
    }
    data_drift::MmdConfig mmd_config;
    detail::expect_keys(config.params, {"sigma", "unbiased"}, "mmd");
    if (config.params.contains("sigma")) mmd_config.sigma = config.params.at("sigma").get<double>();
    mmd_config.unbiased = detail::get_or<bool>(config.params, "unbiased", false);
    mmd_config.drift_threshold = config.distance_threshold;
    mmd_config.alpha = config.alpha;
    data_drift::MmdDetector mmd(mmd_config, batch_callbacks(opts));
    mmd.fit(std::move(ref_m));
    result = mmd.compare(test_m);
  } else if (ref_frame.size() == 1) {
    const auto& ref_col = ref_frame.front();
    const auto& test_col = test_frame.front();
    if (ref_col.categorical) {
      auto detector = make_categorical_detector(config.method, config.params, opts);
      detector->fit(ref_col.labels);
      result = detector->compare(test_col.labels);
    } else {
      if (!supports_numeric(config.method)) {
        throw DataError("method '" + config.method + "' requires categorical data");
      }
      auto detector = make_numeric_detector(config.method, config.params, opts);
      detector->fit(ref_col.numbers);
      result = detector->compare(test_col.numbers);
    }
    data_drift::FeatureResult fr;
    fr.feature = ref_col.name;
    fr.statistic = result.statistic;
    fr.p_value = result.p_value;
    fr.drift = result.drift;
    result.per_feature.push_back(std::move(fr));
  } else {
    data_drift::MarginalDrift marginals(
        [&] { return make_numeric_detector(config.method, config.params, opts); },
        supports_categorical(config.method)
            ? data_drift::MarginalDrift::CategoricalFactory(
                  [&] { return make_categorical_detector(config.method, config.params, opts); })
            : data_drift::MarginalDrift::CategoricalFactory{},
        config.alpha, config.correction_policy());
    marginals.fit(ref_frame);
    result = marginals.compare(test_frame);
  }

  detail::collect_result_warnings(result, warnings);
  const bool is_distance = is_distance_method_name(config.method);
  if (is_distance && !result.p_value.has_value() && !config.distance_threshold.has_value()) {
    warnings.push_back(
        "distance method without permutation callback or distance_threshold: no drift decision "
        "was made");
  }

  nlohmann::ordered_json report = detail::report_skeleton(config);
  report["n_ref"] = n_ref;
  report["n_test"] = n_test;
  report["statistic"] = result.statistic;
  if (result.p_value) {
    report["p_value"] = *result.p_value;
  } else {
    report["p_value"] = nullptr;
  }
  report["drift"] = result.drift;
  nlohmann::ordered_json per_feature = nlohmann::ordered_json::array();
  for (const auto& fr : result.per_feature) per_feature.push_back(detail::feature_json(fr));
  report["per_feature"] = std::move(per_feature);
  if (!result.extras.empty()) {
    nlohmann::ordered_json extras;
    for (const auto& [key, value] : result.extras) extras[key] = value;
    report["extras"] = std::move(extras);
  }
  report["warnings"] = warnings;
  if (config.emit_timing) {
    report["wall_time_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
  }
  return {std::move(report), result.drift ? kExitDrift : kExitNoDrift};
}

inline RunOutcome run_stream(const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  if (!is_streaming_method(config.method)) {
    throw UsageError("method '" + config.method + "' is not a streaming method");
  }

  std::unique_ptr<StreamingDetector> detector;
  if (!config.resume_path.empty()) {
    const auto snapshot = read_json_file(config.resume_path);
    if (snapshot.contains("method") &&
        snapshot.at("method").get<std::string>() != config.method) {
      throw UsageError("snapshot method '" + snapshot.at("method").get<std::string>() +
                       "' does not match configured method '" + config.method + "'");
    }
    detector = restore_streaming_detector(snapshot);
  } else {
    detector = make_streaming_detector(config.method, config.params);
    if (config.method == "incremental_ks") {
      if (config.reference_path.empty()) {
        throw UsageError("incremental_ks requires a reference file");
      }
      const auto ref_table = read_csv(config.reference_path, config.delimiter);
      auto ref_frame = to_frame(ref_table, config.column_kinds, config.features);
      if (ref_frame.size() != 1 || ref_frame.front().categorical) {
        throw DataError("incremental_ks reference must be a single numeric column");
      }
      static_cast<data_drift::IncrementalKs&>(*detector).fit(ref_frame.front().numbers);
    }
  }

  const auto table = read_csv(config.input_path, config.delimiter);
  auto frame = to_frame(table, config.column_kinds, config.features);
  if (frame.size() != 1 || frame.front().categorical) {
    throw DataError("stream mode expects a single numeric column");
  }

  nlohmann::ordered_json events = nlohmann::ordered_json::array();
  bool any_drift = false;
  for (double value : frame.front().numbers) {
    DetectionStatus status;
    try {
      status = detector->update(value);
    } catch (const std::invalid_argument& e) {
      throw DataError(e.what());
    }
    if (status.drift) {
      any_drift = true;
      events.push_back({{"step", detector->num_updates()}, {"type", "drift"}});
    } else if (status.warning) {
      events.push_back({{"step", detector->num_updates()}, {"type", "warning"}});
    }
  }

  nlohmann::ordered_json report = detail::report_skeleton(config);
  report["n_samples"] = frame.front().numbers.size();
  report["total_steps"] = detector->num_updates();
  report["events"] = std::move(events);
  report["drift"] = any_drift;
  report["warnings"] = nlohmann::ordered_json::array();
  if (!config.snapshot_path.empty()) {
    write_text_file(config.snapshot_path,
                    to_stable_json(nlohmann::ordered_json(detector->snapshot())));
    report["snapshot_written"] = config.snapshot_path;
  }
  if (config.emit_timing) {
    report["wall_time_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
  }
  return {std::move(report), any_drift ? kExitDrift : kExitNoDrift};
}

inline RunOutcome run_simulate(const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  if (!is_concept_method(config.method)) {
    throw UsageError("simulate mode requires a concept-drift method");
  }
  streamgen::DriftScenario scenario;
  try {
    scenario = streamgen::DriftScenario::from_json(config.scenario);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("invalid scenario: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid scenario: ") + e.what());
  }

  std::vector<std::uint64_t> seeds = config.seeds;
  if (seeds.empty()) {
    for (std::size_t i = 0; i < config.num_seeds; ++i) seeds.push_back(config.seed + i);
  }

  auto detector = make_streaming_detector(config.method, config.params);
  streamgen::DetectionReport report_data;
  try {
    report_data = streamgen::evaluate(*detector, scenario, seeds);
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("scenario/detector domain mismatch: ") + e.what());
  }

  nlohmann::ordered_json report = detail::report_skeleton(config);
  report["scenario"] = nlohmann::ordered_json(scenario.to_json());
  nlohmann::ordered_json per_seed = nlohmann::ordered_json::array();
  for (const auto& outcome : report_data.per_seed) {
    nlohmann::ordered_json j;
    j["seed"] = outcome.seed;
    if (outcome.detection_step) {
      j["detection_step"] = *outcome.detection_step;
      j["delay"] = *outcome.delay;
    } else {
      j["detection_step"] = nullptr;
      j["delay"] = nullptr;
    }
    j["false_alarms"] = outcome.false_alarms;
    per_seed.push_back(std::move(j));
  }
  report["per_seed"] = std::move(per_seed);
  report["detection_rate"] = report_data.detection_rate;
  if (report_data.median_delay) {
    report["median_delay"] = *report_data.median_delay;
  } else {
    report["median_delay"] = nullptr;
  }
  report["false_alarm_rate"] = report_data.false_alarm_rate;
  report["warnings"] = nlohmann::ordered_json::array();
  if (config.emit_timing) {
    report["wall_time_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
  }
  return {std::move(report), kExitNoDrift};
}

inline RunOutcome run(const RunConfig& config) {
  config.validate();
  if (config.mode == "batch") return run_batch(config);
  if (config.mode == "stream") return run_stream(config);
  return run_simulate(config);
}

}  // namespace driftkit::cli
