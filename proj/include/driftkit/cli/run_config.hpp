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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "driftkit/cli/json_io.hpp"
#include "driftkit/data_drift/multivariate.hpp"

namespace driftkit::cli {

// Fully validated before any data is read; unknown keys are rejected.
struct RunConfig {
  std::string mode = "batch";  // batch | stream | simulate
  std::string method;
  double alpha = 0.05;
  std::string reference_path;
  std::string test_path;
  std::string input_path;
  std::string output_path;  // empty: stdout
  std::uint64_t seed = 1;
  std::string snapshot_path;
  std::string resume_path;
  std::size_t permutations = 0;
  std::vector<std::string> features;
  std::string correction = "bonferroni";  // none | bonferroni
  std::optional<double> distance_threshold;
  char delimiter = ',';
  std::map<std::string, std::string> column_kinds;
  bool emit_timing = false;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json scenario;  // simulate mode
  std::vector<std::uint64_t> seeds;
  std::size_t num_seeds = 100;

  void validate() const {
    if (mode != "batch" && mode != "stream" && mode != "simulate") {
      throw UsageError("mode must be batch, stream or simulate");
    }
    if (method.empty()) throw UsageError("method is required");
    if (!(alpha > 0.0) || alpha >= 1.0) throw UsageError("alpha must be in (0, 1)");
    if (correction != "none" && correction != "bonferroni") {
      throw UsageError("correction must be none or bonferroni");
    }
    if (distance_threshold && !(*distance_threshold >= 0.0)) {
      throw UsageError("distance_threshold must be >= 0");
    }
    if (mode == "batch") {
      if (reference_path.empty()) throw UsageError("batch mode requires reference");
      if (test_path.empty()) throw UsageError("batch mode requires test");
    }
    if (mode == "stream" && input_path.empty()) throw UsageError("stream mode requires input");
    if (mode == "simulate" && scenario.is_null()) throw UsageError("simulate mode requires scenario");
  }

  static RunConfig from_json(const nlohmann::json& j) {
    static const std::set<std::string> kAllowed{
        "mode",       "method",     "alpha",      "reference",    "test",
        "input",      "output",     "seed",       "snapshot",     "resume",
        "permutations", "features", "correction", "distance_threshold", "delimiter",
        "column_kinds", "emit_timing", "params",  "scenario",     "seeds",
        "num_seeds"};
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      (void)value;
      if (!kAllowed.count(key)) throw UsageError("unknown config key: " + key);
    }
    RunConfig c;
    if (j.contains("mode")) c.mode = j.at("mode").get<std::string>();
    if (j.contains("method")) c.method = j.at("method").get<std::string>();
    if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
    if (j.contains("reference")) c.reference_path = j.at("reference").get<std::string>();
    if (j.contains("test")) c.test_path = j.at("test").get<std::string>();
    if (j.contains("input")) c.input_path = j.at("input").get<std::string>();
    if (j.contains("output")) c.output_path = j.at("output").get<std::string>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("snapshot")) c.snapshot_path = j.at("snapshot").get<std::string>();
    if (j.contains("resume")) c.resume_path = j.at("resume").get<std::string>();
    if (j.contains("permutations")) c.permutations = j.at("permutations").get<std::size_t>();
    if (j.contains("features")) c.features = j.at("features").get<std::vector<std::string>>();
    if (j.contains("correction")) c.correction = j.at("correction").get<std::string>();
    if (j.contains("distance_threshold") && !j.at("distance_threshold").is_null()) {
      c.distance_threshold = j.at("distance_threshold").get<double>();
    }
    if (j.contains("delimiter")) {
      const auto d = j.at("delimiter").get<std::string>();
      if (d.size() != 1) throw UsageError("delimiter must be a single character");
      c.delimiter = d[0];
    }
    if (j.contains("column_kinds")) {
      c.column_kinds = j.at("column_kinds").get<std::map<std::string, std::string>>();
    }
    if (j.contains("emit_timing")) c.emit_timing = j.at("emit_timing").get<bool>();
    if (j.contains("params")) {
      c.params = j.at("params");
      if (!c.params.is_object()) throw UsageError("params must be an object");
    }
    if (j.contains("scenario")) c.scenario = j.at("scenario");
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("num_seeds")) c.num_seeds = j.at("num_seeds").get<std::size_t>();
    return c;
  }

  // Echo of the resolved configuration, embedded in every report.
  nlohmann::ordered_json echo() const {
    nlohmann::ordered_json j;
    j["mode"] = mode;
    j["method"] = method;
    j["alpha"] = alpha;
    if (!reference_path.empty()) j["reference"] = reference_path;
    if (!test_path.empty()) j["test"] = test_path;
    if (!input_path.empty()) j["input"] = input_path;
    j["seed"] = seed;
    if (!snapshot_path.empty()) j["snapshot"] = snapshot_path;
    if (!resume_path.empty()) j["resume"] = resume_path;
    if (permutations > 0) j["permutations"] = permutations;
    if (!features.empty()) j["features"] = features;
    j["correction"] = correction;
    if (distance_threshold) j["distance_threshold"] = *distance_threshold;
    j["delimiter"] = std::string(1, delimiter);
    if (!column_kinds.empty()) j["column_kinds"] = column_kinds;
    if (!params.empty()) j["params"] = nlohmann::ordered_json(params);
    if (!scenario.is_null()) j["scenario"] = nlohmann::ordered_json(scenario);
    return j;
  }

  data_drift::Correction correction_policy() const {
    return correction == "none" ? data_drift::Correction::kNone
                                : data_drift::Correction::kBonferroni;
  }
};

}  // namespace driftkit::cli
