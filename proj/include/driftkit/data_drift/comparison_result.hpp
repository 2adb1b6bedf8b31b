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
#include <string>
#include <vector>

namespace driftkit::data_drift {

struct FeatureResult {
  std::string feature;
  double statistic = 0.0;
  std::optional<double> p_value;
  bool drift = false;
};

// Result of one batch comparison or one streaming data-drift update.
// Statistical tests always carry a p-value; distance methods carry one only
// when a permutation callback ran (or stay without one). The extras map holds
// method diagnostics (smoothing epsilon, clip counts, permutation p, flags).
struct ComparisonResult {
  std::string method;
  double statistic = 0.0;
  std::optional<double> p_value;
  bool drift = false;
  std::vector<FeatureResult> per_feature;
  std::map<std::string, double> extras;
};

}  // namespace driftkit::data_drift
