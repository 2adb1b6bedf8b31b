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
#include <limits>

#include <json.hpp>

namespace driftkit::concept_drift {

// Welford running mean/variance with min/max trackers.
class StreamStats {
 public:
  void update(double x) {
    ++n_;
    const double d1 = x - mean_;
    mean_ += d1 / static_cast<double>(n_);
    const double d2 = x - mean_;
    m2_ += d1 * d2;
    if (x < min_) min_ = x;
    if (x > max_) max_ = x;
  }

  std::size_t count() const { return n_; }
  double mean() const { return mean_; }

  double variance_population() const {
    if (n_ == 0) return 0.0;
    return m2_ / static_cast<double>(n_);
  }

  double variance_sample() const {
    if (n_ < 2) return 0.0;
    return m2_ / static_cast<double>(n_ - 1);
  }

  double std_population() const { return std::sqrt(std::max(0.0, variance_population())); }
  double std_sample() const { return std::sqrt(std::max(0.0, variance_sample())); }
  double min() const { return min_; }
  double max() const { return max_; }

  void reset() { *this = StreamStats{}; }

  nlohmann::json to_json() const {
    return {{"n", n_}, {"mean", mean_}, {"m2", m2_}, {"min", min_}, {"max", max_}};
  }

  static StreamStats from_json(const nlohmann::json& j) {
    StreamStats s;
    s.n_ = j.at("n").get<std::size_t>();
    s.mean_ = j.at("mean").get<double>();
    s.m2_ = j.at("m2").get<double>();
    s.min_ = j.at("min").get<double>();
    s.max_ = j.at("max").get<double>();
    return s;
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double min_ = std::numeric_limits<double>::max();
  double max_ = std::numeric_limits<double>::lowest();
};

}  // namespace driftkit::concept_drift
