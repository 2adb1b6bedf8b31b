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

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "driftkit/data_drift/batch_detector.hpp"
#include "driftkit/data_drift/categorical.hpp"
#include "driftkit/data_drift/mmd.hpp"

namespace driftkit::data_drift {

// One column of a typed data frame. Numeric columns carry numbers, the rest
// carry category labels.
struct FeatureColumn {
  std::string name;
  bool categorical = false;
  std::vector<double> numbers;
  std::vector<std::string> labels;

  std::size_t size() const { return categorical ? labels.size() : numbers.size(); }
};

using Frame = std::vector<FeatureColumn>;

inline Frame frame_from_matrix(const Matrix& m, std::vector<std::string> names = {}) {
  Frame frame;
  frame.reserve(m.cols);
  for (std::size_t c = 0; c < m.cols; ++c) {
    FeatureColumn col;
    col.name = c < names.size() ? names[c] : "f" + std::to_string(c);
    col.numbers.reserve(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r) col.numbers.push_back(m.at(r, c));
    frame.push_back(std::move(col));
  }
  return frame;
}

enum class Correction { kNone, kBonferroni };

// Runs a univariate method independently on every feature (marginals). The
// overall drift flag is raised when any feature's p-value clears the
// (optionally Bonferroni-corrected) significance level. With a single
// feature this is identical to the plain univariate call.
class MarginalDrift {
 public:
  using NumericFactory = std::function<std::unique_ptr<NumericBatchDetector>()>;
  using CategoricalFactory = std::function<std::unique_ptr<CategoricalBatchDetector>()>;

  MarginalDrift(NumericFactory numeric_factory, CategoricalFactory categorical_factory,
                double alpha = 0.05, Correction correction = Correction::kBonferroni)
      : numeric_factory_(std::move(numeric_factory)),
        categorical_factory_(std::move(categorical_factory)),
        alpha_(alpha),
        correction_(correction) {
    if (!(alpha_ > 0.0) || alpha_ >= 1.0) {
      throw std::invalid_argument("marginals: alpha must be in (0, 1)");
    }
  }

  void fit(const Frame& reference) {
    if (reference.empty()) throw std::invalid_argument("marginals: empty reference frame");
    numeric_.clear();
    categorical_.clear();
    columns_.clear();
    for (const FeatureColumn& col : reference) {
      if (col.size() == 0) throw std::invalid_argument("marginals: empty reference column");
      if (col.categorical) {
        if (!categorical_factory_) {
          throw std::invalid_argument("marginals: method does not support categorical feature '" +
                                      col.name + "'");
        }
        auto det = categorical_factory_();
        det->fit(col.labels);
        categorical_.push_back(std::move(det));
        numeric_.push_back(nullptr);
      } else {
        auto det = numeric_factory_();
        det->fit(col.numbers);
        numeric_.push_back(std::move(det));
        categorical_.push_back(nullptr);
      }
      columns_.push_back({col.name, col.categorical});
    }
  }

  ComparisonResult compare(const Frame& test) {
    if (columns_.empty()) throw NotFittedError("marginals: compare before fit");
    if (test.size() != columns_.size()) {
      throw std::invalid_argument("marginals: feature count mismatch");
    }
    const double corrected_alpha = correction_ == Correction::kBonferroni
                                       ? alpha_ / static_cast<double>(columns_.size())
                                       : alpha_;
    ComparisonResult overall;
    overall.method = "marginals";
    overall.extras["n_features"] = static_cast<double>(columns_.size());
    overall.extras["corrected_alpha"] = corrected_alpha;
    double max_stat = 0.0;
    std::optional<double> min_p;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      if (test[i].categorical != columns_[i].second) {
        throw std::invalid_argument("marginals: feature kind mismatch at '" + columns_[i].first +
                                    "'");
      }
      ComparisonResult r = columns_[i].second ? categorical_[i]->compare(test[i].labels)
                                              : numeric_[i]->compare(test[i].numbers);
      FeatureResult fr;
      fr.feature = columns_[i].first;
      fr.statistic = r.statistic;
      fr.p_value = r.p_value;
      // Features with a p-value use the corrected level; threshold-decided
      // distances keep their own verdict.
      fr.drift = r.p_value.has_value() ? (*r.p_value < corrected_alpha) : r.drift;
      if (fr.drift) overall.drift = true;
      if (i == 0 || r.statistic > max_stat) max_stat = r.statistic;
      if (r.p_value && (!min_p || *r.p_value < *min_p)) min_p = *r.p_value;
      overall.per_feature.push_back(std::move(fr));
    }
    overall.statistic = max_stat;
    if (min_p) {
      // Bonferroni-adjusted overall p-value.
      const double scale = correction_ == Correction::kBonferroni
                               ? static_cast<double>(columns_.size())
                               : 1.0;
      overall.p_value = std::min(1.0, *min_p * scale);
    }
    return overall;
  }

  double alpha() const { return alpha_; }
  Correction correction() const { return correction_; }

 private:
  NumericFactory numeric_factory_;
  CategoricalFactory categorical_factory_;
  double alpha_;
  Correction correction_;
  std::vector<std::unique_ptr<NumericBatchDetector>> numeric_;
  std::vector<std::unique_ptr<CategoricalBatchDetector>> categorical_;
  std::vector<std::pair<std::string, bool>> columns_;
};

}  // namespace driftkit::data_drift
