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
#include <chrono>
#include <cmath>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "driftkit/core/callbacks.hpp"
#include "driftkit/core/errors.hpp"
#include "driftkit/data_drift/batch_detector.hpp"
#include "driftkit/data_drift/comparison_result.hpp"

namespace driftkit::data_drift {

// Dense row-major sample matrix: one row per observation.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  static Matrix from_column(std::span<const double> column) {
    Matrix m(column.size(), 1);
    std::copy(column.begin(), column.end(), m.data.begin());
    return m;
  }

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
};

// Maximum mean discrepancy with an RBF kernel k(x, y) = exp(-|x-y|^2 / (2 sigma^2)).
// The biased estimator (zero at identity) includes the diagonal terms:
//   MMD^2 = mean(K_xx) + mean(K_yy) - 2 mean(K_xy);
// the unbiased variant excludes diagonals from the within-sample means.
// sigma defaults to the median pairwise distance of the pooled sample at
// compare time; fix it in config for reproducibility across batches. No
// p-value is produced here; attach a permutation callback for one.
struct MmdConfig {
  std::optional<double> sigma;  // bandwidth; default: median heuristic
  bool unbiased = false;
  std::optional<double> drift_threshold;
  double alpha = 0.05;

  void validate() const {
    if (sigma && !(*sigma > 0.0)) throw std::invalid_argument("mmd: sigma must be positive");
  }
};

class MmdDetector {
 public:
  explicit MmdDetector(MmdConfig config = {}, CallbackSet callbacks = {})
      : config_(config), callbacks_(std::move(callbacks)) {
    config_.validate();
  }

  std::string method_name() const { return "mmd"; }

  void fit(Matrix reference) {
    if (reference.rows == 0 || reference.cols == 0) {
      throw std::invalid_argument("mmd: empty reference");
    }
    for (double v : reference.data) {
      if (!std::isfinite(v)) throw std::invalid_argument("mmd: non-finite reference");
    }
    callbacks_.fit_start(FitEvent{reference.rows, reference.cols});
    reference_ = std::move(reference);
    fitted_at_ = std::chrono::system_clock::now();
    callbacks_.fit_end(FitEvent{reference_.rows, reference_.cols});
  }

  void fit(std::span<const double> reference) { fit(Matrix::from_column(reference)); }

  ComparisonResult compare(const Matrix& test) {
    if (reference_.rows == 0) throw NotFittedError("mmd: compare before fit");
    if (test.rows == 0) throw std::invalid_argument("mmd: empty test batch");
    if (test.cols != reference_.cols) throw std::invalid_argument("mmd: feature count mismatch");
    for (double v : test.data) {
      if (!std::isfinite(v)) throw std::invalid_argument("mmd: non-finite test value");
    }

    // Pool rows once; the permutation statistic reuses the same bandwidth so
    // permuted statistics stay comparable to the observed one.
    auto pooled = std::make_shared<Matrix>(reference_.rows + test.rows, reference_.cols);
    pooled->data = reference_.data;
    pooled->data.insert(pooled->data.end(), test.data.begin(), test.data.end());

    const double sigma = config_.sigma.value_or(median_pairwise_distance(*pooled));
    const bool unbiased = config_.unbiased;

    CompareEvent ev;
    ev.n_ref = reference_.rows;
    ev.n_test = test.rows;
    ev.split_statistic = [pooled, sigma, unbiased](const std::vector<std::size_t>& a,
                                                   const std::vector<std::size_t>& b) {
      return mmd_squared(*pooled, a, b, sigma, unbiased);
    };
    callbacks_.compare_start(ev);

    std::vector<std::size_t> idx_ref(reference_.rows), idx_test(test.rows);
    for (std::size_t i = 0; i < reference_.rows; ++i) idx_ref[i] = i;
    for (std::size_t i = 0; i < test.rows; ++i) idx_test[i] = reference_.rows + i;
    ComparisonResult result;
    result.method = method_name();
    result.statistic = mmd_squared(*pooled, idx_ref, idx_test, sigma, unbiased);
    result.extras["sigma"] = sigma;
    result.extras["unbiased"] = unbiased ? 1.0 : 0.0;

    ev.result = &result;
    callbacks_.compare_end(ev);
    if (config_.drift_threshold.has_value()) {
      result.drift = result.statistic > *config_.drift_threshold;
    } else if (result.p_value.has_value()) {
      result.drift = *result.p_value < config_.alpha;
    }
    if (result.drift) callbacks_.drift_detected(DriftEvent{});
    return result;
  }

  ComparisonResult compare(std::span<const double> test) {
    return compare(Matrix::from_column(test));
  }

  void reset() {
    reference_ = Matrix{};
    callbacks_.detector_reset();
  }

  bool fitted() const { return reference_.rows > 0; }
  const Matrix& reference() const { return reference_; }
  const MmdConfig& config() const { return config_; }
  CallbackSet& callbacks() { return callbacks_; }

  static double squared_distance(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
    return d;
  }

  // Median pairwise Euclidean distance over all row pairs; falls back to the
  // smallest positive distance (or 1) when the median degenerates to zero.
  static double median_pairwise_distance(const Matrix& pooled) {
    std::vector<double> dists;
    dists.reserve(pooled.rows * (pooled.rows - 1) / 2);
    for (std::size_t i = 0; i < pooled.rows; ++i) {
      for (std::size_t j = i + 1; j < pooled.rows; ++j) {
        dists.push_back(std::sqrt(squared_distance(pooled.row(i), pooled.row(j))));
      }
    }
    if (dists.empty()) return 1.0;
    std::sort(dists.begin(), dists.end());
    double median = dists[dists.size() / 2];
    if (median <= 0.0) {
      const auto it = std::find_if(dists.begin(), dists.end(), [](double d) { return d > 0.0; });
      median = it != dists.end() ? *it : 1.0;
    }
    return median;
  }

  static double mmd_squared(const Matrix& pooled, const std::vector<std::size_t>& a,
                            const std::vector<std::size_t>& b, double sigma, bool unbiased) {
    const double gamma = 1.0 / (2.0 * sigma * sigma);
    const auto kernel_mean = [&](const std::vector<std::size_t>& s,
                                 const std::vector<std::size_t>& t, bool exclude_diag) {
      double sum = 0.0;
      for (std::size_t i : s) {
        for (std::size_t j : t) {
          if (exclude_diag && i == j) continue;
          sum += std::exp(-gamma * squared_distance(pooled.row(i), pooled.row(j)));
        }
      }
      const double count = exclude_diag
                               ? static_cast<double>(s.size()) * (static_cast<double>(t.size()) - 1.0)
                               : static_cast<double>(s.size()) * static_cast<double>(t.size());
      return count > 0.0 ? sum / count : 0.0;
    };
    const double kxx = kernel_mean(a, a, unbiased);
    const double kyy = kernel_mean(b, b, unbiased);
    const double kxy = kernel_mean(a, b, false);
    return kxx + kyy - 2.0 * kxy;
  }

 private:
  MmdConfig config_;
  CallbackSet callbacks_;
  Matrix reference_;
  std::chrono::system_clock::time_point fitted_at_{};
};

// Single-feature adapter so MMD slots into the per-feature batch pipeline.
class MmdUnivariate final : public NumericDistanceDetector {
 public:
  explicit MmdUnivariate(MmdConfig config = {}, CallbackSet callbacks = {})
      : NumericDistanceDetector(config.drift_threshold, config.alpha, std::move(callbacks)),
        config_(config) {
    config_.validate();
  }

  std::string method_name() const override { return "mmd"; }

 protected:
  ComparisonResult compute(std::span<const double> ref,
                           std::span<const double> test) const override {
    Matrix pooled(ref.size() + test.size(), 1);
    std::copy(ref.begin(), ref.end(), pooled.data.begin());
    std::copy(test.begin(), test.end(),
              pooled.data.begin() + static_cast<std::ptrdiff_t>(ref.size()));
    const double sigma = config_.sigma.value_or(MmdDetector::median_pairwise_distance(pooled));
    std::vector<std::size_t> a(ref.size()), b(test.size());
    for (std::size_t i = 0; i < ref.size(); ++i) a[i] = i;
    for (std::size_t i = 0; i < test.size(); ++i) b[i] = ref.size() + i;
    ComparisonResult result;
    result.statistic = MmdDetector::mmd_squared(pooled, a, b, sigma, config_.unbiased);
    result.extras["sigma"] = sigma;
    result.extras["unbiased"] = config_.unbiased ? 1.0 : 0.0;
    return result;
  }

 private:
  MmdConfig config_;
};

}  // namespace driftkit::data_drift
