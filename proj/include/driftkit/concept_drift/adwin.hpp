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
#include <deque>
#include <vector>

#include "driftkit/core/streaming_detector.hpp"

namespace driftkit::concept_drift {

// Split threshold for an adaptive window of width n with variance sigma_sq,
// sub-window sizes n0/n1 and confidence delta:
//   eps_cut = sqrt((2/m) sigma_sq ln(2/delta')) + (2/(3m)) ln(2/delta'),
// with 1/m = 1/n0 + 1/n1 and delta' = delta/n.
inline double adwin_cut_threshold(std::size_t n0, std::size_t n1, double sigma_sq, std::size_t n,
                                  double delta) {
  const double inv_m = 1.0 / static_cast<double>(n0) + 1.0 / static_cast<double>(n1);
  const double dd = std::log(2.0 * static_cast<double>(n) / delta);
  return std::sqrt(2.0 * inv_m * sigma_sq * dd) + (2.0 / 3.0) * inv_m * dd;
}

// Exponential histogram: rows of buckets, row r buckets summarize 2^r values,
// at most max_per_row buckets per row. Oldest data lives in the highest row.
class AdwinWindow {
 public:
  struct Bucket {
    double total = 0.0;
    double variance = 0.0;  // sum of squared deviations within the bucket
    std::size_t count = 0;
  };

  explicit AdwinWindow(std::size_t max_per_row = 5) : max_per_row_(max_per_row) {}

  void insert(double value) {
    if (rows_.empty()) rows_.emplace_back();
    rows_[0].push_back(Bucket{value, 0.0, 1});
    width_ += 1;
    total_ += value;
    std::size_t r = 0;
    while (rows_[r].size() > max_per_row_) {
      Bucket a = rows_[r].front();
      rows_[r].pop_front();
      Bucket b = rows_[r].front();
      rows_[r].pop_front();
      const auto nc = static_cast<double>(a.count + b.count);
      const double mean_a = a.total / static_cast<double>(a.count);
      const double mean_b = b.total / static_cast<double>(b.count);
      Bucket merged;
      merged.total = a.total + b.total;
      merged.count = a.count + b.count;
      merged.variance = a.variance + b.variance +
                        static_cast<double>(a.count) * static_cast<double>(b.count) / nc *
                            (mean_a - mean_b) * (mean_a - mean_b);
      if (r + 1 >= rows_.size()) rows_.emplace_back();
      rows_[r + 1].push_back(merged);
      ++r;
    }
  }

  // Buckets oldest first.
  std::vector<Bucket> buckets_oldest_first() const {
    std::vector<Bucket> out;
    out.reserve(16);
    for (std::size_t r = rows_.size(); r-- > 0;) {
      for (const Bucket& b : rows_[r]) out.push_back(b);
    }
    return out;
  }

  // Removes the k oldest buckets.
  void drop_oldest(std::size_t k) {
    for (std::size_t r = rows_.size(); r-- > 0 && k > 0;) {
      while (k > 0 && !rows_[r].empty()) {
        width_ -= rows_[r].front().count;
        total_ -= rows_[r].front().total;
        rows_[r].pop_front();
        --k;
      }
    }
    while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
  }

  std::size_t width() const { return width_; }
  double total() const { return total_; }
  double mean() const { return width_ == 0 ? 0.0 : total_ / static_cast<double>(width_); }

  // Population variance of the full window, rebuilt from bucket summaries.
  double variance() const {
    if (width_ < 2) return 0.0;
    const double mean_w = mean();
    double acc = 0.0;
    for (const auto& row : rows_) {
      for (const Bucket& b : row) {
        const double bm = b.total / static_cast<double>(b.count);
        acc += b.variance + static_cast<double>(b.count) * (bm - mean_w) * (bm - mean_w);
      }
    }
    return acc / static_cast<double>(width_);
  }

  std::size_t max_per_row() const { return max_per_row_; }
  const std::vector<std::deque<Bucket>>& rows() const { return rows_; }

  void clear() {
    rows_.clear();
    width_ = 0;
    total_ = 0.0;
  }

  nlohmann::json to_json() const {
    nlohmann::json jrows = nlohmann::json::array();
    for (const auto& row : rows_) {
      nlohmann::json jrow = nlohmann::json::array();
      for (const Bucket& b : row) {
        jrow.push_back({{"t", b.total}, {"v", b.variance}, {"c", b.count}});
      }
      jrows.push_back(std::move(jrow));
    }
    return jrows;
  }

  void from_json(const nlohmann::json& jrows) {
    clear();
    for (const auto& jrow : jrows) {
      rows_.emplace_back();
      for (const auto& jb : jrow) {
        Bucket b;
        b.total = jb.at("t").get<double>();
        b.variance = jb.at("v").get<double>();
        b.count = jb.at("c").get<std::size_t>();
        rows_.back().push_back(b);
        width_ += b.count;
        total_ += b.total;
      }
    }
  }

 private:
  std::size_t max_per_row_;
  std::vector<std::deque<Bucket>> rows_;  // rows_[r]: newest bucket at back
  std::size_t width_ = 0;
  double total_ = 0.0;
};

// Adaptive windowing: every check_interval insertions the bucket boundaries
// are scanned oldest-to-newest; when a split violates the cut threshold the
// whole older sub-window is dropped and the scan repeats on the remainder.
struct AdwinConfig {
  double delta = 0.002;
  std::size_t check_interval = 32;
  std::size_t max_buckets_per_row = 5;

  void validate() const {
    if (!(delta > 0.0) || delta >= 1.0) throw std::invalid_argument("adwin: delta must be in (0, 1)");
    if (check_interval < 1) throw std::invalid_argument("adwin: check_interval must be >= 1");
    if (max_buckets_per_row < 2) {
      throw std::invalid_argument("adwin: max_buckets_per_row must be >= 2");
    }
  }
};

class Adwin final : public StreamingDetector {
 public:
  explicit Adwin(AdwinConfig config = {}, CallbackSet callbacks = {})
      : StreamingDetector(std::move(callbacks)),
        config_(config),
        window_(config.max_buckets_per_row) {
    config_.validate();
  }

  std::string method_name() const override { return "adwin"; }

  std::map<std::string, double> summary() const override {
    return {{"width", static_cast<double>(window_.width())},
            {"mean", window_.mean()},
            {"variance", window_.variance()}};
  }

  const AdwinWindow& window() const { return window_; }
  const AdwinConfig& config() const { return config_; }

 protected:
  DetectionStatus do_update(double value) override {
    window_.insert(value);
    DetectionStatus status;
    if ((steps_ + 1) % config_.check_interval != 0) return status;

    bool reduced = true;
    while (reduced) {
      reduced = false;
      const auto buckets = window_.buckets_oldest_first();
      const std::size_t n = window_.width();
      if (n < 2 || buckets.size() < 2) break;
      const double total = window_.total();
      const double sigma_sq = window_.variance();
      std::size_t n0 = 0;
      double c0 = 0.0;
      for (std::size_t i = 0; i + 1 < buckets.size(); ++i) {
        n0 += buckets[i].count;
        c0 += buckets[i].total;
        const std::size_t n1 = n - n0;
        const double mu0 = c0 / static_cast<double>(n0);
        const double mu1 = (total - c0) / static_cast<double>(n1);
        if (std::abs(mu0 - mu1) >= adwin_cut_threshold(n0, n1, sigma_sq, n, config_.delta)) {
          window_.drop_oldest(i + 1);
          status.drift = true;
          reduced = true;
          break;
        }
      }
    }
    return status;
  }

  void do_reset() override { window_.clear(); }

  nlohmann::json config_json() const override {
    return {{"delta", config_.delta},
            {"check_interval", config_.check_interval},
            {"max_buckets_per_row", config_.max_buckets_per_row}};
  }

  nlohmann::json state_json() const override { return {{"rows", window_.to_json()}}; }

  void restore_state(const nlohmann::json& state) override { window_.from_json(state.at("rows")); }

 private:
  AdwinConfig config_;
  AdwinWindow window_;
};

}  // namespace driftkit::concept_drift
