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
#include <optional>
#include <stdexcept>

namespace driftkit {

// Fading-factor prequential error: S_i = loss_i + alpha * S_{i-1},
// B_i = 1 + alpha * B_{i-1}, estimate S_i / B_i. With alpha = 1 the estimate
// equals the running mean of all losses seen.
class PrequentialError {
 public:
  explicit PrequentialError(double alpha = 1.0) : alpha_(alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) {
      throw std::invalid_argument("PrequentialError: alpha must be in (0, 1]");
    }
  }

  double update(double loss) {
    if (!std::isfinite(loss)) throw std::invalid_argument("PrequentialError: non-finite loss");
    if (loss < 0.0) throw std::invalid_argument("PrequentialError: negative loss");
    s_ = loss + alpha_ * s_;
    b_ = 1.0 + alpha_ * b_;
    ++n_;
    return s_ / b_;
  }

  std::optional<double> estimate() const {
    if (n_ == 0) return std::nullopt;
    return s_ / b_;
  }

  std::size_t count() const { return n_; }
  double alpha() const { return alpha_; }

  void reset() {
    s_ = 0.0;
    b_ = 0.0;
    n_ = 0;
  }

 private:
  double alpha_;
  double s_ = 0.0;
  double b_ = 0.0;
  std::size_t n_ = 0;
};

// Sliding-window variant: plain mean over the most recent window_size losses.
class WindowedPrequentialError {
 public:
  explicit WindowedPrequentialError(std::size_t window_size) : window_size_(window_size) {
    if (window_size_ == 0) {
      throw std::invalid_argument("WindowedPrequentialError: window_size must be positive");
    }
  }

  double update(double loss) {
    if (!std::isfinite(loss)) {
      throw std::invalid_argument("WindowedPrequentialError: non-finite loss");
    }
    if (loss < 0.0) throw std::invalid_argument("WindowedPrequentialError: negative loss");
    window_.push_back(loss);
    sum_ += loss;
    if (window_.size() > window_size_) {
      sum_ -= window_.front();
      window_.pop_front();
    }
    return sum_ / static_cast<double>(window_.size());
  }

  std::optional<double> estimate() const {
    if (window_.empty()) return std::nullopt;
    return sum_ / static_cast<double>(window_.size());
  }

  std::size_t count() const { return window_.size(); }

  void reset() {
    window_.clear();
    sum_ = 0.0;
  }

 private:
  std::size_t window_size_;
  std::deque<double> window_;
  double sum_ = 0.0;
};

}  // namespace driftkit
