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
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace driftkit::data_drift {

enum class DistanceMethod {
  kHellinger,
  kBhattacharyya,
  kKl,
  kJs,
  kPsi,
  kHistogramIntersection,
};

inline std::string distance_method_name(DistanceMethod m) {
  switch (m) {
    case DistanceMethod::kHellinger: return "hellinger";
    case DistanceMethod::kBhattacharyya: return "bhattacharyya";
    case DistanceMethod::kKl: return "kl";
    case DistanceMethod::kJs: return "js";
    case DistanceMethod::kPsi: return "psi";
    case DistanceMethod::kHistogramIntersection: return "histogram_intersection";
  }
  throw std::invalid_argument("unknown distance method");
}

inline DistanceMethod distance_method_from_name(const std::string& name) {
  if (name == "hellinger") return DistanceMethod::kHellinger;
  if (name == "bhattacharyya") return DistanceMethod::kBhattacharyya;
  if (name == "kl") return DistanceMethod::kKl;
  if (name == "js") return DistanceMethod::kJs;
  if (name == "psi") return DistanceMethod::kPsi;
  if (name == "histogram_intersection") return DistanceMethod::kHistogramIntersection;
  throw std::invalid_argument("unknown distance method: " + name);
}

namespace kernels {

inline double bhattacharyya_coefficient(std::span<const double> p, std::span<const double> q) {
  double bc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) bc += std::sqrt(p[i] * q[i]);
  return bc;
}

inline double hellinger(std::span<const double> p, std::span<const double> q) {
  return std::sqrt(std::max(0.0, 1.0 - bhattacharyya_coefficient(p, q)));
}

inline double bhattacharyya(std::span<const double> p, std::span<const double> q) {
  const double bc = bhattacharyya_coefficient(p, q);
  return bc <= 0.0 ? std::numeric_limits<double>::infinity() : -std::log(bc);
}

// KL(p || q); inputs are assumed smoothed (strictly positive q).
inline double kl_divergence(std::span<const double> p, std::span<const double> q) {
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) kl += p[i] * std::log(p[i] / q[i]);
  }
  return kl;
}

// Jensen-Shannon divergence (natural log, bounded by ln 2).
inline double js_divergence(std::span<const double> p, std::span<const double> q) {
  double js = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    if (p[i] > 0.0) js += 0.5 * p[i] * std::log(p[i] / m);
    if (q[i] > 0.0) js += 0.5 * q[i] * std::log(q[i] / m);
  }
  return std::max(0.0, js);
}

// Population stability index, test q against reference p.
inline double psi(std::span<const double> p, std::span<const double> q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += (q[i] - p[i]) * std::log(q[i] / p[i]);
  return s;
}

inline double histogram_intersection_distance(std::span<const double> p,
                                              std::span<const double> q) {
  double overlap = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) overlap += std::min(p[i], q[i]);
  return 1.0 - overlap;
}

}  // namespace kernels

// Dispatch over smoothed probability vectors sharing the same bins.
inline double histogram_distance(DistanceMethod method, std::span<const double> p,
                                 std::span<const double> q) {
  if (p.size() != q.size() || p.empty()) {
    throw std::invalid_argument("histogram_distance: mismatched probability vectors");
  }
  switch (method) {
    case DistanceMethod::kHellinger: return kernels::hellinger(p, q);
    case DistanceMethod::kBhattacharyya: return kernels::bhattacharyya(p, q);
    case DistanceMethod::kKl: return kernels::kl_divergence(p, q);
    case DistanceMethod::kJs: return kernels::js_divergence(p, q);
    case DistanceMethod::kPsi: return kernels::psi(p, q);
    case DistanceMethod::kHistogramIntersection:
      return kernels::histogram_intersection_distance(p, q);
  }
  throw std::invalid_argument("unknown distance method");
}

}  // namespace driftkit::data_drift
