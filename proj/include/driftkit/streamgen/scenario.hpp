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
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "driftkit/numerics/rng.hpp"

namespace driftkit::streamgen {

// A stream whose generating distribution changes at changepoint t0: samples
// with index < t0 come from the pre-change distribution, samples at index >=
// t0 + transition_width from the post-change one. Inside the transition the
// probability of drawing from the new distribution follows a sigmoid in
// position (width 0 = abrupt step). The same (scenario, seed) pair always
// yields the same stream: every element derives from its own counter-based
// substream, so evaluation parallelizes and adding seeds never perturbs
// existing streams.
struct DriftScenario {
  enum class Kind { kBernoulli, kGaussian };

  Kind kind = Kind::kBernoulli;
  // Bernoulli parameters
  double p0 = 0.1;
  double p1 = 0.5;
  // Gaussian parameters
  double mu0 = 0.0;
  double sigma0 = 1.0;
  double mu1 = 1.0;
  double sigma1 = 1.0;

  std::size_t changepoint = 0;       // t0
  std::size_t transition_width = 0;  // 0 = abrupt
  std::size_t length = 0;

  void validate() const {
    if (length == 0) throw std::invalid_argument("scenario: length must be positive");
    if (changepoint >= length) throw std::invalid_argument("scenario: changepoint must be < length");
    if (kind == Kind::kBernoulli) {
      if (p0 < 0.0 || p0 > 1.0 || p1 < 0.0 || p1 > 1.0) {
        throw std::invalid_argument("scenario: probabilities must lie in [0, 1]");
      }
    } else {
      if (!(sigma0 > 0.0) || !(sigma1 > 0.0)) {
        throw std::invalid_argument("scenario: sigmas must be positive");
      }
    }
  }

  nlohmann::json to_json() const {
    nlohmann::json j{{"kind", kind == Kind::kBernoulli ? "bernoulli" : "gaussian"},
                     {"changepoint", changepoint},
                     {"transition_width", transition_width},
                     {"length", length}};
    if (kind == Kind::kBernoulli) {
      j["p0"] = p0;
      j["p1"] = p1;
    } else {
      j["mu0"] = mu0;
      j["sigma0"] = sigma0;
      j["mu1"] = mu1;
      j["sigma1"] = sigma1;
    }
    return j;
  }

  static DriftScenario from_json(const nlohmann::json& j) {
    DriftScenario s;
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "bernoulli") {
      s.kind = Kind::kBernoulli;
      s.p0 = j.at("p0").get<double>();
      s.p1 = j.at("p1").get<double>();
    } else if (kind == "gaussian") {
      s.kind = Kind::kGaussian;
      s.mu0 = j.at("mu0").get<double>();
      s.sigma0 = j.at("sigma0").get<double>();
      s.mu1 = j.at("mu1").get<double>();
      s.sigma1 = j.at("sigma1").get<double>();
    } else {
      throw std::invalid_argument("scenario: unknown kind '" + kind + "'");
    }
    s.changepoint = j.at("changepoint").get<std::size_t>();
    s.transition_width = j.at("transition_width").get<std::size_t>();
    s.length = j.at("length").get<std::size_t>();
    s.validate();
    return s;
  }
};

namespace detail {

inline double unit_draw(std::uint64_t seed, std::uint64_t element, std::uint64_t lane) {
  numerics::CounterRng rng(numerics::substream_seed(seed, element * 4 + lane));
  return rng.next_unit();
}

inline double gaussian_draw(std::uint64_t seed, std::uint64_t element, std::uint64_t lane,
                            double mu, double sigma) {
  const double u1 = 1.0 - unit_draw(seed, element, lane);      // (0, 1]
  const double u2 = unit_draw(seed, element, lane + 1);
  const double z = std::sqrt(-2.0 * std::log(u1)) *
                   std::cos(2.0 * 3.14159265358979323846 * u2);
  return mu + sigma * z;
}

}  // namespace detail

// Probability that element i draws from the post-change distribution.
inline double mixture_weight(const DriftScenario& s, std::size_t i) {
  if (i < s.changepoint) return 0.0;
  if (s.transition_width == 0 || i >= s.changepoint + s.transition_width) return 1.0;
  const double pos = 4.0 * (static_cast<double>(i) - static_cast<double>(s.changepoint)) /
                     static_cast<double>(s.transition_width);
  return 1.0 / (1.0 + std::exp(-pos));
}

inline std::vector<double> generate(const DriftScenario& s, std::uint64_t seed) {
  s.validate();
  std::vector<double> stream(s.length);
  for (std::size_t i = 0; i < s.length; ++i) {
    const double w = mixture_weight(s, i);
    bool use_new;
    if (w <= 0.0) {
      use_new = false;
    } else if (w >= 1.0) {
      use_new = true;
    } else {
      use_new = detail::unit_draw(seed, i, 0) < w;
    }
    if (s.kind == DriftScenario::Kind::kBernoulli) {
      const double p = use_new ? s.p1 : s.p0;
      stream[i] = detail::unit_draw(seed, i, 1) < p ? 1.0 : 0.0;
    } else {
      stream[i] = use_new ? detail::gaussian_draw(seed, i, 1, s.mu1, s.sigma1)
                          : detail::gaussian_draw(seed, i, 1, s.mu0, s.sigma0);
    }
  }
  return stream;
}

inline std::vector<double> bernoulli_error_stream(double p0, double p1, std::size_t t0,
                                                  std::size_t transition_width, std::size_t n,
                                                  std::uint64_t seed) {
  DriftScenario s;
  s.kind = DriftScenario::Kind::kBernoulli;
  s.p0 = p0;
  s.p1 = p1;
  s.changepoint = t0;
  s.transition_width = transition_width;
  s.length = n;
  return generate(s, seed);
}

inline std::vector<double> gaussian_stream(double mu0, double sigma0, double mu1, double sigma1,
                                           std::size_t t0, std::size_t transition_width,
                                           std::size_t n, std::uint64_t seed) {
  DriftScenario s;
  s.kind = DriftScenario::Kind::kGaussian;
  s.mu0 = mu0;
  s.sigma0 = sigma0;
  s.mu1 = mu1;
  s.sigma1 = sigma1;
  s.changepoint = t0;
  s.transition_width = transition_width;
  s.length = n;
  return generate(s, seed);
}

}  // namespace driftkit::streamgen
