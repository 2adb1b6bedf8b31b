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

#include <catch2/catch_amalgamated.hpp>

#include "driftkit/concept_drift/cusum.hpp"
#include "driftkit/concept_drift/ecdd.hpp"
#include "driftkit/concept_drift/geometric_moving_average.hpp"
#include "driftkit/concept_drift/page_hinkley.hpp"
#include "driftkit/concept_drift/stream_stats.hpp"
#include "driftkit/streamgen/scenario.hpp"
#include "oracles/oracles.hpp"

using namespace driftkit;
using namespace driftkit::concept_drift;

TEST_CASE("stream stats match two-pass mean/variance on 1e4 normal draws") {
  const auto values = streamgen::gaussian_stream(0.7, 1.3, 0.7, 1.3, 0, 0, 10000, 21);
  StreamStats stats;
  for (double v : values) stats.update(v);
  const auto oracle = oracles::two_pass_stats(values);
  CHECK(stats.mean() == Catch::Approx(oracle.mean).epsilon(1e-9));
  CHECK(stats.variance_population() ==
        Catch::Approx(oracle.variance_population).epsilon(1e-9));
  CHECK(stats.variance_population() >= 0.0);
}

TEST_CASE("cusum: constant stream never drifts") {
  Cusum cusum;
  for (int i = 0; i < 5000; ++i) {
    REQUIRE_FALSE(cusum.update(2.5).drift);
  }
}

TEST_CASE("cusum hand recurrence with pinned standardization") {
  CusumConfig config;
  config.min_num_instances = 1;
  config.drift_allowance = 0.0;
  config.threshold = 5.0;
  config.fixed_mean = 0.0;
  config.fixed_std = 1.0;
  Cusum cusum(config);
  // g+ grows by exactly 1 per unit input; strict > means the sixth sample
  // is the first to clear the threshold.
  for (int i = 1; i <= 5; ++i) {
    REQUIRE_FALSE(cusum.update(1.0).drift);
  }
  CHECK(cusum.update(1.0).drift);
}

TEST_CASE("cusum is two-sided: a sign-flipped stream fires at the same step") {
  CusumConfig config;
  config.min_num_instances = 1;
  config.drift_allowance = 0.0;
  config.threshold = 5.0;
  config.fixed_mean = 0.0;
  config.fixed_std = 1.0;
  Cusum pos(config), neg(config);
  std::optional<int> pos_step, neg_step;
  for (int i = 0; i < 20; ++i) {
    if (pos.update(1.0).drift && !pos_step) pos_step = i;
    if (neg.update(-1.0).drift && !neg_step) neg_step = i;
  }
  REQUIRE(pos_step.has_value());
  CHECK(pos_step == neg_step);
}

TEST_CASE("page-hinkley: constant stream never drifts") {
  PageHinkley ph;
  for (int i = 0; i < 5000; ++i) {
    REQUIRE_FALSE(ph.update(1.25).drift);
  }
}

TEST_CASE("page-hinkley detects a unit mean step about six samples in") {
  PageHinkleyConfig config;
  config.delta = 0.1;
  config.threshold = 5.0;
  PageHinkley ph(config);
  for (int i = 0; i < 10000; ++i) {
    REQUIRE_FALSE(ph.update(0.0).drift);
  }
  int step = 0;
  for (int i = 1; i <= 20; ++i) {
    if (ph.update(1.0).drift) {
      step = i;
      break;
    }
  }
  // m rises by roughly 0.9 per post-change sample against lambda = 5.
  CHECK(step == 6);
}

TEST_CASE("page-hinkley two-sided variant catches decreases") {
  PageHinkleyConfig config;
  config.delta = 0.1;
  config.threshold = 5.0;
  config.two_sided = true;
  PageHinkley ph(config);
  for (int i = 0; i < 10000; ++i) ph.update(0.0);
  bool drifted = false;
  for (int i = 0; i < 20 && !drifted; ++i) drifted = ph.update(-1.0).drift;
  CHECK(drifted);
}

TEST_CASE("gma: smoothing of one tracks the raw value") {
  GmaConfig config;
  config.min_num_instances = 2;
  config.smoothing = 1.0;
  GeometricMovingAverage gma(config);
  gma.update(0.0);
  gma.update(0.0);
  gma.update(3.5);
  CHECK(gma.ewma() == Catch::Approx(3.5));
  gma.update(-1.25);
  CHECK(gma.ewma() == Catch::Approx(-1.25));
}

TEST_CASE("gma: constant stream never drifts") {
  GeometricMovingAverage gma;
  for (int i = 0; i < 2000; ++i) {
    REQUIRE_FALSE(gma.update(4.0).drift);
  }
}

TEST_CASE("gma detects a three-sigma mean shift within ten samples") {
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto stream = streamgen::gaussian_stream(0.0, 1.0, 3.0, 1.0, 100, 0, 130, seed);
    GeometricMovingAverage gma;
    bool detected = false;
    for (std::size_t i = 0; i < stream.size(); ++i) {
      const bool drift = gma.update(stream[i]).drift;
      if (drift && i >= 100 && i < 110) {
        detected = true;
        break;
      }
    }
    hits += detected;
  }
  CHECK(hits >= 95);
}

TEST_CASE("ecdd: all-zero error stream never signals") {
  Ecdd ecdd;
  for (int i = 0; i < 100000; ++i) {
    const auto st = ecdd.update(0.0);
    REQUIRE_FALSE(st.drift);
    REQUIRE_FALSE(st.warning);
  }
}

TEST_CASE("ecdd rejects unsupported ARL0 targets") {
  EcddConfig config;
  config.arl0 = 500;
  CHECK_THROWS_AS(Ecdd(config), std::invalid_argument);
}

TEST_CASE("ecdd control limits are positive and loosen toward small error rates") {
  for (int arl0 : {100, 400, 1000}) {
    for (double p = 0.01; p <= 0.5; p += 0.01) {
      REQUIRE(Ecdd::control_limit(arl0, p) > 0.0);
    }
    // The fitted polynomials may wiggle locally; the broad trend holds.
    CHECK(Ecdd::control_limit(arl0, 0.02) > Ecdd::control_limit(arl0, 0.2));
    CHECK(Ecdd::control_limit(arl0, 0.1) > Ecdd::control_limit(arl0, 0.4));
  }
  // Tighter ARL0 targets need higher limits at matched error rates.
  CHECK(Ecdd::control_limit(1000, 0.2) > Ecdd::control_limit(400, 0.2));
  CHECK(Ecdd::control_limit(400, 0.2) > Ecdd::control_limit(100, 0.2));
}

TEST_CASE("ecdd detects an error-rate step quickly") {
  int detected_fast = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto stream = streamgen::bernoulli_error_stream(0.1, 0.4, 300, 0, 500, seed);
    Ecdd ecdd;
    std::optional<std::size_t> first;
    for (std::size_t i = 0; i < stream.size(); ++i) {
      if (ecdd.update(stream[i]).drift && i >= 300 && !first) first = i;
    }
    if (first && *first - 300 < 100) ++detected_fast;
  }
  CHECK(detected_fast >= 95);
}
