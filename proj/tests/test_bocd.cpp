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

#include <numeric>

#include "driftkit/concept_drift/bocd.hpp"
#include "driftkit/streamgen/scenario.hpp"

using namespace driftkit;
using namespace driftkit::concept_drift;

TEST_CASE("bocd first update splits mass exactly (hazard, 1 - hazard)") {
  BocdConfig config;
  config.hazard = 1.0 / 250.0;
  Bocd bocd(config);
  bocd.update(0.37);
  const auto& probs = bocd.posterior();
  const auto& rls = bocd.run_lengths();
  REQUIRE(probs.size() == 2);
  CHECK(rls[0] == 0);
  CHECK(rls[1] == 1);
  // A single predictive factor cancels in the normalization.
  CHECK(probs[0] == Catch::Approx(config.hazard).margin(1e-15));
  CHECK(probs[1] == Catch::Approx(1.0 - config.hazard).margin(1e-15));
}

TEST_CASE("bocd posterior stays normalized over 1e4 random updates") {
  Bocd bocd;
  const auto stream = streamgen::gaussian_stream(0, 1, 0, 1, 0, 0, 10000, 4);
  for (double v : stream) {
    bocd.update(v);
    const auto& probs = bocd.posterior();
    const double mass = std::accumulate(probs.begin(), probs.end(), 0.0);
    REQUIRE(mass == Catch::Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("bocd prunes run lengths whose mass collapses") {
  Bocd bocd;
  const auto stream = streamgen::gaussian_stream(0, 1, 50, 1, 300, 0, 400, 9);
  for (double v : stream) bocd.update(v);
  // The 300 pre-change hypotheses fit the shifted data terribly and fall
  // under the prune threshold; without pruning there would be 401 entries.
  CHECK(bocd.posterior().size() < 250);
  const auto& probs = bocd.posterior();
  const double mass = std::accumulate(probs.begin(), probs.end(), 0.0);
  CHECK(mass == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("bocd MAP run length collapses within 20 samples of a five-sigma shift") {
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto stream = streamgen::gaussian_stream(0, 1, 5, 1, 300, 0, 340, seed);
    Bocd bocd;
    bool collapsed = false;
    for (std::size_t i = 0; i < stream.size(); ++i) {
      if (bocd.update(stream[i]).drift && i >= 300 && i < 320) {
        collapsed = true;
        break;
      }
    }
    hits += collapsed;
  }
  CHECK(hits >= 95);
}

TEST_CASE("bocd grows its MAP run length on stationary data") {
  Bocd bocd;
  const auto stream = streamgen::gaussian_stream(2, 0.5, 2, 0.5, 0, 0, 400, 11);
  for (double v : stream) bocd.update(v);
  CHECK(bocd.map_run_length() > 200);
}

TEST_CASE("bocd config validation") {
  BocdConfig bad;
  bad.hazard = 1.5;
  CHECK_THROWS_AS(Bocd(bad), std::invalid_argument);
  BocdConfig bad2;
  bad2.collapse_fraction = 1.0;
  CHECK_THROWS_AS(Bocd(bad2), std::invalid_argument);
}
