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

#include <deque>

#include "driftkit/data_drift/detail/order_stat_tree.hpp"
#include "driftkit/data_drift/incremental_ks.hpp"
#include "driftkit/data_drift/statistical_tests.hpp"
#include "driftkit/streamgen/scenario.hpp"

using namespace driftkit;
using namespace driftkit::data_drift;

TEST_CASE("order-statistic tree: insert, erase, rank under churn") {
  detail::OrderStatTree tree;
  std::vector<double> mirror;
  numerics::CounterRng rng(71);
  for (int step = 0; step < 4000; ++step) {
    const bool insert = mirror.empty() || rng.next_unit() < 0.6;
    if (insert) {
      const double v = std::floor(rng.next_unit() * 40.0) / 4.0;  // ties likely
      tree.insert(v);
      mirror.push_back(v);
    } else {
      const std::size_t idx = rng.bounded(mirror.size());
      REQUIRE(tree.erase_one(mirror[idx]));
      mirror.erase(mirror.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    REQUIRE(tree.size() == mirror.size());
    if (step % 50 == 0 && !mirror.empty()) {
      const double q = std::floor(rng.next_unit() * 44.0) / 4.0 - 0.5;
      std::size_t le = 0, lt = 0;
      for (double v : mirror) {
        if (v <= q) ++le;
        if (v < q) ++lt;
      }
      REQUIRE(tree.rank_upper(q) == le);
      REQUIRE(tree.rank_lower(q) == lt);
      std::vector<double> walked;
      tree.for_each_in_order([&](double v) { walked.push_back(v); });
      auto sorted = mirror;
      std::sort(sorted.begin(), sorted.end());
      REQUIRE(walked == sorted);
    }
  }
  CHECK_FALSE(tree.erase_one(-1000.0));
}

TEST_CASE("incremental ks statistic equals batch ks after every update (master invariant)") {
  const auto reference = streamgen::gaussian_stream(0, 1, 0, 1, 0, 0, 150, 501);
  IncrementalKsConfig config;
  config.window_size = 200;
  IncrementalKs detector(config);
  detector.fit(reference);

  KsTest batch;
  batch.fit(reference);

  const auto stream = streamgen::gaussian_stream(0.2, 1.1, 0.2, 1.1, 0, 0, 10000, 502);
  std::deque<double> window;
  for (double v : stream) {
    const auto result = detector.update_compare(v);
    window.push_back(v);
    if (window.size() > 200) window.pop_front();
    const auto oracle = batch.compare(std::vector<double>(window.begin(), window.end()));
    REQUIRE(result.statistic == oracle.statistic);  // exact, not approximate
    REQUIRE(*result.p_value == *oracle.p_value);
  }
}

TEST_CASE("incremental ks master invariant survives ties in the stream") {
  std::vector<double> reference;
  for (int i = 0; i < 60; ++i) reference.push_back(static_cast<double>(i % 6));
  IncrementalKs detector;
  detector.fit(reference);
  KsTest batch;
  batch.fit(reference);
  numerics::CounterRng rng(77);
  std::deque<double> window;
  for (int i = 0; i < 2000; ++i) {
    const double v = static_cast<double>(rng.bounded(8));
    const auto result = detector.update_compare(v);
    window.push_back(v);
    if (window.size() > 60) window.pop_front();
    const auto oracle = batch.compare(std::vector<double>(window.begin(), window.end()));
    REQUIRE(result.statistic == oracle.statistic);
  }
}

TEST_CASE("incremental ks: window identical to the reference gives D = 0") {
  std::vector<double> reference{1, 2, 3, 4, 5};
  IncrementalKs detector;
  detector.fit(reference);
  ComparisonResult last;
  for (double v : reference) last = detector.update_compare(v);
  CHECK(last.statistic == 0.0);
  CHECK(*last.p_value == 1.0);
  CHECK_FALSE(last.drift);
}

TEST_CASE("incremental ks requires fit before update and flags only when full") {
  IncrementalKs detector;
  CHECK_THROWS_AS(detector.update(1.0), NotFittedError);
  detector.fit(std::vector<double>{0.0, 0.5, 1.0, 1.5});
  const auto r = detector.update_compare(100.0);  // window fill 1 of 4
  CHECK_FALSE(r.drift);
}

TEST_CASE("incremental ks detects a distribution switch within two windows") {
  int hits = 0;
  const std::size_t w = 100;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto reference = streamgen::gaussian_stream(0, 1, 0, 1, 0, 0, w, seed * 7 + 1);
    const auto stream = streamgen::gaussian_stream(0, 1, 2, 1, 300, 0, 300 + 2 * w, seed);
    IncrementalKs detector;
    detector.fit(reference);
    bool detected = false;
    for (std::size_t i = 0; i < stream.size(); ++i) {
      if (detector.update(stream[i]).drift && i >= 300) {
        detected = true;
        break;
      }
    }
    hits += detected;
  }
  CHECK(hits >= 95);
}
