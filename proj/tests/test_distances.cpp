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

#include "driftkit/core/callbacks.hpp"
#include "driftkit/data_drift/categorical.hpp"
#include "driftkit/data_drift/histogram_distance.hpp"
#include "driftkit/data_drift/mmd.hpp"
#include "driftkit/numerics/rng.hpp"
#include "driftkit/streamgen/scenario.hpp"

using namespace driftkit;
using namespace driftkit::data_drift;

TEST_CASE("distance kernels reproduce hand-computed closed forms") {
  const std::vector<double> p{0.5, 0.5};
  const std::vector<double> q{0.9, 0.1};
  CHECK(histogram_distance(DistanceMethod::kHellinger, p, q) ==
        Catch::Approx(0.32492).margin(1e-4));
  CHECK(histogram_distance(DistanceMethod::kBhattacharyya, p, q) ==
        Catch::Approx(0.11157).margin(1e-4));
  CHECK(histogram_distance(DistanceMethod::kKl, p, q) == Catch::Approx(0.51083).margin(1e-4));
  CHECK(histogram_distance(DistanceMethod::kPsi, p, q) == Catch::Approx(0.87889).margin(1e-4));
  // js = 0.5 KL(p||m) + 0.5 KL(q||m) with m the midpoint
  const double m0 = 0.7, m1 = 0.3;
  const double js = 0.5 * (0.5 * std::log(0.5 / m0) + 0.5 * std::log(0.5 / m1)) +
                    0.5 * (0.9 * std::log(0.9 / m0) + 0.1 * std::log(0.1 / m1));
  CHECK(histogram_distance(DistanceMethod::kJs, p, q) == Catch::Approx(js).margin(1e-12));
  CHECK(histogram_distance(DistanceMethod::kHistogramIntersection, p, q) ==
        Catch::Approx(0.4).margin(1e-12));
}

TEST_CASE("distance kernel bounds") {
  numerics::CounterRng rng(3);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t k = 2 + rng.bounded(10);
    std::vector<double> p(k), q(k);
    double sp = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      p[i] = rng.next_unit() + 1e-6;
      q[i] = rng.next_unit() + 1e-6;
      sp += p[i];
      sq += q[i];
    }
    for (std::size_t i = 0; i < k; ++i) {
      p[i] /= sp;
      q[i] /= sq;
    }
    const double hell = histogram_distance(DistanceMethod::kHellinger, p, q);
    const double inter = histogram_distance(DistanceMethod::kHistogramIntersection, p, q);
    const double js = histogram_distance(DistanceMethod::kJs, p, q);
    const double kl = histogram_distance(DistanceMethod::kKl, p, q);
    const double psi = histogram_distance(DistanceMethod::kPsi, p, q);
    REQUIRE(hell >= 0.0);
    REQUIRE(hell <= 1.0);
    REQUIRE(inter >= 0.0);
    REQUIRE(inter <= 1.0);
    REQUIRE(js >= 0.0);
    REQUIRE(js <= std::log(2.0) + 1e-12);
    REQUIRE(kl >= -1e-12);
    REQUIRE(psi >= -1e-12);
  }
}

TEST_CASE("all six histogram distances vanish at identity") {
  numerics::CounterRng rng(8);
  std::vector<double> sample;
  for (int i = 0; i < 300; ++i) sample.push_back(rng.next_unit() * 7.0);
  for (auto method :
       {DistanceMethod::kHellinger, DistanceMethod::kBhattacharyya, DistanceMethod::kKl,
        DistanceMethod::kJs, DistanceMethod::kPsi, DistanceMethod::kHistogramIntersection}) {
    HistogramDistanceDetector detector(method);
    detector.fit(sample);
    const auto r = detector.compare(sample);
    REQUIRE(r.statistic == Catch::Approx(0.0).margin(1e-9));
    REQUIRE_FALSE(r.p_value.has_value());  // distances carry no p-value by themselves
    REQUIRE_FALSE(r.drift);
  }
}

TEST_CASE("disjoint supports saturate") {
  std::vector<double> ref, test;
  for (int i = 0; i < 50; ++i) ref.push_back(static_cast<double>(i % 10));
  for (int i = 0; i < 50; ++i) test.push_back(100.0 + static_cast<double>(i % 10));
  HistogramDistanceDetector hell(DistanceMethod::kHellinger);
  hell.fit(ref);
  const auto rh = hell.compare(test);
  CHECK(rh.statistic == Catch::Approx(1.0).margin(1e-3));
  CHECK(rh.extras.at("clipped_high") == 50.0);

  HistogramDistanceDetector kl(DistanceMethod::kKl);
  kl.fit(ref);
  const auto rk = kl.compare(test);
  CHECK(std::isfinite(rk.statistic));
  CHECK(rk.extras.count("saturated") == 1);
}

TEST_CASE("permutation callback attaches a p-value to distance results") {
  numerics::PermutationPlan plan;
  plan.n_permutations = 400;
  plan.seed = 5;
  CallbackSet cbs{std::make_shared<PermutationTestCallback>(plan)};
  HistogramDistanceDetector detector(DistanceMethod::kHellinger, {}, std::nullopt, 0.05,
                                     std::move(cbs));
  numerics::CounterRng rng(6);
  std::vector<double> ref, shifted;
  for (int i = 0; i < 120; ++i) ref.push_back(rng.next_unit());
  for (int i = 0; i < 120; ++i) shifted.push_back(rng.next_unit() + 1.5);
  detector.fit(ref);
  const auto r = detector.compare(shifted);
  REQUIRE(r.p_value.has_value());
  CHECK(r.extras.count("permutation_p_value") == 1);
  CHECK(*r.p_value < 0.05);
  CHECK(r.drift);  // permutation p below alpha decides drift

  const auto same = detector.compare(ref);
  REQUIRE(same.p_value.has_value());
  CHECK(*same.p_value > 0.5);
  CHECK_FALSE(same.drift);
}

TEST_CASE("distance threshold decides drift without a p-value") {
  HistogramDistanceDetector detector(DistanceMethod::kPsi, {}, /*drift_threshold=*/0.2);
  std::vector<double> ref, test;
  numerics::CounterRng rng(61);
  for (int i = 0; i < 200; ++i) ref.push_back(rng.next_unit());
  for (int i = 0; i < 200; ++i) test.push_back(rng.next_unit() * 0.3 + 0.7);
  detector.fit(ref);
  const auto r = detector.compare(test);
  CHECK(r.statistic > 0.2);
  CHECK(r.drift);
  CHECK_FALSE(detector.compare(ref).drift);
}

TEST_CASE("categorical distances mirror the numeric kernels over category bins") {
  std::vector<std::string> ref, test;
  for (int i = 0; i < 50; ++i) ref.emplace_back("x");
  for (int i = 0; i < 50; ++i) ref.emplace_back("y");
  for (int i = 0; i < 90; ++i) test.emplace_back("x");
  for (int i = 0; i < 10; ++i) test.emplace_back("y");
  CategoricalDistance hell(DistanceMethod::kHellinger);
  hell.fit(ref);
  // Same proportions as the (0.5, 0.5) vs (0.9, 0.1) hand case.
  CHECK(hell.compare(test).statistic == Catch::Approx(0.32492).margin(1e-4));
}

TEST_CASE("emd golden value and properties") {
  EmdDetector emd;
  emd.fit(std::vector<double>{0.0, 1.0});
  CHECK(emd.compare(std::vector<double>{1.0, 2.0}).statistic == Catch::Approx(1.0).margin(1e-12));
  emd.fit(std::vector<double>{3.0, 7.0, 9.0});
  CHECK(emd.compare(std::vector<double>{3.0, 7.0, 9.0}).statistic == 0.0);
}

TEST_CASE("emd shift property: EMD(X, X + c) = |c|") {
  numerics::CounterRng rng(90);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 2 + rng.bounded(100);
    std::vector<double> x, xc;
    const double c = (rng.next_unit() - 0.5) * 20.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = rng.next_unit() * 10.0;
      x.push_back(v);
      xc.push_back(v + c);
    }
    EmdDetector emd;
    emd.fit(x);
    REQUIRE(emd.compare(xc).statistic == Catch::Approx(std::abs(c)).margin(1e-9));
  }
}

TEST_CASE("mmd golden value for singleton samples") {
  MmdConfig config;
  config.sigma = 1.0;
  MmdDetector mmd(config);
  mmd.fit(std::vector<double>{0.0});
  const auto r = mmd.compare(std::vector<double>{1.0});
  CHECK(r.statistic == Catch::Approx(0.786939).margin(1e-6));
}

TEST_CASE("mmd biased estimator is zero at identity") {
  numerics::CounterRng rng(17);
  std::vector<double> sample;
  for (int i = 0; i < 60; ++i) sample.push_back(rng.next_unit() * 3.0);
  MmdDetector mmd;
  mmd.fit(sample);
  CHECK(mmd.compare(sample).statistic == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("mmd matches a direct triple-loop evaluation on 50x50 samples") {
  numerics::CounterRng rng(18);
  Matrix ref(50, 2), test(50, 2);
  for (std::size_t i = 0; i < 50; ++i) {
    for (std::size_t c = 0; c < 2; ++c) {
      ref.at(i, c) = rng.next_unit() * 2.0;
      test.at(i, c) = rng.next_unit() * 2.0 + 0.4;
    }
  }
  const double sigma = 0.8;
  MmdConfig config;
  config.sigma = sigma;
  MmdDetector mmd(config);
  mmd.fit(ref);
  const double got = mmd.compare(test).statistic;

  const auto kernel = [&](std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
    return std::exp(-d / (2.0 * sigma * sigma));
  };
  double kxx = 0.0, kyy = 0.0, kxy = 0.0;
  for (std::size_t i = 0; i < 50; ++i) {
    for (std::size_t j = 0; j < 50; ++j) {
      kxx += kernel(ref.row(i), ref.row(j));
      kyy += kernel(test.row(i), test.row(j));
      kxy += kernel(ref.row(i), test.row(j));
    }
  }
  const double oracle = kxx / 2500.0 + kyy / 2500.0 - 2.0 * kxy / 2500.0;
  CHECK(got == Catch::Approx(oracle).margin(1e-9));
}

TEST_CASE("mmd unbiased variant differs and is exposed via config") {
  numerics::CounterRng rng(19);
  std::vector<double> ref, test;
  for (int i = 0; i < 40; ++i) ref.push_back(rng.next_unit());
  for (int i = 0; i < 40; ++i) test.push_back(rng.next_unit());
  MmdConfig unbiased;
  unbiased.sigma = 1.0;
  unbiased.unbiased = true;
  MmdDetector a(unbiased);
  a.fit(ref);
  MmdConfig biased;
  biased.sigma = 1.0;
  MmdDetector b(biased);
  b.fit(ref);
  CHECK(a.compare(test).statistic != b.compare(test).statistic);
}

TEST_CASE("mmd median heuristic is recorded in extras") {
  MmdDetector mmd;
  mmd.fit(std::vector<double>{0.0, 1.0, 2.0, 3.0});
  const auto r = mmd.compare(std::vector<double>{0.5, 1.5, 2.5});
  CHECK(r.extras.at("sigma") > 0.0);
}

TEST_CASE("mmd permutation callback yields a calibrated-ish p at identity") {
  numerics::PermutationPlan plan;
  plan.n_permutations = 300;
  plan.seed = 2;
  CallbackSet cbs{std::make_shared<PermutationTestCallback>(plan)};
  MmdDetector mmd({}, std::move(cbs));
  const auto sample = streamgen::gaussian_stream(0, 1, 0, 1, 0, 0, 50, 33);
  const auto other = streamgen::gaussian_stream(0, 1, 0, 1, 0, 0, 50, 34);
  mmd.fit(sample);
  const auto r = mmd.compare(other);
  REQUIRE(r.p_value.has_value());
  CHECK(*r.p_value > 0.05);
}
