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

#include <cmath>
#include <functional>

#include "driftkit/data_drift/categorical.hpp"
#include "driftkit/data_drift/statistical_tests.hpp"
#include "driftkit/numerics/rng.hpp"

using namespace driftkit;
using namespace driftkit::data_drift;

namespace {

std::vector<double> random_sample(numerics::CounterRng& rng, std::size_t n, double scale = 1.0) {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Values on a coarse grid so ties happen regularly.
    out.push_back(scale * std::floor(rng.next_unit() * 50.0) / 10.0);
  }
  return out;
}

// All distinct splits of a tiny pooled sample, counting statistic >= observed.
template <class Statistic>
double enumerate_exact_p(const std::vector<double>& x, const std::vector<double>& y,
                         Statistic statistic) {
  std::vector<double> pooled(x.begin(), x.end());
  pooled.insert(pooled.end(), y.begin(), y.end());
  const std::size_t n = x.size();
  const std::size_t total = pooled.size();
  const double observed = statistic(x, y);
  std::size_t count = 0, splits = 0;
  std::vector<std::size_t> comb(n);
  for (std::size_t i = 0; i < n; ++i) comb[i] = i;
  while (true) {
    std::vector<double> a, b;
    std::vector<char> member(total, 0);
    for (auto c : comb) member[c] = 1;
    for (std::size_t i = 0; i < total; ++i) (member[i] ? a : b).push_back(pooled[i]);
    if (statistic(a, b) >= observed - 1e-12 * std::max(1.0, std::abs(observed))) ++count;
    ++splits;
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(n) - 1;
    while (i >= 0 &&
           comb[static_cast<std::size_t>(i)] == static_cast<std::size_t>(i) + total - n) {
      --i;
    }
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
  }
  return static_cast<double>(count) / static_cast<double>(splits);
}

}  // namespace

TEST_CASE("ks golden values") {
  KsTest ks;
  ks.fit(std::vector<double>{1, 3, 5});
  const auto r = ks.compare(std::vector<double>{2, 4, 6});
  CHECK(r.statistic == Catch::Approx(1.0 / 3.0));

  ks.fit(std::vector<double>{1, 2, 3, 4});
  CHECK(ks.compare(std::vector<double>{5, 6, 7, 8}).statistic == 1.0);

  ks.fit(std::vector<double>{1, 2, 3, 4});
  const auto same = ks.compare(std::vector<double>{1, 2, 3, 4});
  CHECK(same.statistic == 0.0);
  CHECK(*same.p_value == 1.0);
  CHECK_FALSE(same.drift);
}

TEST_CASE("compare before fit raises a not-fitted error") {
  KsTest ks;
  CHECK_THROWS_AS(ks.compare(std::vector<double>{1.0}), NotFittedError);
  CHECK_THROWS_AS(ks.fit(std::vector<double>{}), std::invalid_argument);
  ks.fit(std::vector<double>{1.0, 2.0});
  CHECK_THROWS_AS(ks.compare(std::vector<double>{}), std::invalid_argument);
  ks.reset();
  CHECK_THROWS_AS(ks.compare(std::vector<double>{1.0}), NotFittedError);
}

TEST_CASE("refit replaces the reference completely") {
  KsTest ks;
  ks.fit(std::vector<double>{0.0, 0.0, 0.0});
  ks.fit(std::vector<double>{5.0, 6.0, 7.0});
  CHECK(ks.compare(std::vector<double>{5.0, 6.0, 7.0}).statistic == 0.0);
}

TEST_CASE("two consecutive identical compares return identical results") {
  numerics::CounterRng rng(64);
  const auto ref = random_sample(rng, 60);
  const auto test = random_sample(rng, 45);
  KsTest ks;
  ks.fit(ref);
  const auto a = ks.compare(test);
  const auto b = ks.compare(test);
  CHECK(a.statistic == b.statistic);
  CHECK(*a.p_value == *b.p_value);
  CHECK(ks.reference() == ref);
}

TEST_CASE("cvm golden value and exact permutation p") {
  CramerVonMisesTest cvm;
  cvm.fit(std::vector<double>{1, 3});
  const auto r = cvm.compare(std::vector<double>{2, 4});
  // U = 12, T = 12/16 - 15/24
  CHECK(r.statistic == Catch::Approx(0.125).margin(1e-12));
  CHECK(r.extras.at("permutation_exact") == 1.0);
  const double oracle = enumerate_exact_p(
      {1, 3}, {2, 4},
      [](const std::vector<double>& a, const std::vector<double>& b) {
        return CramerVonMisesTest::statistic(a, b);
      });
  CHECK(*r.p_value == Catch::Approx(oracle).margin(1e-12));
  CHECK(oracle == 1.0);  // the alternating arrangement is the least extreme split
}

TEST_CASE("anderson-darling golden value") {
  AndersonDarlingTest ad;
  ad.fit(std::vector<double>{1, 3});
  const auto r = ad.compare(std::vector<double>{2, 4});
  CHECK(r.statistic == Catch::Approx(8.0 / 3.0).margin(1e-12));
}

TEST_CASE("anderson-darling exact permutation p matches full enumeration on tiny samples") {
  numerics::CounterRng rng(77);
  for (int rep = 0; rep < 10; ++rep) {
    const auto x = random_sample(rng, 3 + rng.bounded(3));
    const auto y = random_sample(rng, 3 + rng.bounded(3));
    AndersonDarlingTest ad;
    ad.fit(x);
    const auto r = ad.compare(y);
    REQUIRE(r.extras.at("permutation_exact") == 1.0);
    const double oracle = enumerate_exact_p(
        x, y,
        [](const std::vector<double>& a, const std::vector<double>& b) {
          return AndersonDarlingTest::statistic(a, b);
        });
    REQUIRE(*r.p_value == Catch::Approx(oracle).margin(1e-12));
  }
}

TEST_CASE("anderson-darling standardized approximation is sane") {
  numerics::CounterRng rng(78);
  std::vector<double> same, shifted;
  for (int i = 0; i < 80; ++i) same.push_back(rng.next_unit());
  for (int i = 0; i < 80; ++i) shifted.push_back(rng.next_unit() + 0.8);
  AndersonDarlingTest approx(0.05, {}, /*use_approximation=*/true);
  approx.fit(same);
  const auto null_r = approx.compare(std::vector<double>(same));
  const auto alt_r = approx.compare(shifted);
  CHECK(*null_r.p_value > 0.1);
  CHECK(*alt_r.p_value < 0.01);
  CHECK(*alt_r.p_value >= 0.0);
}

TEST_CASE("mann-whitney golden values") {
  MannWhitneyTest mwu;
  mwu.fit(std::vector<double>{1, 2});
  const auto r = mwu.compare(std::vector<double>{3, 4});
  CHECK(r.statistic == 0.0);  // every reference value sits below every test value

  mwu.fit(std::vector<double>{1, 4, 5, 8});
  const auto same = mwu.compare(std::vector<double>{2, 3, 6, 7});
  // Symmetric arrangement: U = nm/2, z = 0, p = 1.
  CHECK(same.statistic == Catch::Approx(8.0));
  CHECK(*same.p_value == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("mann-whitney U with ties matches brute-force pair counting") {
  const auto pair_count = [](const std::vector<double>& a, const std::vector<double>& b) {
    double u = 0.0;
    for (double x : a) {
      for (double y : b) {
        if (x > y) {
          u += 1.0;
        } else if (x == y) {
          u += 0.5;
        }
      }
    }
    return u;
  };
  MannWhitneyTest mwu;
  mwu.fit(std::vector<double>{1, 2, 2});
  const auto r = mwu.compare(std::vector<double>{2, 3});
  CHECK(r.statistic == Catch::Approx(pair_count({1, 2, 2}, {2, 3})).margin(1e-12));
  CHECK(r.statistic == Catch::Approx(1.0));

  numerics::CounterRng rng(15);
  for (int rep = 0; rep < 50; ++rep) {
    const auto x = random_sample(rng, 2 + rng.bounded(20));
    const auto y = random_sample(rng, 2 + rng.bounded(20));
    MannWhitneyTest t;
    t.fit(x);
    REQUIRE(t.compare(y).statistic == Catch::Approx(pair_count(x, y)).margin(1e-9));
  }
}

TEST_CASE("welch t golden values") {
  WelchTTest welch;
  welch.fit(std::vector<double>{1, 2, 3, 4});
  const auto r = welch.compare(std::vector<double>{3, 4, 5, 6});
  CHECK(r.statistic == Catch::Approx(-2.1909).margin(1e-3));
  CHECK(r.extras.at("df") == Catch::Approx(6.0).margin(1e-9));
  CHECK(*r.p_value == Catch::Approx(0.0707).margin(1e-3));

  const auto same = welch.compare(std::vector<double>{1, 2, 3, 4});
  CHECK(same.statistic == 0.0);
  CHECK(*same.p_value == 1.0);
}

TEST_CASE("welch t degenerate variance rules") {
  WelchTTest welch;
  welch.fit(std::vector<double>{2, 2, 2});
  const auto equal = welch.compare(std::vector<double>{2, 2});
  CHECK(*equal.p_value == 1.0);
  CHECK(equal.extras.count("degenerate") == 1);

  const auto different = welch.compare(std::vector<double>{3, 3});
  CHECK(*different.p_value == 0.0);
  CHECK(different.extras.at("degenerate") == 1.0);
  CHECK(different.drift);
}

TEST_CASE("chi-squared golden values") {
  ChiSquaredTest chi2;
  std::vector<std::string> ref, test;
  for (int i = 0; i < 10; ++i) ref.emplace_back("A");
  for (int i = 0; i < 20; ++i) ref.emplace_back("B");
  for (int i = 0; i < 20; ++i) test.emplace_back("A");
  for (int i = 0; i < 10; ++i) test.emplace_back("B");
  chi2.fit(ref);
  const auto r = chi2.compare(test);
  CHECK(r.statistic == Catch::Approx(20.0 / 3.0).margin(1e-9));
  CHECK(r.extras.at("df") == 1.0);
  CHECK(*r.p_value == Catch::Approx(0.00982).margin(1e-4));
  CHECK(r.drift);

  const auto same = chi2.compare(ref);
  CHECK(same.statistic == Catch::Approx(0.0).margin(1e-12));
  CHECK(*same.p_value == 1.0);
}

TEST_CASE("chi-squared pools categories that appear in only one sample") {
  ChiSquaredTest chi2;
  std::vector<std::string> ref{"A", "A", "B", "B"};
  std::vector<std::string> test{"A", "B", "C", "C"};
  chi2.fit(ref);
  const auto r = chi2.compare(test);
  // Three categories in the union, pooled expectations all positive.
  CHECK(r.extras.at("df") == 2.0);
  CHECK(std::isfinite(r.statistic));
  CHECK(*r.p_value > 0.0);
}

TEST_CASE("rank statistics are invariant under monotone transforms of both samples") {
  numerics::CounterRng rng(123);
  const auto transforms = std::vector<std::function<double(double)>>{
      [](double x) { return 2.0 * x + 3.0; },
      [](double x) { return std::exp(x * 0.25); },
  };
  for (int rep = 0; rep < 100; ++rep) {
    const auto x = random_sample(rng, 4 + rng.bounded(30));
    const auto y = random_sample(rng, 4 + rng.bounded(30));
    const auto& f = transforms[rep % transforms.size()];
    std::vector<double> fx, fy;
    for (double v : x) fx.push_back(f(v));
    for (double v : y) fy.push_back(f(v));

    REQUIRE(numerics::ks_statistic(x, y) == numerics::ks_statistic(fx, fy));
    REQUIRE(CramerVonMisesTest::statistic(x, y) == CramerVonMisesTest::statistic(fx, fy));
    REQUIRE(AndersonDarlingTest::statistic(x, y) == AndersonDarlingTest::statistic(fx, fy));
    REQUIRE(MannWhitneyTest::statistic(x, y) == MannWhitneyTest::statistic(fx, fy));
  }
}
