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
#include <stdexcept>

namespace driftkit::numerics {

namespace detail {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kGammaEps = 1e-15;
inline constexpr int kGammaMaxIter = 1000;
inline constexpr double kTiny = 1e-300;

// Regularized lower incomplete gamma P(a, x) by its series expansion.
// Valid for x < a + 1.
inline double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < kGammaMaxIter; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * kGammaEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by continued fraction
// (modified Lentz). Valid for x >= a + 1.
inline double gamma_q_cf(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kGammaMaxIter; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kGammaEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

inline double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: invalid arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

// Continued fraction for the regularized incomplete beta function.
inline double beta_cf(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kGammaMaxIter; ++m) {
    const double dm = static_cast<double>(m);
    const double m2 = 2.0 * dm;
    double aa = dm * (b - dm) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + dm) * (qab + dm) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kGammaEps) break;
  }
  return h;
}

// Regularized incomplete beta I_x(a, b).
inline double beta_i(double a, double b, double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("beta_i: x outside [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

}  // namespace detail

// P(Z > x) for Z ~ N(0, 1).
inline double normal_tail(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("normal_tail: non-finite x");
  return 0.5 * std::erfc(x / 1.4142135623730951);
}

// P(X > x) for X ~ chi-squared(df).
inline double chi_squared_tail(double x, double df) {
  if (!(df >= 1.0)) throw std::invalid_argument("chi_squared_tail: df must be >= 1");
  if (!std::isfinite(x)) throw std::invalid_argument("chi_squared_tail: non-finite x");
  if (x <= 0.0) return 1.0;
  return std::clamp(detail::gamma_q(df / 2.0, x / 2.0), 0.0, 1.0);
}

// P(T > x), upper tail of Student's t with df degrees of freedom.
inline double student_t_tail(double x, double df) {
  if (!(df >= 1.0)) throw std::invalid_argument("student_t_tail: df must be >= 1");
  if (!std::isfinite(x)) throw std::invalid_argument("student_t_tail: non-finite x");
  if (x < 0.0) return 1.0 - student_t_tail(-x, df);
  const double p = 0.5 * detail::beta_i(df / 2.0, 0.5, df / (df + x * x));
  return std::clamp(p, 0.0, 1.0);
}

// Kolmogorov limiting tail Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
// For small lambda the theta-transformed series converges far faster and avoids
// the cancellation of the alternating form; terms are truncated below 1e-12
// (relative for the small-lambda branch).
inline double kolmogorov_tail(double lambda) {
  if (!std::isfinite(lambda)) throw std::invalid_argument("kolmogorov_tail: non-finite lambda");
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    const double t = detail::kPi * detail::kPi / (8.0 * lambda * lambda);
    double s = 0.0;
    for (int k = 1; k < 100; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(-odd * odd * t);
      s += term;
      if (term < 1e-12 * s || term < detail::kTiny) break;
    }
    const double cdf = std::sqrt(2.0 * detail::kPi) / lambda * s;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double s = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double term = 2.0 * std::exp(-2.0 * static_cast<double>(k) * k * lambda * lambda);
    s += (k % 2 == 1) ? term : -term;
    if (term < 1e-12) break;
  }
  return std::clamp(s, 0.0, 1.0);
}

enum class TailDistribution { kStdNormal, kChiSquared, kStudentT, kKolmogorov };

// Upper-tail probability dispatcher; df is ignored for the std-normal and
// Kolmogorov distributions.
inline double tail_probability(TailDistribution dist, double x, double df = 0.0) {
  switch (dist) {
    case TailDistribution::kStdNormal:
      return normal_tail(x);
    case TailDistribution::kChiSquared:
      return chi_squared_tail(x, df);
    case TailDistribution::kStudentT:
      return student_t_tail(x, df);
    case TailDistribution::kKolmogorov:
      return kolmogorov_tail(x);
  }
  throw std::invalid_argument("tail_probability: unknown distribution");
}

}  // namespace driftkit::numerics
