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
#include <cstdint>
#include <numeric>
#include <vector>

#include "driftkit/core/streaming_detector.hpp"

namespace driftkit::concept_drift {

// Bayesian online changepoint detection with a constant hazard and a
// Normal-Gamma conjugate model (Student-t predictive). The run-length
// posterior is renormalized every step; entries below prune_threshold are
// dropped (never run length 0, and never more than max_prune_mass in total
// per step). The posterior itself is the method's output; the drift alarm is
// a MAP-collapse rule: drift when the MAP run length falls below
// collapse_fraction of its previous value and the previous value exceeded
// min_run_length.
struct BocdConfig {
  double hazard = 1.0 / 250.0;
  double prior_mean = 0.0;
  double prior_kappa = 1.0;
  double prior_alpha = 1.0;
  double prior_beta = 1.0;
  double prune_threshold = 1e-8;
  double max_prune_mass = 1e-6;
  double collapse_fraction = 0.2;
  std::size_t min_run_length = 10;

  void validate() const {
    if (!(hazard > 0.0) || hazard >= 1.0) throw std::invalid_argument("bocd: hazard must be in (0, 1)");
    if (!(prior_kappa > 0.0) || !(prior_alpha > 0.0) || !(prior_beta > 0.0)) {
      throw std::invalid_argument("bocd: prior kappa/alpha/beta must be positive");
    }
    if (!(prune_threshold >= 0.0) || prune_threshold >= 1e-3) {
      throw std::invalid_argument("bocd: prune_threshold must be in [0, 1e-3)");
    }
    if (!(collapse_fraction > 0.0) || collapse_fraction >= 1.0) {
      throw std::invalid_argument("bocd: collapse_fraction must be in (0, 1)");
    }
  }
};

class Bocd final : public StreamingDetector {
 public:
  explicit Bocd(BocdConfig config = {}, CallbackSet callbacks = {})
      : StreamingDetector(std::move(callbacks)), config_(config) {
    config_.validate();
    do_reset();
  }

  std::string method_name() const override { return "bocd"; }

  std::map<std::string, double> summary() const override {
    return {{"entries", static_cast<double>(probs_.size())},
            {"map_run_length", static_cast<double>(map_run_length())},
            {"posterior_mass", std::accumulate(probs_.begin(), probs_.end(), 0.0)}};
  }

  std::uint64_t map_run_length() const {
    if (probs_.empty()) return 0;
    const auto it = std::max_element(probs_.begin(), probs_.end());
    return run_lengths_[static_cast<std::size_t>(it - probs_.begin())];
  }

  const std::vector<double>& posterior() const { return probs_; }
  const std::vector<std::uint64_t>& run_lengths() const { return run_lengths_; }
  const BocdConfig& config() const { return config_; }

 protected:
  DetectionStatus do_update(double value) override {
    const std::size_t k = probs_.size();
    std::vector<double> pred(k);
    for (std::size_t i = 0; i < k; ++i) {
      pred[i] = student_t_pdf(value, mu_[i], kappa_[i], alpha_[i], beta_[i]);
    }

    std::vector<double> new_probs(k + 1, 0.0);
    double cp_mass = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double joint = probs_[i] * pred[i];
      new_probs[i + 1] = joint * (1.0 - config_.hazard);
      cp_mass += joint * config_.hazard;
    }
    new_probs[0] = cp_mass;
    double norm = std::accumulate(new_probs.begin(), new_probs.end(), 0.0);
    if (norm <= 0.0 || !std::isfinite(norm)) {
      // Numerically impossible observation under every run: treat it as a
      // certain changepoint.
      new_probs.assign(k + 1, 0.0);
      new_probs[0] = 1.0;
      norm = 1.0;
    }
    for (double& p : new_probs) p /= norm;

    std::vector<std::uint64_t> new_rl(k + 1);
    new_rl[0] = 0;
    for (std::size_t i = 0; i < k; ++i) new_rl[i + 1] = run_lengths_[i] + 1;

    std::vector<double> new_mu(k + 1), new_kappa(k + 1), new_alpha(k + 1), new_beta(k + 1);
    new_mu[0] = config_.prior_mean;
    new_kappa[0] = config_.prior_kappa;
    new_alpha[0] = config_.prior_alpha;
    new_beta[0] = config_.prior_beta;
    for (std::size_t i = 0; i < k; ++i) {
      const double kap = kappa_[i];
      new_mu[i + 1] = (kap * mu_[i] + value) / (kap + 1.0);
      new_kappa[i + 1] = kap + 1.0;
      new_alpha[i + 1] = alpha_[i] + 0.5;
      new_beta[i + 1] = beta_[i] + kap * (value - mu_[i]) * (value - mu_[i]) / (2.0 * (kap + 1.0));
    }

    prune(new_probs, new_rl, new_mu, new_kappa, new_alpha, new_beta);

    probs_ = std::move(new_probs);
    run_lengths_ = std::move(new_rl);
    mu_ = std::move(new_mu);
    kappa_ = std::move(new_kappa);
    alpha_ = std::move(new_alpha);
    beta_ = std::move(new_beta);

    const std::uint64_t map_rl = map_run_length();
    DetectionStatus status;
    if (prev_map_ > config_.min_run_length &&
        static_cast<double>(map_rl) < config_.collapse_fraction * static_cast<double>(prev_map_)) {
      status.drift = true;
    }
    prev_map_ = map_rl;
    return status;
  }

  void do_reset() override {
    probs_ = {1.0};
    run_lengths_ = {0};
    mu_ = {config_.prior_mean};
    kappa_ = {config_.prior_kappa};
    alpha_ = {config_.prior_alpha};
    beta_ = {config_.prior_beta};
    prev_map_ = 0;
  }

  nlohmann::json config_json() const override {
    return {{"hazard", config_.hazard},
            {"prior_mean", config_.prior_mean},
            {"prior_kappa", config_.prior_kappa},
            {"prior_alpha", config_.prior_alpha},
            {"prior_beta", config_.prior_beta},
            {"prune_threshold", config_.prune_threshold},
            {"max_prune_mass", config_.max_prune_mass},
            {"collapse_fraction", config_.collapse_fraction},
            {"min_run_length", config_.min_run_length}};
  }

  nlohmann::json state_json() const override {
    return {{"probs", probs_},   {"run_lengths", run_lengths_}, {"mu", mu_},
            {"kappa", kappa_},   {"alpha", alpha_},             {"beta", beta_},
            {"prev_map", prev_map_}};
  }

  void restore_state(const nlohmann::json& state) override {
    probs_ = state.at("probs").get<std::vector<double>>();
    run_lengths_ = state.at("run_lengths").get<std::vector<std::uint64_t>>();
    mu_ = state.at("mu").get<std::vector<double>>();
    kappa_ = state.at("kappa").get<std::vector<double>>();
    alpha_ = state.at("alpha").get<std::vector<double>>();
    beta_ = state.at("beta").get<std::vector<double>>();
    prev_map_ = state.at("prev_map").get<std::uint64_t>();
  }

 private:
  static double student_t_pdf(double x, double mu, double kappa, double alpha, double beta) {
    const double df = 2.0 * alpha;
    const double scale_sq = beta * (kappa + 1.0) / (alpha * kappa);
    const double z_sq = (x - mu) * (x - mu) / scale_sq;
    const double log_pdf = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) -
                           0.5 * std::log(df * 3.14159265358979323846 * scale_sq) -
                           (df + 1.0) / 2.0 * std::log1p(z_sq / df);
    return std::exp(log_pdf);
  }

  void prune(std::vector<double>& probs, std::vector<std::uint64_t>& rl, std::vector<double>& mu,
             std::vector<double>& kappa, std::vector<double>& alpha,
             std::vector<double>& beta) const {
    if (config_.prune_threshold <= 0.0) return;
    // Collect prunable entries smallest-first so the dropped mass per step
    // stays under max_prune_mass.
    std::vector<std::size_t> candidates;
    for (std::size_t i = 1; i < probs.size(); ++i) {
      if (probs[i] < config_.prune_threshold) candidates.push_back(i);
    }
    if (candidates.empty()) return;
    std::sort(candidates.begin(), candidates.end(),
              [&](std::size_t a, std::size_t b) { return probs[a] < probs[b]; });
    std::vector<char> drop(probs.size(), 0);
    double dropped = 0.0;
    for (std::size_t i : candidates) {
      if (dropped + probs[i] > config_.max_prune_mass) break;
      dropped += probs[i];
      drop[i] = 1;
    }
    if (dropped == 0.0) return;
    std::size_t w = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (drop[i]) continue;
      probs[w] = probs[i];
      rl[w] = rl[i];
      mu[w] = mu[i];
      kappa[w] = kappa[i];
      alpha[w] = alpha[i];
      beta[w] = beta[i];
      ++w;
    }
    probs.resize(w);
    rl.resize(w);
    mu.resize(w);
    kappa.resize(w);
    alpha.resize(w);
    beta.resize(w);
    const double norm = std::accumulate(probs.begin(), probs.end(), 0.0);
    for (double& p : probs) p /= norm;
  }

  BocdConfig config_;
  std::vector<double> probs_;
  std::vector<std::uint64_t> run_lengths_;
  std::vector<double> mu_, kappa_, alpha_, beta_;
  std::uint64_t prev_map_ = 0;
};

}  // namespace driftkit::concept_drift
