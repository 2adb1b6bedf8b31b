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

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "driftkit/cli/json_io.hpp"
#include "driftkit/driftkit.hpp"

namespace driftkit::cli {

namespace detail {

inline void expect_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                        const std::string& context) {
  if (j.is_null()) return;
  if (!j.is_object()) throw UsageError(context + ": params must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) throw UsageError(context + ": unknown parameter '" + key + "'");
  }
}

template <class T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  if (j.is_object() && j.contains(key)) return j.at(key).get<T>();
  return fallback;
}

}  // namespace detail

inline const std::vector<std::string>& concept_methods() {
  static const std::vector<std::string> kMethods{
      "ddm",  "eddm",   "rddm",  "cusum", "page_hinkley", "gma", "ecdd",
      "hddm_a", "hddm_w", "kswin", "stepd", "adwin",        "bocd"};
  return kMethods;
}

inline const std::vector<std::string>& batch_numeric_methods() {
  static const std::vector<std::string> kMethods{
      "ks",  "cvm", "anderson_darling", "mann_whitney", "welch_t",
      "emd", "mmd", "hellinger",        "bhattacharyya", "kl",
      "js",  "psi", "histogram_intersection"};
  return kMethods;
}

inline bool is_concept_method(const std::string& m) {
  for (const auto& name : concept_methods()) {
    if (name == m) return true;
  }
  return false;
}

inline bool is_streaming_method(const std::string& m) {
  return is_concept_method(m) || m == "incremental_ks";
}

inline bool is_distance_method_name(const std::string& m) {
  return m == "emd" || m == "mmd" || m == "hellinger" || m == "bhattacharyya" || m == "kl" ||
         m == "js" || m == "psi" || m == "histogram_intersection";
}

inline bool is_batch_method(const std::string& m) {
  if (m == "chi2") return true;
  for (const auto& name : batch_numeric_methods()) {
    if (name == m) return true;
  }
  return false;
}

// Methods applicable to categorical features.
inline bool supports_categorical(const std::string& m) {
  return m == "chi2" || m == "hellinger" || m == "bhattacharyya" || m == "kl" || m == "js" ||
         m == "psi" || m == "histogram_intersection";
}

inline bool supports_numeric(const std::string& m) { return m != "chi2" && is_batch_method(m); }

// ----- streaming detector construction ------------------------------------

inline std::unique_ptr<StreamingDetector> make_streaming_detector(const std::string& method,
                                                                  const nlohmann::json& params) {
  using namespace concept_drift;
  using detail::expect_keys;
  using detail::get_or;
  if (method == "ddm") {
    expect_keys(params, {"min_num_instances", "warning_level", "drift_level"}, "ddm");
    DdmConfig c;
    c.min_num_instances = get_or<std::size_t>(params, "min_num_instances", c.min_num_instances);
    c.warning_level = get_or<double>(params, "warning_level", c.warning_level);
    c.drift_level = get_or<double>(params, "drift_level", c.drift_level);
    return std::make_unique<Ddm>(c);
  }
  if (method == "eddm") {
    expect_keys(params, {"min_num_misclassified", "warning_ratio", "drift_ratio"}, "eddm");
    EddmConfig c;
    c.min_num_misclassified =
        get_or<std::size_t>(params, "min_num_misclassified", c.min_num_misclassified);
    c.warning_ratio = get_or<double>(params, "warning_ratio", c.warning_ratio);
    c.drift_ratio = get_or<double>(params, "drift_ratio", c.drift_ratio);
    return std::make_unique<Eddm>(c);
  }
  if (method == "rddm") {
    expect_keys(params,
                {"min_num_instances", "warning_level", "drift_level", "max_concept_size",
                 "min_size_stable_concept", "warning_limit"},
                "rddm");
    RddmConfig c;
    c.min_num_instances = get_or<std::size_t>(params, "min_num_instances", c.min_num_instances);
    c.warning_level = get_or<double>(params, "warning_level", c.warning_level);
    c.drift_level = get_or<double>(params, "drift_level", c.drift_level);
    c.max_concept_size = get_or<std::size_t>(params, "max_concept_size", c.max_concept_size);
    c.min_size_stable_concept =
        get_or<std::size_t>(params, "min_size_stable_concept", c.min_size_stable_concept);
    c.warning_limit = get_or<std::size_t>(params, "warning_limit", c.warning_limit);
    return std::make_unique<Rddm>(c);
  }
  if (method == "cusum") {
    expect_keys(params,
                {"min_num_instances", "drift_allowance", "threshold", "fixed_mean", "fixed_std"},
                "cusum");
    CusumConfig c;
    c.min_num_instances = get_or<std::size_t>(params, "min_num_instances", c.min_num_instances);
    c.drift_allowance = get_or<double>(params, "drift_allowance", c.drift_allowance);
    c.threshold = get_or<double>(params, "threshold", c.threshold);
    if (params.is_object() && params.contains("fixed_mean")) {
      c.fixed_mean = params.at("fixed_mean").get<double>();
    }
    if (params.is_object() && params.contains("fixed_std")) {
      c.fixed_std = params.at("fixed_std").get<double>();
    }
    return std::make_unique<Cusum>(c);
  }
  if (method == "page_hinkley") {
    expect_keys(params, {"min_num_instances", "delta", "threshold", "two_sided"}, "page_hinkley");
    PageHinkleyConfig c;
    c.min_num_instances = get_or<std::size_t>(params, "min_num_instances", c.min_num_instances);
    c.delta = get_or<double>(params, "delta", c.delta);
    c.threshold = get_or<double>(params, "threshold", c.threshold);
    c.two_sided = get_or<bool>(params, "two_sided", c.two_sided);
    return std::make_unique<PageHinkley>(c);
  }
  if (method == "gma") {
    expect_keys(params, {"min_num_instances", "smoothing", "control_limit"}, "gma");
    GmaConfig c;
    c.min_num_instances = get_or<std::size_t>(params, "min_num_instances", c.min_num_instances);
    c.smoothing = get_or<double>(params, "smoothing", c.smoothing);
    c.control_limit = get_or<double>(params, "control_limit", c.control_limit);
    return std::make_unique<GeometricMovingAverage>(c);
  }
  if (method == "ecdd") {
    expect_keys(params, {"arl0", "smoothing", "warning_fraction", "min_num_instances"}, "ecdd");
    EcddConfig c;
    c.arl0 = get_or<int>(params, "arl0", c.arl0);
    c.smoothing = get_or<double>(params, "smoothing", c.smoothing);
    c.warning_fraction = get_or<double>(params, "warning_fraction", c.warning_fraction);
    c.min_num_instances = get_or<std::size_t>(params, "min_num_instances", c.min_num_instances);
    return std::make_unique<Ecdd>(c);
  }
  if (method == "hddm_a") {
    expect_keys(params, {"drift_confidence", "warning_confidence", "two_sided"}, "hddm_a");
    HddmConfig c;
    c.drift_confidence = get_or<double>(params, "drift_confidence", c.drift_confidence);
    c.warning_confidence = get_or<double>(params, "warning_confidence", c.warning_confidence);
    c.two_sided = get_or<bool>(params, "two_sided", c.two_sided);
    return std::make_unique<HddmA>(c);
  }
  if (method == "hddm_w") {
    expect_keys(params, {"drift_confidence", "warning_confidence", "weight", "two_sided"},
                "hddm_w");
    HddmWConfig c;
    c.drift_confidence = get_or<double>(params, "drift_confidence", c.drift_confidence);
    c.warning_confidence = get_or<double>(params, "warning_confidence", c.warning_confidence);
    c.weight = get_or<double>(params, "weight", c.weight);
    c.two_sided = get_or<bool>(params, "two_sided", c.two_sided);
    return std::make_unique<HddmW>(c);
  }
  if (method == "kswin") {
    expect_keys(params, {"window_size", "stat_size", "alpha", "seed"}, "kswin");
    KswinConfig c;
    c.window_size = get_or<std::size_t>(params, "window_size", c.window_size);
    c.stat_size = get_or<std::size_t>(params, "stat_size", c.stat_size);
    c.alpha = get_or<double>(params, "alpha", c.alpha);
    c.seed = get_or<std::uint64_t>(params, "seed", c.seed);
    return std::make_unique<Kswin>(c);
  }
  if (method == "stepd") {
    expect_keys(params, {"window_size", "alpha_warning", "alpha_drift"}, "stepd");
    StepdConfig c;
    c.window_size = get_or<std::size_t>(params, "window_size", c.window_size);
    c.alpha_warning = get_or<double>(params, "alpha_warning", c.alpha_warning);
    c.alpha_drift = get_or<double>(params, "alpha_drift", c.alpha_drift);
    return std::make_unique<Stepd>(c);
  }
  if (method == "adwin") {
    expect_keys(params, {"delta", "check_interval", "max_buckets_per_row"}, "adwin");
    AdwinConfig c;
    c.delta = get_or<double>(params, "delta", c.delta);
    c.check_interval = get_or<std::size_t>(params, "check_interval", c.check_interval);
    c.max_buckets_per_row =
        get_or<std::size_t>(params, "max_buckets_per_row", c.max_buckets_per_row);
    return std::make_unique<Adwin>(c);
  }
  if (method == "bocd") {
    expect_keys(params,
                {"hazard", "prior_mean", "prior_kappa", "prior_alpha", "prior_beta",
                 "prune_threshold", "max_prune_mass", "collapse_fraction", "min_run_length"},
                "bocd");
    BocdConfig c;
    c.hazard = get_or<double>(params, "hazard", c.hazard);
    c.prior_mean = get_or<double>(params, "prior_mean", c.prior_mean);
    c.prior_kappa = get_or<double>(params, "prior_kappa", c.prior_kappa);
    c.prior_alpha = get_or<double>(params, "prior_alpha", c.prior_alpha);
    c.prior_beta = get_or<double>(params, "prior_beta", c.prior_beta);
    c.prune_threshold = get_or<double>(params, "prune_threshold", c.prune_threshold);
    c.max_prune_mass = get_or<double>(params, "max_prune_mass", c.max_prune_mass);
    c.collapse_fraction = get_or<double>(params, "collapse_fraction", c.collapse_fraction);
    c.min_run_length = get_or<std::size_t>(params, "min_run_length", c.min_run_length);
    return std::make_unique<Bocd>(c);
  }
  if (method == "incremental_ks") {
    expect_keys(params, {"window_size", "alpha"}, "incremental_ks");
    data_drift::IncrementalKsConfig c;
    c.window_size = get_or<std::size_t>(params, "window_size", c.window_size);
    c.alpha = get_or<double>(params, "alpha", c.alpha);
    return std::make_unique<data_drift::IncrementalKs>(c);
  }
  throw UsageError("unknown streaming method: " + method);
}

// Rebuild a streaming detector from a snapshot document (method + config come
// from the snapshot itself).
inline std::unique_ptr<StreamingDetector> restore_streaming_detector(
    const nlohmann::json& snapshot) {
  if (!snapshot.contains("method") || !snapshot.contains("config")) {
    throw DataError("snapshot: missing method or config");
  }
  auto detector =
      make_streaming_detector(snapshot.at("method").get<std::string>(), snapshot.at("config"));
  detector->restore(snapshot);
  return detector;
}

// ----- batch detector construction -----------------------------------------

struct BatchOptions {
  double alpha = 0.05;
  std::optional<double> distance_threshold;
  std::size_t permutations = 0;  // >0: attach a permutation callback
  std::uint64_t seed = 1;
};

inline CallbackSet batch_callbacks(const BatchOptions& opts) {
  CallbackSet cbs;
  if (opts.permutations > 0) {
    numerics::PermutationPlan plan;
    plan.n_permutations = opts.permutations;
    plan.seed = opts.seed;
    cbs.add(std::make_shared<PermutationTestCallback>(plan));
  }
  return cbs;
}

inline std::unique_ptr<data_drift::NumericBatchDetector> make_numeric_detector(
    const std::string& method, const nlohmann::json& params, const BatchOptions& opts) {
  using namespace data_drift;
  using detail::expect_keys;
  using detail::get_or;
  CallbackSet cbs = batch_callbacks(opts);
  if (method == "ks") {
    expect_keys(params, {}, "ks");
    return std::make_unique<KsTest>(opts.alpha, std::move(cbs));
  }
  if (method == "cvm" || method == "anderson_darling") {
    expect_keys(params, {"permutations", "permutation_seed", "exact_threshold", "approximate"},
                method);
    numerics::PermutationPlan plan;
    plan.n_permutations = get_or<std::size_t>(params, "permutations", 2000);
    plan.seed = get_or<std::uint64_t>(params, "permutation_seed", opts.seed);
    plan.exact_threshold = get_or<std::size_t>(params, "exact_threshold", plan.exact_threshold);
    if (method == "cvm") {
      return std::make_unique<CramerVonMisesTest>(opts.alpha, plan, std::move(cbs));
    }
    const bool approx = get_or<bool>(params, "approximate", false);
    return std::make_unique<AndersonDarlingTest>(opts.alpha, plan, approx, std::move(cbs));
  }
  if (method == "mann_whitney") {
    expect_keys(params, {}, "mann_whitney");
    return std::make_unique<MannWhitneyTest>(opts.alpha, std::move(cbs));
  }
  if (method == "welch_t") {
    expect_keys(params, {}, "welch_t");
    return std::make_unique<WelchTTest>(opts.alpha, std::move(cbs));
  }
  if (method == "emd") {
    expect_keys(params, {}, "emd");
    return std::make_unique<EmdDetector>(opts.distance_threshold, opts.alpha, std::move(cbs));
  }
  if (method == "mmd") {
    expect_keys(params, {"sigma", "unbiased"}, "mmd");
    MmdConfig c;
    if (params.is_object() && params.contains("sigma")) c.sigma = params.at("sigma").get<double>();
    c.unbiased = get_or<bool>(params, "unbiased", false);
    c.drift_threshold = opts.distance_threshold;
    c.alpha = opts.alpha;
    return std::make_unique<MmdUnivariate>(c, std::move(cbs));
  }
  if (is_distance_method_name(method)) {
    expect_keys(params, {"bins", "strategy"}, method);
    HistogramDistanceConfig c;
    c.bins = get_or<std::size_t>(params, "bins", c.bins);
    const auto strategy = get_or<std::string>(params, "strategy", "equal_width");
    if (strategy == "equal_width") {
      c.strategy = numerics::BinStrategy::kEqualWidth;
    } else if (strategy == "equal_frequency") {
      c.strategy = numerics::BinStrategy::kEqualFrequency;
    } else {
      throw UsageError(method + ": unknown bin strategy '" + strategy + "'");
    }
    return std::make_unique<HistogramDistanceDetector>(distance_method_from_name(method), c,
                                                       opts.distance_threshold, opts.alpha,
                                                       std::move(cbs));
  }
  throw UsageError("method '" + method + "' does not apply to numeric features");
}

inline std::unique_ptr<data_drift::CategoricalBatchDetector> make_categorical_detector(
    const std::string& method, const nlohmann::json& params, const BatchOptions& opts) {
  using namespace data_drift;
  CallbackSet cbs = batch_callbacks(opts);
  if (method == "chi2") {
    detail::expect_keys(params, {}, "chi2");
    return std::make_unique<ChiSquaredTest>(opts.alpha, std::move(cbs));
  }
  if (supports_categorical(method)) {
    detail::expect_keys(params, {"bins", "strategy"}, method);
    return std::make_unique<CategoricalDistance>(distance_method_from_name(method),
                                                 opts.distance_threshold, opts.alpha,
                                                 std::move(cbs));
  }
  throw UsageError("method '" + method + "' does not apply to categorical features");
}

}  // namespace driftkit::cli
