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

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "driftkit/cli/runner.hpp"

namespace {

using driftkit::cli::DataError;
using driftkit::cli::RunConfig;
using driftkit::cli::UsageError;

int run_main(int argc, char** argv) {
  CLI::App app{"driftkit: drift detection over files and streams"};

  std::string config_path;
  std::optional<std::string> mode, method, reference, test, input, output, snapshot, resume;
  std::optional<double> alpha;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> permutations;

  app.add_option("-c,--config", config_path, "JSON run configuration file");
  app.add_option("--mode", mode, "batch | stream | simulate");
  app.add_option("--method", method, "detection method name");
  app.add_option("--alpha", alpha, "significance level");
  app.add_option("--reference", reference, "reference CSV path");
  app.add_option("--test", test, "test CSV path");
  app.add_option("--input", input, "stream CSV path");
  app.add_option("--output", output, "report output path (default: stdout)");
  app.add_option("--seed", seed, "base seed");
  app.add_option("--snapshot", snapshot, "write detector snapshot here after a stream run");
  app.add_option("--resume", resume, "restore detector snapshot before a stream run");
  app.add_option("--permutations", permutations, "attach a permutation callback with N draws");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return driftkit::cli::kExitUsageError;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) {
      config = RunConfig::from_json(driftkit::cli::read_json_file(config_path));
    }
    if (mode) config.mode = *mode;
    if (method) config.method = *method;
    if (alpha) config.alpha = *alpha;
    if (reference) config.reference_path = *reference;
    if (test) config.test_path = *test;
    if (input) config.input_path = *input;
    if (output) config.output_path = *output;
    if (seed) config.seed = *seed;
    if (snapshot) config.snapshot_path = *snapshot;
    if (resume) config.resume_path = *resume;
    if (permutations) config.permutations = *permutations;

    const auto outcome = driftkit::cli::run(config);
    const std::string text = driftkit::cli::to_stable_json(outcome.report);
    if (config.output_path.empty()) {
      std::cout << text;
    } else {
      driftkit::cli::write_text_file(config.output_path, text);
    }
    return outcome.exit_code;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return driftkit::cli::kExitUsageError;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return driftkit::cli::kExitDataError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return driftkit::cli::kExitUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return driftkit::cli::kExitUsageError;
  }
}

}  // namespace

int main(int argc, char** argv) { return run_main(argc, argv); }
