//===-- racesat-bench.cpp - Corpus bench tool -------------------*- C++ -*-===//
//
// Copyright 2026 The racesat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
//===----------------------------------------------------------------------===//

//
// racesat-bench MANIFEST [options]
//
// Runs the detector over a labeled corpus and prints confusion counts and
// metrics. Exit status is 0 unless a case could not be read.
//
//===----------------------------------------------------------------------===//
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "racesat/bench/corpus.hpp"

int main(int argc, char** argv) {
  using namespace racesat;
  detector::Config config;
  std::string manifest;
  std::string backend = "internal";
  std::string format = "text";

  CLI::App app{"Runs the race detector over a labeled corpus."};
  app.add_option("manifest", manifest, "JSON manifest")->required();
  app.add_option("--backend", backend, "internal or external")
      ->check(CLI::IsMember({"internal", "external"}));
  app.add_option("--solver-cmd", config.solver_cmd, "external solver command");
  app.add_flag("--const-fold", config.const_fold, "fold constant initializers");
  app.add_option("--window", config.window, "search window for unknown variables")
      ->check(CLI::PositiveNumber);
  app.add_flag("--paper-compat", config.paper_compat,
               "treat compound assignments as writes only");
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    app.exit(e);
    return 2;
  }
  config.backend = backend == "external" ? detector::Backend::External
                                         : detector::Backend::Internal;
  try {
    bench::CorpusRun run = bench::run_corpus(bench::load_manifest(manifest), config);
    if (format == "json") {
      std::cout << bench::summary_json(run).dump(2) << "\n";
    } else {
      std::cout << bench::summary_text(run);
    }
    return run.errored == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "racesat-bench: " << e.what() << "\n";
    return 2;
  }
}
