//===-- racesat.cpp - Detector command line ---------------------*- C++ -*-===//
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
// racesat FILE [options]
//
// Exit status: 0 no race, 1 race, 2 unsupported input or error.
//
//===----------------------------------------------------------------------===//
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "racesat/detector/analyze.hpp"

int main(int argc, char** argv) {
  using namespace racesat::detector;
  Config config;
  std::string file;
  std::string backend = "internal";
  std::string format = "text";

  CLI::App app{"Detects data races on array elements in the loop marked #pragma drs."};
  app.add_option("file", file, "C source file")->required();
  app.add_option("--backend", backend, "internal or external")
      ->check(CLI::IsMember({"internal", "external"}));
  app.add_option("--solver-cmd", config.solver_cmd,
                 "external solver command; {file} is replaced by a script path, "
                 "otherwise the script is piped to stdin")
      ->default_str(config.solver_cmd);
  app.add_flag("--const-fold", config.const_fold,
               "fold constant initializers such as N*N into known values");
  app.add_option("--window", config.window, "search window for unknown variables")
      ->check(CLI::PositiveNumber)
      ->default_str("64");
  app.add_option("--emit-smt", config.emit_smt, "write one SMT-LIB2 script per pair to DIR");
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--paper-compat", config.paper_compat,
               "treat compound assignments as writes only");
  app.add_flag("--full-report", config.full_report,
               "solve every pair instead of stopping at the first race");
  app.add_option("--timeout", config.timeout_seconds, "external solver timeout in seconds")
      ->check(CLI::PositiveNumber)
      ->default_str("30");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    app.exit(e);
    return 2;
  }
  config.backend = backend == "external" ? Backend::External : Backend::Internal;

  Report report = analyze(file, config);
  if (format == "json") {
    std::cout << to_json(report) << "\n";
  } else {
    std::cout << to_text(report);
  }
  return exit_code(report.verdict);
}
