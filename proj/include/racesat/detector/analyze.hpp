//===-- analyze.hpp - Detector driver ---------------------------*- C++ -*-===//
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
// The end-to-end pipeline for one source file.
//
//===----------------------------------------------------------------------===//
#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "racesat/analysis/accesses.hpp"
#include "racesat/analysis/loops.hpp"
#include "racesat/analysis/variables.hpp"
#include "racesat/detector/report.hpp"
#include "racesat/encoding/encode.hpp"
#include "racesat/frontend/locate.hpp"
#include "racesat/frontend/macros.hpp"
#include "racesat/frontend/parser.hpp"
#include "racesat/solver/bounded.hpp"
#include "racesat/solver/external.hpp"
#include "racesat/solver/smtlib.hpp"

namespace racesat::detector {

/// Solves one pair system with the configured backend.
inline SolveResult solve_pair(const ConstraintSystem& cs, const Config& config) {
  if (config.backend == Backend::External)
    return solve_external(cs, ExternalOptions{config.solver_cmd, config.timeout_seconds});
  BoundedOptions opts;
  opts.window = config.window;
  opts.budget = config.budget;
  return solve_bounded(cs, opts);
}

inline PairReport make_pair_report(const ConstraintSystem& cs, const SolveResult& r) {
  PairReport p;
  p.first_id = cs.meta.first_id;
  p.second_id = cs.meta.second_id;
  p.dep = to_string(cs.meta.dep);
  p.array = cs.meta.array;
  p.first_line = cs.meta.first_line;
  p.second_line = cs.meta.second_line;
  p.backend = r.backend;
  p.result = to_string(r.status);
  p.incomplete = r.unsat() && r.incomplete;
  p.seconds = r.seconds;
  if (r.witness)
    for (const auto& [sym, v] : *r.witness) p.witness[sym.smt_name()] = v;
  p.note = r.reason;
  return p;
}

/// Runs the detector on source text; `name` labels the report.
inline Report analyze_source(const std::string& source, const std::string& name,
                             const Config& config) {
  Report report;
  report.file = name;
  report.config = config;
  try {
    auto [expanded, macros] = frontend::expand_macros(source);
    frontend::Ast ast = frontend::parse(expanded);
    frontend::LoopRef target = frontend::locate_target_loop(ast);
    report.loop_line = frontend::resolve(ast, target.path).line;
    analysis::VarEnv env = analysis::record_variables(ast, target, config.const_fold);
    analysis::collect_loops(ast, target);
    analysis::AccessLists lists =
        analysis::collect_accesses(ast, target, env, {config.paper_compat});

    if (!config.emit_smt.empty()) std::filesystem::create_directories(config.emit_smt);
    bool race = false, unknown = false, incomplete = false;
    std::string unknown_reason;
    for (const auto& pair : encoding::enumerate_pairs(lists.writes, lists.reads)) {
      // Distinct arrays never alias in the subset.
      if (pair.first.array != pair.second.array) continue;
      ConstraintSystem cs =
          encoding::build_pair_constraint(pair.first, pair.second, pair.dep, env);
      if (!config.emit_smt.empty()) {
        auto path = std::filesystem::path(config.emit_smt) /
                    ("pair_" + std::to_string(cs.meta.first_id) + "_" +
                     std::to_string(cs.meta.second_id) + ".smt2");
        std::ofstream(path) << emit_smtlib(cs);
      }
      SolveResult r = solve_pair(cs, config);
      report.pairs.push_back(make_pair_report(cs, r));
      if (r.sat()) {
        race = true;
        if (!config.full_report) break;
      } else if (r.unsat()) {
        incomplete |= r.incomplete;
      } else {
        unknown = true;
        if (unknown_reason.empty()) unknown_reason = r.reason;
      }
    }
    if (race) {
      report.verdict = {VerdictKind::Race, false, ""};
    } else if (unknown) {
      report.verdict = {VerdictKind::Unsupported, false, "solver returned unknown: " + unknown_reason};
    } else {
      report.verdict = {VerdictKind::NoRace, incomplete, ""};
    }
  } catch (const UnsupportedError& e) {
    report.verdict = {VerdictKind::Unsupported, false, e.what()};
  } catch (const SyntaxError& e) {
    report.verdict = {VerdictKind::Error, false, std::string("syntax error at ") + e.what()};
  } catch (const std::exception& e) {
    report.verdict = {VerdictKind::Error, false, e.what()};
  }
  return report;
}

/// Runs the detector on a file.
inline Report analyze(const std::filesystem::path& file, const Config& config) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    Report report;
    report.file = file.string();
    report.config = config;
    report.verdict = {VerdictKind::Error, false, "cannot read " + file.string()};
    return report;
  }
  std::ostringstream text;
  text << in.rdbuf();
  return analyze_source(text.str(), file.string(), config);
}

}  // namespace racesat::detector
