//===-- acceptance_test.cpp - Acceptance checks -----------------*- C++ -*-===//
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
// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion and exits
// nonzero when any criterion fails.
//
//===----------------------------------------------------------------------===//
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "support/generator.hpp"
#include "support/support.hpp"

namespace racesat {
namespace {

using testing::corpus_dir;
using testing::corpus_file;
using testing::external_config;
using testing::external_options;
using testing::internal_config;
using testing::Pipeline;
using testing::read_file;
using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string verdict_name(const detector::Report& r) { return to_string(r.verdict.kind); }

// FP suite under the default configuration.
Outcome fp_suite() {
  const std::vector<std::pair<std::string, detector::VerdictKind>> expected = {
      {"fp1.c", detector::VerdictKind::Race},   {"fp2.c", detector::VerdictKind::NoRace},
      {"fp3.c", detector::VerdictKind::NoRace}, {"fp6.c", detector::VerdictKind::NoRace},
      {"fp7.c", detector::VerdictKind::NoRace}};
  auto start = Clock::now();
  Outcome o{true, ""};
  for (const auto& [file, want] : expected) {
    auto r = detector::analyze(corpus_file(file), internal_config());
    o.detail += file.substr(0, 3) + "=" + verdict_name(r) + " ";
    o.pass &= r.verdict.kind == want;
  }
  double t = since(start);
  o.pass &= t < 5.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "in %.2f s", t);
  o.detail += buf;
  return o;
}

// listing1.c witness at element 14.
Outcome listing_one() {
  auto report = detector::analyze(corpus_file("listing1.c"), internal_config());
  if (report.verdict.kind != detector::VerdictKind::Race) return {false, verdict_name(report)};
  const auto* pair = report.witnesses().at(0);
  Assignment w;
  for (const auto& [name, v] : pair->witness) w[decode_symbol(name)] = v;
  std::int64_t a = eval_expr(SymExpr::var(encoding::index_symbol(1, 1)), w);
  std::int64_t b = eval_expr(SymExpr::var(encoding::index_symbol(1, 2)), w);

  // The index symbols must also agree with the index expressions they define.
  bool consistent = true;
  for (const auto& cs : Pipeline(read_file(corpus_file("listing1.c"))).systems()) {
    if (cs.meta.first_id != pair->first_id || cs.meta.second_id != pair->second_id) continue;
    consistent = satisfies(cs, w);
  }
  std::ostringstream d;
  d << "index.1__1=" << a << " index.1__2=" << b << " (i__1=" << w.at({"i", 1})
    << ", i__2=" << w.at({"i", 2}) << ")";
  return {a == 14 && b == 14 && consistent, d.str()};
}

// DRB054: no race, and dimension 1 compares i with i - 1.
Outcome drb054() {
  auto report = detector::analyze(corpus_file("drb054.c"), internal_config());
  bool no_race = report.verdict.kind == detector::VerdictKind::NoRace;
  Pipeline p(read_file(corpus_file("drb054.c")));
  bool found = false;
  std::string shown;
  for (const auto& cs : p.systems()) {
    std::map<Symbol, SymExpr> defs;
    bool has_equality = false;
    for (const auto& a : cs.atoms) {
      const auto* c = std::get_if<Comparison>(&a.body);
      if (!c) continue;
      if (a.role == AtomRole::Index) {
        if (auto v = c->lhs.as<VarNode<Symbol>>()) defs.emplace(v->name, c->rhs);
      }
      if (a.role == AtomRole::IndexEquality &&
          c->lhs == SymExpr::var(encoding::index_symbol(1, 1)) &&
          c->rhs == SymExpr::var(encoding::index_symbol(1, 2)))
        has_equality = true;
    }
    auto d1 = defs.find(encoding::index_symbol(1, 1));
    auto d2 = defs.find(encoding::index_symbol(1, 2));
    if (!has_equality || d1 == defs.end() || d2 == defs.end()) continue;
    std::set<Symbol> used;
    for_each_var(d1->second, [&](const Symbol& s) { used.insert(s); });
    for_each_var(d2->second, [&](const Symbol& s) { used.insert(s); });
    if (used.size() != 1 || used.begin()->copy) continue;
    Symbol shared = *used.begin();
    bool constant_gap = true;
    std::int64_t gap = 0;
    for (std::int64_t x = -50; x <= 50; ++x) {
      Assignment a{{shared, x}};
      std::int64_t g = eval_expr(d1->second, a) - eval_expr(d2->second, a);
      if (x == -50) gap = g;
      constant_gap &= g == gap;
    }
    if (constant_gap && std::abs(gap) == 1) {
      found = true;
      shown = "index.1__1 = " + to_string(d1->second) + ", index.1__2 = " + to_string(d2->second);
      break;
    }
  }
  return {no_race && found, verdict_name(report) + "; " + (found ? shown : "no offset-1 equality")};
}

// listing6.c by three methods.
Outcome listing_six() {
  auto internal = detector::analyze(corpus_file("listing6.c"), internal_config());
  auto external = detector::analyze(corpus_file("listing6.c"), external_config());
  bool collision = false;
  for (int i1 = 0; i1 < 5; ++i1)
    for (int i2 = 0; i2 < 5; ++i2) {
      int w1 = i1 % 6 + 6 * i1;
      int w2 = i2 % 6 + 6 * i2;
      int r2 = 2 * i2;
      if (i1 != i2 && (w1 == r2 || w1 == w2)) collision = true;
    }
  bool pass = internal.verdict.kind == detector::VerdictKind::NoRace &&
              external.verdict.kind == detector::VerdictKind::NoRace && !collision;
  return {pass, "internal=" + verdict_name(internal) + " external=" + verdict_name(external) +
                    " enumeration=" + (collision ? "race" : "no-race")};
}

// Metric rows.
Outcome metric_rows() {
  struct Row {
    bench::ConfusionCounts c;
    double p, r, a, f;
  };
  const Row rows[] = {{{29, 1, 20, 2}, 0.935, 0.967, 0.942, 0.951},
                      {{26, 4, 24, 0}, 1.000, 0.867, 0.926, 0.929}};
  bool pass = true;
  std::string detail;
  for (const auto& row : rows) {
    bench::Metrics m = bench::metrics(row.c);
    auto close = [](const std::optional<double>& v, double want) {
      return v && std::fabs(*v - want) <= 0.001;
    };
    pass &= close(m.precision, row.p) && close(m.recall, row.r) && close(m.accuracy, row.a) &&
            close(m.f1, row.f);
    detail += "(" + bench::format_metric(m.precision) + ", " + bench::format_metric(m.recall) +
              ", " + bench::format_metric(m.accuracy) + ", " + bench::format_metric(m.f1) + ") ";
  }
  return {pass, detail};
}

// Constant folding flips FP1 and nothing else.
Outcome const_fold() {
  detector::Config folded = internal_config();
  folded.const_fold = true;
  bool pass = true;
  std::string detail;
  for (const char* f : {"fp1.c", "fp2.c", "fp3.c", "fp6.c", "fp7.c"}) {
    auto a = detector::analyze(corpus_file(f), internal_config()).verdict.kind;
    auto b = detector::analyze(corpus_file(f), folded).verdict.kind;
    bool flipped = a != b;
    bool want_flip = std::string(f) == "fp1.c";
    pass &= flipped == want_flip;
    if (want_flip) pass &= b == detector::VerdictKind::NoRace;
    detail += std::string(f).substr(0, 3) + ":" + to_string(a) + "->" + to_string(b) + " ";
  }
  return {pass, detail};
}

// Random loops against the oracle, and the two backends against each other.
Outcome differential() {
  constexpr int kLoops = 200;
  auto start = Clock::now();
  testing::LoopGenerator gen(20240611);
  ExternalSolver ext(external_options(), 8);
  int verdict_mismatch = 0, pair_mismatch = 0, pairs = 0, races = 0;
  std::string first_failure;
  for (int n = 0; n < kLoops; ++n) {
    std::string src = gen.program();
    Pipeline p(src);
    bool oracle =
        bench::oracle_simulate(p.ast, p.target, p.env, {}) == bench::OracleVerdict::Race;
    auto report = detector::analyze_source(src, "gen.c", internal_config());
    bool detected = report.verdict.kind == detector::VerdictKind::Race;
    bool supported = report.verdict.kind == detector::VerdictKind::Race ||
                     report.verdict.kind == detector::VerdictKind::NoRace;
    races += oracle;
    if (!supported || detected != oracle) {
      ++verdict_mismatch;
      if (first_failure.empty()) first_failure = src;
    }

    auto systems = p.systems();
    std::vector<std::future<SolveResult>> futures;
    for (const auto& cs : systems)
      futures.push_back(std::async(std::launch::async, [&ext, &cs] { return ext.solve(cs); }));
    for (std::size_t k = 0; k < systems.size(); ++k) {
      SolveStatus a = solve_bounded(systems[k]).status;
      SolveStatus b = futures[k].get().status;
      ++pairs;
      if (a != b || a == SolveStatus::Unknown) {
        ++pair_mismatch;
        if (first_failure.empty()) first_failure = emit_smtlib(systems[k]);
      }
    }
  }
  double t = since(start);
  std::ostringstream d;
  d << kLoops << " loops (" << races << " racy), verdict mismatches " << verdict_mismatch << ", "
    << pairs << " pair systems, backend mismatches " << pair_mismatch << ", " << std::fixed;
  d.precision(1);
  d << t << " s";
  if (!first_failure.empty()) std::fprintf(stderr, "first failure:\n%s\n", first_failure.c_str());
  return {verdict_mismatch == 0 && pair_mismatch == 0 && t < 120.0, d.str()};
}

// Emitted division and remainder against the evaluator, in one solver run.
Outcome conformance() {
  Symbol x{"x", std::nullopt}, y{"y", std::nullopt}, q{"q", std::nullopt}, r{"r", std::nullopt};
  auto var = [](const Symbol& s) { return SymExpr::var(s); };
  std::string script = "(set-logic QF_NIA)\n";
  for (const char* n : {"x", "y", "q", "r"}) script += "(declare-const " + std::string(n) + " Int)\n";
  std::vector<std::pair<std::int64_t, std::int64_t>> expected;
  for (std::int64_t a = -20; a <= 20; ++a)
    for (std::int64_t b = -20; b <= 20; ++b) {
      if (b == 0) continue;
      ConstraintSystem cs;
      cs.atoms = {
          Atom::cmp(var(x), Rel::Eq, SymExpr::lit(a), AtomRole::KnownValue),
          Atom::cmp(var(y), Rel::Eq, SymExpr::lit(b), AtomRole::KnownValue),
          Atom::cmp(var(q), Rel::Eq, SymExpr::binary(BinaryOp::Div, var(x), var(y)), AtomRole::Path),
          Atom::cmp(var(r), Rel::Eq, SymExpr::binary(BinaryOp::Mod, var(x), var(y)), AtomRole::Path),
      };
      cs.declare_missing();
      Assignment pt{{x, a}, {y, b}};
      std::int64_t qv = eval_expr(SymExpr::binary(BinaryOp::Div, var(x), var(y)), pt);
      std::int64_t rv = eval_expr(SymExpr::binary(BinaryOp::Mod, var(x), var(y)), pt);
      expected.emplace_back(qv, rv);

      std::string asserts;
      std::istringstream lines(emit_smtlib(cs));
      for (std::string line; std::getline(lines, line);)
        if (line.rfind("(assert", 0) == 0) asserts += line + "\n";
      auto num = [](std::int64_t v) {
        return v < 0 ? "(- " + std::to_string(-v) + ")" : std::to_string(v);
      };
      // Consistent with the evaluator, and no other value is possible.
      script += "(push 1)\n" + asserts + "(check-sat)\n";
      script += "(assert (not (and (= q " + num(qv) + ") (= r " + num(rv) + "))))\n(check-sat)\n(pop 1)\n";
    }
  ExternalOptions opts = external_options();
  opts.timeout_seconds = 300;
  ProcessOutput out = run_process(detail::split_command(opts.command), script, opts.timeout_seconds);
  std::istringstream in(out.output);
  std::vector<std::string> answers;
  for (std::string w; in >> w;) answers.push_back(w);
  std::size_t agree = 0;
  for (std::size_t k = 0; k < expected.size(); ++k)
    if (2 * k + 1 < answers.size() && answers[2 * k] == "sat" && answers[2 * k + 1] == "unsat")
      ++agree;
  bool pass = out.started && !out.timed_out && answers.size() == 2 * expected.size() &&
              agree == expected.size();
  return {pass, std::to_string(agree) + "/" + std::to_string(expected.size()) +
                    " operand pairs agree for / and %"};
}

}  // namespace
}  // namespace racesat

int main() {
  using namespace racesat;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"FP suite reproduces under the default configuration", fp_suite},
      {"listing1.c race witness on element 14", listing_one},
      {"DRB054 no race with shared offset-1 index equality", drb054},
      {"listing6.c no race by internal, external and enumeration", listing_six},
      {"metric rows within 0.001", metric_rows},
      {"--const-fold flips FP1 only", const_fold},
      {"random loops: detector vs oracle, internal vs external", differential},
      {"SMT division and remainder match C semantics on [-20,20]^2", conformance},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %zu. %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
