//===-- corpus.hpp - Labeled corpus runs ------------------------*- C++ -*-===//
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
// Labeled corpus runs. A manifest is a JSON object
//   {"cases": [{"path": "fp1.c", "expected": "no-race", "tag": "fp-suite"}, ...]}
// with paths relative to the manifest file.
//
//===----------------------------------------------------------------------===//
#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "racesat/bench/metrics.hpp"
#include "racesat/detector/analyze.hpp"

namespace racesat::bench {

enum class Expected { Race, NoRace };

NLOHMANN_JSON_SERIALIZE_ENUM(Expected, {{Expected::Race, "race"}, {Expected::NoRace, "no-race"}})

struct CorpusCase {
  std::string path;
  Expected expected = Expected::NoRace;
  std::string tag;
  friend bool operator==(const CorpusCase&, const CorpusCase&) = default;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CorpusCase, path, expected, tag)

struct Manifest {
  std::vector<CorpusCase> cases;
};

/// Reads a manifest; case paths are made relative to its directory.
inline Manifest load_manifest(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot read manifest " + file.string());
  nlohmann::json j = nlohmann::json::parse(in);
  Manifest m;
  m.cases = j.at("cases").get<std::vector<CorpusCase>>();
  for (auto& c : m.cases)
    if (std::filesystem::path(c.path).is_relative())
      c.path = (file.parent_path() / c.path).lexically_normal().string();
  return m;
}

enum class Outcome { TP, FN, TN, FP, Unsupported, Error };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::TP: return "TP";
    case Outcome::FN: return "FN";
    case Outcome::TN: return "TN";
    case Outcome::FP: return "FP";
    case Outcome::Unsupported: return "unsupported";
    case Outcome::Error: return "error";
  }
  return "?";
}

inline Outcome classify(Expected expected, const detector::Verdict& v) {
  using detector::VerdictKind;
  switch (v.kind) {
    case VerdictKind::Race: return expected == Expected::Race ? Outcome::TP : Outcome::FP;
    case VerdictKind::NoRace: return expected == Expected::Race ? Outcome::FN : Outcome::TN;
    case VerdictKind::Unsupported: return Outcome::Unsupported;
    case VerdictKind::Error: return Outcome::Error;
  }
  return Outcome::Error;
}

struct CaseResult {
  CorpusCase corpus_case;
  detector::Report report;
  Outcome outcome = Outcome::Error;
};

struct CorpusRun {
  ConfusionCounts counts;
  std::size_t unsupported = 0;
  std::size_t errored = 0;
  std::vector<CaseResult> cases;

  std::size_t analyzed() const { return static_cast<std::size_t>(counts.total()); }
};

inline CorpusRun run_corpus(const Manifest& manifest, const detector::Config& config) {
  CorpusRun run;
  for (const auto& c : manifest.cases) {
    CaseResult r{c, detector::analyze(c.path, config), Outcome::Error};
    r.outcome = classify(c.expected, r.report.verdict);
    switch (r.outcome) {
      case Outcome::TP: ++run.counts.tp; break;
      case Outcome::FN: ++run.counts.fn; break;
      case Outcome::TN: ++run.counts.tn; break;
      case Outcome::FP: ++run.counts.fp; break;
      case Outcome::Unsupported: ++run.unsupported; break;
      case Outcome::Error: ++run.errored; break;
    }
    run.cases.push_back(std::move(r));
  }
  return run;
}

inline std::string format_metric(const std::optional<double>& v) {
  if (!v) return "undefined";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", *v);
  return buf;
}

/// Per-case lines followed by the confusion table and metrics.
inline std::string summary_text(const CorpusRun& run) {
  std::ostringstream out;
  for (const auto& c : run.cases) {
    out << to_string(c.outcome) << "\t" << c.corpus_case.path;
    if (!c.corpus_case.tag.empty()) out << "\t[" << c.corpus_case.tag << "]";
    if (!c.report.verdict.reason.empty()) out << "\t" << c.report.verdict.reason;
    out << "\n";
  }
  const auto& k = run.counts;
  Metrics m = metrics(k);
  out << "\n"
      << "              Race: yes   Race: no\n"
      << "  reported yes  TP " << k.tp << "       FP " << k.fp << "\n"
      << "  reported no   FN " << k.fn << "       TN " << k.tn << "\n"
      << "\n"
      << "  analyzed " << run.analyzed() << " of " << run.cases.size() << " (unsupported "
      << run.unsupported << ", errored " << run.errored << ")\n"
      << "  precision " << format_metric(m.precision) << "  recall " << format_metric(m.recall)
      << "  accuracy " << format_metric(m.accuracy) << "  f1 " << format_metric(m.f1) << "\n";
  return out.str();
}

inline nlohmann::json summary_json(const CorpusRun& run) {
  auto num = [](const std::optional<double>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  Metrics m = metrics(run.counts);
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : run.cases)
    cases.push_back({{"case", c.corpus_case},
                     {"outcome", to_string(c.outcome)},
                     {"verdict", c.report.verdict}});
  return {{"counts",
           {{"tp", run.counts.tp}, {"fn", run.counts.fn}, {"tn", run.counts.tn}, {"fp", run.counts.fp}}},
          {"unsupported", run.unsupported},
          {"errored", run.errored},
          {"metrics",
           {{"precision", num(m.precision)},
            {"recall", num(m.recall)},
            {"accuracy", num(m.accuracy)},
            {"f1", num(m.f1)}}},
          {"cases", cases}};
}

}  // namespace racesat::bench
