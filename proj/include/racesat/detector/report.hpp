//===-- report.hpp - Reports and verdicts -----------------------*- C++ -*-===//
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
// Detector configuration, verdicts and reports, with JSON and plain-text
// renderings.
//
//===----------------------------------------------------------------------===//
#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace racesat::detector {

enum class Backend { Internal, External };

inline const char* to_string(Backend b) {
  return b == Backend::Internal ? "internal" : "external";
}

struct Config {
  Backend backend = Backend::Internal;
  std::string solver_cmd = "z3 -in";
  bool const_fold = false;
  std::int64_t window = 64;
  /// Directory receiving one SMT-LIB2 script per pair; empty to disable.
  std::string emit_smt;
  /// Compound assignments count as a write only.
  bool paper_compat = false;
  /// Keep solving after the first satisfiable pair.
  bool full_report = false;
  double timeout_seconds = 30;
  std::uint64_t budget = 200'000'000;

  friend bool operator==(const Config&, const Config&) = default;
};

enum class VerdictKind { Race, NoRace, Unsupported, Error };

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Race: return "race";
    case VerdictKind::NoRace: return "no-race";
    case VerdictKind::Unsupported: return "unsupported";
    case VerdictKind::Error: return "error";
  }
  return "?";
}

struct Verdict {
  VerdictKind kind = VerdictKind::Error;
  /// NoRace established only within the search window.
  bool incomplete = false;
  /// Diagnostic for Unsupported and Error.
  std::string reason;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct PairReport {
  int first_id = 0;
  int second_id = 0;
  std::string dep;  // "WAW" or "RAW"
  std::string array;
  int first_line = 0;
  int second_line = 0;
  std::string backend;
  std::string result;  // "sat", "unsat" or "unknown"
  bool incomplete = false;
  double seconds = 0;
  /// Values by solver name, for satisfiable pairs.
  std::map<std::string, std::int64_t> witness;
  std::string note;

  friend bool operator==(const PairReport&, const PairReport&) = default;
};

struct Report {
  std::string file;
  int loop_line = 0;
  Verdict verdict;
  std::vector<PairReport> pairs;
  Config config;

  /// The satisfiable pairs backing a Race verdict.
  std::vector<const PairReport*> witnesses() const {
    std::vector<const PairReport*> out;
    for (const auto& p : pairs)
      if (p.result == "sat") out.push_back(&p);
    return out;
  }

  friend bool operator==(const Report&, const Report&) = default;
};

/// 0 for NoRace, 1 for Race, 2 otherwise.
inline int exit_code(const Verdict& v) {
  switch (v.kind) {
    case VerdictKind::NoRace: return 0;
    case VerdictKind::Race: return 1;
    default: return 2;
  }
}

NLOHMANN_JSON_SERIALIZE_ENUM(Backend, {{Backend::Internal, "internal"},
                                       {Backend::External, "external"}})
NLOHMANN_JSON_SERIALIZE_ENUM(VerdictKind, {{VerdictKind::Race, "race"},
                                           {VerdictKind::NoRace, "no-race"},
                                           {VerdictKind::Unsupported, "unsupported"},
                                           {VerdictKind::Error, "error"}})
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Config, backend, solver_cmd, const_fold, window, emit_smt,
                                   paper_compat, full_report, timeout_seconds, budget)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Verdict, kind, incomplete, reason)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PairReport, first_id, second_id, dep, array, first_line,
                                   second_line, backend, result, incomplete, seconds, witness,
                                   note)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Report, file, loop_line, verdict, pairs, config)

inline std::string to_json(const Report& r, int indent = 2) {
  return nlohmann::json(r).dump(indent);
}

inline Report report_from_json(const std::string& text) {
  return nlohmann::json::parse(text).get<Report>();
}

inline std::string to_text(const Report& r) {
  std::ostringstream out;
  out << r.file;
  if (r.loop_line > 0) out << ":" << r.loop_line;
  out << ": ";
  switch (r.verdict.kind) {
    case VerdictKind::Race: out << "data race"; break;
    case VerdictKind::NoRace: out << "no data race"; break;
    case VerdictKind::Unsupported: out << "unsupported: " << r.verdict.reason; break;
    case VerdictKind::Error: out << "error: " << r.verdict.reason; break;
  }
  out << "\n";
  if (r.verdict.kind == VerdictKind::NoRace && r.verdict.incomplete)
    out << "  note: unknown variables were only searched within [-" << r.config.window << ", "
        << r.config.window << "]\n";
  for (const auto& p : r.pairs) {
    out << "  " << p.dep << " " << p.array << " #" << p.first_id << " (line " << p.first_line
        << ") vs #" << p.second_id << " (line " << p.second_line << "): " << p.result;
    if (p.incomplete) out << " (within window)";
    if (!p.witness.empty()) {
      out << " [";
      bool first = true;
      for (const auto& [name, v] : p.witness) {
        out << (first ? "" : ", ") << name << "=" << v;
        first = false;
      }
      out << "]";
    }
    if (!p.note.empty()) out << " " << p.note;
    out << "\n";
  }
  return out.str();
}

}  // namespace racesat::detector
