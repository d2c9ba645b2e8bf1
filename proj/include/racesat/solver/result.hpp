//===-- result.hpp - Solver results -----------------------------*- C++ -*-===//
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

#pragma once

#include <optional>
#include <string>

#include "racesat/encoding/symbol.hpp"

namespace racesat {

enum class SolveStatus { Sat, Unsat, Unknown };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::Unsat: return "unsat";
    case SolveStatus::Unknown: return "unknown";
  }
  return "?";
}

struct SolveResult {
  SolveStatus status = SolveStatus::Unknown;
  /// Present for Sat whenever the backend produced a model.
  std::optional<Assignment> witness;
  /// Why the result is Unknown, or notes about an incomplete search.
  std::string reason;
  /// Unsat only within the searched window.
  bool incomplete = false;
  std::string backend;
  double seconds = 0;

  bool sat() const { return status == SolveStatus::Sat; }
  bool unsat() const { return status == SolveStatus::Unsat; }
};

}  // namespace racesat
