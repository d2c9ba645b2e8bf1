//===-- symbol.hpp - Symbol naming ------------------------------*- C++ -*-===//
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
// Solver symbols. A symbol is a source name, optionally tagged with the id
// of the access copy it belongs to; untagged symbols are shared by both
// copies of a pair.
//
//===----------------------------------------------------------------------===//
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "racesat/expr.hpp"
#include "racesat/solver/eval.hpp"

namespace racesat {

struct Symbol {
  std::string base;
  std::optional<int> copy;

  friend auto operator<=>(const Symbol&, const Symbol&) = default;
  friend bool operator==(const Symbol&, const Symbol&) = default;

  /// `base` or `base__copy`. Index symbols use the base `index.N`, which no
  /// C identifier can spell.
  std::string smt_name() const {
    return copy ? base + "__" + std::to_string(*copy) : base;
  }
};

/// Inverse of smt_name for names it produced.
inline Symbol decode_symbol(const std::string& name) {
  auto pos = name.rfind("__");
  if (pos != std::string::npos && pos + 2 < name.size()) {
    bool digits = true;
    for (std::size_t k = pos + 2; k < name.size(); ++k)
      digits &= name[k] >= '0' && name[k] <= '9';
    if (digits && name.size() - pos - 2 < 10)
      return {name.substr(0, pos), std::stoi(name.substr(pos + 2))};
  }
  return {name, std::nullopt};
}

using SymExpr = Expr<Symbol>;
using Assignment = std::map<Symbol, std::int64_t>;

inline std::string to_string(const SymExpr& e) {
  return to_string(e, [](const Symbol& s) { return s.smt_name(); });
}

/// Evaluates `e` under `a`. Throws EvalError for unassigned symbols as well
/// as for division by zero and overflow.
inline std::int64_t eval_expr(const SymExpr& e, const Assignment& a) {
  return evaluate(e, [&](const Symbol& s) -> std::int64_t {
    auto it = a.find(s);
    if (it == a.end()) throw EvalError("unassigned symbol " + s.smt_name());
    return it->second;
  });
}

}  // namespace racesat
