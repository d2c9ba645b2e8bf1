//===-- constraint.hpp - Constraint systems ---------------------*- C++ -*-===//
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
// The race constraint of one access pair: a conjunction of integer atoms
// over symbols, each symbol declared with an optional loop domain.
//
//===----------------------------------------------------------------------===//
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "racesat/encoding/symbol.hpp"

namespace racesat {

enum class Rel { Eq, Ne, Lt, Le, Gt, Ge };

inline const char* spelling(Rel r) {
  switch (r) {
    case Rel::Eq: return "==";
    case Rel::Ne: return "!=";
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Gt: return ">";
    case Rel::Ge: return ">=";
  }
  return "?";
}

inline bool compare(std::int64_t a, Rel r, std::int64_t b) {
  switch (r) {
    case Rel::Eq: return a == b;
    case Rel::Ne: return a != b;
    case Rel::Lt: return a < b;
    case Rel::Le: return a <= b;
    case Rel::Gt: return a > b;
    case Rel::Ge: return a >= b;
  }
  return false;
}

inline std::optional<Rel> to_rel(BinaryOp op) {
  switch (op) {
    case BinaryOp::Eq: return Rel::Eq;
    case BinaryOp::Ne: return Rel::Ne;
    case BinaryOp::Lt: return Rel::Lt;
    case BinaryOp::Le: return Rel::Le;
    case BinaryOp::Gt: return Rel::Gt;
    case BinaryOp::Ge: return Rel::Ge;
    default: return std::nullopt;
  }
}

/// Where an atom came from; carried for reports and tests only.
enum class AtomRole { Parallel, Domain, Path, Index, IndexEquality, KnownValue };

inline const char* to_string(AtomRole r) {
  switch (r) {
    case AtomRole::Parallel: return "parallel";
    case AtomRole::Domain: return "domain";
    case AtomRole::Path: return "path";
    case AtomRole::Index: return "index";
    case AtomRole::IndexEquality: return "index-equality";
    case AtomRole::KnownValue: return "known-value";
  }
  return "?";
}

struct Comparison {
  SymExpr lhs;
  Rel rel = Rel::Eq;
  SymExpr rhs;
  friend bool operator==(const Comparison&, const Comparison&) = default;
};

/// `expr` is a multiple of `modulus` (> 0).
struct Divisible {
  SymExpr expr;
  std::int64_t modulus = 1;
  friend bool operator==(const Divisible&, const Divisible&) = default;
};

struct Atom {
  std::variant<Comparison, Divisible> body;
  AtomRole role = AtomRole::Path;

  static Atom cmp(SymExpr lhs, Rel rel, SymExpr rhs, AtomRole role) {
    return {Comparison{std::move(lhs), rel, std::move(rhs)}, role};
  }
  friend bool operator==(const Atom&, const Atom&) = default;
};

template <typename F>
void for_each_symbol(const Atom& a, F&& f) {
  if (auto c = std::get_if<Comparison>(&a.body)) {
    for_each_var(c->lhs, f);
    for_each_var(c->rhs, f);
  } else {
    for_each_var(std::get<Divisible>(a.body).expr, f);
  }
}

inline std::string to_string(const Atom& a) {
  if (auto c = std::get_if<Comparison>(&a.body))
    return to_string(c->lhs) + " " + spelling(c->rel) + " " + to_string(c->rhs);
  const auto& d = std::get<Divisible>(a.body);
  return "divisible(" + to_string(d.expr) + ", " + std::to_string(d.modulus) + ")";
}

/// Inclusive range of a loop symbol: values anchor + k*step within
/// [lower, upper].
struct Domain {
  SymExpr lower;
  SymExpr upper;
  SymExpr anchor;
  std::int64_t step = 1;  // > 0
  friend bool operator==(const Domain&, const Domain&) = default;
};

struct SymbolDecl {
  Symbol symbol;
  std::optional<Domain> domain;
  friend bool operator==(const SymbolDecl&, const SymbolDecl&) = default;
};

enum class DepClass { WAW, RAW };

inline const char* to_string(DepClass c) {
  return c == DepClass::WAW ? "WAW" : "RAW";
}

struct PairMeta {
  int first_id = 0;
  int second_id = 0;
  DepClass dep = DepClass::RAW;
  std::string array;
  int first_line = 0;
  int second_line = 0;
  friend bool operator==(const PairMeta&, const PairMeta&) = default;
};

struct ConstraintSystem {
  std::vector<SymbolDecl> symbols;  // sorted by symbol
  std::vector<Atom> atoms;
  PairMeta meta;

  const SymbolDecl* find(const Symbol& s) const {
    auto it = std::lower_bound(
        symbols.begin(), symbols.end(), s,
        [](const SymbolDecl& d, const Symbol& x) { return d.symbol < x; });
    return it != symbols.end() && it->symbol == s ? &*it : nullptr;
  }

  /// Declares every symbol used by an atom or a domain that is not yet
  /// declared, and restores the sort order.
  void declare_missing() {
    std::set<Symbol> seen;
    for (const auto& d : symbols) seen.insert(d.symbol);
    std::vector<SymbolDecl> extra;
    auto add = [&](const Symbol& s) {
      if (seen.insert(s).second) extra.push_back({s, std::nullopt});
    };
    for (const auto& a : atoms) for_each_symbol(a, add);
    for (std::size_t k = 0; k < symbols.size(); ++k) {
      if (!symbols[k].domain) continue;
      Domain d = *symbols[k].domain;
      for_each_var(d.lower, add);
      for_each_var(d.upper, add);
      for_each_var(d.anchor, add);
    }
    symbols.insert(symbols.end(), extra.begin(), extra.end());
    std::sort(symbols.begin(), symbols.end(),
              [](const SymbolDecl& a, const SymbolDecl& b) { return a.symbol < b.symbol; });
  }

  friend bool operator==(const ConstraintSystem&, const ConstraintSystem&) = default;
};

/// Truth of `a` under `w`; an evaluation error makes the atom false.
inline bool holds(const Atom& a, const Assignment& w) {
  try {
    if (auto c = std::get_if<Comparison>(&a.body))
      return compare(eval_expr(c->lhs, w), c->rel, eval_expr(c->rhs, w));
    const auto& d = std::get<Divisible>(a.body);
    return arith::mod(eval_expr(d.expr, w), d.modulus) == 0;
  } catch (const EvalError&) {
    return false;
  }
}

inline bool satisfies(const ConstraintSystem& cs, const Assignment& w) {
  return std::all_of(cs.atoms.begin(), cs.atoms.end(),
                     [&](const Atom& a) { return holds(a, w); });
}

}  // namespace racesat
