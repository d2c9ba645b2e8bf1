//===-- ast.hpp - Syntax tree -----------------------------------*- C++ -*-===//
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

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "racesat/expr.hpp"

namespace racesat::frontend {

struct Stmt;

struct Block {
  std::vector<Stmt> stmts;
};

struct Declarator {
  std::string name;
  std::vector<SourceExpr> dims;  // empty for scalars
  std::optional<SourceExpr> init;
  bool brace_init = false;  // `= { ... }`, contents not modeled
};

/// `int a = 1, arr[N][M];`
struct Decl {
  std::vector<Declarator> declarators;
};

/// Scalar (`indices` empty) or array element on the left of an assignment.
struct LValue {
  std::string name;
  std::vector<SourceExpr> indices;

  bool is_array() const { return !indices.empty(); }
};

/// `target = value;` or, with `op` set, `target op= value;`.
struct Assign {
  LValue target;
  std::optional<BinaryOp> op;
  SourceExpr value;
};

struct IncDec {
  LValue target;
  bool increment = true;
  bool prefix = false;
};

struct ForInit {
  std::string var;
  bool declares = false;  // `for (int i = ...`
  SourceExpr value;
};

enum class StepKind { Increment, Decrement, AddAssign, SubAssign };

struct ForStep {
  std::string var;
  StepKind kind = StepKind::Increment;
  bool prefix = false;
  SourceExpr amount = SourceExpr::lit(1);  // AddAssign/SubAssign only
};

struct For {
  ForInit init;
  SourceExpr cond;
  ForStep step;
  Block body;
};

/// if / else if / else, flattened into arms.
struct If {
  std::vector<std::pair<SourceExpr, Block>> arms;
  std::optional<Block> otherwise;
};

struct Pragma {
  std::string text;  // directive body after `#pragma`

  /// First word of the directive, e.g. "omp" or "drs".
  std::string directive() const {
    std::size_t b = text.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    std::size_t e = text.find_first_of(" \t(", b);
    return text.substr(b, e == std::string::npos ? std::string::npos : e - b);
  }
};

struct ExprStmt {
  SourceExpr expr;
};

/// A statement outside the analyzable subset, kept verbatim.
struct Unsupported {
  std::string text;
  std::string reason;
  std::vector<std::string> identifiers;
};

struct Param {
  std::string name;
  std::vector<std::optional<SourceExpr>> dims;  // array parameters
  bool pointer = false;
  bool integer = true;
};

struct Function {
  std::string name;
  std::string return_type;
  std::vector<Param> params;
  Block body;
};

struct Stmt {
  using Node = std::variant<Decl, Assign, IncDec, For, If, Block, Pragma,
                            ExprStmt, Unsupported, Function>;
  Node node;
  int line = 0;
  int column = 0;

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
};

struct Ast {
  std::vector<Stmt> items;
};

/// Statements directly nested in `s`, in source order. If arms come first,
/// then the else block.
inline std::vector<const Stmt*> children(const Stmt& s) {
  std::vector<const Stmt*> out;
  auto add = [&](const Block& b) {
    for (const auto& c : b.stmts) out.push_back(&c);
  };
  if (auto f = s.as<For>()) {
    add(f->body);
  } else if (auto i = s.as<If>()) {
    for (const auto& arm : i->arms) add(arm.second);
    if (i->otherwise) add(*i->otherwise);
  } else if (auto b = s.as<Block>()) {
    add(*b);
  } else if (auto fn = s.as<Function>()) {
    add(fn->body);
  }
  return out;
}

/// Position of a statement: an index into `Ast::items`, then an index into
/// `children()` of each successive statement.
struct LoopRef {
  std::vector<std::size_t> path;

  friend bool operator==(const LoopRef&, const LoopRef&) = default;
};

/// Resolves a path; throws std::out_of_range on a dangling one.
inline const Stmt& resolve(const Ast& ast, const std::vector<std::size_t>& path) {
  if (path.empty()) throw std::out_of_range("empty statement path");
  const Stmt* cur = &ast.items.at(path[0]);
  for (std::size_t k = 1; k < path.size(); ++k) {
    auto kids = children(*cur);
    cur = kids.at(path[k]);
  }
  return *cur;
}

inline const For& resolve(const Ast& ast, const LoopRef& ref) {
  const Stmt& s = resolve(ast, ref.path);
  const For* f = s.as<For>();
  if (!f) throw std::logic_error("LoopRef does not name a for-loop");
  return *f;
}

/// Pre-order walk; `f(stmt, path)` returns false to skip the children.
template <typename F>
void walk(const Ast& ast, F&& f) {
  std::vector<std::size_t> path;
  auto rec = [&](auto& self, const Stmt& s) -> void {
    if (!f(s, path)) return;
    auto kids = children(s);
    for (std::size_t k = 0; k < kids.size(); ++k) {
      path.push_back(k);
      self(self, *kids[k]);
      path.pop_back();
    }
  };
  for (std::size_t k = 0; k < ast.items.size(); ++k) {
    path.push_back(k);
    rec(rec, ast.items[k]);
    path.pop_back();
  }
}

}  // namespace racesat::frontend
