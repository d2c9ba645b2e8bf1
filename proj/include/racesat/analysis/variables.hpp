//===-- variables.hpp - Scalar value tracking -------------------*- C++ -*-===//
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
// Records what is statically known about integer scalars on entry to the
// target loop. A variable is Known only when its latest update before the
// loop was an integer literal (or, with constant folding, a constant
// expression over literals and Known variables).
//
//===----------------------------------------------------------------------===//
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "racesat/frontend/ast.hpp"
#include "racesat/solver/eval.hpp"

namespace racesat::analysis {

using frontend::Ast;
using frontend::LoopRef;
using frontend::Stmt;

struct VarEnv {
  /// nullopt means the variable exists but its value is unknown.
  std::map<std::string, std::optional<std::int64_t>> bindings;

  bool contains(const std::string& name) const {
    return bindings.count(name) != 0;
  }
  std::optional<std::int64_t> known(const std::string& name) const {
    auto it = bindings.find(name);
    return it == bindings.end() ? std::nullopt : it->second;
  }
  friend bool operator==(const VarEnv&, const VarEnv&) = default;
};

namespace detail {

class VariableRecorder {
 public:
  VariableRecorder(VarEnv& env, bool const_fold)
      : env_(env), const_fold_(const_fold) {}

  /// Processes a whole statement. Inside `conditional` code a literal
  /// assignment may or may not have happened, so it yields Unknown.
  void visit(const Stmt& s, bool conditional) {
    using namespace frontend;
    if (auto d = s.as<Decl>()) {
      for (const auto& decl : d->declarators) {
        if (!decl.dims.empty()) continue;
        if (decl.init) {
          bind(decl.name, *decl.init, conditional);
        } else {
          env_.bindings[decl.name] = std::nullopt;
        }
      }
    } else if (auto a = s.as<Assign>()) {
      if (a->target.is_array()) return;
      if (a->op) {
        unknown(a->target.name);
      } else {
        bind(a->target.name, a->value, conditional);
      }
    } else if (auto i = s.as<IncDec>()) {
      if (!i->target.is_array()) unknown(i->target.name);
    } else if (auto f = s.as<For>()) {
      bind(f->init.var, f->init.value, conditional);
      for (const auto& c : f->body.stmts) visit(c, true);
      unknown(f->step.var);
    } else if (auto iff = s.as<If>()) {
      for (const auto& arm : iff->arms)
        for (const auto& c : arm.second.stmts) visit(c, true);
      if (iff->otherwise)
        for (const auto& c : iff->otherwise->stmts) visit(c, true);
    } else if (auto b = s.as<Block>()) {
      for (const auto& c : b->stmts) visit(c, conditional);
    } else if (auto u = s.as<Unsupported>()) {
      for (const auto& id : u->identifiers)
        if (env_.contains(id)) unknown(id);
    } else if (auto fn = s.as<Function>()) {
      enter_function(*fn);
      for (const auto& c : fn->body.stmts) visit(c, conditional);
    }
  }

  void enter_function(const frontend::Function& fn) {
    for (const auto& p : fn.params)
      if (p.integer && !p.pointer && p.dims.empty() && p.name != "...")
        env_.bindings[p.name] = std::nullopt;
  }

  void bind(const std::string& name, const SourceExpr& rhs, bool conditional) {
    std::optional<std::int64_t> value;
    if (auto lit = rhs.as<LiteralNode<std::string>>()) {
      value = lit->value;
    } else if (const_fold_) {
      value = fold(rhs);
    }
    env_.bindings[name] = conditional ? std::nullopt : value;
  }

  void unknown(const std::string& name) { env_.bindings[name] = std::nullopt; }

 private:
  std::optional<std::int64_t> fold(const SourceExpr& e) const {
    try {
      return evaluate(e, [&](const std::string& n) -> std::int64_t {
        auto v = env_.known(n);
        if (!v) throw EvalError("not constant");
        return *v;
      });
    } catch (const EvalError&) {
      return std::nullopt;
    }
  }

  VarEnv& env_;
  bool const_fold_;
};

/// Arm index of flattened child `k` of an If, and the arm's first index.
inline std::pair<std::size_t, std::size_t> if_arm_of(const frontend::If& iff,
                                                     std::size_t k) {
  std::size_t start = 0;
  for (std::size_t a = 0; a < iff.arms.size(); ++a) {
    std::size_t n = iff.arms[a].second.stmts.size();
    if (k < start + n) return {a, start};
    start += n;
  }
  return {iff.arms.size(), start};
}

}  // namespace detail

/// Names declared inside the target body plus the loop variables of the
/// target, its enclosing loops and its inner loops.
inline std::set<std::string> loop_local_names(const Ast& ast,
                                              const LoopRef& target) {
  using namespace frontend;
  std::set<std::string> names;
  for (std::size_t len = 1; len <= target.path.size(); ++len) {
    std::vector<std::size_t> p(target.path.begin(), target.path.begin() + len);
    if (auto f = resolve(ast, p).as<For>()) names.insert(f->init.var);
  }
  auto rec = [&](auto& self, const Stmt& s) -> void {
    if (auto f = s.as<For>()) names.insert(f->init.var);
    if (auto d = s.as<Decl>())
      for (const auto& decl : d->declarators) names.insert(decl.name);
    for (const Stmt* c : children(s)) self(self, *c);
  };
  rec(rec, resolve(ast, target.path));
  return names;
}

/// Static value recording over the statements preceding the target loop:
/// file-scope statements, then the enclosing function's parameters and
/// body up to the loop.
inline VarEnv record_variables(const Ast& ast, const LoopRef& target,
                               bool const_fold = false) {
  using namespace frontend;
  VarEnv env;
  detail::VariableRecorder rec(env, const_fold);
  const auto& path = target.path;

  for (std::size_t k = 0; k < path.front(); ++k) {
    if (ast.items[k].as<Function>()) continue;  // other functions
    rec.visit(ast.items[k], false);
  }

  const Stmt* cur = &ast.items[path.front()];
  for (std::size_t level = 1; level < path.size(); ++level) {
    std::vector<const Stmt*> kids = children(*cur);
    std::size_t idx = path[level];
    std::size_t from = 0;
    std::size_t to = kids.size();
    if (auto iff = cur->as<If>()) {
      // Other arms are exclusive with the one holding the target.
      auto [arm, start] = detail::if_arm_of(*iff, idx);
      from = start;
      to = start + (arm < iff->arms.size() ? iff->arms[arm].second.stmts.size()
                                           : kids.size() - start);
    } else if (auto fn = cur->as<Function>()) {
      rec.enter_function(*fn);
    } else if (auto f = cur->as<For>()) {
      rec.bind(f->init.var, f->init.value, false);
    }
    for (std::size_t k = from; k < idx; ++k) rec.visit(*kids[k], false);
    if (cur->as<For>()) {
      // Code after the target in an enclosing loop runs before the target's
      // next execution.
      for (std::size_t k = idx + 1; k < to; ++k) rec.visit(*kids[k], true);
    }
    cur = kids[idx];
  }

  for (const auto& name : loop_local_names(ast, target)) env.bindings.erase(name);
  return env;
}

}  // namespace racesat::analysis
