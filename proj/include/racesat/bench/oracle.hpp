//===-- oracle.hpp - Reference interpreter ----------------------*- C++ -*-===//
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
// Ground truth by execution. The target loop nest is interpreted with
// concrete values; every iteration of the target records the array
// locations it reads and writes, and two different iterations touching
// the same location with at least one write is a race. Enclosing loops run
// sequentially, so locations are compared only within one execution of
// the target loop.
//
//===----------------------------------------------------------------------===//
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "racesat/analysis/variables.hpp"
#include "racesat/error.hpp"
#include "racesat/frontend/ast.hpp"
#include "racesat/solver/eval.hpp"

namespace racesat::bench {

enum class OracleVerdict { Race, NoRace };

/// The program cannot be executed by the oracle.
class OracleError : public Error {
 public:
  using Error::Error;
};

struct OracleOptions {
  /// Maximum number of executed statements.
  std::uint64_t budget = 20'000'000;
};

namespace detail {

class Interpreter {
 public:
  Interpreter(std::map<std::string, std::int64_t> globals, const OracleOptions& opts)
      : opts_(opts) {
    for (auto& [k, v] : globals) scope_[k] = v;
  }

  bool race() const { return race_; }

  void run_nest(const frontend::Ast& ast, const frontend::LoopRef& target) {
    std::vector<const frontend::For*> outer;
    for (std::size_t len = 1; len < target.path.size(); ++len) {
      std::vector<std::size_t> p(target.path.begin(), target.path.begin() + len);
      if (auto f = frontend::resolve(ast, p).as<frontend::For>()) outer.push_back(f);
    }
    run_outer(outer, 0, frontend::resolve(ast, target));
  }

 private:
  using Value = std::optional<std::int64_t>;  // empty: depends on array contents

  struct Location {
    std::optional<std::int64_t> writer;
    std::vector<std::int64_t> readers;  // at most two distinct
  };

  void run_outer(const std::vector<const frontend::For*>& outer, std::size_t k,
                 const frontend::For& target) {
    if (race_) return;
    if (k == outer.size()) {
      run_target(target);
      return;
    }
    loop(*outer[k], [&] { run_outer(outer, k + 1, target); });
  }

  void run_target(const frontend::For& f) {
    std::map<std::pair<std::string, std::vector<std::int64_t>>, Location> seen;
    memory_ = &seen;
    std::int64_t iteration = 0;
    loop(f, [&] {
      iteration_ = iteration++;
      auto saved = scope_;
      auto saved_locals = local_arrays_;
      block(f.body);
      scope_ = std::move(saved);
      local_arrays_ = std::move(saved_locals);
    });
    memory_ = nullptr;
  }

  template <typename Body>
  void loop(const frontend::For& f, Body&& body) {
    const std::string& var = f.init.var;
    scope_[var] = must(value(f.init.value), "loop initializer");
    while (!race_ && must(value(f.cond), "loop condition") != 0) {
      body();
      std::int64_t amount = must(value(f.step.amount), "loop step");
      std::int64_t v = must(scope_[var], "loop variable");
      switch (f.step.kind) {
        case frontend::StepKind::Increment: v = arith::add(v, 1); break;
        case frontend::StepKind::Decrement: v = arith::sub(v, 1); break;
        case frontend::StepKind::AddAssign: v = arith::add(v, amount); break;
        case frontend::StepKind::SubAssign: v = arith::sub(v, amount); break;
      }
      scope_[var] = v;
      tick();
    }
  }

  void tick() {
    if (++steps_ > opts_.budget) throw OracleError("oracle budget exceeded");
  }

  static std::int64_t must(const Value& v, const char* what) {
    if (!v) throw OracleError(std::string(what) + " depends on array contents");
    return *v;
  }

  void block(const frontend::Block& b) {
    for (const auto& s : b.stmts) {
      if (race_) return;
      stmt(s);
    }
  }

  void stmt(const frontend::Stmt& s) {
    using namespace frontend;
    tick();
    if (auto d = s.as<Decl>()) {
      for (const auto& decl : d->declarators) {
        if (!decl.dims.empty()) {
          local_arrays_.insert(decl.name);
          continue;
        }
        scope_[decl.name] = decl.init ? value(*decl.init) : Value{0};
      }
    } else if (auto a = s.as<Assign>()) {
      Value rhs = value(a->value);
      if (a->target.is_array()) {
        auto idx = indices(a->target.indices);
        if (a->op) touch(a->target.name, idx, false);
        touch(a->target.name, idx, true);
      } else {
        Value cur = scope_.count(a->target.name) ? scope_[a->target.name] : Value{};
        if (!a->op) {
          scope_[a->target.name] = rhs;
        } else if (cur && rhs) {
          scope_[a->target.name] = arith::apply(*a->op, *cur, *rhs);
        } else {
          scope_[a->target.name] = std::nullopt;
        }
      }
    } else if (auto i = s.as<IncDec>()) {
      if (i->target.is_array()) {
        auto idx = indices(i->target.indices);
        touch(i->target.name, idx, false);
        touch(i->target.name, idx, true);
      } else {
        Value& cur = scope_[i->target.name];
        if (cur) cur = i->increment ? arith::add(*cur, 1) : arith::sub(*cur, 1);
      }
    } else if (auto f = s.as<For>()) {
      loop(*f, [&] { block(f->body); });
    } else if (auto iff = s.as<If>()) {
      for (const auto& [cond, body] : iff->arms) {
        if (must(value(cond), "branch condition") != 0) {
          block(body);
          return;
        }
      }
      if (iff->otherwise) block(*iff->otherwise);
    } else if (auto b = s.as<Block>()) {
      block(*b);
    } else if (auto e = s.as<ExprStmt>()) {
      value(e->expr);
    } else if (s.as<Pragma>()) {
    } else {
      throw OracleError("statement outside the executable subset at line " +
                        std::to_string(s.line));
    }
  }

  std::vector<std::int64_t> indices(const std::vector<SourceExpr>& idx) {
    std::vector<std::int64_t> out;
    for (const auto& e : idx) out.push_back(must(value(e), "array index"));
    return out;
  }

  void touch(const std::string& array, const std::vector<std::int64_t>& idx, bool write) {
    if (local_arrays_.count(array) || !memory_) return;
    Location& loc = (*memory_)[{array, idx}];
    const std::int64_t me = iteration_;
    if (write) {
      if (loc.writer && *loc.writer != me) race_ = true;
      for (auto r : loc.readers)
        if (r != me) race_ = true;
      loc.writer = me;
    } else {
      if (loc.writer && *loc.writer != me) race_ = true;
      if (loc.readers.size() < 2 &&
          (loc.readers.empty() || loc.readers.front() != me))
        loc.readers.push_back(me);
    }
  }

  /// Evaluates with C semantics; array elements have no known value but
  /// their reads are recorded.
  Value value(const SourceExpr& e) {
    return e.visit([&](const auto& n) -> Value {
      using T = std::decay_t<decltype(n)>;
      if constexpr (std::is_same_v<T, LiteralNode<std::string>>) {
        return n.value;
      } else if constexpr (std::is_same_v<T, VarNode<std::string>>) {
        auto it = scope_.find(n.name);
        if (it == scope_.end()) throw OracleError("no value for '" + n.name + "'");
        return it->second;
      } else if constexpr (std::is_same_v<T, UnaryNode<std::string>>) {
        Value v = value(n.operand);
        if (!v) return v;
        return n.op == UnaryOp::Neg ? arith::neg(*v) : std::int64_t{*v == 0};
      } else if constexpr (std::is_same_v<T, BinaryNode<std::string>>) {
        if (n.op == BinaryOp::LAnd || n.op == BinaryOp::LOr) {
          Value l = value(n.lhs);
          if (!l) return l;
          if ((*l != 0) == (n.op == BinaryOp::LOr)) return std::int64_t{*l != 0};
          Value r = value(n.rhs);
          if (!r) return r;
          return std::int64_t{*r != 0};
        }
        Value l = value(n.lhs);
        Value r = value(n.rhs);
        if (!l || !r) return std::nullopt;
        return arith::apply(n.op, *l, *r);
      } else if constexpr (std::is_same_v<T, SubscriptNode<std::string>>) {
        touch(n.array, indices(n.indices), false);
        return std::nullopt;
      } else {
        throw OracleError("call to '" + n.callee + "'");
      }
    });
  }

  OracleOptions opts_;
  std::map<std::string, Value> scope_;
  std::set<std::string> local_arrays_;
  std::map<std::pair<std::string, std::vector<std::int64_t>>, Location>* memory_ = nullptr;
  std::int64_t iteration_ = 0;
  std::uint64_t steps_ = 0;
  bool race_ = false;
};

}  // namespace detail

/// Executes the target loop nest. Known variables of `env` keep their
/// values; every Unknown one must be given a value in `env_fill`.
inline OracleVerdict oracle_simulate(const frontend::Ast& ast, const frontend::LoopRef& target,
                                     const analysis::VarEnv& env,
                                     const std::map<std::string, std::int64_t>& env_fill,
                                     const OracleOptions& opts = {}) {
  std::map<std::string, std::int64_t> globals;
  for (const auto& [name, v] : env.bindings) {
    if (v) {
      globals[name] = *v;
    } else if (auto it = env_fill.find(name); it != env_fill.end()) {
      globals[name] = it->second;
    }
  }
  detail::Interpreter interp(std::move(globals), opts);
  interp.run_nest(ast, target);
  return interp.race() ? OracleVerdict::Race : OracleVerdict::NoRace;
}

}  // namespace racesat::bench
