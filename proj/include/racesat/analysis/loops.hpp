//===-- loops.hpp - Loop nest records ---------------------------*- C++ -*-===//
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

#include <cstdint>
#include <string>
#include <vector>

#include "racesat/error.hpp"
#include "racesat/frontend/ast.hpp"
#include "racesat/solver/eval.hpp"

namespace racesat::analysis {

enum class LoopRole { OuterSequential, ParallelTarget, InnerSequential };

inline const char* to_string(LoopRole r) {
  switch (r) {
    case LoopRole::OuterSequential: return "outer";
    case LoopRole::ParallelTarget: return "parallel";
    case LoopRole::InnerSequential: return "inner";
  }
  return "?";
}

/// A canonical loop `for (var = init; var REL bound; var += step)`.
/// The iteration domain is init, init+step, ... while `var REL bound`.
struct LoopCtx {
  std::string var;
  SourceExpr init;
  BinaryOp rel = BinaryOp::Lt;  // Lt/Le when step > 0, Gt/Ge when step < 0
  SourceExpr bound;
  std::int64_t step = 1;
  LoopRole role = LoopRole::ParallelTarget;
  int line = 0;

  bool increasing() const { return step > 0; }

  /// Smallest value in the domain (when non-empty).
  SourceExpr lower() const {
    if (increasing()) return init;
    return rel == BinaryOp::Gt ? bound + SourceExpr::lit(1) : bound;
  }
  /// Largest value in the domain, modulo step alignment.
  SourceExpr upper() const {
    if (!increasing()) return init;
    return rel == BinaryOp::Lt ? bound - SourceExpr::lit(1) : bound;
  }
  bool upper_strict() const { return rel == BinaryOp::Lt; }
};

/// Normalizes a for-loop header; throws UnsupportedError when it is not
/// canonical.
inline LoopCtx make_loop_ctx(const frontend::For& f, LoopRole role, int line) {
  LoopCtx ctx;
  ctx.var = f.init.var;
  ctx.init = f.init.value;
  ctx.role = role;
  ctx.line = line;

  if (f.step.var != ctx.var)
    throw UnsupportedError("loop step updates '" + f.step.var +
                               "' instead of the induction variable '" +
                               ctx.var + "'",
                           line);
  switch (f.step.kind) {
    case frontend::StepKind::Increment: ctx.step = 1; break;
    case frontend::StepKind::Decrement: ctx.step = -1; break;
    case frontend::StepKind::AddAssign:
    case frontend::StepKind::SubAssign: {
      std::int64_t amount;
      try {
        amount = evaluate(f.step.amount, [](const std::string&) -> std::int64_t {
          throw EvalError("non-constant");
        });
      } catch (const EvalError&) {
        throw UnsupportedError("loop step is not an integer constant", line);
      }
      ctx.step = f.step.kind == frontend::StepKind::AddAssign ? amount : -amount;
      break;
    }
  }
  if (ctx.step == 0) throw UnsupportedError("loop step is zero", line);

  const auto* cmp = f.cond.as<BinaryNode<std::string>>();
  if (!cmp || !is_comparison(cmp->op))
    throw UnsupportedError("loop condition is not a relational comparison", line);
  if (cmp->op == BinaryOp::Eq || cmp->op == BinaryOp::Ne)
    throw UnsupportedError("loop condition uses '" +
                               std::string(spelling(cmp->op)) + "'",
                           line);
  auto is_var = [&](const SourceExpr& e) {
    auto v = e.as<VarNode<std::string>>();
    return v && v->name == ctx.var;
  };
  if (is_var(cmp->lhs)) {
    ctx.rel = cmp->op;
    ctx.bound = cmp->rhs;
  } else if (is_var(cmp->rhs)) {
    ctx.rel = swap_comparison(cmp->op);
    ctx.bound = cmp->lhs;
  } else {
    throw UnsupportedError(
        "loop condition does not compare the induction variable", line);
  }

  auto mentions_var = [&](const SourceExpr& e) {
    bool found = false;
    for_each_var(e, [&](const std::string& n) { found |= n == ctx.var; });
    return found;
  };
  if (mentions_var(ctx.bound) || mentions_var(ctx.init))
    throw UnsupportedError("loop bound depends on the induction variable", line);
  if (contains_subscript(ctx.bound) || contains_subscript(ctx.init))
    throw UnsupportedError("loop bound reads memory", line);

  bool up = ctx.rel == BinaryOp::Lt || ctx.rel == BinaryOp::Le;
  if (up != (ctx.step > 0))
    throw UnsupportedError("loop step moves away from its bound", line);
  return ctx;
}

/// The loop nest around and inside the target: enclosing loops (outermost
/// first), the target, then every loop in the target body in pre-order.
inline std::vector<LoopCtx> collect_loops(const frontend::Ast& ast,
                                          const frontend::LoopRef& target) {
  using namespace frontend;
  std::vector<LoopCtx> nest;
  for (std::size_t len = 1; len < target.path.size(); ++len) {
    std::vector<std::size_t> p(target.path.begin(), target.path.begin() + len);
    const Stmt& s = resolve(ast, p);
    if (auto f = s.as<For>())
      nest.push_back(make_loop_ctx(*f, LoopRole::OuterSequential, s.line));
  }
  const Stmt& t = resolve(ast, target.path);
  nest.push_back(make_loop_ctx(*t.as<For>(), LoopRole::ParallelTarget, t.line));

  auto rec = [&](auto& self, const Stmt& s) -> void {
    for (const Stmt* c : children(s)) {
      if (auto f = c->as<For>())
        nest.push_back(make_loop_ctx(*f, LoopRole::InnerSequential, c->line));
      self(self, *c);
    }
  };
  rec(rec, t);
  return nest;
}

}  // namespace racesat::analysis
