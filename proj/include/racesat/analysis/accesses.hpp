//===-- accesses.hpp - Array access collection ------------------*- C++ -*-===//
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
// Collection of array accesses in the target loop body, each with its
// index expressions, access kind, guarding path condition and loop stack.
//
//===----------------------------------------------------------------------===//
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "racesat/analysis/loops.hpp"
#include "racesat/analysis/variables.hpp"
#include "racesat/error.hpp"
#include "racesat/frontend/ast.hpp"

namespace racesat::analysis {

enum class AccessKind { Read, Write };

inline const char* to_string(AccessKind k) {
  return k == AccessKind::Read ? "read" : "write";
}

/// Conjunction of branch conditions; each atom is a C boolean expression.
struct PathCond {
  std::vector<SourceExpr> atoms;
};

struct AccessRecord {
  std::string array;
  std::vector<SourceExpr> indices;
  AccessKind kind = AccessKind::Read;
  PathCond path;
  std::vector<LoopCtx> loops;  // outermost first; contains the target
  int id = 0;
  int line = 0;

  const LoopCtx& target_loop() const {
    for (const auto& l : loops)
      if (l.role == LoopRole::ParallelTarget) return l;
    throw std::logic_error("access outside the target loop");
  }
};

struct AccessLists {
  std::vector<AccessRecord> writes;
  std::vector<AccessRecord> reads;
};

struct AccessOptions {
  /// `a[e] op= v` and `a[e]++` record only the write.
  bool compound_write_only = false;
};

/// Splits a condition at top-level `&&`.
inline std::vector<SourceExpr> split_conjunction(const SourceExpr& e) {
  if (auto b = e.as<BinaryNode<std::string>>(); b && b->op == BinaryOp::LAnd) {
    auto out = split_conjunction(b->lhs);
    auto rhs = split_conjunction(b->rhs);
    out.insert(out.end(), rhs.begin(), rhs.end());
    return out;
  }
  return {e};
}

/// Logical negation, flipping a comparison instead of wrapping it.
inline SourceExpr negate(const SourceExpr& e) {
  if (auto b = e.as<BinaryNode<std::string>>(); b && is_comparison(b->op))
    return SourceExpr::binary(negate_comparison(b->op), b->lhs, b->rhs);
  if (auto u = e.as<UnaryNode<std::string>>(); u && u->op == UnaryOp::Not) {
    // !!x is x != 0, not x.
    if (auto inner = u->operand.as<BinaryNode<std::string>>();
        inner && (is_comparison(inner->op) || is_logical(inner->op)))
      return u->operand;
    return SourceExpr::binary(BinaryOp::Ne, u->operand, SourceExpr::lit(0));
  }
  return SourceExpr::unary(UnaryOp::Not, e);
}

namespace detail {

struct ArrayInfo {
  std::size_t rank = 0;
};

/// Arrays visible from the target: file-scope and enclosing-function
/// declarations and array parameters. Pointer parameters map to rank 0.
inline std::map<std::string, ArrayInfo> visible_arrays(
    const frontend::Ast& ast, const frontend::LoopRef& target) {
  using namespace frontend;
  std::map<std::string, ArrayInfo> arrays;
  auto scan = [&](auto& self, const Stmt& s) -> void {
    if (auto d = s.as<Decl>()) {
      for (const auto& decl : d->declarators)
        if (!decl.dims.empty()) arrays[decl.name] = {decl.dims.size()};
    }
    if (auto fn = s.as<Function>()) {
      for (const auto& p : fn->params) {
        if (!p.dims.empty()) arrays[p.name] = {p.dims.size()};
        else if (p.pointer) arrays[p.name] = {0};
      }
    }
    for (const Stmt* c : children(s)) self(self, *c);
  };
  for (std::size_t k = 0; k < ast.items.size(); ++k) {
    if (k != target.path.front() && ast.items[k].as<Function>()) continue;
    scan(scan, ast.items[k]);
  }
  return arrays;
}

class AccessCollector {
 public:
  AccessCollector(std::map<std::string, ArrayInfo> arrays, AccessOptions opts)
      : arrays_(std::move(arrays)), opts_(opts) {}

  struct Ctx {
    std::vector<SourceExpr> path;
    std::vector<LoopCtx> loops;
  };

  void block(const frontend::Block& b, const Ctx& ctx) {
    for (const auto& s : b.stmts) stmt(s, ctx);
  }

  void stmt(const frontend::Stmt& s, const Ctx& ctx) {
    using namespace frontend;
    if (auto d = s.as<Decl>()) {
      for (const auto& decl : d->declarators) {
        if (decl.dims.empty()) {
          local_scalars_.insert(decl.name);
        } else {
          local_arrays_.insert(decl.name);
        }
        for (const auto& dim : decl.dims) reads(dim, ctx, s.line);
        if (decl.init) reads(*decl.init, ctx, s.line);
      }
    } else if (auto a = s.as<Assign>()) {
      reads(a->value, ctx, s.line);
      if (a->target.is_array()) {
        write_target(a->target, a->op.has_value(), ctx, s.line);
      } else {
        assigned_scalars_.insert(a->target.name);
      }
    } else if (auto i = s.as<IncDec>()) {
      if (i->target.is_array()) {
        write_target(i->target, true, ctx, s.line);
      } else {
        assigned_scalars_.insert(i->target.name);
      }
    } else if (auto f = s.as<For>()) {
      Ctx inner = ctx;
      inner.loops.push_back(make_loop_ctx(*f, LoopRole::InnerSequential, s.line));
      block(f->body, inner);
    } else if (auto iff = s.as<If>()) {
      Ctx cur = ctx;
      for (const auto& [cond, body] : iff->arms) {
        reads(cond, cur, s.line);
        Ctx taken = cur;
        for (const auto& atom : split_conjunction(cond)) add_atom(taken, atom);
        block(body, taken);
        add_atom(cur, negate(cond));
      }
      if (iff->otherwise) block(*iff->otherwise, cur);
    } else if (auto b = s.as<Block>()) {
      block(*b, ctx);
    } else if (s.as<Pragma>()) {
      // inert
    } else if (auto e = s.as<ExprStmt>()) {
      reads(e->expr, ctx, s.line);
    } else if (auto u = s.as<Unsupported>()) {
      throw UnsupportedError(u->reason, s.line);
    } else {
      throw UnsupportedError("unsupported statement in the target loop", s.line);
    }
  }

  AccessLists lists;
  std::set<std::string> local_scalars_;
  std::set<std::string> local_arrays_;
  std::set<std::string> assigned_scalars_;

 private:
  // Conditions over array contents are not modeled; dropping the atom
  // over-approximates the path.
  static void add_atom(Ctx& ctx, const SourceExpr& atom) {
    if (!contains_subscript(atom)) ctx.path.push_back(atom);
  }

  void write_target(const frontend::LValue& lv, bool compound, const Ctx& ctx,
                    int line) {
    for (const auto& i : lv.indices) reads(i, ctx, line);
    record(lv.name, lv.indices, AccessKind::Write, ctx, line);
    if (compound && !opts_.compound_write_only)
      record(lv.name, lv.indices, AccessKind::Read, ctx, line);
  }

  void reads(const SourceExpr& e, const Ctx& ctx, int line) {
    e.visit([&](const auto& n) {
      using T = std::decay_t<decltype(n)>;
      if constexpr (std::is_same_v<T, SubscriptNode<std::string>>) {
        for (const auto& i : n.indices) reads(i, ctx, line);
        record(n.array, n.indices, AccessKind::Read, ctx, line);
      } else if constexpr (std::is_same_v<T, CallNode<std::string>>) {
        throw UnsupportedError("call to '" + n.callee + "'", line);
      } else if constexpr (std::is_same_v<T, UnaryNode<std::string>>) {
        reads(n.operand, ctx, line);
      } else if constexpr (std::is_same_v<T, BinaryNode<std::string>>) {
        reads(n.lhs, ctx, line);
        reads(n.rhs, ctx, line);
      }
    });
  }

  void record(const std::string& array, const std::vector<SourceExpr>& indices,
              AccessKind kind, const Ctx& ctx, int line) {
    if (local_arrays_.count(array)) return;  // private to the iteration
    auto it = arrays_.find(array);
    if (it == arrays_.end())
      throw UnsupportedError("access to undeclared array '" + array + "'", line);
    if (it->second.rank == 0)
      throw UnsupportedError("access through pointer '" + array + "'", line);
    if (indices.size() != it->second.rank)
      throw UnsupportedError("array '" + array + "' has rank " +
                                 std::to_string(it->second.rank) + " but is indexed with " +
                                 std::to_string(indices.size()) + " subscripts",
                             line);
    for (const auto& i : indices)
      if (contains_subscript(i))
        throw UnsupportedError("indirect access to '" + array + "'", line);
    AccessRecord r;
    r.array = array;
    r.indices = indices;
    r.kind = kind;
    r.path.atoms = ctx.path;
    r.loops = ctx.loops;
    r.id = next_id_++;
    r.line = line;
    (kind == AccessKind::Write ? lists.writes : lists.reads).push_back(std::move(r));
  }

  std::map<std::string, ArrayInfo> arrays_;
  AccessOptions opts_;
  int next_id_ = 0;
};

}  // namespace detail

/// Collects every array access of the target body. Index and path
/// expressions may only mention induction variables of the access's loop
/// stack and variables of `env` not written inside the loop.
inline AccessLists collect_accesses(const frontend::Ast& ast,
                                    const frontend::LoopRef& target,
                                    const VarEnv& env,
                                    AccessOptions opts = {}) {
  using namespace frontend;
  std::vector<LoopCtx> nest = collect_loops(ast, target);
  const Stmt& t = resolve(ast, target.path);

  detail::AccessCollector collector(detail::visible_arrays(ast, target), opts);
  detail::AccessCollector::Ctx ctx;
  for (const auto& l : nest)
    if (l.role != LoopRole::InnerSequential) ctx.loops.push_back(l);
  collector.block(t.as<For>()->body, ctx);

  std::set<std::string> nest_vars;
  for (const auto& l : nest) nest_vars.insert(l.var);
  for (const auto& name : collector.assigned_scalars_)
    if (nest_vars.count(name))
      throw UnsupportedError("induction variable '" + name +
                                 "' is modified inside the loop body",
                             t.line);

  auto check = [&](const AccessRecord& r, const SourceExpr& e) {
    for_each_var(e, [&](const std::string& n) {
      bool loop_var = false;
      for (const auto& l : r.loops) loop_var |= l.var == n;
      if (loop_var) return;
      if (collector.local_scalars_.count(n) || collector.assigned_scalars_.count(n))
        throw UnsupportedError("'" + n + "' is written inside the loop and used in "
                                   "an index or branch condition",
                               r.line);
      if (!env.contains(n))
        throw UnsupportedError("undeclared identifier '" + n + "'", r.line);
    });
  };
  for (const auto* list : {&collector.lists.writes, &collector.lists.reads}) {
    for (const auto& r : *list) {
      for (const auto& i : r.indices) check(r, i);
      for (const auto& a : r.path.atoms) check(r, a);
      for (const auto& l : r.loops) {
        check(r, l.init);
        check(r, l.bound);
      }
    }
  }
  return std::move(collector.lists);
}

}  // namespace racesat::analysis
