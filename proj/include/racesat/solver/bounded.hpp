//===-- bounded.hpp - Bounded search solver ---------------------*- C++ -*-===//
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
// Finite-model search. Symbols that an equality pins to an expression over
// other symbols (index symbols, known values) are computed rather than
// enumerated. The rest are searched: loop symbols over their domains,
// free symbols over a window [-K, K] widened by the constants of the
// system. Each atom is checked as soon as all its symbols are assigned.
//
//===----------------------------------------------------------------------===//
#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "racesat/encoding/constraint.hpp"
#include "racesat/solver/result.hpp"

namespace racesat {

struct BoundedOptions {
  std::int64_t window = 64;
  /// Maximum number of partial assignments tried before giving up.
  std::uint64_t budget = 200'000'000;
  /// Values tried per loop symbol; larger domains make the search incomplete.
  std::int64_t domain_cap = 1 << 20;
};

namespace detail {

/// Expressions flattened into one node array over integer slots.
class Program {
 public:
  enum class Kind : std::uint8_t { Lit, Slot, Neg, Not, Bin };

  struct Node {
    Kind kind;
    BinaryOp op;
    std::int64_t value;  // literal value or slot index
    int a;
    int b;
  };

  int compile(const SymExpr& e, const std::map<Symbol, int>& slots) {
    return e.visit([&](const auto& n) -> int {
      using T = std::decay_t<decltype(n)>;
      if constexpr (std::is_same_v<T, LiteralNode<Symbol>>) {
        return push({Kind::Lit, BinaryOp::Add, n.value, -1, -1});
      } else if constexpr (std::is_same_v<T, VarNode<Symbol>>) {
        return push({Kind::Slot, BinaryOp::Add, slots.at(n.name), -1, -1});
      } else if constexpr (std::is_same_v<T, UnaryNode<Symbol>>) {
        int a = compile(n.operand, slots);
        return push({n.op == UnaryOp::Neg ? Kind::Neg : Kind::Not, BinaryOp::Add, 0, a, -1});
      } else if constexpr (std::is_same_v<T, BinaryNode<Symbol>>) {
        int a = compile(n.lhs, slots);
        int b = compile(n.rhs, slots);
        return push({Kind::Bin, n.op, 0, a, b});
      } else {
        throw std::logic_error("array access in a constraint");
      }
    });
  }

  /// False on division by zero or overflow.
  bool eval(int i, const std::int64_t* v, std::int64_t& out) const {
    const Node& n = nodes_[i];
    std::int64_t x, y;
    switch (n.kind) {
      case Kind::Lit: out = n.value; return true;
      case Kind::Slot: out = v[n.value]; return true;
      case Kind::Neg:
        if (!eval(n.a, v, x) || x == std::numeric_limits<std::int64_t>::min()) return false;
        out = -x;
        return true;
      case Kind::Not:
        if (!eval(n.a, v, x)) return false;
        out = x == 0;
        return true;
      case Kind::Bin: break;
    }
    if (n.op == BinaryOp::LAnd || n.op == BinaryOp::LOr) {
      if (!eval(n.a, v, x)) return false;
      if ((x != 0) == (n.op == BinaryOp::LOr)) {
        out = x != 0;
        return true;
      }
      if (!eval(n.b, v, y)) return false;
      out = y != 0;
      return true;
    }
    if (!eval(n.a, v, x) || !eval(n.b, v, y)) return false;
    switch (n.op) {
      case BinaryOp::Add: return !__builtin_add_overflow(x, y, &out);
      case BinaryOp::Sub: return !__builtin_sub_overflow(x, y, &out);
      case BinaryOp::Mul: return !__builtin_mul_overflow(x, y, &out);
      case BinaryOp::Div:
        if (y == 0 || (y == -1 && x == std::numeric_limits<std::int64_t>::min())) return false;
        out = x / y;
        return true;
      case BinaryOp::Mod:
        if (y == 0) return false;
        out = y == -1 ? 0 : x % y;
        return true;
      case BinaryOp::Lt: out = x < y; return true;
      case BinaryOp::Le: out = x <= y; return true;
      case BinaryOp::Gt: out = x > y; return true;
      case BinaryOp::Ge: out = x >= y; return true;
      case BinaryOp::Eq: out = x == y; return true;
      case BinaryOp::Ne: out = x != y; return true;
      default: return false;
    }
  }

 private:
  int push(Node n) {
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
  }
  std::vector<Node> nodes_;
};

class BoundedSearch {
 public:
  BoundedSearch(const ConstraintSystem& cs, const BoundedOptions& opts)
      : cs_(cs), opts_(opts) {}

  SolveResult run() {
    SolveResult r;
    r.backend = "internal";
    index_symbols();
    find_definitions();
    plan_search();
    for (int d : defs_at_[0])
      if (!compute(d)) return unsat(r);
    for (int a : atoms_at_[0])
      if (!check(a)) return unsat(r);
    bool found = false;
    try {
      found = search(0);
    } catch (const Budget&) {
      r.status = SolveStatus::Unknown;
      r.reason = "budget";
      return r;
    }
    if (!found) return unsat(r);
    r.status = SolveStatus::Sat;
    Assignment w;
    for (std::size_t s = 0; s < syms_.size(); ++s) w[syms_[s]] = values_[s];
    if (!satisfies(cs_, w)) throw std::logic_error("bounded search produced an invalid witness");
    r.witness = std::move(w);
    return r;
  }

 private:
  struct Budget {};

  struct CompiledAtom {
    bool divisible;
    Rel rel;
    std::int64_t modulus;
    int lhs;
    int rhs;
    std::set<int> deps;  // search slots
  };

  struct SearchVar {
    int slot;
    bool domained;
    int lower = -1, upper = -1, anchor = -1;
    std::int64_t step = 1;
    std::set<int> deps;
  };

  SolveResult& unsat(SolveResult& r) {
    r.status = SolveStatus::Unsat;
    r.incomplete = incomplete_;
    if (incomplete_)
      r.reason = capped_ ? "loop domain capped" : "free symbols searched within a window";
    return r;
  }

  void index_symbols() {
    std::set<Symbol> all;
    for (const auto& d : cs_.symbols) all.insert(d.symbol);
    for (const auto& a : cs_.atoms) for_each_symbol(a, [&](const Symbol& s) { all.insert(s); });
    for (const auto& s : all) {
      slots_[s] = static_cast<int>(syms_.size());
      syms_.push_back(s);
    }
    values_.assign(syms_.size(), 0);
    def_expr_.assign(syms_.size(), -1);
  }

  std::set<int> direct_vars(const SymExpr& e) const {
    std::set<int> out;
    for_each_var(e, [&](const Symbol& s) { out.insert(slots_.at(s)); });
    return out;
  }

  /// Slots of `vars` expanded through definitions down to searched slots.
  std::set<int> base_vars(const std::set<int>& vars) const {
    std::set<int> out, seen;
    std::vector<int> stack(vars.begin(), vars.end());
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      if (!seen.insert(s).second) continue;
      if (def_expr_[s] >= 0) {
        stack.insert(stack.end(), def_vars_.at(s).begin(), def_vars_.at(s).end());
      } else {
        out.insert(s);
      }
    }
    return out;
  }

  bool try_define(const SymExpr& target, const SymExpr& value) {
    auto v = target.as<VarNode<Symbol>>();
    if (!v) return false;
    int s = slots_.at(v->name);
    const SymbolDecl* decl = cs_.find(v->name);
    if (def_expr_[s] >= 0 || (decl && decl->domain)) return false;
    std::set<int> vars = direct_vars(value);
    // Existing definitions may route through `s`; that would be a cycle.
    if (base_vars(vars).count(s)) return false;
    def_vars_[s] = vars;
    def_expr_[s] = prog_.compile(value, slots_);
    def_order_.push_back(s);
    return true;
  }

  void find_definitions() {
    // Constant right-hand sides first, so `a = 100` beats `a == b`.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& a : cs_.atoms) {
        auto c = std::get_if<Comparison>(&a.body);
        if (!c || c->rel != Rel::Eq) continue;
        bool lconst = direct_vars(c->lhs).empty();
        bool rconst = direct_vars(c->rhs).empty();
        if (pass == 0 && !lconst && !rconst) continue;
        if (!try_define(c->lhs, c->rhs)) try_define(c->rhs, c->lhs);
      }
    }
  }

  void collect_constants(const SymExpr& e, std::set<std::int64_t>& out) const {
    e.visit([&](const auto& n) {
      using T = std::decay_t<decltype(n)>;
      if constexpr (std::is_same_v<T, LiteralNode<Symbol>>) {
        out.insert(n.value);
      } else if constexpr (std::is_same_v<T, UnaryNode<Symbol>>) {
        collect_constants(n.operand, out);
      } else if constexpr (std::is_same_v<T, BinaryNode<Symbol>>) {
        collect_constants(n.lhs, out);
        collect_constants(n.rhs, out);
      }
    });
  }

  void plan_search() {
    // Candidate values for free symbols.
    std::set<std::int64_t> consts;
    for (const auto& a : cs_.atoms) {
      if (auto c = std::get_if<Comparison>(&a.body)) {
        collect_constants(c->lhs, consts);
        collect_constants(c->rhs, consts);
      } else {
        collect_constants(std::get<Divisible>(a.body).expr, consts);
      }
    }
    std::set<std::int64_t> cand;
    for (std::int64_t v = -opts_.window; v <= opts_.window; ++v) cand.insert(v);
    const std::int64_t lim = std::numeric_limits<std::int64_t>::max() / 4;
    for (std::int64_t c : consts) {
      if (c > lim || c < -lim) continue;
      for (std::int64_t v : {c, c - 1, c + 1, -c, -c - 1, -c + 1}) cand.insert(v);
    }
    // Nearest to zero first; small witnesses are easier to read.
    free_candidates_.assign(cand.begin(), cand.end());
    std::stable_sort(free_candidates_.begin(), free_candidates_.end(),
                     [](std::int64_t a, std::int64_t b) {
                       auto ka = a < 0 ? -a : a, kb = b < 0 ? -b : b;
                       return ka != kb ? ka < kb : a > b;
                     });

    std::vector<SearchVar> pending;
    for (std::size_t s = 0; s < syms_.size(); ++s) {
      if (def_expr_[s] >= 0) continue;
      SearchVar v;
      v.slot = static_cast<int>(s);
      v.domained = false;
      const SymbolDecl* decl = cs_.find(syms_[s]);
      if (decl && decl->domain) {
        std::set<int> vars = direct_vars(decl->domain->lower);
        for (const SymExpr* e : {&decl->domain->upper, &decl->domain->anchor}) {
          auto more = direct_vars(*e);
          vars.insert(more.begin(), more.end());
        }
        std::set<int> deps = base_vars(vars);
        if (!deps.count(v.slot)) {
          v.domained = true;
          v.lower = prog_.compile(decl->domain->lower, slots_);
          v.upper = prog_.compile(decl->domain->upper, slots_);
          v.anchor = prog_.compile(decl->domain->anchor, slots_);
          v.step = decl->domain->step;
          v.deps = std::move(deps);
        }
      }
      pending.push_back(std::move(v));
    }

    std::vector<CompiledAtom> atoms;
    for (const auto& a : cs_.atoms) {
      CompiledAtom ca{};
      std::set<int> vars;
      if (auto c = std::get_if<Comparison>(&a.body)) {
        ca.rel = c->rel;
        ca.lhs = prog_.compile(c->lhs, slots_);
        ca.rhs = prog_.compile(c->rhs, slots_);
        vars = direct_vars(c->lhs);
        auto r = direct_vars(c->rhs);
        vars.insert(r.begin(), r.end());
      } else {
        const auto& d = std::get<Divisible>(a.body);
        ca.divisible = true;
        ca.modulus = d.modulus;
        ca.lhs = prog_.compile(d.expr, slots_);
        vars = direct_vars(d.expr);
      }
      ca.deps = base_vars(vars);
      atoms.push_back(std::move(ca));
    }

    std::vector<std::set<int>> def_deps(syms_.size());
    for (int s : def_order_) def_deps[s] = base_vars({s});

    std::set<int> assigned;
    std::vector<bool> atom_done(atoms.size(), false);
    std::vector<bool> def_done(syms_.size(), false);
    auto settle = [&](std::size_t depth) {
      defs_at_.resize(depth + 1);
      atoms_at_.resize(depth + 1);
      // Definitions in dependency order: repeat until nothing changes.
      for (bool progress = true; progress;) {
        progress = false;
        for (int s : def_order_) {
          if (def_done[s]) continue;
          bool ready = std::includes(assigned.begin(), assigned.end(), def_deps[s].begin(),
                                     def_deps[s].end());
          for (int v : def_vars_[s]) ready &= def_expr_[v] < 0 || def_done[v];
          if (!ready) continue;
          def_done[s] = true;
          defs_at_[depth].push_back(s);
          progress = true;
        }
      }
      for (std::size_t k = 0; k < atoms.size(); ++k) {
        if (atom_done[k]) continue;
        if (std::includes(assigned.begin(), assigned.end(), atoms[k].deps.begin(),
                          atoms[k].deps.end())) {
          atom_done[k] = true;
          atoms_at_[depth].push_back(static_cast<int>(k));
        }
      }
    };
    settle(0);

    while (!pending.empty()) {
      int best = -1;
      long best_score = -1;
      for (std::size_t k = 0; k < pending.size(); ++k) {
        const SearchVar& v = pending[k];
        if (v.domained && !std::includes(assigned.begin(), assigned.end(), v.deps.begin(),
                                         v.deps.end()))
          continue;
        std::set<int> after = assigned;
        after.insert(v.slot);
        long score = 0;
        for (std::size_t a = 0; a < atoms.size(); ++a)
          if (!atom_done[a] &&
              std::includes(after.begin(), after.end(), atoms[a].deps.begin(), atoms[a].deps.end()))
            ++score;
        score = score * 2 + (v.domained ? 1 : 0);
        if (score > best_score) {
          best_score = score;
          best = static_cast<int>(k);
        }
      }
      if (best < 0) {
        // Domains depend on each other cyclically; search one freely.
        pending.front().domained = false;
        best = 0;
      }
      SearchVar v = pending[best];
      pending.erase(pending.begin() + best);
      if (!v.domained) incomplete_ = true;
      assigned.insert(v.slot);
      order_.push_back(std::move(v));
      settle(order_.size());
    }
    atoms_ = std::move(atoms);
  }

  bool compute(int s) { return prog_.eval(def_expr_[s], values_.data(), values_[s]); }

  bool check(int k) {
    const CompiledAtom& a = atoms_[k];
    std::int64_t x, y;
    if (!prog_.eval(a.lhs, values_.data(), x)) return false;
    if (a.divisible) return x % a.modulus == 0;
    if (!prog_.eval(a.rhs, values_.data(), y)) return false;
    return compare(x, a.rel, y);
  }

  bool accept(std::size_t depth) {
    if (++nodes_ > opts_.budget) throw Budget{};
    for (int d : defs_at_[depth])
      if (!compute(d)) return false;
    for (int a : atoms_at_[depth])
      if (!check(a)) return false;
    return true;
  }

  bool search(std::size_t depth) {
    if (depth == order_.size()) return true;
    const SearchVar& v = order_[depth];
    std::int64_t& slot = values_[v.slot];
    if (!v.domained) {
      for (std::int64_t c : free_candidates_) {
        slot = c;
        if (accept(depth + 1) && search(depth + 1)) return true;
      }
      return false;
    }
    std::int64_t lo, hi, anchor;
    if (!prog_.eval(v.lower, values_.data(), lo) || !prog_.eval(v.upper, values_.data(), hi) ||
        !prog_.eval(v.anchor, values_.data(), anchor))
      return false;
    if (hi < lo) return false;
    // First value >= lo congruent to anchor modulo step.
    std::int64_t off = (lo - anchor) % v.step;
    if (off < 0) off += v.step;
    std::int64_t first = off == 0 ? lo : lo + (v.step - off);
    if (first > hi) return false;
    std::int64_t count = (hi - first) / v.step + 1;
    if (count > opts_.domain_cap) {
      count = opts_.domain_cap;
      incomplete_ = capped_ = true;
    }
    for (std::int64_t k = 0; k < count; ++k) {
      slot = first + k * v.step;
      if (accept(depth + 1) && search(depth + 1)) return true;
    }
    return false;
  }

  const ConstraintSystem& cs_;
  BoundedOptions opts_;
  Program prog_;
  std::map<Symbol, int> slots_;
  std::vector<Symbol> syms_;
  std::vector<std::int64_t> values_;
  std::vector<int> def_expr_;
  std::map<int, std::set<int>> def_vars_;
  std::vector<int> def_order_;
  std::vector<std::int64_t> free_candidates_;
  std::vector<SearchVar> order_;
  std::vector<CompiledAtom> atoms_;
  std::vector<std::vector<int>> defs_at_;
  std::vector<std::vector<int>> atoms_at_;
  std::uint64_t nodes_ = 0;
  bool incomplete_ = false;
  bool capped_ = false;
};

}  // namespace detail

/// Decides `cs` by finite-model search. Sat carries a witness over every
/// symbol; Unsat is exact unless `incomplete` is set.
inline SolveResult solve_bounded(const ConstraintSystem& cs, const BoundedOptions& opts = {}) {
  if (opts.window < 1) throw std::invalid_argument("solve_bounded: window must be >= 1");
  auto start = std::chrono::steady_clock::now();
  SolveResult r = detail::BoundedSearch(cs, opts).run();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace racesat
