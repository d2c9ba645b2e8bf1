//===-- encode.hpp - Pair encoding ------------------------------*- C++ -*-===//
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
// Construction of race constraints. Each access of a pair is encoded as a
// copy whose parallel and inner induction variables carry the copy id;
// enclosing sequential loop variables and program variables stay shared.
//
//===----------------------------------------------------------------------===//
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "racesat/analysis/accesses.hpp"
#include "racesat/analysis/variables.hpp"
#include "racesat/encoding/constraint.hpp"
#include "racesat/error.hpp"

namespace racesat::encoding {

using analysis::AccessRecord;
using analysis::LoopCtx;
using analysis::LoopRole;
using analysis::VarEnv;

inline Symbol index_symbol(std::size_t dim, int copy) {
  return {"index." + std::to_string(dim), copy};
}

struct AccessCopy {
  std::vector<Symbol> index_syms;
  std::vector<Atom> atoms;
  std::vector<SymbolDecl> decls;  // renamed induction symbols
};

namespace detail {

/// Maps source names of one access to symbols of copy `copy`.
class Renamer {
 public:
  Renamer(const AccessRecord& acc, int copy, const VarEnv& env)
      : acc_(acc), copy_(copy), env_(env) {
    for (const auto& l : acc.loops) {
      if (l.role == LoopRole::OuterSequential) {
        shared_loop_vars_.insert(l.var);
      } else {
        copied_.insert(l.var);
      }
    }
  }

  Symbol operator()(const std::string& name) const {
    if (copied_.count(name)) return {name, copy_};
    if (shared_loop_vars_.count(name) || env_.contains(name)) return {name, std::nullopt};
    throw UnsupportedError("undeclared identifier '" + name + "'", acc_.line);
  }

  SymExpr map(const SourceExpr& e) const { return map_leaves<Symbol>(e, *this); }

 private:
  const AccessRecord& acc_;
  int copy_;
  const VarEnv& env_;
  std::set<std::string> copied_;
  std::set<std::string> shared_loop_vars_;
};

template <typename Map>
void add_domain(const LoopCtx& l, const Symbol& sym, const Map& map,
                std::vector<Atom>& atoms, std::vector<SymbolDecl>& decls) {
  SymExpr s = SymExpr::var(sym);
  SymExpr init = map(l.init);
  SymExpr bound = map(l.bound);
  Rel bound_rel = *to_rel(l.rel);
  atoms.push_back(Atom::cmp(s, l.increasing() ? Rel::Ge : Rel::Le, init, AtomRole::Domain));
  atoms.push_back(Atom::cmp(s, bound_rel, bound, AtomRole::Domain));
  std::int64_t stride = l.step < 0 ? -l.step : l.step;
  if (stride != 1)
    atoms.push_back({Divisible{s - init, stride}, AtomRole::Domain});
  decls.push_back({sym, Domain{map(l.lower()), map(l.upper()), init, stride}});
}

inline Atom condition_atom(const SymExpr& e) {
  if (auto b = e.as<BinaryNode<Symbol>>()) {
    if (auto r = to_rel(b->op)) return Atom::cmp(b->lhs, *r, b->rhs, AtomRole::Path);
  }
  return Atom::cmp(e, Rel::Ne, SymExpr::lit(0), AtomRole::Path);
}

}  // namespace detail

/// Encodes one access as copy `copy_id`: index definitions, path atoms and
/// domain atoms of every renamed induction symbol.
inline AccessCopy encode_access_copy(const AccessRecord& acc, int copy_id,
                                     const VarEnv& env) {
  detail::Renamer rename(acc, copy_id, env);
  auto map = [&](const SourceExpr& e) { return rename.map(e); };
  AccessCopy out;
  for (const auto& l : acc.loops)
    if (l.role != LoopRole::OuterSequential)
      detail::add_domain(l, rename(l.var), map, out.atoms, out.decls);
  for (const auto& p : acc.path.atoms) out.atoms.push_back(detail::condition_atom(map(p)));
  for (std::size_t d = 0; d < acc.indices.size(); ++d) {
    Symbol idx = index_symbol(d + 1, copy_id);
    out.index_syms.push_back(idx);
    out.atoms.push_back(
        Atom::cmp(SymExpr::var(idx), Rel::Eq, map(acc.indices[d]), AtomRole::Index));
  }
  return out;
}

/// The race constraint for accesses `a` (copy `ids.first`) and `b` (copy
/// `ids.second`).
inline ConstraintSystem build_pair_constraint(const AccessRecord& a, const AccessRecord& b,
                                              DepClass dep, const VarEnv& env,
                                              std::pair<int, int> ids = {1, 2}) {
  if (a.array != b.array)
    throw std::invalid_argument("build_pair_constraint: accesses touch '" + a.array +
                                "' and '" + b.array + "'");
  if (a.indices.size() != b.indices.size())
    throw std::invalid_argument("build_pair_constraint: dimension mismatch on '" +
                                a.array + "'");
  if (ids.first == ids.second)
    throw std::invalid_argument("build_pair_constraint: copy ids must differ");

  ConstraintSystem cs;
  cs.meta = {a.id, b.id, dep, a.array, a.line, b.line};

  AccessCopy ca = encode_access_copy(a, ids.first, env);
  AccessCopy cb = encode_access_copy(b, ids.second, env);

  const LoopCtx& target = a.target_loop();
  cs.atoms.push_back(Atom::cmp(SymExpr::var({target.var, ids.first}), Rel::Ne,
                               SymExpr::var({target.var, ids.second}), AtomRole::Parallel));

  // Enclosing sequential loops are shared; their domains appear once.
  std::vector<Atom> outer_atoms;
  detail::Renamer shared(a, ids.first, env);
  auto map_shared = [&](const SourceExpr& e) { return shared.map(e); };
  for (const auto& l : a.loops)
    if (l.role == LoopRole::OuterSequential)
      detail::add_domain(l, Symbol{l.var, std::nullopt}, map_shared, outer_atoms, cs.symbols);

  auto append = [&](const std::vector<Atom>& atoms, AtomRole role) {
    for (const auto& at : atoms)
      if (at.role == role) cs.atoms.push_back(at);
  };
  for (AtomRole role : {AtomRole::Domain, AtomRole::Path, AtomRole::Index}) {
    if (role == AtomRole::Domain) append(outer_atoms, role);
    append(ca.atoms, role);
    append(cb.atoms, role);
  }
  for (std::size_t d = 0; d < ca.index_syms.size(); ++d)
    cs.atoms.push_back(Atom::cmp(SymExpr::var(ca.index_syms[d]), Rel::Eq,
                                 SymExpr::var(cb.index_syms[d]), AtomRole::IndexEquality));

  std::set<Symbol> referenced;
  for (const auto& at : cs.atoms)
    for_each_symbol(at, [&](const Symbol& s) { referenced.insert(s); });
  std::set<std::string> loop_vars;
  for (const auto* acc : {&a, &b})
    for (const auto& l : acc->loops) loop_vars.insert(l.var);
  for (const auto& s : referenced) {
    if (s.copy || loop_vars.count(s.base)) continue;
    if (auto v = env.known(s.base))
      cs.atoms.push_back(Atom::cmp(SymExpr::var(s), Rel::Eq, SymExpr::lit(*v),
                                   AtomRole::KnownValue));
  }

  cs.symbols.insert(cs.symbols.end(), ca.decls.begin(), ca.decls.end());
  cs.symbols.insert(cs.symbols.end(), cb.decls.begin(), cb.decls.end());
  cs.declare_missing();
  return cs;
}

struct AccessPair {
  AccessRecord first;
  AccessRecord second;
  DepClass dep = DepClass::RAW;
};

/// Every write with every read (RAW), and every unordered pair of writes
/// including each write with itself (WAW).
inline std::vector<AccessPair> enumerate_pairs(const std::vector<AccessRecord>& writes,
                                               const std::vector<AccessRecord>& reads) {
  std::vector<AccessPair> pairs;
  for (const auto& w : writes)
    for (const auto& r : reads) pairs.push_back({w, r, DepClass::RAW});
  for (std::size_t i = 0; i < writes.size(); ++i)
    for (std::size_t j = i; j < writes.size(); ++j)
      pairs.push_back({writes[i], writes[j], DepClass::WAW});
  return pairs;
}

}  // namespace racesat::encoding
