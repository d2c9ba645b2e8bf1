//===-- support.hpp - Test helpers ------------------------------*- C++ -*-===//
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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "racesat/racesat.hpp"

namespace racesat::testing {

inline std::filesystem::path corpus_dir() { return RACESAT_CORPUS_DIR; }

inline std::string corpus_file(const std::string& name) {
  return (corpus_dir() / name).string();
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string solver_cmd() { return RACESAT_SOLVER_CMD; }

inline ExternalOptions external_options() { return {solver_cmd(), 60}; }

/// The analysis stages up to access collection for one source text.
struct Pipeline {
  frontend::Ast ast;
  frontend::LoopRef target;
  analysis::VarEnv env;
  std::vector<analysis::LoopCtx> nest;
  analysis::AccessLists accesses;

  explicit Pipeline(const std::string& source, bool const_fold = false,
                    analysis::AccessOptions opts = {}) {
    ast = frontend::parse(frontend::expand_macros(source).first);
    target = frontend::locate_target_loop(ast);
    env = analysis::record_variables(ast, target, const_fold);
    nest = analysis::collect_loops(ast, target);
    accesses = analysis::collect_accesses(ast, target, env, opts);
  }

  /// Pair systems on the same array, in enumeration order.
  std::vector<ConstraintSystem> systems(std::pair<int, int> ids = {1, 2}) const {
    std::vector<ConstraintSystem> out;
    for (const auto& p : encoding::enumerate_pairs(accesses.writes, accesses.reads))
      if (p.first.array == p.second.array)
        out.push_back(encoding::build_pair_constraint(p.first, p.second, p.dep, env, ids));
    return out;
  }
};

namespace detail {

inline bool same(const frontend::Stmt& a, const frontend::Stmt& b);

inline bool same(const frontend::Block& a, const frontend::Block& b) {
  if (a.stmts.size() != b.stmts.size()) return false;
  for (std::size_t k = 0; k < a.stmts.size(); ++k)
    if (!same(a.stmts[k], b.stmts[k])) return false;
  return true;
}

inline bool same(const frontend::LValue& a, const frontend::LValue& b) {
  return a.name == b.name && a.indices == b.indices;
}

inline bool same(const frontend::Stmt& a, const frontend::Stmt& b) {
  using namespace frontend;
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Decl>) {
          if (x.declarators.size() != y.declarators.size()) return false;
          for (std::size_t k = 0; k < x.declarators.size(); ++k) {
            const auto& p = x.declarators[k];
            const auto& q = y.declarators[k];
            if (p.name != q.name || p.dims != q.dims || p.init != q.init ||
                p.brace_init != q.brace_init)
              return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, Assign>) {
          return same(x.target, y.target) && x.op == y.op && x.value == y.value;
        } else if constexpr (std::is_same_v<T, IncDec>) {
          return same(x.target, y.target) && x.increment == y.increment && x.prefix == y.prefix;
        } else if constexpr (std::is_same_v<T, For>) {
          return x.init.var == y.init.var && x.init.declares == y.init.declares &&
                 x.init.value == y.init.value && x.cond == y.cond && x.step.var == y.step.var &&
                 x.step.kind == y.step.kind && x.step.prefix == y.step.prefix &&
                 x.step.amount == y.step.amount && same(x.body, y.body);
        } else if constexpr (std::is_same_v<T, If>) {
          if (x.arms.size() != y.arms.size()) return false;
          for (std::size_t k = 0; k < x.arms.size(); ++k)
            if (!(x.arms[k].first == y.arms[k].first) || !same(x.arms[k].second, y.arms[k].second))
              return false;
          if (x.otherwise.has_value() != y.otherwise.has_value()) return false;
          return !x.otherwise || same(*x.otherwise, *y.otherwise);
        } else if constexpr (std::is_same_v<T, Block>) {
          return same(x, y);
        } else if constexpr (std::is_same_v<T, Pragma>) {
          return x.text == y.text;
        } else if constexpr (std::is_same_v<T, ExprStmt>) {
          return x.expr == y.expr;
        } else if constexpr (std::is_same_v<T, Unsupported>) {
          return x.reason == y.reason;
        } else {
          if (x.name != y.name || x.return_type != y.return_type ||
              x.params.size() != y.params.size())
            return false;
          for (std::size_t k = 0; k < x.params.size(); ++k) {
            const auto& p = x.params[k];
            const auto& q = y.params[k];
            if (p.name != q.name || p.dims != q.dims || p.pointer != q.pointer ||
                p.integer != q.integer)
              return false;
          }
          return same(x.body, y.body);
        }
      },
      a.node);
}

}  // namespace detail

/// Structural equality, ignoring source positions.
inline bool same_structure(const frontend::Ast& a, const frontend::Ast& b) {
  if (a.items.size() != b.items.size()) return false;
  for (std::size_t k = 0; k < a.items.size(); ++k)
    if (!detail::same(a.items[k], b.items[k])) return false;
  return true;
}

inline detector::Config internal_config() { return {}; }

inline detector::Config external_config() {
  detector::Config c;
  c.backend = detector::Backend::External;
  c.solver_cmd = solver_cmd();
  c.timeout_seconds = 60;
  return c;
}

}  // namespace racesat::testing
