//===-- printer.hpp - Source printer ----------------------------*- C++ -*-===//
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

#include <string>
#include <type_traits>

#include "racesat/frontend/ast.hpp"

namespace racesat::frontend {

namespace detail {

inline std::string lvalue_text(const LValue& lv) {
  std::string s = lv.name;
  for (const auto& i : lv.indices) s += "[" + to_string(i) + "]";
  return s;
}

inline void print_stmt(std::string& out, const Stmt& s, int depth);

inline void print_block(std::string& out, const Block& b, int depth) {
  out += "{\n";
  for (const auto& c : b.stmts) print_stmt(out, c, depth + 1);
  out += std::string(depth * 2, ' ') + "}";
}

inline std::string step_text(const ForStep& s) {
  switch (s.kind) {
    case StepKind::Increment: return s.prefix ? "++" + s.var : s.var + "++";
    case StepKind::Decrement: return s.prefix ? "--" + s.var : s.var + "--";
    case StepKind::AddAssign: return s.var + " += " + to_string(s.amount);
    case StepKind::SubAssign: return s.var + " -= " + to_string(s.amount);
  }
  return {};
}

inline void print_stmt(std::string& out, const Stmt& s, int depth) {
  std::string pad(depth * 2, ' ');
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Decl>) {
          out += pad + "int ";
          for (std::size_t k = 0; k < n.declarators.size(); ++k) {
            const auto& d = n.declarators[k];
            if (k) out += ", ";
            out += d.name;
            for (const auto& dim : d.dims) out += "[" + to_string(dim) + "]";
            if (d.init) out += " = " + to_string(*d.init);
            if (d.brace_init) out += " = {0}";
          }
          out += ";\n";
        } else if constexpr (std::is_same_v<T, Assign>) {
          out += pad + lvalue_text(n.target) + " " +
                 (n.op ? std::string(spelling(*n.op)) + "=" : "=") + " " +
                 to_string(n.value) + ";\n";
        } else if constexpr (std::is_same_v<T, IncDec>) {
          std::string op = n.increment ? "++" : "--";
          out += pad + (n.prefix ? op + lvalue_text(n.target)
                                 : lvalue_text(n.target) + op) +
                 ";\n";
        } else if constexpr (std::is_same_v<T, For>) {
          out += pad + "for (" + (n.init.declares ? "int " : "") + n.init.var +
                 " = " + to_string(n.init.value) + "; " + to_string(n.cond) +
                 "; " + step_text(n.step) + ") ";
          print_block(out, n.body, depth);
          out += "\n";
        } else if constexpr (std::is_same_v<T, If>) {
          for (std::size_t k = 0; k < n.arms.size(); ++k) {
            out += k == 0 ? pad + "if (" : " else if (";
            out += to_string(n.arms[k].first) + ") ";
            print_block(out, n.arms[k].second, depth);
          }
          if (n.otherwise) {
            out += " else ";
            print_block(out, *n.otherwise, depth);
          }
          out += "\n";
        } else if constexpr (std::is_same_v<T, Block>) {
          out += pad;
          print_block(out, n, depth);
          out += "\n";
        } else if constexpr (std::is_same_v<T, Pragma>) {
          out += "#pragma " + n.text + "\n";
        } else if constexpr (std::is_same_v<T, ExprStmt>) {
          out += pad + to_string(n.expr) + ";\n";
        } else if constexpr (std::is_same_v<T, Unsupported>) {
          out += pad + n.text + "\n";
        } else if constexpr (std::is_same_v<T, Function>) {
          out += pad + n.return_type + " " + n.name + "(";
          for (std::size_t k = 0; k < n.params.size(); ++k) {
            const auto& p = n.params[k];
            if (k) out += ", ";
            if (p.name == "...") {
              out += "...";
              continue;
            }
            out += p.integer ? "int " : "double ";
            if (p.pointer) out += "*";
            out += p.name;
            for (const auto& d : p.dims) out += "[" + (d ? to_string(*d) : "") + "]";
          }
          out += ") ";
          print_block(out, n.body, depth);
          out += "\n";
        }
      },
      s.node);
}

}  // namespace detail

/// Renders the Ast as C source accepted by `parse`.
inline std::string print(const Ast& ast) {
  std::string out;
  for (const auto& s : ast.items) detail::print_stmt(out, s, 0);
  return out;
}

}  // namespace racesat::frontend
