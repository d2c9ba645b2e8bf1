//===-- smtlib.hpp - SMT-LIB emission ---------------------------*- C++ -*-===//
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
// SMT-LIB2 emission. SMT-LIB `div`/`mod` are Euclidean, so C division is
// rebuilt from the quotient of absolute values with the sign restored, and
// C remainder as a - b*(a/b). An atom whose evaluation would divide by zero
// is false, as in the internal search; each assertion is therefore guarded
// by the definedness of its divisions, following `&&`/`||` short-circuit.
//
//===----------------------------------------------------------------------===//
#pragma once

#include <string>
#include <vector>

#include "racesat/encoding/constraint.hpp"

namespace racesat {

namespace detail {

class SmtWriter {
 public:
  std::string int_term(const SymExpr& e) {
    return e.visit([&](const auto& n) -> std::string {
      using T = std::decay_t<decltype(n)>;
      if constexpr (std::is_same_v<T, LiteralNode<Symbol>>) {
        return literal(n.value);
      } else if constexpr (std::is_same_v<T, VarNode<Symbol>>) {
        return n.name.smt_name();
      } else if constexpr (std::is_same_v<T, UnaryNode<Symbol>>) {
        if (n.op == UnaryOp::Neg) return "(- " + int_term(n.operand) + ")";
        return "(ite " + bool_term(e) + " 1 0)";
      } else if constexpr (std::is_same_v<T, BinaryNode<Symbol>>) {
        switch (n.op) {
          case BinaryOp::Add: return "(+ " + int_term(n.lhs) + " " + int_term(n.rhs) + ")";
          case BinaryOp::Sub: return "(- " + int_term(n.lhs) + " " + int_term(n.rhs) + ")";
          case BinaryOp::Mul: return "(* " + int_term(n.lhs) + " " + int_term(n.rhs) + ")";
          case BinaryOp::Div: return cdiv(int_term(n.lhs), int_term(n.rhs));
          case BinaryOp::Mod: return cmod(int_term(n.lhs), int_term(n.rhs));
          default: return "(ite " + bool_term(e) + " 1 0)";
        }
      } else {
        throw std::logic_error("array access in a constraint");
      }
    });
  }

  std::string bool_term(const SymExpr& e) {
    if (auto u = e.as<UnaryNode<Symbol>>(); u && u->op == UnaryOp::Not)
      return "(not " + bool_term(u->operand) + ")";
    if (auto b = e.as<BinaryNode<Symbol>>()) {
      switch (b->op) {
        case BinaryOp::LAnd: return "(and " + bool_term(b->lhs) + " " + bool_term(b->rhs) + ")";
        case BinaryOp::LOr: return "(or " + bool_term(b->lhs) + " " + bool_term(b->rhs) + ")";
        case BinaryOp::Ne: return "(not (= " + int_term(b->lhs) + " " + int_term(b->rhs) + "))";
        case BinaryOp::Eq:
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge: {
          std::string op = b->op == BinaryOp::Eq ? "=" : spelling(b->op);
          return "(" + op + " " + int_term(b->lhs) + " " + int_term(b->rhs) + ")";
        }
        default: break;
      }
    }
    return "(not (= " + int_term(e) + " 0))";
  }

  /// Conditions under which evaluating `e` never divides by zero; empty
  /// when `e` has no division.
  std::string defined(const SymExpr& e) {
    return e.visit([&](const auto& n) -> std::string {
      using T = std::decay_t<decltype(n)>;
      if constexpr (std::is_same_v<T, UnaryNode<Symbol>>) {
        return defined(n.operand);
      } else if constexpr (std::is_same_v<T, BinaryNode<Symbol>>) {
        std::string dl = defined(n.lhs);
        std::string dr = defined(n.rhs);
        if (n.op == BinaryOp::LAnd || n.op == BinaryOp::LOr) {
          if (!dr.empty()) {
            std::string l = bool_term(n.lhs);
            if (n.op == BinaryOp::LOr) l = "(not " + l + ")";
            dr = "(=> " + l + " " + dr + ")";
          }
          return conj({dl, dr});
        }
        std::string nz;
        if (n.op == BinaryOp::Div || n.op == BinaryOp::Mod)
          nz = "(not (= " + int_term(n.rhs) + " 0))";
        return conj({dl, dr, nz});
      } else {
        return std::string();
      }
    });
  }

  std::string atom(const Atom& a) {
    std::string body, def;
    if (auto c = std::get_if<Comparison>(&a.body)) {
      std::string l = int_term(c->lhs), r = int_term(c->rhs);
      switch (c->rel) {
        case Rel::Eq: body = "(= " + l + " " + r + ")"; break;
        case Rel::Ne: body = "(not (= " + l + " " + r + "))"; break;
        default: body = "(" + std::string(spelling(c->rel)) + " " + l + " " + r + ")";
      }
      def = conj({defined(c->lhs), defined(c->rhs)});
    } else {
      const auto& d = std::get<Divisible>(a.body);
      body = "(= (mod " + int_term(d.expr) + " " + literal(d.modulus) + ") 0)";
      def = defined(d.expr);
    }
    return def.empty() ? body : "(and " + def + " " + body + ")";
  }

  static std::string literal(std::int64_t v) {
    if (v >= 0) return std::to_string(v);
    // Magnitude of INT64_MIN does not fit; print it from the unsigned value.
    return "(- " + std::to_string(static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(v)) + ")";
  }

 private:
  static std::string conj(const std::vector<std::string>& parts) {
    std::vector<std::string> nonempty;
    for (const auto& p : parts)
      if (!p.empty()) nonempty.push_back(p);
    if (nonempty.empty()) return {};
    if (nonempty.size() == 1) return nonempty.front();
    std::string out = "(and";
    for (const auto& p : nonempty) out += " " + p;
    return out + ")";
  }

  std::string fresh() { return "t!" + std::to_string(counter_++); }

  static std::string abs(const std::string& x) {
    return "(ite (>= " + x + " 0) " + x + " (- " + x + "))";
  }

  std::string cdiv(const std::string& a, const std::string& b) {
    std::string x = fresh(), y = fresh();
    return "(let ((" + x + " " + a + ") (" + y + " " + b + ")) " + cdiv_body(x, y) + ")";
  }

  static std::string cdiv_body(const std::string& x, const std::string& y) {
    std::string q = "(div " + abs(x) + " " + abs(y) + ")";
    return "(ite (= (>= " + x + " 0) (> " + y + " 0)) " + q + " (- " + q + "))";
  }

  std::string cmod(const std::string& a, const std::string& b) {
    std::string x = fresh(), y = fresh();
    return "(let ((" + x + " " + a + ") (" + y + " " + b + ")) (- " + x + " (* " + y + " " +
           cdiv_body(x, y) + ")))";
  }

  int counter_ = 0;
};

}  // namespace detail

/// A complete script: declarations, one assertion per atom, check-sat and
/// get-model. Output depends only on `cs`.
inline std::string emit_smtlib(const ConstraintSystem& cs) {
  detail::SmtWriter w;
  std::string out;
  out += "; pair " + std::to_string(cs.meta.first_id) + " " + std::to_string(cs.meta.second_id) +
         " " + to_string(cs.meta.dep) + " on " + (cs.meta.array.empty() ? "-" : cs.meta.array) +
         "\n";
  out += "(set-option :produce-models true)\n";
  out += "(set-logic QF_NIA)\n";
  for (const auto& d : cs.symbols) out += "(declare-const " + d.symbol.smt_name() + " Int)\n";
  for (const auto& a : cs.atoms)
    out += "(assert " + w.atom(a) + ") ; " + to_string(a.role) + "\n";
  out += "(check-sat)\n(get-model)\n";
  return out;
}

}  // namespace racesat
