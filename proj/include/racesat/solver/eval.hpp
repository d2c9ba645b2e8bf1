//===-- eval.hpp - Expression evaluation ------------------------*- C++ -*-===//
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
// Concrete evaluation with C99 integer semantics over unbounded (checked
// 64-bit) integers: `/` truncates toward zero and `%` takes the sign of the
// dividend, so (x/y)*y + x%y == x. Comparisons and logical operators yield
// 0 or 1, and `&&`/`||` short-circuit.
//
//===----------------------------------------------------------------------===//
#pragma once

#include <cstdint>
#include <string>
#include <type_traits>

#include "racesat/error.hpp"
#include "racesat/expr.hpp"

namespace racesat {

namespace arith {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw EvalError("integer overflow");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw EvalError("integer overflow");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw EvalError("integer overflow");
  return r;
}

inline std::int64_t div(std::int64_t a, std::int64_t b) {
  if (b == 0) throw EvalError("division by zero");
  if (a == INT64_MIN && b == -1) throw EvalError("integer overflow");
  return a / b;  // C++11 onward truncates toward zero, as does C99.
}

inline std::int64_t mod(std::int64_t a, std::int64_t b) {
  if (b == 0) throw EvalError("modulo by zero");
  if (b == -1) return 0;
  return a % b;
}

inline std::int64_t neg(std::int64_t a) {
  if (a == INT64_MIN) throw EvalError("integer overflow");
  return -a;
}

inline std::int64_t apply(BinaryOp op, std::int64_t a, std::int64_t b) {
  switch (op) {
    case BinaryOp::Add: return add(a, b);
    case BinaryOp::Sub: return sub(a, b);
    case BinaryOp::Mul: return mul(a, b);
    case BinaryOp::Div: return div(a, b);
    case BinaryOp::Mod: return mod(a, b);
    case BinaryOp::Lt: return a < b;
    case BinaryOp::Le: return a <= b;
    case BinaryOp::Gt: return a > b;
    case BinaryOp::Ge: return a >= b;
    case BinaryOp::Eq: return a == b;
    case BinaryOp::Ne: return a != b;
    case BinaryOp::LAnd: return a != 0 && b != 0;
    case BinaryOp::LOr: return a != 0 || b != 0;
  }
  return 0;
}

}  // namespace arith

/// Evaluates `e`, resolving each variable through `lookup(name)`.
/// Throws EvalError on division by zero or overflow, and on subscripts or
/// calls, which have no concrete value here.
template <typename Leaf, typename Lookup>
std::int64_t evaluate(const Expr<Leaf>& e, const Lookup& lookup) {
  return e.visit([&](const auto& n) -> std::int64_t {
    using T = std::decay_t<decltype(n)>;
    if constexpr (std::is_same_v<T, LiteralNode<Leaf>>) {
      return n.value;
    } else if constexpr (std::is_same_v<T, VarNode<Leaf>>) {
      return lookup(n.name);
    } else if constexpr (std::is_same_v<T, UnaryNode<Leaf>>) {
      std::int64_t v = evaluate(n.operand, lookup);
      return n.op == UnaryOp::Neg ? arith::neg(v) : std::int64_t{v == 0};
    } else if constexpr (std::is_same_v<T, BinaryNode<Leaf>>) {
      if (n.op == BinaryOp::LAnd) {
        if (evaluate(n.lhs, lookup) == 0) return 0;
        return evaluate(n.rhs, lookup) != 0;
      }
      if (n.op == BinaryOp::LOr) {
        if (evaluate(n.lhs, lookup) != 0) return 1;
        return evaluate(n.rhs, lookup) != 0;
      }
      std::int64_t a = evaluate(n.lhs, lookup);
      std::int64_t b = evaluate(n.rhs, lookup);
      return arith::apply(n.op, a, b);
    } else {
      throw EvalError("array element or call has no concrete value");
    }
  });
}

}  // namespace racesat
