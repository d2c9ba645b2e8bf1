//===-- expr.hpp - Integer expressions --------------------------*- C++ -*-===//
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
// Expression trees shared by the frontend (leaves are source identifiers)
// and the constraint encoder (leaves are solver symbols). Nodes are
// immutable and shared, so copying an Expr is cheap.
//
//===----------------------------------------------------------------------===//
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "racesat/error.hpp"

namespace racesat {

enum class UnaryOp { Neg, Not };

enum class BinaryOp {
  Add,
  Sub,
  Mul,
  Div,
  Mod,
  Lt,
  Le,
  Gt,
  Ge,
  Eq,
  Ne,
  LAnd,
  LOr,
};

inline bool is_comparison(BinaryOp op) {
  switch (op) {
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge:
    case BinaryOp::Eq:
    case BinaryOp::Ne:
      return true;
    default:
      return false;
  }
}

inline bool is_logical(BinaryOp op) {
  return op == BinaryOp::LAnd || op == BinaryOp::LOr;
}

/// Returns the comparison that holds exactly when `op` does not.
inline BinaryOp negate_comparison(BinaryOp op) {
  switch (op) {
    case BinaryOp::Lt: return BinaryOp::Ge;
    case BinaryOp::Le: return BinaryOp::Gt;
    case BinaryOp::Gt: return BinaryOp::Le;
    case BinaryOp::Ge: return BinaryOp::Lt;
    case BinaryOp::Eq: return BinaryOp::Ne;
    case BinaryOp::Ne: return BinaryOp::Eq;
    default: throw std::logic_error("negate_comparison: not a comparison");
  }
}

/// `a op b` iff `b swap(op) a`.
inline BinaryOp swap_comparison(BinaryOp op) {
  switch (op) {
    case BinaryOp::Lt: return BinaryOp::Gt;
    case BinaryOp::Le: return BinaryOp::Ge;
    case BinaryOp::Gt: return BinaryOp::Lt;
    case BinaryOp::Ge: return BinaryOp::Le;
    default: return op;
  }
}

inline const char* spelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::LAnd: return "&&";
    case BinaryOp::LOr: return "||";
  }
  return "?";
}

/// C operator precedence, higher binds tighter.
inline int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::Mod: return 10;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 9;
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: return 7;
    case BinaryOp::Eq:
    case BinaryOp::Ne: return 6;
    case BinaryOp::LAnd: return 2;
    case BinaryOp::LOr: return 1;
  }
  return 0;
}

template <typename Leaf>
class Expr;

template <typename Leaf>
struct LiteralNode {
  std::int64_t value;
};

template <typename Leaf>
struct VarNode {
  Leaf name;
};

template <typename Leaf>
struct UnaryNode {
  UnaryOp op;
  Expr<Leaf> operand;
};

template <typename Leaf>
struct BinaryNode {
  BinaryOp op;
  Expr<Leaf> lhs;
  Expr<Leaf> rhs;
};

/// `array[i][j]`; only produced by the frontend.
template <typename Leaf>
struct SubscriptNode {
  std::string array;
  std::vector<Expr<Leaf>> indices;
};

/// `callee(args...)`; only produced by the frontend.
template <typename Leaf>
struct CallNode {
  std::string callee;
  std::vector<Expr<Leaf>> args;
};

template <typename Leaf>
class Expr {
 public:
  using Node = std::variant<LiteralNode<Leaf>, VarNode<Leaf>, UnaryNode<Leaf>,
                            BinaryNode<Leaf>, SubscriptNode<Leaf>,
                            CallNode<Leaf>>;

  Expr() : Expr(lit(0)) {}

  static Expr lit(std::int64_t value) {
    return Expr(LiteralNode<Leaf>{value});
  }
  static Expr var(Leaf name) { return Expr(VarNode<Leaf>{std::move(name)}); }
  static Expr unary(UnaryOp op, Expr operand) {
    return Expr(UnaryNode<Leaf>{op, std::move(operand)});
  }
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs) {
    return Expr(BinaryNode<Leaf>{op, std::move(lhs), std::move(rhs)});
  }
  static Expr subscript(std::string array, std::vector<Expr> indices) {
    return Expr(SubscriptNode<Leaf>{std::move(array), std::move(indices)});
  }
  static Expr call(std::string callee, std::vector<Expr> args) {
    return Expr(CallNode<Leaf>{std::move(callee), std::move(args)});
  }

  const Node& node() const { return *node_; }

  template <typename T>
  const T* as() const {
    return std::get_if<T>(node_.get());
  }

  template <typename Visitor>
  decltype(auto) visit(Visitor&& visitor) const {
    return std::visit(std::forward<Visitor>(visitor), *node_);
  }

  friend bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->index() != b.node_->index()) return false;
    return std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          const auto& y = std::get<T>(*b.node_);
          if constexpr (std::is_same_v<T, LiteralNode<Leaf>>) {
            return x.value == y.value;
          } else if constexpr (std::is_same_v<T, VarNode<Leaf>>) {
            return x.name == y.name;
          } else if constexpr (std::is_same_v<T, UnaryNode<Leaf>>) {
            return x.op == y.op && x.operand == y.operand;
          } else if constexpr (std::is_same_v<T, BinaryNode<Leaf>>) {
            return x.op == y.op && x.lhs == y.lhs && x.rhs == y.rhs;
          } else if constexpr (std::is_same_v<T, SubscriptNode<Leaf>>) {
            return x.array == y.array && x.indices == y.indices;
          } else {
            return x.callee == y.callee && x.args == y.args;
          }
        },
        *a.node_);
  }

 private:
  explicit Expr(Node node)
      : node_(std::make_shared<const Node>(std::move(node))) {}

  std::shared_ptr<const Node> node_;
};

using SourceExpr = Expr<std::string>;

// Shorthands, mostly for tests and the encoder.
template <typename Leaf>
Expr<Leaf> operator+(Expr<Leaf> a, Expr<Leaf> b) {
  return Expr<Leaf>::binary(BinaryOp::Add, std::move(a), std::move(b));
}
template <typename Leaf>
Expr<Leaf> operator-(Expr<Leaf> a, Expr<Leaf> b) {
  return Expr<Leaf>::binary(BinaryOp::Sub, std::move(a), std::move(b));
}
template <typename Leaf>
Expr<Leaf> operator*(Expr<Leaf> a, Expr<Leaf> b) {
  return Expr<Leaf>::binary(BinaryOp::Mul, std::move(a), std::move(b));
}

/// Calls `f` on every leaf name, in left-to-right order.
template <typename Leaf, typename F>
void for_each_var(const Expr<Leaf>& e, F&& f) {
  e.visit([&](const auto& n) {
    using T = std::decay_t<decltype(n)>;
    if constexpr (std::is_same_v<T, VarNode<Leaf>>) {
      f(n.name);
    } else if constexpr (std::is_same_v<T, UnaryNode<Leaf>>) {
      for_each_var(n.operand, f);
    } else if constexpr (std::is_same_v<T, BinaryNode<Leaf>>) {
      for_each_var(n.lhs, f);
      for_each_var(n.rhs, f);
    } else if constexpr (std::is_same_v<T, SubscriptNode<Leaf>>) {
      for (const auto& i : n.indices) for_each_var(i, f);
    } else if constexpr (std::is_same_v<T, CallNode<Leaf>>) {
      for (const auto& a : n.args) for_each_var(a, f);
    }
  });
}

template <typename Leaf>
bool contains_subscript(const Expr<Leaf>& e) {
  return e.visit([](const auto& n) -> bool {
    using T = std::decay_t<decltype(n)>;
    if constexpr (std::is_same_v<T, SubscriptNode<Leaf>> ||
                  std::is_same_v<T, CallNode<Leaf>>) {
      return true;
    } else if constexpr (std::is_same_v<T, UnaryNode<Leaf>>) {
      return contains_subscript(n.operand);
    } else if constexpr (std::is_same_v<T, BinaryNode<Leaf>>) {
      return contains_subscript(n.lhs) || contains_subscript(n.rhs);
    } else {
      return false;
    }
  });
}

template <typename Leaf>
bool contains_call(const Expr<Leaf>& e) {
  return e.visit([](const auto& n) -> bool {
    using T = std::decay_t<decltype(n)>;
    if constexpr (std::is_same_v<T, CallNode<Leaf>>) {
      return true;
    } else if constexpr (std::is_same_v<T, UnaryNode<Leaf>>) {
      return contains_call(n.operand);
    } else if constexpr (std::is_same_v<T, BinaryNode<Leaf>>) {
      return contains_call(n.lhs) || contains_call(n.rhs);
    } else if constexpr (std::is_same_v<T, SubscriptNode<Leaf>>) {
      for (const auto& i : n.indices)
        if (contains_call(i)) return true;
      return false;
    } else {
      return false;
    }
  });
}

/// Rebuilds `e` with every leaf mapped through `f`. Subscripts and calls
/// have no counterpart in pure integer expressions and are rejected.
template <typename To, typename From, typename F>
Expr<To> map_leaves(const Expr<From>& e, F&& f) {
  return e.visit([&](const auto& n) -> Expr<To> {
    using T = std::decay_t<decltype(n)>;
    if constexpr (std::is_same_v<T, LiteralNode<From>>) {
      return Expr<To>::lit(n.value);
    } else if constexpr (std::is_same_v<T, VarNode<From>>) {
      return Expr<To>::var(f(n.name));
    } else if constexpr (std::is_same_v<T, UnaryNode<From>>) {
      return Expr<To>::unary(n.op, map_leaves<To>(n.operand, f));
    } else if constexpr (std::is_same_v<T, BinaryNode<From>>) {
      return Expr<To>::binary(n.op, map_leaves<To>(n.lhs, f),
                              map_leaves<To>(n.rhs, f));
    } else {
      throw UnsupportedError("array access or call inside an index expression");
    }
  });
}

/// Replaces variables for which `f` returns a value with that expression.
template <typename Leaf, typename F>
Expr<Leaf> substitute(const Expr<Leaf>& e, F&& f) {
  return e.visit([&](const auto& n) -> Expr<Leaf> {
    using T = std::decay_t<decltype(n)>;
    if constexpr (std::is_same_v<T, VarNode<Leaf>>) {
      std::optional<Expr<Leaf>> r = f(n.name);
      return r ? *r : e;
    } else if constexpr (std::is_same_v<T, UnaryNode<Leaf>>) {
      return Expr<Leaf>::unary(n.op, substitute(n.operand, f));
    } else if constexpr (std::is_same_v<T, BinaryNode<Leaf>>) {
      return Expr<Leaf>::binary(n.op, substitute(n.lhs, f),
                                substitute(n.rhs, f));
    } else if constexpr (std::is_same_v<T, SubscriptNode<Leaf>>) {
      std::vector<Expr<Leaf>> idx;
      for (const auto& i : n.indices) idx.push_back(substitute(i, f));
      return Expr<Leaf>::subscript(n.array, std::move(idx));
    } else if constexpr (std::is_same_v<T, CallNode<Leaf>>) {
      std::vector<Expr<Leaf>> args;
      for (const auto& a : n.args) args.push_back(substitute(a, f));
      return Expr<Leaf>::call(n.callee, std::move(args));
    } else {
      return e;
    }
  });
}

namespace detail {

template <typename Leaf, typename LeafPrinter>
void print_expr(std::string& out, const Expr<Leaf>& e, int parent_prec,
                const LeafPrinter& leaf) {
  e.visit([&](const auto& n) {
    using T = std::decay_t<decltype(n)>;
    if constexpr (std::is_same_v<T, LiteralNode<Leaf>>) {
      if (n.value < 0 && parent_prec > 0) {
        out += "(" + std::to_string(n.value) + ")";
      } else {
        out += std::to_string(n.value);
      }
    } else if constexpr (std::is_same_v<T, VarNode<Leaf>>) {
      out += leaf(n.name);
    } else if constexpr (std::is_same_v<T, UnaryNode<Leaf>>) {
      out += n.op == UnaryOp::Neg ? "-" : "!";
      print_expr(out, n.operand, 100, leaf);
    } else if constexpr (std::is_same_v<T, BinaryNode<Leaf>>) {
      int p = precedence(n.op);
      bool paren = p < parent_prec;
      if (paren) out += "(";
      print_expr(out, n.lhs, p, leaf);
      out += " ";
      out += spelling(n.op);
      out += " ";
      // Left-associative: a right operand of equal precedence needs parens.
      print_expr(out, n.rhs, p + 1, leaf);
      if (paren) out += ")";
    } else if constexpr (std::is_same_v<T, SubscriptNode<Leaf>>) {
      out += n.array;
      for (const auto& i : n.indices) {
        out += "[";
        print_expr(out, i, 0, leaf);
        out += "]";
      }
    } else if constexpr (std::is_same_v<T, CallNode<Leaf>>) {
      out += n.callee + "(";
      for (std::size_t k = 0; k < n.args.size(); ++k) {
        if (k) out += ", ";
        print_expr(out, n.args[k], 0, leaf);
      }
      out += ")";
    }
  });
}

}  // namespace detail

template <typename Leaf, typename LeafPrinter>
std::string to_string(const Expr<Leaf>& e, const LeafPrinter& leaf) {
  std::string out;
  detail::print_expr(out, e, 0, leaf);
  return out;
}

inline std::string to_string(const SourceExpr& e) {
  return to_string(e, [](const std::string& s) { return s; });
}

}  // namespace racesat
