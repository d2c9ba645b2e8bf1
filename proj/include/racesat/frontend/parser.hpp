//===-- parser.hpp - C subset parser ----------------------------*- C++ -*-===//
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
// Recursive-descent parser for the analyzable C subset. Statements that are
// well formed C but outside the subset become Unsupported nodes; malformed
// input raises SyntaxError.
//
//===----------------------------------------------------------------------===//
#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "racesat/error.hpp"
#include "racesat/frontend/ast.hpp"
#include "racesat/frontend/lexer.hpp"

namespace racesat::frontend {

namespace detail {

inline bool is_int_type_word(std::string_view s) {
  static constexpr std::array<std::string_view, 7> kWords = {
      "int", "long", "short", "unsigned", "signed", "char", "_Bool"};
  return std::find(kWords.begin(), kWords.end(), s) != kWords.end();
}

inline bool is_qualifier(std::string_view s) {
  static constexpr std::array<std::string_view, 7> kWords = {
      "const", "static", "volatile", "register", "extern", "inline",
      "restrict"};
  return std::find(kWords.begin(), kWords.end(), s) != kWords.end();
}

inline bool is_other_type_word(std::string_view s) {
  static constexpr std::array<std::string_view, 11> kWords = {
      "void",  "double", "float",   "struct", "union", "enum",
      "bool",  "size_t", "typedef", "auto",   "_Complex"};
  return std::find(kWords.begin(), kWords.end(), s) != kWords.end();
}

inline bool starts_type(const Token& t) {
  return t.kind == TokenKind::Identifier &&
         (is_int_type_word(t.text) || is_qualifier(t.text) ||
          is_other_type_word(t.text));
}

inline bool is_unsupported_keyword(std::string_view s) {
  static constexpr std::array<std::string_view, 10> kWords = {
      "while", "do",   "switch",  "return",  "break",
      "continue", "goto", "case", "default", "sizeof"};
  return std::find(kWords.begin(), kWords.end(), s) != kWords.end();
}

/// Thrown inside a statement; the statement becomes an Unsupported node.
struct Unsupp {
  std::string reason;
};

}  // namespace detail

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Ast parse_unit() {
    Ast ast;
    while (!at_end()) ast.items.push_back(parse_item());
    return ast;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == TokenKind::End; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool accept(std::string_view p) {
    if (peek().punct(p)) {
      next();
      return true;
    }
    return false;
  }
  [[noreturn]] void syntax(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(msg + ", got " + got, t.line, t.column);
  }
  void expect(std::string_view p) {
    if (!accept(p)) syntax("expected '" + std::string(p) + "'");
  }
  std::string expect_identifier() {
    if (peek().kind != TokenKind::Identifier) syntax("expected identifier");
    return next().text;
  }

  Stmt make(Stmt::Node node, const Token& at) {
    Stmt s;
    s.node = std::move(node);
    s.line = at.line;
    s.column = at.column;
    return s;
  }

  // ---- items and statements ----

  Stmt parse_item() {
    const Token& start = peek();
    if (detail::starts_type(start)) {
      std::size_t save = pos_;
      // Look past specifiers for `name (` to spot function definitions.
      std::size_t k = 0;
      while (peek(k).kind == TokenKind::Identifier &&
             (detail::starts_type(peek(k)) ||
              (k > 0 && peek(k + 1).kind == TokenKind::Identifier)))
        ++k;
      if (peek(k).kind == TokenKind::Identifier && peek(k + 1).punct("(")) {
        try {
          return parse_function();
        } catch (const detail::Unsupp& u) {
          pos_ = save;
          return skip_as_unsupported(start, u.reason);
        }
      }
    }
    return parse_statement();
  }

  Stmt parse_function() {
    const Token& start = peek();
    Function fn;
    while (peek().kind == TokenKind::Identifier && !peek(1).punct("(")) {
      if (!fn.return_type.empty()) fn.return_type += ' ';
      fn.return_type += next().text;
    }
    fn.name = expect_identifier();
    expect("(");
    if (!(peek().ident("void") && peek(1).punct(")"))) {
      while (!peek().punct(")")) {
        fn.params.push_back(parse_param());
        if (!accept(",")) break;
      }
    } else {
      next();
    }
    expect(")");
    if (accept(";")) {
      throw detail::Unsupp{"function declaration without body"};
    }
    if (!peek().punct("{")) syntax("expected function body");
    fn.body = parse_block();
    return make(std::move(fn), start);
  }

  Param parse_param() {
    Param p;
    std::vector<std::string> words;
    if (accept("...")) {
      p.name = "...";
      p.integer = false;
      return p;
    }
    while (peek().kind == TokenKind::Identifier || peek().punct("*")) {
      if (peek().punct("*")) {
        p.pointer = true;
        next();
        continue;
      }
      words.push_back(next().text);
    }
    if (words.empty()) syntax("expected parameter");
    p.name = words.back();
    words.pop_back();
    for (const auto& w : words)
      if (!detail::is_int_type_word(w) && !detail::is_qualifier(w))
        p.integer = false;
    while (accept("[")) {
      if (accept("]")) {
        p.dims.emplace_back(std::nullopt);
        continue;
      }
      p.dims.emplace_back(parse_expr());
      expect("]");
    }
    return p;
  }

  Stmt parse_statement() {
    const Token& start = peek();
    std::size_t save = pos_;
    try {
      return parse_statement_inner();
    } catch (const detail::Unsupp& u) {
      pos_ = save;
      return skip_as_unsupported(start, u.reason);
    }
  }

  Stmt parse_statement_inner() {
    const Token& start = peek();
    if (start.kind == TokenKind::End) syntax("expected statement");
    if (start.kind == TokenKind::Pragma) {
      next();
      return make(Pragma{start.text}, start);
    }
    if (start.punct("{")) return make(parse_block(), start);
    if (start.punct(";")) {
      next();
      return make(Block{}, start);
    }
    if (start.punct("}")) syntax("unexpected '}'");
    if (start.kind == TokenKind::Identifier) {
      if (start.text == "for") return parse_for();
      if (start.text == "if") return parse_if();
      if (start.text == "else") syntax("'else' without 'if'");
      if (detail::is_unsupported_keyword(start.text))
        throw detail::Unsupp{"'" + start.text + "' statement"};
      if (detail::starts_type(start)) return parse_declaration();
    }
    if (start.punct("++") || start.punct("--")) {
      next();
      IncDec s;
      s.increment = start.text == "++";
      s.prefix = true;
      s.target = to_lvalue(parse_unary());
      end_statement();
      return make(std::move(s), start);
    }

    SourceExpr e = parse_expr();
    const Token& op = peek();
    if (op.punct("=")) {
      next();
      Assign a{to_lvalue(e), std::nullopt, parse_expr()};
      end_statement();
      return make(std::move(a), start);
    }
    if (auto bop = compound_op(op)) {
      next();
      Assign a{to_lvalue(e), bop, parse_expr()};
      end_statement();
      return make(std::move(a), start);
    }
    if (op.punct("++") || op.punct("--")) {
      next();
      IncDec s;
      s.target = to_lvalue(e);
      s.increment = op.text == "++";
      end_statement();
      return make(std::move(s), start);
    }
    end_statement();
    if (contains_call(e)) throw detail::Unsupp{"function call"};
    return make(ExprStmt{e}, start);
  }

  void end_statement() {
    const Token& t = peek();
    if (t.punct("=") || compound_op(t) || t.punct("<<=") || t.punct(">>=") ||
        t.punct("&=") || t.punct("|=") || t.punct("^=") || t.punct(","))
      throw detail::Unsupp{"chained or bitwise assignment"};
    expect(";");
  }

  static std::optional<BinaryOp> compound_op(const Token& t) {
    if (t.kind != TokenKind::Punct) return std::nullopt;
    if (t.text == "+=") return BinaryOp::Add;
    if (t.text == "-=") return BinaryOp::Sub;
    if (t.text == "*=") return BinaryOp::Mul;
    if (t.text == "/=") return BinaryOp::Div;
    if (t.text == "%=") return BinaryOp::Mod;
    return std::nullopt;
  }

  static LValue to_lvalue(const SourceExpr& e) {
    if (auto v = e.as<VarNode<std::string>>()) return LValue{v->name, {}};
    if (auto s = e.as<SubscriptNode<std::string>>())
      return LValue{s->array, s->indices};
    throw detail::Unsupp{"assignment to a non-variable"};
  }

  Block parse_block() {
    expect("{");
    Block b;
    while (!peek().punct("}")) {
      if (at_end()) syntax("expected '}'");
      b.stmts.push_back(parse_statement());
    }
    expect("}");
    return b;
  }

  /// Loop and branch bodies; a braceless body absorbs preceding pragmas.
  Block parse_body() {
    if (peek().punct("{")) return parse_block();
    Block b;
    while (peek().kind == TokenKind::Pragma) {
      const Token& t = next();
      b.stmts.push_back(make(Pragma{t.text}, t));
    }
    b.stmts.push_back(parse_statement());
    return b;
  }

  Stmt parse_declaration() {
    const Token& start = peek();
    bool integer = true;
    bool any_type = false;
    while (detail::starts_type(peek())) {
      const Token& t = next();
      if (detail::is_other_type_word(t.text)) integer = false;
      if (!detail::is_qualifier(t.text)) any_type = true;
    }
    if (!integer) throw detail::Unsupp{"non-integer declaration"};
    if (!any_type) throw detail::Unsupp{"declaration without a type"};
    Decl d;
    do {
      if (peek().punct("*")) throw detail::Unsupp{"pointer declaration"};
      Declarator decl;
      decl.name = expect_identifier();
      if (peek().punct("(")) throw detail::Unsupp{"function declaration"};
      while (accept("[")) {
        if (peek().punct("]")) throw detail::Unsupp{"array of unknown size"};
        decl.dims.push_back(parse_expr());
        expect("]");
      }
      if (accept("=")) {
        if (peek().punct("{")) {
          skip_balanced("{", "}");
          decl.brace_init = true;
        } else {
          decl.init = parse_expr();
        }
      }
      d.declarators.push_back(std::move(decl));
    } while (accept(","));
    expect(";");
    return make(std::move(d), start);
  }

  Stmt parse_for() {
    const Token& start = next();  // 'for'
    expect("(");
    For f;
    bool declares = false;
    while (detail::starts_type(peek())) {
      if (!detail::is_int_type_word(peek().text) &&
          !detail::is_qualifier(peek().text))
        throw detail::Unsupp{"non-integer loop variable"};
      next();
      declares = true;
    }
    if (peek().punct(";")) throw detail::Unsupp{"for-loop without init clause"};
    f.init.declares = declares;
    f.init.var = expect_identifier();
    if (!accept("=")) throw detail::Unsupp{"for-loop init is not an assignment"};
    f.init.value = parse_expr();
    if (peek().punct(",")) throw detail::Unsupp{"comma in for-loop init"};
    expect(";");
    if (peek().punct(";")) throw detail::Unsupp{"for-loop without condition"};
    f.cond = parse_expr();
    expect(";");
    f.step = parse_step();
    expect(")");
    f.body = parse_body();
    return make(std::move(f), start);
  }

  ForStep parse_step() {
    ForStep s;
    if (peek().punct("++") || peek().punct("--")) {
      s.kind = next().text == "++" ? StepKind::Increment : StepKind::Decrement;
      s.prefix = true;
      s.var = expect_identifier();
      return s;
    }
    if (peek().kind != TokenKind::Identifier)
      throw detail::Unsupp{"unsupported for-loop step"};
    s.var = next().text;
    if (accept("++")) {
      s.kind = StepKind::Increment;
    } else if (accept("--")) {
      s.kind = StepKind::Decrement;
    } else if (accept("+=")) {
      s.kind = StepKind::AddAssign;
      s.amount = parse_expr();
    } else if (accept("-=")) {
      s.kind = StepKind::SubAssign;
      s.amount = parse_expr();
    } else {
      throw detail::Unsupp{"unsupported for-loop step"};
    }
    if (peek().punct(",")) throw detail::Unsupp{"comma in for-loop step"};
    return s;
  }

  Stmt parse_if() {
    const Token& start = next();  // 'if'
    If node;
    while (true) {
      expect("(");
      SourceExpr cond = parse_expr();
      expect(")");
      node.arms.emplace_back(std::move(cond), parse_body());
      if (!peek().ident("else")) break;
      next();
      if (peek().ident("if")) {
        next();
        continue;
      }
      node.otherwise = parse_body();
      break;
    }
    return make(std::move(node), start);
  }

  // ---- unsupported-statement recovery ----

  void skip_balanced(std::string_view open, std::string_view close) {
    const Token& start = peek();
    expect(open);
    int depth = 1;
    while (depth > 0) {
      if (at_end())
        throw SyntaxError("unbalanced '" + std::string(open) + "'", start.line,
                          start.column);
      const Token& t = next();
      if (t.punct(open)) ++depth;
      if (t.punct(close)) --depth;
    }
  }

  void skip_statement() {
    const Token& t = peek();
    if (t.kind == TokenKind::End) syntax("expected statement");
    if (t.kind == TokenKind::Pragma) {
      next();
      return;
    }
    if (t.punct("{")) {
      skip_balanced("{", "}");
      return;
    }
    if (t.ident("if")) {
      next();
      skip_balanced("(", ")");
      skip_statement();
      if (peek().ident("else")) {
        next();
        skip_statement();
      }
      return;
    }
    if (t.ident("for") || t.ident("while") || t.ident("switch")) {
      next();
      skip_balanced("(", ")");
      skip_statement();
      return;
    }
    if (t.ident("do")) {
      next();
      skip_statement();
      if (!peek().ident("while")) syntax("expected 'while'");
      next();
      skip_balanced("(", ")");
      expect(";");
      return;
    }
    // Plain statement, or a function definition at file scope.
    while (true) {
      const Token& c = peek();
      if (c.kind == TokenKind::End) syntax("expected ';'");
      if (c.punct("}")) syntax("expected ';'");
      if (c.punct("(")) {
        skip_balanced("(", ")");
        if (peek().punct("{")) {  // function body
          skip_balanced("{", "}");
          return;
        }
        continue;
      }
      if (c.punct("[")) {
        skip_balanced("[", "]");
        continue;
      }
      if (c.punct("{")) {
        skip_balanced("{", "}");
        continue;
      }
      next();
      if (c.punct(";")) return;
    }
  }

  Stmt skip_as_unsupported(const Token& start, std::string reason) {
    std::size_t from = pos_;
    skip_statement();
    Unsupported u;
    u.reason = std::move(reason);
    for (std::size_t k = from; k < pos_; ++k) {
      const Token& t = toks_[k];
      if (t.kind == TokenKind::Pragma) {
        u.text += "\n#pragma " + t.text + "\n";
        continue;
      }
      if (!u.text.empty() && u.text.back() != '\n') u.text += ' ';
      u.text += t.text;
      if (t.kind == TokenKind::Identifier) u.identifiers.push_back(t.text);
    }
    return make(std::move(u), start);
  }

  // ---- expressions ----

  SourceExpr parse_expr() {
    SourceExpr e = parse_binary(1);
    const Token& t = peek();
    if (t.kind == TokenKind::Punct &&
        (t.text == "<<" || t.text == ">>" || t.text == "&" || t.text == "|" ||
         t.text == "^" || t.text == "?" || t.text == "->" || t.text == "."))
      throw detail::Unsupp{"operator '" + t.text + "'"};
    return e;
  }

  static std::optional<BinaryOp> binary_op(const Token& t) {
    if (t.kind != TokenKind::Punct) return std::nullopt;
    static const std::pair<std::string_view, BinaryOp> kOps[] = {
        {"||", BinaryOp::LOr}, {"&&", BinaryOp::LAnd}, {"==", BinaryOp::Eq},
        {"!=", BinaryOp::Ne},  {"<", BinaryOp::Lt},    {"<=", BinaryOp::Le},
        {">", BinaryOp::Gt},   {">=", BinaryOp::Ge},   {"+", BinaryOp::Add},
        {"-", BinaryOp::Sub},  {"*", BinaryOp::Mul},   {"/", BinaryOp::Div},
        {"%", BinaryOp::Mod}};
    for (const auto& [s, op] : kOps)
      if (t.text == s) return op;
    return std::nullopt;
  }

  SourceExpr parse_binary(int min_prec) {
    SourceExpr lhs = parse_unary();
    while (true) {
      auto op = binary_op(peek());
      if (!op || precedence(*op) < min_prec) return lhs;
      next();
      SourceExpr rhs = parse_binary(precedence(*op) + 1);
      lhs = SourceExpr::binary(*op, std::move(lhs), std::move(rhs));
    }
  }

  SourceExpr parse_unary() {
    const Token& t = peek();
    if (t.punct("-")) {
      next();
      SourceExpr e = parse_unary();
      if (auto l = e.as<LiteralNode<std::string>>()) return SourceExpr::lit(-l->value);
      return SourceExpr::unary(UnaryOp::Neg, std::move(e));
    }
    if (t.punct("+")) {
      next();
      return parse_unary();
    }
    if (t.punct("!")) {
      next();
      return SourceExpr::unary(UnaryOp::Not, parse_unary());
    }
    if (t.punct("*") || t.punct("&"))
      throw detail::Unsupp{"pointer operator '" + t.text + "'"};
    if (t.punct("~") || t.punct("++") || t.punct("--"))
      throw detail::Unsupp{"operator '" + t.text + "' in expression"};
    return parse_postfix();
  }

  SourceExpr parse_postfix() {
    const Token& t = peek();
    SourceExpr e;
    if (t.kind == TokenKind::Identifier) {
      next();
      if (t.text == "sizeof") throw detail::Unsupp{"sizeof"};
      if (accept("(")) {
        std::vector<SourceExpr> args;
        if (!peek().punct(")")) {
          do {
            args.push_back(parse_call_arg());
          } while (accept(","));
        }
        expect(")");
        e = SourceExpr::call(t.text, std::move(args));
      } else if (peek().punct("[")) {
        std::vector<SourceExpr> idx;
        while (accept("[")) {
          idx.push_back(parse_expr());
          expect("]");
        }
        e = SourceExpr::subscript(t.text, std::move(idx));
      } else {
        e = SourceExpr::var(t.text);
      }
    } else {
      e = parse_primary();
      if (peek().punct("[")) throw detail::Unsupp{"subscript of an expression"};
    }
    if (peek().punct(".") || peek().punct("->"))
      throw detail::Unsupp{"member access"};
    if (peek().punct("(")) throw detail::Unsupp{"indirect call"};
    return e;
  }

  // Call arguments may be strings or floats; calls are unsupported anyway.
  SourceExpr parse_call_arg() {
    if (peek().kind == TokenKind::String || peek().kind == TokenKind::Char ||
        peek().kind == TokenKind::Float)
      throw detail::Unsupp{"non-integer literal"};
    return parse_expr();
  }

  SourceExpr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Integer:
        next();
        return SourceExpr::lit(t.value);
      case TokenKind::Float:
      case TokenKind::String:
      case TokenKind::Char:
        throw detail::Unsupp{"non-integer literal"};
      case TokenKind::Punct:
        if (t.punct("(")) {
          next();
          if (detail::starts_type(peek())) throw detail::Unsupp{"cast"};
          SourceExpr e = parse_expr();
          expect(")");
          return e;
        }
        break;
      default:
        break;
    }
    syntax("expected expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

/// Parses macro-expanded source text.
inline Ast parse(std::string_view expanded) {
  return Parser(lex(expanded)).parse_unit();
}

}  // namespace racesat::frontend
