//===-- lexer.hpp - Tokenizer -----------------------------------*- C++ -*-===//
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

#include <array>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "racesat/error.hpp"

namespace racesat::frontend {

enum class TokenKind {
  Identifier,
  Integer,
  Float,
  String,
  Char,
  Punct,
  Pragma,  // text holds the directive body after `pragma`
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::int64_t value = 0;  // Integer only
  int line = 0;
  int column = 0;

  bool is(TokenKind k, std::string_view t) const {
    return kind == k && text == t;
  }
  bool punct(std::string_view t) const { return is(TokenKind::Punct, t); }
  bool ident(std::string_view t) const { return is(TokenKind::Identifier, t); }
};

namespace detail {

inline bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Longest match first.
inline constexpr std::array<std::string_view, 47> kPunctuators = {
    "<<=", ">>=", "...", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&",  "||",  "+=",  "-=", "*=", "/=", "%=", "&=", "|=", "^=", "+",  "-",
    "*",   "/",   "%",   "<",  ">",  "=",  "!",  "&",  "|",  "^",  "~",  "?",
    ":",   ";",   ",",   ".",  "(",  ")",  "[",  "]",  "{",  "}",  "#"};

/// Removes `//` and `/* */` comments from a single directive line.
inline std::string strip_line_comments(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '/' && i + 1 < s.size() && s[i + 1] == '/') break;
    if (s[i] == '/' && i + 1 < s.size() && s[i + 1] == '*') {
      auto end = s.find("*/", i + 2);
      if (end == std::string_view::npos) break;
      out += ' ';
      i = end + 1;
      continue;
    }
    out += s[i];
  }
  auto b = out.find_first_not_of(" \t\r");
  auto e = out.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : out.substr(b, e - b + 1);
}

}  // namespace detail

/// Tokenizes macro-expanded source. Preprocessor lines other than
/// `#pragma` are rejected; pragma lines become a single Pragma token.
inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  bool line_start = true;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
        line_start = true;
      } else {
        ++col;
      }
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '\\' && i + 1 < src.size() && src[i + 1] == '\n') {
      advance(2);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
      int l = line, cl = col;
      auto end = src.find("*/", i + 2);
      if (end == std::string_view::npos)
        throw SyntaxError("unterminated comment", l, cl);
      advance(end + 2 - i);
      continue;
    }

    Token tok;
    tok.line = line;
    tok.column = col;

    if (c == '#' && line_start) {
      std::size_t end = i;
      std::string text;
      while (end < src.size() && src[end] != '\n') {
        if (src[end] == '\\' && end + 1 < src.size() && src[end + 1] == '\n') {
          text += ' ';
          end += 2;
          continue;
        }
        text += src[end++];
      }
      std::string body = detail::strip_line_comments(std::string_view(text).substr(1));
      std::size_t k = 0;
      while (k < body.size() && detail::ident_char(body[k])) ++k;
      if (body.substr(0, k) != "pragma")
        throw SyntaxError("unexpected preprocessor directive '#" +
                              body.substr(0, k) + "'",
                          line, col);
      tok.kind = TokenKind::Pragma;
      tok.text = detail::strip_line_comments(std::string_view(body).substr(k));
      out.push_back(tok);
      advance(end - i);
      continue;
    }
    line_start = false;

    if (detail::ident_start(c)) {
      std::size_t b = i;
      while (i < src.size() && detail::ident_char(src[i])) advance(1);
      tok.kind = TokenKind::Identifier;
      tok.text = std::string(src.substr(b, i - b));
      out.push_back(std::move(tok));
      continue;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < src.size() &&
         std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t b = i;
      while (i < src.size() &&
             (detail::ident_char(src[i]) || src[i] == '.' ||
              ((src[i] == '+' || src[i] == '-') &&
               (src[i - 1] == 'e' || src[i - 1] == 'E') &&
               !(src[b] == '0' && b + 1 < src.size() &&
                 (src[b + 1] == 'x' || src[b + 1] == 'X')))))
        advance(1);
      tok.text = std::string(src.substr(b, i - b));
      std::string digits = tok.text;
      while (!digits.empty() &&
             (digits.back() == 'u' || digits.back() == 'U' ||
              digits.back() == 'l' || digits.back() == 'L'))
        digits.pop_back();
      bool hex = digits.size() > 2 && digits[0] == '0' &&
                 (digits[1] == 'x' || digits[1] == 'X');
      bool is_float = !hex && digits.find_first_of(".eE") != std::string::npos;
      if (is_float || (!digits.empty() && digits.back() == 'f')) {
        tok.kind = TokenKind::Float;
      } else {
        tok.kind = TokenKind::Integer;
        try {
          std::size_t used = 0;
          int base = hex ? 16 : (digits.size() > 1 && digits[0] == '0' ? 8 : 10);
          unsigned long long v = std::stoull(digits, &used, base);
          if (used != digits.size() || v > INT64_MAX) throw std::out_of_range("");
          tok.value = static_cast<std::int64_t>(v);
        } catch (const std::exception&) {
          throw SyntaxError("malformed integer literal '" + tok.text + "'",
                            tok.line, tok.column);
        }
      }
      out.push_back(std::move(tok));
      continue;
    }

    if (c == '"' || c == '\'') {
      std::size_t b = i;
      advance(1);
      while (i < src.size() && src[i] != c) {
        if (src[i] == '\n')
          throw SyntaxError("unterminated literal", tok.line, tok.column);
        advance(src[i] == '\\' ? 2 : 1);
      }
      if (i >= src.size())
        throw SyntaxError("unterminated literal", tok.line, tok.column);
      advance(1);
      tok.kind = c == '"' ? TokenKind::String : TokenKind::Char;
      tok.text = std::string(src.substr(b, i - b));
      out.push_back(std::move(tok));
      continue;
    }

    bool matched = false;
    for (auto p : detail::kPunctuators) {
      if (src.substr(i, p.size()) == p) {
        tok.kind = TokenKind::Punct;
        tok.text = std::string(p);
        advance(p.size());
        out.push_back(std::move(tok));
        matched = true;
        break;
      }
    }
    if (!matched)
      throw SyntaxError(std::string("unexpected character '") + c + "'", line,
                        col);
  }

  Token end;
  end.kind = TokenKind::End;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

}  // namespace racesat::frontend
