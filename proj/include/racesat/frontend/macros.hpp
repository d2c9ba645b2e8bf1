//===-- macros.hpp - Object-like macro expansion ----------------*- C++ -*-===//
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
// Object-like macro expansion. Directive lines are blanked in the output so
// that line numbers still match the original file; `#pragma` lines pass
// through untouched.
//
//===----------------------------------------------------------------------===//
#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "racesat/error.hpp"
#include "racesat/frontend/lexer.hpp"

namespace racesat::frontend {

struct MacroTable {
  std::map<std::string, std::vector<std::string>> entries;

  bool contains(const std::string& name) const {
    return entries.count(name) != 0;
  }
  friend bool operator==(const MacroTable&, const MacroTable&) = default;
};

inline constexpr int kMacroDepthLimit = 64;

namespace detail {

inline std::string join_tokens(const std::vector<std::string>& toks) {
  std::string out;
  for (std::size_t k = 0; k < toks.size(); ++k) {
    if (k) out += ' ';
    out += toks[k];
  }
  return out;
}

inline void expand_identifier(const std::string& name, const MacroTable& table,
                              std::vector<std::string>& active,
                              std::string& out, int line);

/// Copies `text` to `out`, expanding identifiers outside literals and
/// comments. `in_comment` carries block-comment state across lines.
inline void expand_text(std::string_view text, const MacroTable& table,
                        std::vector<std::string>& active, std::string& out,
                        bool& in_comment, int line) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (in_comment) {
      auto end = text.find("*/", i);
      if (end == std::string_view::npos) {
        out.append(text.substr(i));
        return;
      }
      out.append(text.substr(i, end + 2 - i));
      i = end + 2;
      in_comment = false;
      continue;
    }
    char c = text[i];
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      out.append(text.substr(i));
      return;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '*') {
      out.append("/*");
      i += 2;
      in_comment = true;
      continue;
    }
    if (c == '"' || c == '\'') {
      std::size_t b = i++;
      while (i < text.size() && text[i] != c) i += text[i] == '\\' ? 2 : 1;
      i = std::min(i + 1, text.size());
      out.append(text.substr(b, i - b));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t b = i;
      while (i < text.size() && (ident_char(text[i]) || text[i] == '.')) ++i;
      out.append(text.substr(b, i - b));
      continue;
    }
    if (ident_start(c)) {
      std::size_t b = i;
      while (i < text.size() && ident_char(text[i])) ++i;
      expand_identifier(std::string(text.substr(b, i - b)), table, active, out,
                        line);
      continue;
    }
    out += c;
    ++i;
  }
}

inline void expand_identifier(const std::string& name, const MacroTable& table,
                              std::vector<std::string>& active,
                              std::string& out, int line) {
  auto it = table.entries.find(name);
  if (it == table.entries.end()) {
    out += name;
    return;
  }
  for (const auto& a : active)
    if (a == name)
      throw UnsupportedError("cyclic macro definition involving '" + name + "'",
                             line);
  if (static_cast<int>(active.size()) >= kMacroDepthLimit)
    throw UnsupportedError("macro expansion depth limit exceeded", line);
  active.push_back(name);
  bool in_comment = false;
  expand_text(join_tokens(it->second), table, active, out, in_comment, line);
  active.pop_back();
}

}  // namespace detail

/// Expands object-like macros; `#include` lines are dropped.
inline std::pair<std::string, MacroTable> expand_macros(std::string_view source) {
  MacroTable table;
  std::string out;
  bool in_comment = false;
  int line = 1;
  std::size_t pos = 0;

  while (pos <= source.size()) {
    // Gather one logical line, joining backslash continuations.
    std::string logical;
    int physical = 0;
    while (true) {
      auto nl = source.find('\n', pos);
      std::string_view raw = source.substr(
          pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      ++physical;
      pos = nl == std::string_view::npos ? source.size() + 1 : nl + 1;
      if (!raw.empty() && raw.back() == '\\' && pos <= source.size()) {
        logical.append(raw.substr(0, raw.size() - 1));
        continue;
      }
      logical.append(raw);
      break;
    }
    bool last = pos > source.size();

    std::size_t first = logical.find_first_not_of(" \t\r");
    bool directive = !in_comment && first != std::string::npos &&
                     logical[first] == '#';
    if (directive) {
      std::string body =
          detail::strip_line_comments(std::string_view(logical).substr(first + 1));
      std::size_t k = 0;
      while (k < body.size() && detail::ident_char(body[k])) ++k;
      std::string name = body.substr(0, k);
      std::string rest = body.substr(k);
      if (name == "define") {
        std::size_t a = rest.find_first_not_of(" \t");
        if (a == std::string::npos || !detail::ident_start(rest[a]))
          throw SyntaxError("#define without a macro name", line, 1);
        std::size_t b = a;
        while (b < rest.size() && detail::ident_char(rest[b])) ++b;
        std::string macro = rest.substr(a, b - a);
        if (b < rest.size() && rest[b] == '(')
          throw UnsupportedError("function-like macro '" + macro + "'", line);
        std::vector<std::string> tokens;
        for (const auto& t : lex(rest.substr(b)))
          if (t.kind != TokenKind::End) tokens.push_back(t.text);
        table.entries[macro] = std::move(tokens);
      } else if (name == "undef") {
        std::size_t a = rest.find_first_not_of(" \t");
        if (a != std::string::npos) {
          std::size_t b = a;
          while (b < rest.size() && detail::ident_char(rest[b])) ++b;
          table.entries.erase(rest.substr(a, b - a));
        }
      } else if (name == "include") {
        // dropped
      } else if (name == "pragma") {
        out.append(logical);
      } else {
        throw UnsupportedError("preprocessor directive '#" + name + "'", line);
      }
    } else {
      std::vector<std::string> active;
      detail::expand_text(logical, table, active, out, in_comment, line);
    }

    for (int p = 0; p < physical; ++p)
      if (!(last && p + 1 == physical)) out += '\n';
    line += physical;
    if (last) break;
  }
  return {std::move(out), std::move(table)};
}

}  // namespace racesat::frontend
