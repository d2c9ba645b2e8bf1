//===-- locate.hpp - Target loop lookup -------------------------*- C++ -*-===//
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
#include <vector>

#include "racesat/error.hpp"
#include "racesat/frontend/ast.hpp"

namespace racesat::frontend {

inline bool is_drs_marker(const Stmt& s) {
  const Pragma* p = s.as<Pragma>();
  return p && p->directive() == "drs";
}

/// Finds the for-loop marked by `#pragma drs`. Other pragmas may sit between
/// the marker and the loop, in either order.
inline LoopRef locate_target_loop(const Ast& ast) {
  std::vector<std::vector<std::size_t>> markers;
  walk(ast, [&](const Stmt& s, const std::vector<std::size_t>& path) {
    if (is_drs_marker(s)) markers.push_back(path);
    return true;
  });
  if (markers.empty()) throw TargetError("no #pragma drs found");
  if (markers.size() > 1) {
    const Stmt& second = resolve(ast, markers[1]);
    throw TargetError("multiple #pragma drs markers (second at line " +
                      std::to_string(second.line) +
                      "); only one target loop is supported");
  }

  std::vector<std::size_t> path = markers.front();
  const Stmt& marker = resolve(ast, path);
  std::vector<const Stmt*> siblings;
  if (path.size() == 1) {
    for (const auto& s : ast.items) siblings.push_back(&s);
  } else {
    std::vector<std::size_t> parent(path.begin(), path.end() - 1);
    siblings = children(resolve(ast, parent));
  }
  for (std::size_t k = path.back() + 1; k < siblings.size(); ++k) {
    const Stmt& s = *siblings[k];
    if (s.as<Pragma>()) continue;
    if (s.as<For>()) {
      path.back() = k;
      return LoopRef{path};
    }
    if (auto u = s.as<Unsupported>(); u && u->text.rfind("for", 0) == 0)
      throw UnsupportedError("target loop: " + u->reason, s.line);
    break;
  }
  throw TargetError("#pragma drs at line " + std::to_string(marker.line) +
                    " is not followed by a for-loop");
}

}  // namespace racesat::frontend
