//===-- racesat.hpp - Umbrella header ---------------------------*- C++ -*-===//
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

#include "racesat/analysis/accesses.hpp"
#include "racesat/analysis/loops.hpp"
#include "racesat/analysis/variables.hpp"
#include "racesat/bench/corpus.hpp"
#include "racesat/bench/metrics.hpp"
#include "racesat/bench/oracle.hpp"
#include "racesat/detector/analyze.hpp"
#include "racesat/detector/report.hpp"
#include "racesat/encoding/constraint.hpp"
#include "racesat/encoding/encode.hpp"
#include "racesat/encoding/symbol.hpp"
#include "racesat/error.hpp"
#include "racesat/expr.hpp"
#include "racesat/frontend/ast.hpp"
#include "racesat/frontend/lexer.hpp"
#include "racesat/frontend/locate.hpp"
#include "racesat/frontend/macros.hpp"
#include "racesat/frontend/parser.hpp"
#include "racesat/frontend/printer.hpp"
#include "racesat/solver/bounded.hpp"
#include "racesat/solver/eval.hpp"
#include "racesat/solver/external.hpp"
#include "racesat/solver/result.hpp"
#include "racesat/solver/smtlib.hpp"
