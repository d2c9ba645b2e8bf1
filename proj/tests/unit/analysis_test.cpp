//===-- analysis_test.cpp - Analysis tests ----------------------*- C++ -*-===//
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

#include <gtest/gtest.h>

#include "support/support.hpp"

namespace racesat {
namespace {

using namespace analysis;
using testing::corpus_file;
using testing::Pipeline;
using testing::read_file;

SourceExpr v(const std::string& n) { return SourceExpr::var(n); }
SourceExpr l(std::int64_t x) { return SourceExpr::lit(x); }
SourceExpr bin(BinaryOp op, SourceExpr a, SourceExpr b) {
  return SourceExpr::binary(op, std::move(a), std::move(b));
}

VarEnv env_of(const std::string& src, bool const_fold = false) {
  frontend::Ast ast = frontend::parse(frontend::expand_macros(src).first);
  return record_variables(ast, frontend::locate_target_loop(ast), const_fold);
}

const char* kLoop = "\n#pragma drs\n  for (int i = 0; i < 4; i++) { arr[i] = 0; }\n}\n";

std::string program(const std::string& prelude) {
  return "int arr[16];\nint main() {\n" + prelude + kLoop;
}

TEST(RecordVariables, LiteralInitializerIsKnown) {
  VarEnv env = Pipeline(read_file(corpus_file("listing6.c"))).env;
  EXPECT_EQ(env.known("a"), 6);
}

TEST(RecordVariables, ProductIsUnknownByDefault) {
  VarEnv env = env_of(read_file(corpus_file("fp1.c")));
  ASSERT_TRUE(env.contains("b"));
  EXPECT_EQ(env.known("b"), std::nullopt);
  EXPECT_EQ(env.known("a"), 100);
}

TEST(RecordVariables, ConstFoldEvaluatesProduct) {
  VarEnv env = env_of(read_file(corpus_file("fp1.c")), true);
  std::int64_t expected = arith::mul(100, 100);
  EXPECT_EQ(env.known("b"), expected);
}

TEST(RecordVariables, ConstFoldUsesKnownVariables) {
  VarEnv env = env_of(program("  int a = 7;\n  int b = a * 3 - 1;\n"), true);
  EXPECT_EQ(env.known("b"), 20);
}

TEST(RecordVariables, NegativeLiteralIsKnown) {
  EXPECT_EQ(env_of(program("  int a = -5;\n")).known("a"), -5);
}

TEST(RecordVariables, LatestUpdateWins) {
  VarEnv env = env_of(program("  int a = 1;\n  int b = 2;\n  a = 4;\n  b += 1;\n"));
  EXPECT_EQ(env.known("a"), 4);
  EXPECT_TRUE(env.contains("b"));
  EXPECT_EQ(env.known("b"), std::nullopt);
}

TEST(RecordVariables, IncrementMakesUnknown) {
  VarEnv env = env_of(program("  int a = 1;\n  a++;\n"));
  EXPECT_TRUE(env.contains("a"));
  EXPECT_EQ(env.known("a"), std::nullopt);
}

TEST(RecordVariables, ConditionalLiteralIsUnknown) {
  VarEnv env = env_of(program("  int c = 0;\n  int a = 1;\n  if (c) { a = 3; }\n"));
  EXPECT_EQ(env.known("a"), std::nullopt);
  EXPECT_EQ(env.known("c"), 0);
}

TEST(RecordVariables, LoopVariablesAreAbsent) {
  VarEnv env = env_of(
      "int arr[16];\nint main() {\n  int i = 3;\n#pragma drs\n"
      "  for (i = 0; i < 4; i++) { int t = 2; arr[i] = t; }\n}\n");
  EXPECT_FALSE(env.contains("i"));
  EXPECT_FALSE(env.contains("t"));
}

TEST(RecordVariables, ParametersAreUnknown) {
  VarEnv env = env_of(read_file(corpus_file("drb054.c")));
  EXPECT_TRUE(env.contains("n"));
  EXPECT_TRUE(env.contains("m"));
  EXPECT_EQ(env.known("n"), std::nullopt);
  EXPECT_FALSE(env.contains("j"));
}

TEST(RecordVariables, StatementsAfterTheLoopAreIgnored) {
  VarEnv env = env_of(
      "int arr[16];\nint main() {\n  int a = 1;\n#pragma drs\n"
      "  for (int i = 0; i < 4; i++) { arr[i] = a; }\n  a = 9;\n}\n");
  EXPECT_EQ(env.known("a"), 1);
}

TEST(CollectLoops, Drb054) {
  auto nest = Pipeline(read_file(corpus_file("drb054.c"))).nest;
  ASSERT_EQ(nest.size(), 2u);
  EXPECT_EQ(nest[0].var, "i");
  EXPECT_EQ(nest[0].role, LoopRole::OuterSequential);
  EXPECT_EQ(nest[0].lower(), l(1));
  EXPECT_EQ(nest[0].bound, v("n"));
  EXPECT_TRUE(nest[0].upper_strict());
  EXPECT_EQ(nest[0].step, 1);
  EXPECT_EQ(nest[1].var, "j");
  EXPECT_EQ(nest[1].role, LoopRole::ParallelTarget);
  EXPECT_EQ(nest[1].lower(), l(1));
  EXPECT_EQ(nest[1].bound, v("m"));
}

TEST(CollectLoops, ListingOne) {
  auto nest = Pipeline(read_file(corpus_file("listing1.c"))).nest;
  ASSERT_EQ(nest.size(), 1u);
  EXPECT_EQ(nest[0].var, "i");
  EXPECT_EQ(nest[0].role, LoopRole::ParallelTarget);
  EXPECT_EQ(nest[0].lower(), l(0));
  EXPECT_EQ(nest[0].bound, l(10));
  EXPECT_TRUE(nest[0].upper_strict());
  EXPECT_EQ(nest[0].step, 1);
}

TEST(CollectLoops, DecreasingInnerLoop) {
  auto nest = Pipeline(
                  "int a[64];\nint main() {\n#pragma drs\n  for (int i = 0; i < 4; i++) {\n"
                  "    for (int k = 10; k > 0; k--) { a[i + k] = 0; }\n  }\n}\n")
                  .nest;
  ASSERT_EQ(nest.size(), 2u);
  const LoopCtx& k = nest[1];
  EXPECT_EQ(k.role, LoopRole::InnerSequential);
  EXPECT_EQ(k.step, -1);
  EXPECT_FALSE(k.increasing());
  EXPECT_EQ(k.init, l(10));
  EXPECT_EQ(k.upper(), l(10));
  EXPECT_EQ(k.rel, BinaryOp::Gt);
  EXPECT_EQ(to_string(k.lower()), "0 + 1");
}

TEST(CollectLoops, NotEqualConditionIsUnsupported) {
  EXPECT_THROW(Pipeline("int a[9];\nint main() {\n#pragma drs\n"
                        "  for (int i = 0; i != 9; i++) a[i] = 0;\n}\n"),
               UnsupportedError);
}

TEST(CollectLoops, StepAwayFromBoundIsUnsupported) {
  EXPECT_THROW(Pipeline("int a[9];\nint main() {\n#pragma drs\n"
                        "  for (int i = 0; i < 9; i--) a[i] = 0;\n}\n"),
               UnsupportedError);
}

TEST(CollectAccesses, ListingFive) {
  auto acc = Pipeline(read_file(corpus_file("listing5.c"))).accesses;
  ASSERT_EQ(acc.writes.size(), 1u);
  ASSERT_EQ(acc.reads.size(), 1u);
  SourceExpr guard = bin(BinaryOp::Lt, v("i"), l(5));
  EXPECT_EQ(acc.writes[0].array, "arr");
  EXPECT_EQ(acc.writes[0].indices[0], bin(BinaryOp::Mod, v("i"), l(6)) + l(6) * v("i"));
  EXPECT_EQ(acc.writes[0].path.atoms, std::vector<SourceExpr>{guard});
  EXPECT_EQ(acc.reads[0].indices[0], l(2) * v("i"));
  EXPECT_EQ(acc.reads[0].path.atoms, std::vector<SourceExpr>{guard});
  EXPECT_NE(acc.writes[0].id, acc.reads[0].id);
}

TEST(CollectAccesses, ConjunctionIsSplit) {
  auto acc = Pipeline(read_file(corpus_file("fp6.c"))).accesses;
  std::vector<SourceExpr> atoms = {bin(BinaryOp::Eq, v("a"), l(0)),
                                   bin(BinaryOp::Ne, v("b"), l(100))};
  ASSERT_FALSE(acc.writes.empty());
  for (const auto& r : acc.writes) EXPECT_EQ(r.path.atoms, atoms);
  for (const auto& r : acc.reads) EXPECT_EQ(r.path.atoms, atoms);
}

TEST(CollectAccesses, ElseNegatesEveryArm) {
  auto acc = Pipeline(
                 "int arr[64];\nint main() {\n#pragma drs\n  for (int i = 0; i < 9; i++) {\n"
                 "    if (i < 3) { arr[i] = 1; } else if (i == 5) { arr[i] = 2; }"
                 " else { arr[i] = 0; }\n  }\n}\n")
                 .accesses;
  ASSERT_EQ(acc.writes.size(), 3u);
  EXPECT_EQ(acc.writes[0].path.atoms, std::vector<SourceExpr>{bin(BinaryOp::Lt, v("i"), l(3))});
  EXPECT_EQ(acc.writes[1].path.atoms, (std::vector<SourceExpr>{bin(BinaryOp::Ge, v("i"), l(3)),
                                                               bin(BinaryOp::Eq, v("i"), l(5))}));
  EXPECT_EQ(acc.writes[2].path.atoms, (std::vector<SourceExpr>{bin(BinaryOp::Ge, v("i"), l(3)),
                                                               bin(BinaryOp::Ne, v("i"), l(5))}));
}

TEST(CollectAccesses, NoBranchesMeansEmptyPaths) {
  auto acc = Pipeline(read_file(corpus_file("stencil.c"))).accesses;
  for (const auto& r : acc.writes) EXPECT_TRUE(r.path.atoms.empty());
  for (const auto& r : acc.reads) EXPECT_TRUE(r.path.atoms.empty());
}

TEST(CollectAccesses, CompoundAssignmentRecordsReadAndWrite) {
  auto acc = Pipeline(read_file(corpus_file("rows.c"))).accesses;
  ASSERT_EQ(acc.writes.size(), 1u);
  ASSERT_EQ(acc.reads.size(), 1u);
  EXPECT_EQ(acc.writes[0].indices, acc.reads[0].indices);
  ASSERT_EQ(acc.writes[0].loops.size(), 2u);
  EXPECT_EQ(acc.writes[0].loops[1].role, LoopRole::InnerSequential);
  EXPECT_EQ(acc.writes[0].target_loop().var, "i");
}

TEST(CollectAccesses, CompatModeRecordsWriteOnly) {
  auto acc = Pipeline(read_file(corpus_file("rows.c")), false, {true}).accesses;
  EXPECT_EQ(acc.writes.size(), 1u);
  EXPECT_TRUE(acc.reads.empty());
}

TEST(CollectAccesses, IncrementCountsAsCompound) {
  auto acc = Pipeline("int a[9];\nint main() {\n#pragma drs\n"
                      "  for (int i = 0; i < 9; i++) { a[i]++; }\n}\n")
                 .accesses;
  EXPECT_EQ(acc.writes.size(), 1u);
  EXPECT_EQ(acc.reads.size(), 1u);
}

TEST(CollectAccesses, RecordsLines) {
  auto acc = Pipeline(read_file(corpus_file("listing1.c"))).accesses;
  ASSERT_EQ(acc.writes.size(), 1u);
  EXPECT_EQ(acc.writes[0].line, 8);
  EXPECT_EQ(acc.reads[0].line, 8);
}

TEST(CollectAccesses, RejectsPointerAccess) {
  EXPECT_THROW(Pipeline("void f(int *p) {\n#pragma drs\n  for (int i = 0; i < 9; i++) p[i] = 0;\n}\n"),
               UnsupportedError);
}

TEST(CollectAccesses, RejectsUndeclaredArray) {
  EXPECT_THROW(Pipeline("int main() {\n#pragma drs\n  for (int i = 0; i < 9; i++) q[i] = 0;\n}\n"),
               UnsupportedError);
}

TEST(CollectAccesses, RejectsIndirectIndex) {
  EXPECT_THROW(Pipeline("int a[9];\nint b[9];\nint main() {\n#pragma drs\n"
                        "  for (int i = 0; i < 9; i++) a[b[i]] = 0;\n}\n"),
               UnsupportedError);
}

TEST(CollectAccesses, RejectsCallResult) {
  try {
    Pipeline(read_file(corpus_file("call.c")));
    FAIL() << "expected an unsupported error";
  } catch (const UnsupportedError& e) {
    EXPECT_EQ(e.line(), 7);
  }
}

TEST(CollectAccesses, RejectsScalarWrittenInBodyAndUsedInIndex) {
  EXPECT_THROW(Pipeline("int a[99];\nint main() {\n  int t = 0;\n#pragma drs\n"
                        "  for (int i = 0; i < 9; i++) { t = i * 2; a[t] = 0; }\n}\n"),
               UnsupportedError);
}

TEST(CollectAccesses, RankMismatch) {
  EXPECT_THROW(Pipeline("int m[4][4];\nint main() {\n#pragma drs\n"
                        "  for (int i = 0; i < 4; i++) m[i] = 0;\n}\n"),
               UnsupportedError);
}

TEST(CollectAccesses, LocalArraysArePrivate) {
  auto acc = Pipeline("int a[9];\nint main() {\n#pragma drs\n"
                      "  for (int i = 0; i < 9; i++) { int t[2]; t[0] = i; a[i] = t[0]; }\n}\n")
                 .accesses;
  ASSERT_EQ(acc.writes.size(), 1u);
  EXPECT_EQ(acc.writes[0].array, "a");
  EXPECT_TRUE(acc.reads.empty());
}

TEST(SplitConjunction, NestedAnd) {
  SourceExpr a = bin(BinaryOp::Lt, v("i"), l(1));
  SourceExpr b = bin(BinaryOp::Gt, v("i"), l(2));
  SourceExpr c = bin(BinaryOp::Ne, v("i"), l(3));
  auto parts = split_conjunction(bin(BinaryOp::LAnd, bin(BinaryOp::LAnd, a, b), c));
  EXPECT_EQ(parts, (std::vector<SourceExpr>{a, b, c}));
}

TEST(Negate, FlipsComparisons) {
  EXPECT_EQ(negate(bin(BinaryOp::Le, v("i"), l(1))), bin(BinaryOp::Gt, v("i"), l(1)));
  EXPECT_EQ(negate(SourceExpr::unary(UnaryOp::Not, v("x"))), bin(BinaryOp::Ne, v("x"), l(0)));
}

}  // namespace
}  // namespace racesat
