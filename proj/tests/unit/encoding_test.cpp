//===-- encoding_test.cpp - Encoding tests ----------------------*- C++ -*-===//
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

using namespace encoding;
using testing::corpus_file;
using testing::Pipeline;
using testing::read_file;

std::vector<std::string> atom_strings(const std::vector<Atom>& atoms) {
  std::vector<std::string> out;
  for (const auto& a : atoms) out.push_back(to_string(a));
  return out;
}

std::vector<std::string> atom_strings(const std::vector<Atom>& atoms, AtomRole role) {
  std::vector<std::string> out;
  for (const auto& a : atoms)
    if (a.role == role) out.push_back(to_string(a));
  return out;
}

TEST(Symbol, SmtNameRoundTrip) {
  Symbol shared{"n", std::nullopt};
  Symbol copy{"i", 2};
  Symbol idx = index_symbol(3, 7);
  EXPECT_EQ(shared.smt_name(), "n");
  EXPECT_EQ(copy.smt_name(), "i__2");
  EXPECT_EQ(idx.smt_name(), "index.3__7");
  for (const auto& s : {shared, copy, idx}) EXPECT_EQ(decode_symbol(s.smt_name()), s);
}

TEST(Symbol, EqualityNeedsBaseAndCopy) {
  EXPECT_EQ((Symbol{"i", 1}), (Symbol{"i", 1}));
  EXPECT_NE((Symbol{"i", 1}), (Symbol{"i", 2}));
  EXPECT_NE((Symbol{"i", 1}), (Symbol{"i", std::nullopt}));
}

TEST(EncodeAccessCopy, SharedAndRenamedSymbols) {
  Pipeline p("int a[64][64][64];\nint main() {\n  for (int j = 0; j < 4; j++)\n"
             "  for (int k = 0; k < 4; k++) {\n#pragma drs\n"
             "    for (int i = 0; i < 8; i++) { a[i + 1][j * 2][k] = 0; }\n  }\n}\n");
  ASSERT_EQ(p.accesses.writes.size(), 1u);
  AccessCopy c = encode_access_copy(p.accesses.writes[0], 0, p.env);
  EXPECT_EQ(c.index_syms, (std::vector<Symbol>{index_symbol(1, 0), index_symbol(2, 0),
                                                index_symbol(3, 0)}));
  EXPECT_EQ(atom_strings(c.atoms, AtomRole::Index),
            (std::vector<std::string>{"index.1__0 == i__0 + 1", "index.2__0 == j * 2",
                                      "index.3__0 == k"}));
  EXPECT_EQ(atom_strings(c.atoms, AtomRole::Domain),
            (std::vector<std::string>{"i__0 >= 0", "i__0 < 8"}));
  EXPECT_TRUE(atom_strings(c.atoms, AtomRole::Path).empty());
  ASSERT_EQ(c.decls.size(), 1u);
  EXPECT_EQ(c.decls[0].symbol, (Symbol{"i", 0}));
}

TEST(EncodeAccessCopy, Drb054Write) {
  Pipeline p(read_file(corpus_file("drb054.c")));
  AccessCopy c = encode_access_copy(p.accesses.writes.at(0), 0, p.env);
  EXPECT_EQ(atom_strings(c.atoms, AtomRole::Index),
            (std::vector<std::string>{"index.1__0 == i", "index.2__0 == j__0"}));
}

TEST(EncodeAccessCopy, InnerLoopIsRenamed) {
  Pipeline p(read_file(corpus_file("window.c")));
  AccessCopy c = encode_access_copy(p.accesses.writes.at(0), 4, p.env);
  EXPECT_EQ(atom_strings(c.atoms, AtomRole::Index),
            (std::vector<std::string>{"index.1__4 == i__4 + k__4"}));
  EXPECT_EQ(atom_strings(c.atoms, AtomRole::Domain),
            (std::vector<std::string>{"i__4 >= 0", "i__4 < 32", "k__4 >= 0", "k__4 < 4"}));
}

TEST(EncodeAccessCopy, NonUnitStepAddsDivisibility) {
  Pipeline p(read_file(corpus_file("stride.c")));
  AccessCopy c = encode_access_copy(p.accesses.writes.at(0), 1, p.env);
  EXPECT_EQ(atom_strings(c.atoms, AtomRole::Domain),
            (std::vector<std::string>{"i__1 >= 0", "i__1 < 100", "divisible(i__1 - 0, 2)"}));
  ASSERT_EQ(c.decls.size(), 1u);
  ASSERT_TRUE(c.decls[0].domain.has_value());
  EXPECT_EQ(c.decls[0].domain->step, 2);
}

TEST(EncodeAccessCopy, DecreasingLoopDomain) {
  Pipeline p("int a[64];\nint main() {\n#pragma drs\n"
             "  for (int i = 20; i > 3; i -= 3) { a[i] = 0; }\n}\n");
  AccessCopy c = encode_access_copy(p.accesses.writes.at(0), 1, p.env);
  EXPECT_EQ(atom_strings(c.atoms, AtomRole::Domain),
            (std::vector<std::string>{"i__1 <= 20", "i__1 > 3", "divisible(i__1 - 20, 3)"}));
}

TEST(EncodeAccessCopy, PathAtomsAreRenamed) {
  Pipeline p(read_file(corpus_file("listing6.c")));
  AccessCopy c = encode_access_copy(p.accesses.writes.at(0), 1, p.env);
  EXPECT_EQ(atom_strings(c.atoms, AtomRole::Path), std::vector<std::string>{"i__1 < 5"});
}

TEST(BuildPairConstraint, ListingSix) {
  Pipeline p(read_file(corpus_file("listing6.c")));
  ConstraintSystem cs = build_pair_constraint(p.accesses.writes.at(0), p.accesses.reads.at(0),
                                              DepClass::RAW, p.env);
  EXPECT_EQ(atom_strings(cs.atoms),
            (std::vector<std::string>{
                "i__1 != i__2",
                "i__1 >= 0", "i__1 < 10", "i__2 >= 0", "i__2 < 10",
                "i__1 < 5", "i__2 < 5",
                "index.1__1 == i__1 % a + a * i__1", "index.1__2 == 2 * i__2",
                "index.1__1 == index.1__2",
                "a == 6"}));
  EXPECT_EQ(cs.meta.dep, DepClass::RAW);
  EXPECT_EQ(cs.meta.array, "arr");
  EXPECT_NE(cs.find({"a", std::nullopt}), nullptr);
  EXPECT_FALSE(cs.find({"a", std::nullopt})->domain.has_value());
  ASSERT_NE(cs.find({"i", 1}), nullptr);
  EXPECT_TRUE(cs.find({"i", 1})->domain.has_value());
}

TEST(BuildPairConstraint, Drb054SharesOuterIndex) {
  Pipeline p(read_file(corpus_file("drb054.c")));
  ConstraintSystem cs = build_pair_constraint(p.accesses.writes.at(0), p.accesses.reads.at(0),
                                              DepClass::RAW, p.env);
  auto idx = atom_strings(cs.atoms, AtomRole::Index);
  EXPECT_EQ(idx, (std::vector<std::string>{"index.1__1 == i", "index.2__1 == j__1",
                                           "index.1__2 == i - 1", "index.2__2 == j__2 - 1"}));
  // The outer loop contributes its domain once, over the shared symbol.
  auto dom = atom_strings(cs.atoms, AtomRole::Domain);
  EXPECT_EQ(std::count(dom.begin(), dom.end(), "i >= 1"), 1);
  EXPECT_EQ(std::count(dom.begin(), dom.end(), "i < n"), 1);
  EXPECT_TRUE(atom_strings(cs.atoms, AtomRole::KnownValue).empty());
}

TEST(BuildPairConstraint, SelfPairIsContradictory) {
  Pipeline p(read_file(corpus_file("stencil.c")));
  const auto& w = p.accesses.writes.at(0);
  ConstraintSystem cs = build_pair_constraint(w, w, DepClass::WAW, p.env);
  auto all = atom_strings(cs.atoms);
  EXPECT_NE(std::find(all.begin(), all.end(), "i__1 != i__2"), all.end());
  EXPECT_NE(std::find(all.begin(), all.end(), "index.1__1 == i__1"), all.end());
  EXPECT_NE(std::find(all.begin(), all.end(), "index.1__2 == i__2"), all.end());
  EXPECT_TRUE(solve_bounded(cs).unsat());
}

TEST(BuildPairConstraint, KnownValuesOnlyWhenReferenced) {
  Pipeline p("int a[64];\nint main() {\n  int c = 3;\n  int d = 4;\n#pragma drs\n"
             "  for (int i = 0; i < 9; i++) { a[i + c] = 0; }\n}\n");
  const auto& w = p.accesses.writes.at(0);
  ConstraintSystem cs = build_pair_constraint(w, w, DepClass::WAW, p.env);
  EXPECT_EQ(atom_strings(cs.atoms, AtomRole::KnownValue), std::vector<std::string>{"c == 3"});
}

TEST(BuildPairConstraint, NoDanglingSymbols) {
  Pipeline p(read_file(corpus_file("histogram.c")));
  for (const auto& cs : p.systems()) {
    for (const auto& a : cs.atoms)
      for_each_symbol(a, [&](const Symbol& s) { EXPECT_NE(cs.find(s), nullptr) << s.smt_name(); });
    EXPECT_TRUE(std::is_sorted(cs.symbols.begin(), cs.symbols.end(),
                               [](const auto& x, const auto& y) { return x.symbol < y.symbol; }));
  }
}

TEST(BuildPairConstraint, RejectsMismatches) {
  Pipeline p("int a[9];\nint b[9][9];\nint main() {\n#pragma drs\n"
             "  for (int i = 0; i < 9; i++) { a[i] = b[i][0]; }\n}\n");
  const auto& w = p.accesses.writes.at(0);
  const auto& r = p.accesses.reads.at(0);
  EXPECT_THROW(build_pair_constraint(w, r, DepClass::RAW, p.env), std::invalid_argument);
  auto r2 = r;
  r2.array = "a";
  EXPECT_THROW(build_pair_constraint(w, r2, DepClass::RAW, p.env), std::invalid_argument);
  EXPECT_THROW(build_pair_constraint(w, w, DepClass::WAW, p.env, {3, 3}), std::invalid_argument);
}

TEST(BuildPairConstraint, ParallelCopiesAreDistinct) {
  Pipeline p(read_file(corpus_file("listing1.c")));
  for (auto ids : {std::pair{1, 2}, std::pair{3, 7}}) {
    for (const auto& cs : p.systems(ids)) {
      ASSERT_EQ(cs.atoms.at(0).role, AtomRole::Parallel);
      const auto& c = std::get<Comparison>(cs.atoms[0].body);
      EXPECT_EQ(c.rel, Rel::Ne);
      EXPECT_NE(c.lhs, c.rhs);
    }
  }
}

AccessRecord record(int id) {
  AccessRecord r;
  r.array = "arr";
  r.indices = {SourceExpr::var("i")};
  r.id = id;
  return r;
}

std::vector<std::tuple<int, int, DepClass>> shape(const std::vector<AccessPair>& pairs) {
  std::vector<std::tuple<int, int, DepClass>> out;
  for (const auto& p : pairs) out.emplace_back(p.first.id, p.second.id, p.dep);
  return out;
}

TEST(EnumeratePairs, OneWriteOneRead) {
  auto pairs = enumerate_pairs({record(0)}, {record(1)});
  EXPECT_EQ(shape(pairs), (std::vector<std::tuple<int, int, DepClass>>{
                              {0, 1, DepClass::RAW}, {0, 0, DepClass::WAW}}));
}

TEST(EnumeratePairs, TwoWrites) {
  auto pairs = enumerate_pairs({record(0), record(1)}, {});
  EXPECT_EQ(shape(pairs), (std::vector<std::tuple<int, int, DepClass>>{
                              {0, 0, DepClass::WAW}, {0, 1, DepClass::WAW},
                              {1, 1, DepClass::WAW}}));
}

TEST(EnumeratePairs, ReadsAlone) { EXPECT_TRUE(enumerate_pairs({}, {record(0), record(1)}).empty()); }

TEST(EnumeratePairs, Count) {
  for (int w = 0; w < 5; ++w)
    for (int r = 0; r < 5; ++r) {
      std::vector<AccessRecord> ws, rs;
      for (int k = 0; k < w; ++k) ws.push_back(record(k));
      for (int k = 0; k < r; ++k) rs.push_back(record(100 + k));
      EXPECT_EQ(enumerate_pairs(ws, rs).size(), static_cast<std::size_t>(w * r + w * (w + 1) / 2));
    }
}

TEST(Holds, EvaluationErrorIsFalse) {
  Symbol x{"x", std::nullopt};
  Atom a = Atom::cmp(SymExpr::binary(BinaryOp::Div, SymExpr::lit(1), SymExpr::var(x)), Rel::Eq,
                     SymExpr::lit(0), AtomRole::Path);
  EXPECT_FALSE(holds(a, {{x, 0}}));
  EXPECT_TRUE(holds(a, {{x, 2}}));
  EXPECT_FALSE(holds(a, {}));
}

}  // namespace
}  // namespace racesat
