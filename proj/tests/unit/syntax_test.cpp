#include <gtest/gtest.h>

#include <set>

#include "gen.hpp"

using namespace rome;

TEST(Shift, FreeVariableMoves) { EXPECT_TRUE(typeEq(shift(tVar(0), 0, 1), tVar(1))); }

TEST(Shift, BoundVariableStays) {
  TypeP t = tLam(kStar(), tVar(0));
  EXPECT_TRUE(typeEq(shift(t, 0, 1), t));
}

TEST(Shift, FreeVariableUnderBinder) {
  EXPECT_TRUE(typeEq(shift(tLam(kStar(), tVar(1)), 0, 2), tLam(kStar(), tVar(3))));
}

TEST(Subst, ReplacesIndexZero) {
  TypeP tau = tSing(tLabel("x"), kLabel());
  EXPECT_TRUE(typeEq(substType(tVar(0), tau), tau));
  EXPECT_TRUE(typeEq(substType(tVar(1), tau), tVar(0)));
  EXPECT_TRUE(typeEq(substType(tApp(tVar(0), tVar(1)), tau), tApp(tau, tVar(0))));
}

TEST(Subst, GoesUnderBinders) {
  // (\b. a b)[t/a] with t free in the outer scope shifts t under the binder.
  TypeP body = tLam(kStar(), tApp(tVar(1), tVar(0)));
  TypeP r = substType(body, tVar(3));
  EXPECT_TRUE(typeEq(r, tLam(kStar(), tApp(tVar(4), tVar(0)))));
}

TEST(RowInsert, SortedSlot) {
  auto r = rowInsertSorted({{"a", tVar(0)}, {"c", tVar(0)}}, "b", tVar(0));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].label, "a");
  EXPECT_EQ(r[1].label, "b");
  EXPECT_EQ(r[2].label, "c");
}

TEST(RowInsert, DuplicateRejected) { EXPECT_ANY_THROW(rowInsertSorted({{"a", tVar(0)}}, "a", tVar(0))); }

TEST(RowInsert, IntoEmpty) {
  auto r = rowInsertSorted({}, "z", tVar(0));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].label, "z");
}

TEST(LabelOrder, ByteOrder) {
  EXPECT_TRUE(labelLess("False", "True"));
  EXPECT_TRUE(labelLess("Err", "Nat"));
  EXPECT_TRUE(labelLess("1", "2"));
  EXPECT_FALSE(labelLess("b", "a"));
}

TEST(RowInsert, RandomLabelsStaySorted) {
  gen::TypeGen g(7);
  for (int round = 0; round < 300; ++round) {
    std::vector<RowEntry> row;
    std::set<std::string> seen;
    for (int i = 0; i < 8; ++i) {
      std::string l = g.label() + g.label();
      if (seen.count(l)) {
        EXPECT_ANY_THROW(rowInsertSorted(row, l, tVar(0)));
        continue;
      }
      seen.insert(l);
      row = rowInsertSorted(row, l, tVar(0));
    }
    for (size_t i = 1; i < row.size(); ++i) EXPECT_TRUE(labelLess(row[i - 1].label, row[i].label));
    EXPECT_EQ(row.size(), seen.size());
  }
}

TEST(ShiftProperty, UpThenDownIsIdentity) {
  gen::TypeGen g(11);
  for (int i = 0; i < 500; ++i) {
    std::vector<KindP> delta = {kStar(), kRow(kStar()), kLabel(), kArrow(kStar(), kStar())};
    TypeP t = g.type(delta, g.kind(), 4);
    for (int c = 0; c < 3; ++c) EXPECT_TRUE(typeEq(shift(shift(t, c, 1), c, -1), t));
  }
}

TEST(SubstProperty, SubstAfterShiftIsIdentity) {
  gen::TypeGen g(12);
  for (int i = 0; i < 500; ++i) {
    std::vector<KindP> delta = {kStar(), kRow(kStar()), kLabel()};
    TypeP t = g.type(delta, g.kind(), 4);
    std::vector<KindP> d2 = delta;
    TypeP arg = g.type(d2, kStar(), 2);
    EXPECT_TRUE(typeEq(substType(shift(t, 0, 1), arg), t));
  }
}

TEST(EvidencePlumbing, SubstEvVar) {
  EvP e = eNode(ET::Trans, {tRow({})}, eVar(0), eVar(1));
  EvP r = substEvVar(e, 0, eIncl({0}));
  EXPECT_TRUE(evEq(r, eNode(ET::Trans, {tRow({})}, eIncl({0}), eVar(0))));
}

TEST(TermPlumbing, SubstTerm) {
  // (\y. x y)[#'a / x]
  TermP body = mLam(tVar(0), mApp(mVar(1), mVar(0)));
  TermP r = substTermTerm(body, mSing(tLabel("a"), kLabel()));
  EXPECT_TRUE(termEq(r, mLam(tVar(0), mApp(mSing(tLabel("a"), kLabel()), mVar(0)))));
}
