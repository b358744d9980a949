#include <gtest/gtest.h>

#include <set>

#include "gen.hpp"
#include "rome/entail.hpp"

using namespace rome;

namespace {

TypeP unitT() { return tSing(tLabel("u"), kLabel()); }

TypeP rowOf(const std::string& labels) {
  std::vector<RowEntry> es;
  for (char c : labels) es.push_back({std::string(1, c), unitT()});
  return tRow(std::move(es));
}

SolveResult solveClosed(const PredP& p, std::vector<PredP> phi = {}, std::vector<KindP> delta = {}) {
  SolverEnv env;
  env.norm = NormCtx{std::move(delta), nullptr};
  env.phi = std::move(phi);
  return solve(env, p);
}

KindP RS() { return kRow(kStar()); }

}  // namespace

TEST(IndexMaps, PickAndDual) {
  IndexMap p = {0, 2}, q = {1, 3};
  EXPECT_EQ(std::get<0>(pickIndex(p, q, 2)), 1);
  auto r = pickIndex(p, q, 3);
  ASSERT_EQ(r.index(), 1u);
  EXPECT_EQ(std::get<1>(r), 1);
  EXPECT_EQ(dual({0, 2}, 4), (IndexMap{1, 3}));
  EXPECT_EQ(dual({}, 2), (IndexMap{0, 1}));
  EXPECT_EQ(dual({0, 1}, 2), IndexMap{});
  EXPECT_THROW(pickIndex({0}, {1}, 2), InternalError);
}

TEST(IndexMaps, Compose) {
  EXPECT_EQ(composeMaps({1}, {0, 2}), IndexMap{2});
  EXPECT_THROW(composeMaps({3}, {0}), InternalError);
}

TEST(IndexMaps, DualPartitionsTarget) {
  std::vector<IndexMap> maps;
  gen::monotoneMaps(3, 6, maps);
  for (const auto& p : maps) {
    IndexMap d = dual(p, 6);
    std::set<int> all(p.begin(), p.end());
    all.insert(d.begin(), d.end());
    EXPECT_EQ(all.size(), 6u);
    EXPECT_EQ(p.size() + d.size(), 6u);
    for (int i = 0; i < 6; ++i) EXPECT_NO_THROW(pickIndex(p, d, i));
  }
}

TEST(Solve, InclusionOfClosedRows) {
  auto r = solveClosed(pLeq(rowOf("b"), rowOf("abc"), RS()));
  ASSERT_EQ(r.status, SolveStatus::Solved);
  EXPECT_TRUE(evEq(evidenceNormalize(r.ev), eIncl({1})));
}

TEST(Solve, CombinationOfClosedRows) {
  auto r = solveClosed(pPlus(rowOf("a"), rowOf("b"), rowOf("ab"), RS()));
  ASSERT_EQ(r.status, SolveStatus::Solved);
  EXPECT_TRUE(evEq(evidenceNormalize(r.ev), eComb({0}, {1})));
}

TEST(Solve, RejectsFalsePredicates) {
  EXPECT_EQ(solveClosed(pLeq(rowOf("d"), rowOf("abc"), RS())).status, SolveStatus::Failed);
  EXPECT_EQ(solveClosed(pPlus(rowOf("a"), rowOf("a"), rowOf("a"), RS())).status, SolveStatus::Failed);
  EXPECT_EQ(solveClosed(pPlus(rowOf("a"), rowOf("b"), rowOf("abc"), RS())).status, SolveStatus::Failed);
}

TEST(Solve, EmptyRowIsIncluded) {
  auto r = solveClosed(pLeq(rowOf(""), rowOf("ab"), RS()));
  ASSERT_EQ(r.status, SolveStatus::Solved);
  EXPECT_TRUE(evEq(evidenceNormalize(r.ev), eIncl({})));
}

TEST(Solve, FromHypothesis) {
  // z1 < z2 entails z1 < z2 by the hypothesis itself.
  std::vector<KindP> delta = {RS(), RS()};
  PredP h = pLeq(tVar(1), tVar(0), RS());
  auto r = solveClosed(h, {h}, delta);
  ASSERT_EQ(r.status, SolveStatus::Solved);
  EXPECT_TRUE(evEq(r.ev, eVar(0)));
}

TEST(Solve, ComplementFromHypothesis) {
  // z1 < z2 entails z1 + (z2 - z1) ~ z2.
  std::vector<KindP> delta = {RS(), RS()};
  PredP h = pLeq(tVar(1), tVar(0), RS());
  PredP g = pPlus(tVar(1), tCompl(tVar(0), tVar(1), RS()), tVar(0), RS());
  auto r = solveClosed(g, {h}, delta);
  ASSERT_EQ(r.status, SolveStatus::Solved);
  SolverEnv env;
  env.norm = NormCtx{delta, nullptr};
  env.phi = {h};
  EXPECT_TRUE(checkEvidence(env, r.ev, g)) << showEvidence(r.ev);
}

TEST(Solve, TransitiveThroughHypotheses) {
  std::vector<KindP> delta = {RS(), RS(), RS()};
  auto r = solveClosed(pLeq(tVar(2), tVar(0), RS()),
                       {pLeq(tVar(2), tVar(1), RS()), pLeq(tVar(1), tVar(0), RS())}, delta);
  EXPECT_EQ(r.status, SolveStatus::Solved);
}

TEST(EvidenceEval, Refl) {
  EXPECT_TRUE(evEq(evidenceNormalize(eNode(ET::Refl, {rowOf("abc")})), eIncl({0, 1, 2})));
}

TEST(EvidenceEval, Trans) {
  EvP e = eNode(ET::Trans, {rowOf("bc")}, eIncl({1}), eIncl({1, 2}));
  EXPECT_TRUE(evEq(evidenceNormalize(e), eIncl({2})));
}

TEST(EvidenceEval, ComplementAndProjections) {
  EvP c = eNode(ET::ComplR, {rowOf("b"), rowOf("abc")}, eIncl({1}));
  EXPECT_TRUE(evEq(evidenceNormalize(c), eComb({1}, {0, 2})));
  EvP l = eNode(ET::ComplL, {rowOf("b"), rowOf("abc")}, eIncl({1}));
  EXPECT_TRUE(evEq(evidenceNormalize(l), eComb({0, 2}, {1})));
  EXPECT_TRUE(evEq(evidenceNormalize(eNode(ET::PlusR, {rowOf("b")}, c)), eIncl({0, 2})));
  EXPECT_TRUE(evEq(evidenceNormalize(eNode(ET::EmptyL, {rowOf("ab")})), eComb({}, {0, 1})));
}

TEST(EvidenceEval, StuckOnVariable) {
  EXPECT_THROW(evidenceNormalize(eNode(ET::PlusL, {rowOf("a")}, eVar(0))), InternalError);
}

TEST(EvidenceProperty, SolverMatchesBruteForce) {
  const std::string all = "abcdef";
  for (int mask = 0; mask < 64; ++mask) {
    std::string big;
    for (int i = 0; i < 6; ++i)
      if (mask & (1 << i)) big += all[i];
    for (int sub = 0; sub < 64; sub += 7) {
      std::string small;
      for (int i = 0; i < 6; ++i)
        if (sub & (1 << i)) small += all[i];
      std::vector<IndexMap> maps;
      gen::monotoneMaps((int)small.size(), (int)big.size(), maps);
      IndexMap want;
      bool ok = false;
      for (const auto& p : maps) {
        bool fits = true;
        for (size_t i = 0; i < p.size(); ++i) fits = fits && small[i] == big[p[i]];
        if (fits) ok = true, want = p;
      }
      auto r = solveClosed(pLeq(rowOf(small), rowOf(big), RS()));
      ASSERT_EQ(r.status == SolveStatus::Solved, ok) << small << " < " << big;
      if (ok) EXPECT_TRUE(evEq(evidenceNormalize(r.ev), eIncl(want)));
    }
  }
}
