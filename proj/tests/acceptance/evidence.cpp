#include <optional>
#include <set>

#include "acceptance.hpp"
#include "fixtures.hpp"
#include "gen.hpp"

namespace rome::acceptance {

namespace {

KindP RS() { return kRow(kStar()); }

// Random sorted literal row over labels a..g of size at most maxSize, entries drawn from two types.
std::vector<RowEntry> randomRow(gen::TypeGen& g, int maxSize) {
  std::vector<RowEntry> out;
  for (int i = 0; i < 7 && (int)out.size() < maxSize; ++i)
    if (g.chance(45)) out.push_back({std::string(1, char('a' + i)), tSing(tLabel(g.chance(80) ? "x" : "y"), kLabel())});
  return out;
}

bool entryEq(const RowEntry& x, const RowEntry& y) { return x.label == y.label && typeEq(x.ty, y.ty); }

std::optional<IndexMap> bruteIncl(const std::vector<RowEntry>& x, const std::vector<RowEntry>& z) {
  std::vector<IndexMap> maps;
  gen::monotoneMaps((int)x.size(), (int)z.size(), maps);
  for (const auto& p : maps) {
    bool ok = true;
    for (size_t i = 0; i < p.size() && ok; ++i) ok = entryEq(x[i], z[p[i]]);
    if (ok) return p;
  }
  return std::nullopt;
}

std::optional<std::pair<IndexMap, IndexMap>> bruteComb(const std::vector<RowEntry>& x, const std::vector<RowEntry>& y,
                                                       const std::vector<RowEntry>& z) {
  if (x.size() + y.size() != z.size()) return std::nullopt;
  auto p = bruteIncl(x, z), q = bruteIncl(y, z);
  if (!p || !q) return std::nullopt;
  std::set<int> seen(p->begin(), p->end());
  for (int j : *q)
    if (!seen.insert(j).second) return std::nullopt;
  return std::make_pair(*p, *q);
}

SolveResult solveClosed(const PredP& goal) {
  SolverEnv env;
  return solve(env, goal);
}

std::optional<EvP> solved(const PredP& goal) {
  auto r = solveClosed(goal);
  if (r.status != SolveStatus::Solved) return std::nullopt;
  return evidenceNormalize(r.ev);
}

std::string rowText(const std::vector<RowEntry>& r) { return showType(tRow(r)); }

}  // namespace

Outcome subtraction() {
  gen::TypeGen g(77);
  int pairs = 0;
  for (; pairs < 2000; ++pairs) {
    auto big = randomRow(g, 1 + g.below(6)), small = randomRow(g, g.below(7));
    if (g.chance(50)) small = randomRow(g, 0);
    if (g.chance(30)) {
      small.clear();
      for (const auto& e : big)
        if (g.chance(50)) small.push_back(e);
    }
    std::vector<RowEntry> want;
    for (const auto& e : big) {
      bool inSmall = false;
      for (const auto& s : small) inSmall = inSmall || entryEq(e, s);
      if (!inSmall) want.push_back(e);
    }
    auto got = subtract(big, small);
    bool same = got.size() == want.size();
    for (size_t i = 0; same && i < got.size(); ++i) same = entryEq(got[i], want[i]);
    TypeP viaNorm = normalize(NormCtx{}, tCompl(tRow(big), tRow(small), RS()), RS());
    if (!same || !typeEq(viaNorm, tRow(want)))
      return {false, "subtract " + rowText(big) + " " + rowText(small) + " gave " + rowText(got)};
  }
  return {true, std::to_string(pairs) + " pairs match set difference"};
}

Outcome evidence() {
  gen::TypeGen g(4242);
  int incl = 0, comb = 0, picks = 0;
  for (int i = 0; i < 1500; ++i) {
    auto z = randomRow(g, 6);
    std::vector<RowEntry> x;
    for (const auto& e : z)
      if (g.chance(50)) x.push_back(e);
    if (g.chance(40)) x = randomRow(g, 4);
    auto want = bruteIncl(x, z);
    auto got = solved(pLeq(tRow(x), tRow(z), RS()));
    if (want.has_value() != got.has_value()) return {false, "containment disagrees: " + rowText(x) + " < " + rowText(z)};
    if (!want) continue;
    ++incl;
    if (!evEq(*got, eIncl(*want))) return {false, "containment map differs: " + showEvidence(*got)};
    // Complement round trip: x + (z - x) ~ z with the complement map as dual.
    IndexMap d = dual(*want, (int)z.size());
    TypeP rest = tCompl(tRow(z), tRow(x), RS());
    auto c = solved(pPlus(tRow(x), rest, tRow(z), RS()));
    if (!c || !evEq(*c, eComb(*want, d))) return {false, "complement round trip failed for " + rowText(x)};
    EvP viaRule = evidenceNormalize(eNode(ET::ComplR, {tRow(x), tRow(z)}, eIncl(*want)));
    if (!evEq(viaRule, eComb(*want, d))) return {false, "complR disagrees with solve"};
    // Partition and inversion.
    std::set<int> all(want->begin(), want->end());
    all.insert(d.begin(), d.end());
    if (all.size() != z.size() || want->size() + d.size() != z.size()) return {false, "dual does not partition"};
    for (int j = 0; j < (int)z.size(); ++j) {
      auto pk = pickIndex(*want, d, j);
      int back = pk.index() == 0 ? (*want)[std::get<0>(pk)] : d[std::get<1>(pk)];
      if (back != j) return {false, "pick does not invert"};
      ++picks;
    }
  }
  for (int i = 0; i < 1500; ++i) {
    auto z = randomRow(g, 6);
    std::vector<RowEntry> x, y;
    for (const auto& e : z) (g.chance(50) ? x : y).push_back(e);
    if (g.chance(30)) y = randomRow(g, 3);
    if (g.chance(10)) x.push_back({"h", tSing(tLabel("x"), kLabel())});
    auto want = bruteComb(x, y, z);
    auto got = solved(pPlus(tRow(x), tRow(y), tRow(z), RS()));
    if (want.has_value() != got.has_value())
      return {false, "combination disagrees: " + rowText(x) + " + " + rowText(y) + " ~ " + rowText(z)};
    if (!want) continue;
    ++comb;
    if (!evEq(*got, eComb(want->first, want->second))) return {false, "combination maps differ"};
    auto flipped = solved(pPlus(tRow(y), tRow(x), tRow(z), RS()));
    if (!flipped || !evEq(*flipped, eComb(want->second, want->first))) return {false, "combination does not commute"};
  }
  return {true, std::to_string(incl) + " containments, " + std::to_string(comb) + " combinations, " +
                    std::to_string(picks) + " pick inversions"};
}

}  // namespace rome::acceptance
