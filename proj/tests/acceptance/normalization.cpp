#include <map>
#include <set>

#include "acceptance.hpp"
#include "fixtures.hpp"
#include "gen.hpp"

namespace rome::acceptance {

namespace {

KindP S() { return kStar(); }
KindP F() { return kArrow(kStar(), kStar()); }

std::vector<KindP> baseDelta() { return {S(), kRow(S()), kLabel(), F(), kRow(F()), kRow(S())}; }

struct Checker {
  std::map<std::string, int> counts;
  std::string failure;

  void same(const char* rule, const std::vector<KindP>& delta, const TypeP& lhs, const TypeP& rhs,
            const KindP& k) {
    NormCtx ctx{delta, nullptr};
    TypeP x = normalize(ctx, lhs, k), y = normalize(ctx, rhs, k);
    ++counts[rule];
    if (!typeEq(x, y) && failure.empty())
      failure = std::string(rule) + ": " + showType(lhs) + " gave " + showType(x) + " but " + showType(rhs) +
                " gave " + showType(y);
  }
};

// A sub-row of a literal row: drops each entry with probability one half.
TypeP subRow(gen::TypeGen& g, const TypeP& r) {
  std::vector<RowEntry> es;
  for (const auto& e : r->row)
    if (g.chance(50)) es.push_back(e);
  return tRow(std::move(es));
}

void rules(gen::TypeGen& g, Checker& c) {
  std::vector<KindP> d = baseDelta();
  const int depth = 4;
  // beta
  {
    KindP a = g.kind(0), k = g.kind();
    d.push_back(a);
    TypeP body = g.type(d, k, depth);
    d.pop_back();
    TypeP arg = g.type(d, a, depth);
    c.same("beta", d, tApp(tLam(a, body), arg), substType(body, arg), k);
  }
  // eta
  {
    KindP k = g.chance(50) ? F() : kArrow(S(), F());
    TypeP f = g.type(d, k, depth);
    c.same("eta", d, tLam(k->a, tApp(shift(f, 0, 1), tVar(0))), f, k);
  }
  // lift: (Xi rho) tau = Xi (Map (\f. f tau) rho)
  {
    KindP res = g.chance(70) ? S() : F();
    KindP fk = kArrow(S(), res);
    TypeP rho = g.type(d, kRow(fk), depth), tau = g.type(d, S(), depth);
    bool pi = g.chance(50);
    TypeP xi = pi ? tPi(fk) : tSigma(fk), xi2 = pi ? tPi(res) : tSigma(res);
    TypeP op = tLam(fk, tApp(tVar(0), shift(tau, 0, 1)));
    TypeP lhs = tApp(tApp(xi, rho), tau), rhs = tApp(xi2, tMap(op, rho, kArrow(fk, res)));
    c.same("lift", d, lhs, rhs, res);
  }
  // complement of literals
  {
    // Closed entries: open entries with equal labels are undecided and stay inert.
    std::vector<KindP> none;
    KindP e = g.elemKind();
    TypeP r2 = g.literalRow(none, e, depth, 5), r1 = g.chance(50) ? subRow(g, r2) : g.literalRow(none, e, depth, 5);
    NormCtx ctx{none, nullptr};
    TypeP n2 = normalize(ctx, r2, kRow(e)), n1 = normalize(ctx, r1, kRow(e));
    c.same("complement", d, tCompl(r2, r1, kRow(e)), tRow(subtract(n2->row, n1->row)), kRow(e));
  }
  // map over a literal
  {
    KindP from = g.elemKind(), to = g.chance(50) ? S() : F();
    TypeP phi = g.type(d, kArrow(from, to), depth), r = g.literalRow(d, from, depth, 5);
    std::vector<RowEntry> es;
    for (const auto& en : r->row) es.push_back({en.label, tApp(phi, en.ty)});
    c.same("map", d, tMap(phi, r, kArrow(from, to)), tRow(std::move(es)), kRow(to));
  }
  // map identity
  {
    KindP e = g.elemKind();
    TypeP r = g.type(d, kRow(e), depth);
    c.same("map-id", d, tMap(tLam(e, tVar(0)), r, kArrow(e, e)), r, kRow(e));
  }
  // map composition
  {
    KindP k1 = g.elemKind(), k2 = g.chance(50) ? S() : F(), k3 = g.chance(50) ? S() : F();
    TypeP f1 = g.type(d, kArrow(k2, k3), depth), f2 = g.type(d, kArrow(k1, k2), depth);
    TypeP r = g.type(d, kRow(k1), depth);
    TypeP comp = tLam(k1, tApp(shift(f1, 0, 1), tApp(shift(f2, 0, 1), tVar(0))));
    c.same("map-compose", d, tMap(f1, tMap(f2, r, kArrow(k1, k2)), kArrow(k2, k3)),
           tMap(comp, r, kArrow(k1, k3)), kRow(k3));
  }
  // map over a complement: neutral operands, or a literal contained in a literal
  {
    KindP fk = F();
    TypeP phi = g.type(d, fk, depth);
    TypeP r2, r1;
    if (g.chance(50)) {
      r2 = tVar(4);
      r1 = g.chance(50) ? tVar(0) : g.literalRow(d, S(), depth, 3);
      if (g.chance(50)) std::swap(r1, r2);
    } else {
      r2 = g.literalRow(d, S(), depth, 5);
      r1 = subRow(g, r2);
    }
    KindP rs = kRow(S());
    c.same("map-complement", d, tMap(phi, tCompl(r2, r1, rs), fk),
           tCompl(tMap(phi, r2, fk), tMap(phi, r1, fk), rs), rs);
  }
  // Xi at row kind maps Xi over a row of rows
  {
    TypeP rho = g.type(d, kRow(kRow(S())), depth);
    bool pi = g.chance(50);
    TypeP lhs = tApp(pi ? tPi(kRow(S())) : tSigma(kRow(S())), rho);
    TypeP rhs = tMap(pi ? tPi(S()) : tSigma(S()), rho, kArrow(kRow(S()), S()));
    c.same("xi", d, lhs, rhs, kRow(S()));
  }
}

// C[t] and C[normalize t] normalize identically for each type former C.
void congruences(gen::TypeGen& g, Checker& c) {
  std::vector<KindP> d = baseDelta();
  NormCtx ctx{d, nullptr};
  TypeP t = g.type(d, S(), 4), n = normalize(ctx, t, S());
  TypeP row = g.type(d, kRow(S()), 4), nrow = normalize(ctx, row, kRow(S()));
  TypeP f = g.type(d, F(), 4), nf = normalize(ctx, f, F());
  TypeP l = g.type(d, kLabel(), 3), nl = normalize(ctx, l, kLabel());
  TypeP u = g.type(d, S(), 3);
  KindP rs = kRow(S());
  c.same("cong-arrow", d, tArrow(t, u), tArrow(n, u), S());
  c.same("cong-arrow", d, tArrow(u, t), tArrow(u, n), S());
  c.same("cong-forall", d, tForall(S(), shift(t, 0, 1)), tForall(S(), shift(n, 0, 1)), S());
  c.same("cong-lam", d, tLam(S(), shift(t, 0, 1)), tLam(S(), shift(n, 0, 1)), F());
  c.same("cong-app", d, tApp(f, u), tApp(nf, u), S());
  c.same("cong-app", d, tApp(f, t), tApp(f, n), S());
  c.same("cong-pi", d, tApp(tPi(S()), row), tApp(tPi(S()), nrow), S());
  c.same("cong-sigma", d, tApp(tSigma(S()), row), tApp(tSigma(S()), nrow), S());
  c.same("cong-mu", d, tApp(tMu(), f), tApp(tMu(), nf), S());
  c.same("cong-sing", d, tSing(l, kLabel()), tSing(nl, kLabel()), S());
  c.same("cong-row", d, tRow({{"a", t}}), tRow({{"a", n}}), rs);
  c.same("cong-labrow", d, tLabRow(tVar(3), t), tLabRow(tVar(3), n), rs);
  c.same("cong-map", d, tMap(f, row, F()), tMap(nf, nrow, F()), rs);
  c.same("cong-complement", d, tCompl(row, tVar(4), rs), tCompl(nrow, tVar(4), rs), rs);
  c.same("cong-qual", d, tQual(pLeq(row, tVar(4), rs), t), tQual(pLeq(nrow, tVar(4), rs), n), S());
  c.same("cong-qual", d, tQual(pPlus(tVar(4), row, tVar(0), rs), u), tQual(pPlus(tVar(4), nrow, tVar(0), rs), u),
         S());
}

}  // namespace

Outcome normalization() {
  gen::TypeGen g(20241014);
  int stable = 0;
  for (int i = 0; i < 1200; ++i) {
    std::vector<KindP> d = baseDelta();
    KindP k = g.kind();
    TypeP t = g.type(d, k, 6);
    NormCtx ctx{d, nullptr};
    TypeP n = normalize(ctx, t, k);
    if (!isNormal(ctx, n, k)) return {false, "not normal: " + showType(n)};
    if (!typeEq(normalize(ctx, embed(n), k), n)) return {false, "unstable: " + showType(n)};
    if (!typeEq(normalize(ctx, n, k), normalize(ctx, normalize(ctx, n, k), k))) return {false, "not idempotent"};
    ++stable;
  }
  Checker c;
  for (int i = 0; i < 1000 && c.failure.empty(); ++i) rules(g, c);
  for (int i = 0; i < 300 && c.failure.empty(); ++i) congruences(g, c);
  if (!c.failure.empty()) return {false, c.failure};
  int total = 0;
  for (const auto& [r, n] : c.counts) total += n;
  return {true, std::to_string(stable) + " random types stable and idempotent, " + std::to_string(total) +
                    " rule instances over " + std::to_string(c.counts.size()) + " rules"};
}

}  // namespace rome::acceptance
