#include "rome/kinding.hpp"

#include <algorithm>

namespace rome {

namespace {
std::string noun(const KindP& k) { return showKind(k); }
}  // namespace

KindP KindChecker::fresh() {
  sol_.push_back(nullptr);
  return kMeta((int)sol_.size() - 1);
}

KindP KindChecker::zonk(const KindP& k) const {
  switch (k->tag) {
    case Kind::Meta:
      if (k->meta < (int)sol_.size() && sol_[k->meta]) return zonk(sol_[k->meta]);
      return k;
    case Kind::Row: {
      KindP a = zonk(k->a);
      return a == k->a ? k : kRow(a);
    }
    case Kind::Arrow: {
      KindP a = zonk(k->a), b = zonk(k->b);
      return a == k->a && b == k->b ? k : kArrow(a, b);
    }
    default: return k;
  }
}

bool KindChecker::occurs(int id, const KindP& k) const {
  switch (k->tag) {
    case Kind::Meta: return k->meta == id;
    case Kind::Row: return occurs(id, k->a);
    case Kind::Arrow: return occurs(id, k->a) || occurs(id, k->b);
    default: return false;
  }
}

bool KindChecker::unify(const KindP& x0, const KindP& y0) {
  KindP x = zonk(x0), y = zonk(y0);
  if (x->tag == Kind::Meta && y->tag == Kind::Meta && x->meta == y->meta) return true;
  if (x->tag == Kind::Meta) {
    if (occurs(x->meta, y)) return false;
    sol_[x->meta] = y;
    return true;
  }
  if (y->tag == Kind::Meta) return unify(y, x);
  if (x->tag != y->tag) return false;
  switch (x->tag) {
    case Kind::Row: return unify(x->a, y->a);
    case Kind::Arrow: return unify(x->a, y->a) && unify(x->b, y->b);
    default: return true;
  }
}

bool KindChecker::resolved(const KindP& k) const {
  KindP z = zonk(k);
  switch (z->tag) {
    case Kind::Meta: return false;
    case Kind::Row: return resolved(z->a);
    case Kind::Arrow: return resolved(z->a) && resolved(z->b);
    default: return true;
  }
}

PredP KindChecker::zonk(const PredP& p) const {
  auto q = std::make_shared<Pred>(*p);
  q->a = zonk(p->a);
  q->b = zonk(p->b);
  if (p->c) q->c = zonk(p->c);
  if (p->kind) q->kind = zonk(p->kind);
  return q;
}

TypeP KindChecker::zonk(const TypeP& t) const {
  if (!t) return t;
  auto r = std::make_shared<Type>(*t);
  if (t->kind) r->kind = zonk(t->kind);
  if (t->a) r->a = zonk(t->a);
  if (t->b) r->b = zonk(t->b);
  if (t->pred) r->pred = zonk(t->pred);
  for (auto& e : r->row) e.ty = zonk(e.ty);
  return r;
}

bool KindChecker::resolved(const TypeP& t) const {
  if (!t) return true;
  if (t->kind && !resolved(t->kind)) return false;
  if (!resolved(t->a) || !resolved(t->b)) return false;
  if (t->pred) {
    if (t->pred->kind && !resolved(t->pred->kind)) return false;
    if (!resolved(t->pred->a) || !resolved(t->pred->b) || !resolved(t->pred->c)) return false;
  }
  for (const auto& e : t->row)
    if (!resolved(e.ty)) return false;
  return true;
}

namespace {
// Pi and Sigma apply at kinds built from * by arrows and rows.
bool flavorKind(const KindP& k) {
  switch (k->tag) {
    case Kind::Star: return true;
    case Kind::Arrow: return flavorKind(k->b);
    case Kind::Row: return flavorKind(k->a);
    default: return false;
  }
}

const Type* badFlavor(const TypeP& t) {
  if (!t) return nullptr;
  if ((t->tag == TT::Pi || t->tag == TT::Sigma) && !flavorKind(t->kind)) return t.get();
  for (const Type* r : {badFlavor(t->a), badFlavor(t->b)})
    if (r) return r;
  if (t->pred)
    for (const auto& x : {t->pred->a, t->pred->b, t->pred->c})
      if (auto r = badFlavor(x)) return r;
  for (const auto& e : t->row)
    if (auto r = badFlavor(e.ty)) return r;
  return nullptr;
}
}  // namespace

TypeP KindChecker::finish(const TypeP& t, Pos pos) const {
  TypeP z = zonk(t);
  if (!resolved(z)) throw KindError("ambiguous kind: add a kind annotation", pos.line, pos.col);
  if (const Type* bad = badFlavor(z))
    throw KindError(std::string(bad->tag == TT::Pi ? "Pi" : "Sigma") + " cannot be used at kind " + noun(bad->kind),
                    pos.line, pos.col);
  return z;
}

KindP KindChecker::finish(const KindP& k, Pos pos) const {
  KindP z = zonk(k);
  if (!resolved(z)) throw KindError("ambiguous kind: add a kind annotation", pos.line, pos.col);
  return z;
}

TypeP KindChecker::check(const STypeP& t, TyScope& scope, const KindP& k) {
  KindP got;
  TypeP r = infer(t, scope, got);
  if (!unify(got, k))
    throw KindError("kind mismatch: expected " + noun(zonk(k)) + ", got " + noun(zonk(got)), t->pos.line,
                    t->pos.col);
  return r;
}

PredP KindChecker::pred(const SPred& p, TyScope& scope, Pos pos) {
  KindP elem = fresh();
  KindP rk = kRow(elem);
  auto part = [&](const STypeP& s) {
    KindP k;
    TypeP r = infer(s, scope, k);
    if (!unify(k, rk))
      throw KindError("predicate operands must be rows of one kind, got " + noun(zonk(k)), s->pos.line,
                      s->pos.col);
    return r;
  };
  (void)pos;
  if (p.tag == Pred::Leq) return pLeq(part(p.a), part(p.b), rk);
  return pPlus(part(p.a), part(p.b), part(p.c), rk);
}

TypeP KindChecker::app(TypeP f, KindP kf, TypeP x, KindP kx, Pos pos, KindP& out) {
  kf = zonk(kf);
  if (kf->tag == Kind::Meta) {
    KindP res = fresh();
    unify(kf, kArrow(kx, res));
    out = res;
    return tApp(f, x);
  }
  if (kf->tag == Kind::Arrow) {
    auto snap = snapshot();
    if (unify(kf->a, kx)) {
      out = kf->b;
      return tApp(f, x);
    }
    restore(snap);
    // An operator applied to a row maps over it.
    KindP elem = fresh();
    if (unify(kx, kRow(elem)) && unify(kf->a, elem)) {
      out = kRow(kf->b);
      return tMap(f, x, kf);
    }
    restore(snap);
    throw KindError("kind mismatch in application: operator expects " + noun(zonk(kf->a)) + ", argument has " +
                        noun(zonk(kx)),
                    pos.line, pos.col);
  }
  if (kf->tag == Kind::Row) {
    KindP ek = zonk(kf->a);
    if (ek->tag == Kind::Meta) {
      KindP res = fresh();
      unify(ek, kArrow(kx, res));
      ek = zonk(ek);
    }
    if (ek->tag == Kind::Arrow && unify(ek->a, kx)) {
      // A row of operators applied to an argument applies each entry.
      KindP fk = kArrow(ek, ek->b);
      out = kRow(ek->b);
      return tMap(tLam(ek, tApp(tVar(0), shift(x, 0, 1))), f, fk);
    }
  }
  throw KindError("type of kind " + noun(kf) + " cannot be applied", pos.line, pos.col);
}

TypeP KindChecker::infer(const STypeP& t, TyScope& scope, KindP& out) {
  Pos pos = t->pos;
  switch (t->tag) {
    case ST::Var: {
      for (int i = (int)scope.names.size() - 1; i >= 0; --i) {
        if (scope.names[i] == t->name) {
          out = scope.kinds[i];
          return tVar((int)scope.names.size() - 1 - i, t->name);
        }
      }
      auto it = syns_.find(t->name);
      if (it == syns_.end()) throw KindError("unbound type variable '" + t->name + "'", pos.line, pos.col);
      out = it->second.kind;
      return shift(it->second.body, 0, (int)scope.names.size());
    }
    case ST::Label: out = kLabel(); return tLabel(t->name);
    case ST::Pi:
    case ST::Sigma: {
      KindP k = fresh();
      out = kArrow(kRow(k), k);
      return t->tag == ST::Pi ? tPi(k) : tSigma(k);
    }
    case ST::Mu: out = kArrow(kArrow(kStar(), kStar()), kStar()); return tMu();
    case ST::Arrow: {
      TypeP a = check(t->a, scope, kStar());
      TypeP b = check(t->b, scope, kStar());
      out = kStar();
      return tArrow(a, b);
    }
    case ST::Forall:
    case ST::Lam: {
      std::vector<KindP> ks;
      for (const auto& b : t->binders) {
        ks.push_back(b.kind ? b.kind : fresh());
        scope.push(b.name, ks.back());
      }
      KindP bodyKind;
      TypeP body;
      try {
        body = t->tag == ST::Forall ? check(t->a, scope, kStar()) : infer(t->a, scope, bodyKind);
      } catch (...) {
        for (size_t i = 0; i < ks.size(); ++i) scope.pop();
        throw;
      }
      for (size_t i = 0; i < ks.size(); ++i) scope.pop();
      out = t->tag == ST::Forall ? kStar() : bodyKind;
      for (size_t i = ks.size(); i-- > 0;) {
        const std::string& n = t->binders[i].name;
        if (t->tag == ST::Forall) {
          body = tForall(ks[i], body, n);
        } else {
          body = tLam(ks[i], body, n);
          out = kArrow(ks[i], out);
        }
      }
      return body;
    }
    case ST::Qual: {
      std::vector<PredP> ps;
      for (const auto& p : t->preds) ps.push_back(pred(p, scope, pos));
      TypeP body = check(t->a, scope, kStar());
      for (size_t i = ps.size(); i-- > 0;) body = tQual(ps[i], body);
      out = kStar();
      return body;
    }
    case ST::App: {
      KindP kf, kx;
      TypeP f = infer(t->a, scope, kf);
      TypeP x = infer(t->b, scope, kx);
      return app(f, kf, x, kx, pos, out);
    }
    case ST::Row: {
      KindP elem = fresh();
      out = kRow(elem);
      std::vector<RowEntry> entries;
      for (const auto& [l, x] : t->row) {
        TypeP xt = check(x, scope, elem);
        if (l->tag == ST::Label) {
          try {
            entries = rowInsertSorted(std::move(entries), l->name, xt);
          } catch (const std::invalid_argument& e) {
            throw KindError(e.what(), l->pos.line, l->pos.col);
          }
          continue;
        }
        if (t->row.size() != 1)
          throw KindError("a row with a label variable must have exactly one entry", l->pos.line, l->pos.col);
        return tLabRow(check(l, scope, kLabel()), xt);
      }
      return tRow(std::move(entries));
    }
    case ST::Sing: {
      KindP k;
      TypeP x = infer(t->a, scope, k);
      out = kStar();
      return tSing(x, k);
    }
    case ST::Compl: {
      KindP rk = kRow(fresh());
      TypeP a = check(t->a, scope, rk);
      TypeP b = check(t->b, scope, rk);
      out = rk;
      return tCompl(a, b, rk);
    }
  }
  throw InternalError("kinding: unknown surface type");
}

namespace {

struct CoreKinder {
  KindChecker& kc;
  const std::function<KindP(int)>& metaKind;

  [[noreturn]] void bad(const std::string& what) const { throw InternalError("ill-kinded type: " + what); }
  void expect(const KindP& got, const KindP& want, const char* what) {
    if (!kc.unify(got, want)) bad(what);
  }

  KindP pred(std::vector<KindP>& delta, const PredP& p) {
    KindP rk = p->kind ? p->kind : kRow(kc.fresh());
    expect(rk, kRow(kc.fresh()), "predicate kind");
    expect(infer(delta, p->a), rk, "predicate operand");
    expect(infer(delta, p->b), rk, "predicate operand");
    if (p->c) expect(infer(delta, p->c), rk, "predicate operand");
    return rk;
  }

  KindP infer(std::vector<KindP>& delta, const TypeP& t) {
    switch (t->tag) {
      case TT::Var:
        if (t->ix >= (int)delta.size()) bad("unbound variable");
        return delta[delta.size() - 1 - t->ix];
      case TT::Meta:
        if (!metaKind) bad("unexpected metavariable");
        return metaKind(t->ix);
      case TT::Arrow:
        expect(infer(delta, t->a), kStar(), "arrow domain");
        expect(infer(delta, t->b), kStar(), "arrow codomain");
        return kStar();
      case TT::Pi:
      case TT::Sigma: return kArrow(kRow(t->kind), t->kind);
      case TT::Mu: return kArrow(kArrow(kStar(), kStar()), kStar());
      case TT::Forall:
      case TT::Lam: {
        delta.push_back(t->kind);
        KindP body = infer(delta, t->a);
        delta.pop_back();
        if (t->tag == TT::Lam) return kArrow(t->kind, body);
        expect(body, kStar(), "forall body");
        return kStar();
      }
      case TT::Qual:
        pred(delta, t->pred);
        expect(infer(delta, t->a), kStar(), "qualified body");
        return kStar();
      case TT::App: {
        KindP res = kc.fresh();
        expect(infer(delta, t->a), kArrow(infer(delta, t->b), res), "application");
        return res;
      }
      case TT::Row: {
        KindP elem = kc.fresh();
        for (size_t i = 0; i < t->row.size(); ++i) {
          if (i > 0 && !labelLess(t->row[i - 1].label, t->row[i].label)) bad("unsorted row");
          expect(infer(delta, t->row[i].ty), elem, "row entry");
        }
        return kRow(elem);
      }
      case TT::Label: return kLabel();
      case TT::Sing: {
        KindP k = infer(delta, t->a);
        if (t->kind) expect(k, t->kind, "singleton annotation");
        return kStar();
      }
      case TT::LabRow:
        expect(infer(delta, t->a), kLabel(), "row label");
        return kRow(infer(delta, t->b));
      case TT::Map: {
        KindP a = kc.fresh(), b = kc.fresh();
        expect(infer(delta, t->a), kArrow(a, b), "map function");
        if (t->kind) expect(kArrow(a, b), t->kind, "map annotation");
        expect(infer(delta, t->b), kRow(a), "map row");
        return kRow(b);
      }
      case TT::Compl: {
        KindP rk = kRow(kc.fresh());
        if (t->kind) expect(rk, t->kind, "complement annotation");
        expect(infer(delta, t->a), rk, "complement operand");
        expect(infer(delta, t->b), rk, "complement operand");
        return rk;
      }
    }
    bad("unknown type");
  }
};

const SynonymEnv& noSynonyms() {
  static const SynonymEnv env;
  return env;
}

}  // namespace

KindP kindOf(const std::vector<KindP>& delta, const TypeP& t, const std::function<KindP(int)>& metaKind) {
  KindChecker kc(noSynonyms());
  CoreKinder ck{kc, metaKind};
  std::vector<KindP> d = delta;
  return kc.zonk(ck.infer(d, t));
}

void checkPredKinds(const std::vector<KindP>& delta, const PredP& p, const std::function<KindP(int)>& metaKind) {
  KindChecker kc(noSynonyms());
  CoreKinder ck{kc, metaKind};
  std::vector<KindP> d = delta;
  ck.pred(d, p);
}

}  // namespace rome
