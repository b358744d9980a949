#include "elab.hpp"

namespace rome {

namespace {

bool isFlavorApp(const TypeP& t) {
  return t->tag == TT::App && (t->a->tag == TT::Pi || t->a->tag == TT::Sigma) && kindEq(t->a->kind, kStar());
}

STermP dropVar(const STermP& m) {
  if (m->vars.size() == 1) return m->a;
  auto n = std::make_shared<STerm>(*m);
  n->vars.erase(n->vars.begin());
  return n;
}

STermP dropBinder(const STermP& m) {
  if (m->binders.size() == 1) return m->a;
  auto n = std::make_shared<STerm>(*m);
  n->binders.erase(n->binders.begin());
  return n;
}

TermP withFlavorMeta(TermP m, int id) {
  auto n = std::make_shared<Term>(*m);
  n->ix = id + 1;
  return n;
}

}  // namespace

Elaborated Elab::check(const STermP& m, const TypeP& expected) {
  TypeP a = nf(expected);
  if (a->tag == TT::Forall) {
    std::string name;
    STermP body = m;
    if (m->tag == SM::TyLam) {
      const SBinder& b = m->binders[0];
      if (b.kind && !kindEq(b.kind, a->kind))
        fail("type abstraction over '" + b.name + "' has kind " + showKind(b.kind) + ", expected " +
                 showKind(a->kind),
             m->pos);
      name = b.name;
      body = dropBinder(m);
    }
    ty_.push(name, a->kind);
    Elaborated r = check(body, a->a);
    ty_.pop();
    return {mTyLam(a->kind, r.term, name.empty() ? a->name : name), a};
  }
  if (a->tag == TT::Qual) {
    phi_.push_back({a->pred, depth()});
    Elaborated r = check(m, a->a);
    phi_.pop_back();
    return {mEvLam(a->pred, r.term), a};
  }
  switch (m->tag) {
    case SM::Lam: return checkLam(m, a);
    case SM::LabIntro: return checkLabIntro(m, a);
    case SM::LabElim: return checkLabElim(m, a);
    case SM::Sing:
      if (a->tag == TT::Sing) {
        TypeP t = elabType(m->ty, a->kind);
        if (!unify(tSing(t, a->kind), a)) mismatch(tSing(t, a->kind), a, m->pos);
        return {mSing(t, a->kind), a};
      }
      return spine(m, a);
    case SM::TyLam: fail("type abstraction checked against non-polymorphic type " + show(a), m->pos);
    default: return spine(m, a);
  }
}

Elaborated Elab::checkLam(const STermP& m, const TypeP& expected) {
  TypeP a = expected;
  if (a->tag != TT::Arrow) {
    TypeP d = freshMeta(kStar()), c = freshMeta(kStar());
    if (!unify(a, tArrow(d, c))) fail("lambda checked against non-function type " + show(a), m->pos);
    a = nf(a);
  }
  gamma_.push_back({m->vars[0], a->a, depth()});
  Elaborated r = check(dropVar(m), a->b);
  gamma_.pop_back();
  return {mLam(a->a, r.term, m->vars[0]), a};
}

Elaborated Elab::checkLabIntro(const STermP& m, const TypeP& a) {
  if (!isFlavorApp(a)) {
    Elaborated e = infer(m);
    if (!unify(e.type, a)) mismatch(e.type, a, m->pos);
    return {e.term, a};
  }
  TermP lt;
  TypeP xi = label(m->a, lt);
  TypeP t = freshMeta(kStar());
  if (!unify(a->b, tLabRow(xi, t), kRow(kStar())))
    fail("single-field " + std::string(a->a->tag == TT::Pi ? "record" : "variant") + " checked against " + show(a),
         m->pos);
  Elaborated p = check(m->b, t);
  Flavor fl = a->a->tag == TT::Pi ? Flavor::Pi : Flavor::Sigma;
  return {mLabIntro(fl, lt, p.term, tLabRow(xi, t)), a};
}

Elaborated Elab::checkLabElim(const STermP& m, const TypeP& a) {
  TermP lt;
  TypeP xi = label(m->b, lt);
  TypeP f = freshMeta(kArrow(kRow(kStar()), kStar()), true);
  Elaborated t = check(m->a, tApp(f, tLabRow(xi, a)));
  return {withFlavorMeta(mLabElim(Flavor::Pi, t.term, lt), f->ix), a};
}

Elaborated Elab::infer(const STermP& m) {
  switch (m->tag) {
    case SM::Lam: return inferLam(m);
    case SM::TyLam: return inferTyLam(m);
    case SM::LabIntro: {
      TermP lt;
      TypeP xi = label(m->a, lt);
      Elaborated p = infer(m->b);
      TypeP f = freshMeta(kArrow(kRow(kStar()), kStar()), true);
      TypeP row = tLabRow(xi, p.type);
      return {withFlavorMeta(mLabIntro(Flavor::Pi, lt, p.term, row), f->ix), tApp(f, row)};
    }
    case SM::LabElim: return checkLabElim(m, freshMeta(kStar()));
    case SM::Sing: {
      KindChecker kc(prog_.synonyms);
      KindP k;
      TypeP t = kc.infer(m->ty, ty_, k);
      t = kc.finish(t, m->pos);
      k = kc.finish(kc.zonk(k), m->pos);
      t = nf(t, k);
      return {mSing(t, k), tSing(t, k)};
    }
    default: return spine(m, nullptr);
  }
}

Elaborated Elab::inferLam(const STermP& m) {
  TypeP d = freshMeta(kStar());
  gamma_.push_back({m->vars[0], d, depth()});
  Elaborated r = infer(dropVar(m));
  gamma_.pop_back();
  return {mLam(d, r.term, m->vars[0]), tArrow(d, r.type)};
}

Elaborated Elab::inferTyLam(const STermP& m) {
  const SBinder& b = m->binders[0];
  if (!b.kind)
    fail("type abstraction over '" + b.name + "' needs a kind annotation or an expected type", m->pos);
  ty_.push(b.name, b.kind);
  Elaborated r = infer(dropBinder(m));
  ty_.pop();
  return {mTyLam(b.kind, r.term, b.name), tForall(b.kind, r.type, b.name)};
}

}  // namespace rome
