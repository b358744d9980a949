#include <functional>

#include "rome/syntax.hpp"

namespace rome {

// ---------------------------------------------------------------- evidence

namespace {
std::shared_ptr<Evidence> mkEv(ET tag) {
  auto e = std::make_shared<Evidence>();
  e->tag = tag;
  return e;
}
}  // namespace

EvP eVar(int ix) {
  auto e = mkEv(ET::Var);
  e->ix = ix;
  return e;
}
EvP eMeta(int id) {
  auto e = mkEv(ET::Meta);
  e->ix = id;
  return e;
}
EvP eIncl(IndexMap p) {
  auto e = mkEv(ET::Incl);
  e->p = std::move(p);
  return e;
}
EvP eComb(IndexMap p, IndexMap q) {
  auto e = mkEv(ET::Comb);
  e->p = std::move(p);
  e->q = std::move(q);
  return e;
}
EvP eNode(ET tag, std::vector<TypeP> ann, EvP a, EvP b) {
  auto e = mkEv(tag);
  e->ann = std::move(ann);
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

bool evEq(const EvP& x, const EvP& y) {
  if (x == y) return true;
  if (!x || !y || x->tag != y->tag || x->ix != y->ix || x->p != y->p || x->q != y->q) return false;
  if (x->ann.size() != y->ann.size()) return false;
  for (size_t i = 0; i < x->ann.size(); ++i)
    if (!typeEq(x->ann[i], y->ann[i])) return false;
  return evEq(x->a, y->a) && evEq(x->b, y->b);
}

bool isEvidenceValue(const EvP& e) { return e->tag == ET::Incl || e->tag == ET::Comb; }

namespace {
EvP mapEv(const EvP& e, const std::function<TypeP(const TypeP&)>& onType,
          const std::function<EvP(const EvP&)>& onVar) {
  if (!e) return e;
  if (e->tag == ET::Var) return onVar(e);
  if (e->tag == ET::Meta || e->tag == ET::Incl || e->tag == ET::Comb) return e;
  auto r = std::make_shared<Evidence>(*e);
  for (auto& t : r->ann) t = onType(t);
  r->a = mapEv(e->a, onType, onVar);
  r->b = mapEv(e->b, onType, onVar);
  return r;
}
TypeP idType(const TypeP& t) { return t; }
EvP idEv(const EvP& e) { return e; }
}  // namespace

EvP shiftEvTypes(const EvP& e, int cutoff, int amount) {
  if (amount == 0) return e;
  return mapEv(e, [&](const TypeP& t) { return shift(t, cutoff, amount); }, idEv);
}

EvP substEvType(const EvP& e, int j, const TypeP& arg) {
  return mapEv(e, [&](const TypeP& t) { return substAt(t, j, arg); }, idEv);
}

EvP shiftEvVars(const EvP& e, int cutoff, int amount) {
  if (amount == 0) return e;
  return mapEv(e, idType, [&](const EvP& v) { return v->ix >= cutoff ? eVar(v->ix + amount) : v; });
}

EvP substEvVar(const EvP& e, int j, const EvP& arg) {
  return mapEv(e, idType, [&](const EvP& v) -> EvP {
    if (v->ix == j) return arg;
    if (v->ix > j) return eVar(v->ix - 1);
    return v;
  });
}

// ---------------------------------------------------------------- terms

const char* konstName(Konst k) {
  switch (k) {
    case Konst::Prj: return "prj";
    case Konst::Concat: return "++";
    case Konst::Inj: return "inj";
    case Konst::Branch: return "|";
    case Konst::Syn: return "syn";
    case Konst::Ana: return "ana";
    case Konst::In: return "in";
    case Konst::Out: return "out";
    case Konst::Fix: return "fix";
  }
  return "?";
}

namespace {
std::shared_ptr<Term> mkTerm(MT tag) {
  auto m = std::make_shared<Term>();
  m->tag = tag;
  return m;
}
}  // namespace

TermP mVar(int ix, std::string hint) {
  auto m = mkTerm(MT::Var);
  m->ix = ix;
  m->name = std::move(hint);
  return m;
}
TermP mGlobal(int slot, std::string name) {
  auto m = mkTerm(MT::Global);
  m->ix = slot;
  m->name = std::move(name);
  return m;
}
TermP mConst(Konst k, KindP kind) {
  auto m = mkTerm(MT::Const);
  m->k = k;
  m->kind = std::move(kind);
  return m;
}
TermP mLam(TypeP dom, TermP body, std::string hint) {
  auto m = mkTerm(MT::Lam);
  m->ty = std::move(dom);
  m->a = std::move(body);
  m->name = std::move(hint);
  return m;
}
TermP mApp(TermP f, TermP x) {
  auto m = mkTerm(MT::App);
  m->a = std::move(f);
  m->b = std::move(x);
  return m;
}
TermP mTyLam(KindP k, TermP body, std::string hint) {
  auto m = mkTerm(MT::TyLam);
  m->kind = std::move(k);
  m->a = std::move(body);
  m->name = std::move(hint);
  return m;
}
TermP mTyApp(TermP f, TypeP t) {
  auto m = mkTerm(MT::TyApp);
  m->a = std::move(f);
  m->ty = std::move(t);
  return m;
}
TermP mEvLam(PredP p, TermP body) {
  auto m = mkTerm(MT::EvLam);
  m->pred = std::move(p);
  m->a = std::move(body);
  return m;
}
TermP mEvApp(TermP f, EvP e) {
  auto m = mkTerm(MT::EvApp);
  m->a = std::move(f);
  m->ev = std::move(e);
  return m;
}
TermP mSing(TypeP t, KindP k) {
  auto m = mkTerm(MT::Sing);
  m->ty = std::move(t);
  m->kind = std::move(k);
  return m;
}
TermP mLabIntro(Flavor fl, TermP label, TermP payload, TypeP row) {
  auto m = mkTerm(MT::LabIntro);
  m->flavor = fl;
  m->a = std::move(label);
  m->b = std::move(payload);
  m->ty = std::move(row);
  return m;
}
TermP mLabElim(Flavor fl, TermP target, TermP label) {
  auto m = mkTerm(MT::LabElim);
  m->flavor = fl;
  m->a = std::move(target);
  m->b = std::move(label);
  return m;
}
TermP mRecord(TypeP row, std::vector<TermP> fields) {
  auto m = mkTerm(MT::Record);
  m->ty = std::move(row);
  m->fields = std::move(fields);
  return m;
}
TermP mVariant(TypeP row, int tag, TermP payload) {
  auto m = mkTerm(MT::Variant);
  m->ty = std::move(row);
  m->ix = tag;
  m->a = std::move(payload);
  return m;
}

namespace {

// Binder depths seen while walking a term.
struct Depth {
  int ty = 0, ev = 0, var = 0;
};

struct TermMapper {
  std::function<TypeP(const TypeP&, Depth)> onType;
  std::function<EvP(const EvP&, Depth)> onEv;
  std::function<TermP(const TermP&, Depth)> onVar;

  TermP go(const TermP& m, Depth d) const {
    if (!m) return m;
    if (m->tag == MT::Var) return onVar ? onVar(m, d) : m;
    if (m->tag == MT::Global || m->tag == MT::Const) return m;
    auto r = std::make_shared<Term>(*m);
    if (m->ty && onType) r->ty = onType(m->ty, d);
    if (m->pred && onType) {
      auto p = std::make_shared<Pred>(*m->pred);
      p->a = onType(p->a, d);
      p->b = onType(p->b, d);
      if (p->c) p->c = onType(p->c, d);
      r->pred = p;
    }
    if (m->ev && onEv) r->ev = onEv(m->ev, d);
    Depth inner = d;
    if (m->tag == MT::TyLam) inner.ty++;
    if (m->tag == MT::EvLam) inner.ev++;
    if (m->tag == MT::Lam) inner.var++;
    r->a = go(m->a, inner);
    r->b = go(m->b, d);
    for (auto& f : r->fields) f = go(f, d);
    return r;
  }
};

}  // namespace

TermP shiftTermTypes(const TermP& m, int cutoff, int amount) {
  if (amount == 0) return m;
  TermMapper tm;
  tm.onType = [&](const TypeP& t, Depth d) { return shift(t, cutoff + d.ty, amount); };
  tm.onEv = [&](const EvP& e, Depth d) { return shiftEvTypes(e, cutoff + d.ty, amount); };
  return tm.go(m, {});
}

TermP substTermType(const TermP& m, const TypeP& arg) {
  TermMapper tm;
  tm.onType = [&](const TypeP& t, Depth d) { return substAt(t, d.ty, shift(arg, 0, d.ty)); };
  tm.onEv = [&](const EvP& e, Depth d) { return substEvType(e, d.ty, shift(arg, 0, d.ty)); };
  return tm.go(m, {});
}

TermP shiftTermEvs(const TermP& m, int cutoff, int amount) {
  if (amount == 0) return m;
  TermMapper tm;
  tm.onEv = [&](const EvP& e, Depth d) { return shiftEvVars(e, cutoff + d.ev, amount); };
  return tm.go(m, {});
}

TermP substTermEv(const TermP& m, const EvP& arg) {
  TermMapper tm;
  tm.onEv = [&](const EvP& e, Depth d) {
    return substEvVar(e, d.ev, shiftEvTypes(shiftEvVars(arg, 0, d.ev), 0, d.ty));
  };
  return tm.go(m, {});
}

TermP shiftTermVars(const TermP& m, int cutoff, int amount) {
  if (amount == 0) return m;
  TermMapper tm;
  tm.onVar = [&](const TermP& v, Depth d) -> TermP {
    return v->ix >= cutoff + d.var ? mVar(v->ix + amount, v->name) : v;
  };
  return tm.go(m, {});
}

TermP substTermTerm(const TermP& m, const TermP& arg) {
  TermMapper tm;
  tm.onVar = [&](const TermP& v, Depth d) -> TermP {
    if (v->ix == d.var) return shiftTermEvs(shiftTermTypes(shiftTermVars(arg, 0, d.var), 0, d.ty), 0, d.ev);
    if (v->ix > d.var) return mVar(v->ix - 1, v->name);
    return v;
  };
  return tm.go(m, {});
}

bool termEq(const TermP& x, const TermP& y) {
  if (x == y) return true;
  if (!x || !y || x->tag != y->tag) return false;
  if (x->ix != y->ix || x->k != y->k || x->flavor != y->flavor) return false;
  if ((x->ty || y->ty) && !typeEq(x->ty, y->ty)) return false;
  if ((x->pred || y->pred) && (!x->pred || !y->pred || !predEq(x->pred, y->pred))) return false;
  if ((x->ev || y->ev) && !evEq(x->ev, y->ev)) return false;
  if (x->tag == MT::Global && x->name != y->name) return false;
  if (x->fields.size() != y->fields.size()) return false;
  for (size_t i = 0; i < x->fields.size(); ++i)
    if (!termEq(x->fields[i], y->fields[i])) return false;
  return termEq(x->a, y->a) && termEq(x->b, y->b);
}

}  // namespace rome
