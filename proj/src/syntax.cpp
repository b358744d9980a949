#include "rome/syntax.hpp"

#include <algorithm>

namespace rome {

// ---------------------------------------------------------------- kinds

KindP kStar() {
  static KindP k = std::make_shared<Kind>(Kind{Kind::Star, nullptr, nullptr});
  return k;
}
KindP kLabel() {
  static KindP k = std::make_shared<Kind>(Kind{Kind::Label, nullptr, nullptr});
  return k;
}
KindP kRow(KindP elem) { return std::make_shared<Kind>(Kind{Kind::Row, std::move(elem), nullptr}); }
KindP kArrow(KindP dom, KindP cod) {
  return std::make_shared<Kind>(Kind{Kind::Arrow, std::move(dom), std::move(cod)});
}
KindP kMeta(int id) { return std::make_shared<Kind>(Kind{Kind::Meta, nullptr, nullptr, id}); }

bool kindEq(const KindP& x, const KindP& y) {
  if (x == y) return true;
  if (!x || !y || x->tag != y->tag) return false;
  switch (x->tag) {
    case Kind::Star:
    case Kind::Label: return true;
    case Kind::Row: return kindEq(x->a, y->a);
    case Kind::Arrow: return kindEq(x->a, y->a) && kindEq(x->b, y->b);
    case Kind::Meta: return x->meta == y->meta;
  }
  return false;
}

bool isGround(const KindP& k) { return k->tag == Kind::Star || k->tag == Kind::Label; }

// ---------------------------------------------------------------- type constructors

namespace {
std::shared_ptr<Type> mk(TT tag) {
  auto t = std::make_shared<Type>();
  t->tag = tag;
  return t;
}
}  // namespace

TypeP tVar(int ix, std::string hint) {
  auto t = mk(TT::Var);
  t->ix = ix;
  t->name = std::move(hint);
  return t;
}
TypeP tMeta(int id, int lift) {
  auto t = mk(TT::Meta);
  t->ix = id;
  t->lift = lift;
  return t;
}
TypeP tArrow(TypeP a, TypeP b) {
  auto t = mk(TT::Arrow);
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}
TypeP tPi(KindP k) {
  auto t = mk(TT::Pi);
  t->kind = std::move(k);
  return t;
}
TypeP tSigma(KindP k) {
  auto t = mk(TT::Sigma);
  t->kind = std::move(k);
  return t;
}
TypeP tMu() { return mk(TT::Mu); }
TypeP tForall(KindP k, TypeP body, std::string hint) {
  auto t = mk(TT::Forall);
  t->kind = std::move(k);
  t->a = std::move(body);
  t->name = std::move(hint);
  return t;
}
TypeP tQual(PredP p, TypeP body) {
  auto t = mk(TT::Qual);
  t->pred = std::move(p);
  t->a = std::move(body);
  return t;
}
TypeP tLam(KindP k, TypeP body, std::string hint) {
  auto t = mk(TT::Lam);
  t->kind = std::move(k);
  t->a = std::move(body);
  t->name = std::move(hint);
  return t;
}
TypeP tApp(TypeP f, TypeP x) {
  auto t = mk(TT::App);
  t->a = std::move(f);
  t->b = std::move(x);
  return t;
}
TypeP tRow(std::vector<RowEntry> entries) {
  auto t = mk(TT::Row);
  t->row = std::move(entries);
  return t;
}
TypeP tLabel(std::string name) {
  auto t = mk(TT::Label);
  t->name = std::move(name);
  return t;
}
TypeP tSing(TypeP x, KindP k) {
  auto t = mk(TT::Sing);
  t->a = std::move(x);
  t->kind = std::move(k);
  return t;
}
TypeP tLabRow(TypeP label, TypeP x) {
  auto t = mk(TT::LabRow);
  t->a = std::move(label);
  t->b = std::move(x);
  return t;
}
TypeP tMap(TypeP f, TypeP row, KindP fnKind) {
  auto t = mk(TT::Map);
  t->kind = std::move(fnKind);
  t->a = std::move(f);
  t->b = std::move(row);
  return t;
}
TypeP tCompl(TypeP a, TypeP b, KindP rowKind) {
  auto t = mk(TT::Compl);
  t->kind = std::move(rowKind);
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}
PredP pLeq(TypeP a, TypeP b, KindP k) {
  return std::make_shared<Pred>(Pred{Pred::Leq, std::move(a), std::move(b), nullptr, std::move(k)});
}
PredP pPlus(TypeP a, TypeP b, TypeP c, KindP k) {
  return std::make_shared<Pred>(Pred{Pred::Plus, std::move(a), std::move(b), std::move(c), std::move(k)});
}

// ---------------------------------------------------------------- equality

bool typeEq(const TypeP& x, const TypeP& y) {
  if (x == y) return true;
  if (!x || !y || x->tag != y->tag) return false;
  switch (x->tag) {
    case TT::Var: return x->ix == y->ix;
    case TT::Meta: return x->ix == y->ix && x->lift == y->lift;
    case TT::Pi:
    case TT::Sigma: return kindEq(x->kind, y->kind);
    case TT::Mu: return true;
    case TT::Label: return x->name == y->name;
    case TT::Forall:
    case TT::Lam: return kindEq(x->kind, y->kind) && typeEq(x->a, y->a);
    case TT::Qual: return predEq(x->pred, y->pred) && typeEq(x->a, y->a);
    case TT::Sing: return typeEq(x->a, y->a);
    case TT::Arrow:
    case TT::App:
    case TT::LabRow:
    case TT::Map:
    case TT::Compl: return typeEq(x->a, y->a) && typeEq(x->b, y->b);
    case TT::Row:
      if (x->row.size() != y->row.size()) return false;
      for (size_t i = 0; i < x->row.size(); ++i)
        if (x->row[i].label != y->row[i].label || !typeEq(x->row[i].ty, y->row[i].ty)) return false;
      return true;
  }
  return false;
}

bool predEq(const PredP& x, const PredP& y) {
  if (x->tag != y->tag) return false;
  if (!typeEq(x->a, y->a) || !typeEq(x->b, y->b)) return false;
  return x->tag == Pred::Leq || typeEq(x->c, y->c);
}

// ---------------------------------------------------------------- traversal

namespace {

// Rebuilds t, applying `onVar` / `onMeta` at leaves with the current binder depth.
template <class VarF, class MetaF>
TypeP mapType(const TypeP& t, int depth, const VarF& onVar, const MetaF& onMeta);

template <class VarF, class MetaF>
PredP mapPred(const PredP& p, int depth, const VarF& onVar, const MetaF& onMeta) {
  if (!p) return p;
  auto q = std::make_shared<Pred>(*p);
  q->a = mapType(p->a, depth, onVar, onMeta);
  q->b = mapType(p->b, depth, onVar, onMeta);
  if (p->c) q->c = mapType(p->c, depth, onVar, onMeta);
  return q;
}

template <class VarF, class MetaF>
TypeP mapType(const TypeP& t, int depth, const VarF& onVar, const MetaF& onMeta) {
  if (!t) return t;
  switch (t->tag) {
    case TT::Var: return onVar(t, depth);
    case TT::Meta: return onMeta(t, depth);
    case TT::Pi:
    case TT::Sigma:
    case TT::Mu:
    case TT::Label: return t;
    default: break;
  }
  auto r = std::make_shared<Type>(*t);
  int inner = (t->tag == TT::Forall || t->tag == TT::Lam) ? depth + 1 : depth;
  if (t->a) r->a = mapType(t->a, inner, onVar, onMeta);
  if (t->b) r->b = mapType(t->b, depth, onVar, onMeta);
  if (t->pred) r->pred = mapPred(t->pred, depth, onVar, onMeta);
  for (auto& e : r->row) e.ty = mapType(e.ty, depth, onVar, onMeta);
  return r;
}

}  // namespace

TypeP shift(const TypeP& t, int cutoff, int amount) {
  if (amount == 0) return t;
  return mapType(
      t, 0,
      [&](const TypeP& v, int d) -> TypeP {
        if (v->ix < cutoff + d) return v;
        if (v->ix + amount < 0) throw InternalError("shift: negative index");
        return tVar(v->ix + amount, v->name);
      },
      [&](const TypeP& m, int d) -> TypeP {
        if (cutoff + d > m->lift) throw InternalError("shift: cutoff inside metavariable scope");
        if (m->lift + amount < 0) throw InternalError("shift: negative meta lift");
        return tMeta(m->ix, m->lift + amount);
      });
}

PredP shift(const PredP& p, int cutoff, int amount) {
  if (amount == 0) return p;
  auto q = std::make_shared<Pred>(*p);
  q->a = shift(p->a, cutoff, amount);
  q->b = shift(p->b, cutoff, amount);
  if (p->c) q->c = shift(p->c, cutoff, amount);
  return q;
}

TypeP substAt(const TypeP& body, int j, const TypeP& arg) {
  return mapType(
      body, 0,
      [&](const TypeP& v, int d) -> TypeP {
        int target = j + d;
        if (v->ix == target) return shift(arg, 0, d);
        if (v->ix > target) return tVar(v->ix - 1, v->name);
        return v;
      },
      [&](const TypeP& m, int d) -> TypeP {
        if (j + d >= m->lift) throw InternalError("substitution into metavariable scope");
        return tMeta(m->ix, m->lift - 1);
      });
}

PredP substAt(const PredP& p, int j, const TypeP& arg) {
  auto q = std::make_shared<Pred>(*p);
  q->a = substAt(p->a, j, arg);
  q->b = substAt(p->b, j, arg);
  if (p->c) q->c = substAt(p->c, j, arg);
  return q;
}

TypeP substType(const TypeP& body, const TypeP& arg) { return substAt(body, 0, arg); }
PredP substPred(const PredP& p, const TypeP& arg) { return substAt(p, 0, arg); }

bool mentionsVar(const TypeP& t, int ix) {
  bool found = false;
  mapType(
      t, 0,
      [&](const TypeP& v, int d) -> TypeP {
        if (v->ix == ix + d) found = true;
        return v;
      },
      [&](const TypeP& m, int) -> TypeP { return m; });
  return found;
}

bool hasMeta(const TypeP& t) {
  bool found = false;
  mapType(
      t, 0, [&](const TypeP& v, int) -> TypeP { return v; },
      [&](const TypeP& m, int) -> TypeP {
        found = true;
        return m;
      });
  return found;
}

bool hasMeta(const PredP& p) { return hasMeta(p->a) || hasMeta(p->b) || (p->c && hasMeta(p->c)); }

bool labelLess(const std::string& x, const std::string& y) { return x < y; }

std::vector<RowEntry> rowInsertSorted(std::vector<RowEntry> entries, const std::string& label, TypeP ty) {
  auto it = std::lower_bound(entries.begin(), entries.end(), label,
                             [](const RowEntry& e, const std::string& l) { return labelLess(e.label, l); });
  if (it != entries.end() && it->label == label) throw std::invalid_argument("duplicate label '" + label + "'");
  entries.insert(it, RowEntry{label, std::move(ty)});
  return entries;
}

}  // namespace rome
