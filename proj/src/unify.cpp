#include <algorithm>

#include "checker.hpp"

namespace rome {

int MetaStore::fresh(KindP k, int depth, bool flavor) {
  metas_.push_back({std::move(k), depth, nullptr, flavor});
  return (int)metas_.size() - 1;
}

void MetaStore::solve(int id, TypeP sol) {
  if (metas_[id].sol) throw InternalError("meta solved twice");
  metas_[id].sol = std::move(sol);
  trail_.push_back(id);
}

void MetaStore::rollback(size_t m) {
  while (trail_.size() > m) {
    metas_[trail_.back()].sol = nullptr;
    trail_.pop_back();
  }
}

TypeP MetaStore::zonk(const TypeP& t) const {
  if (!hasMeta(t)) return t;
  if (t->tag == TT::Meta) {
    const auto& mi = metas_[t->ix];
    if (!mi.sol) return t;
    return shift(zonk(mi.sol), 0, t->lift);
  }
  return mapKids(t, [&](const TypeP& c, int) { return zonk(c); });
}

PredP MetaStore::zonk(const PredP& p) const {
  if (p->tag == Pred::Leq) return pLeq(zonk(p->a), zonk(p->b), p->kind);
  return pPlus(zonk(p->a), zonk(p->b), zonk(p->c), p->kind);
}

NormCtx MetaStore::ctx(const std::vector<KindP>& delta) const {
  return {delta, [this](int id) { return metas_[id].kind; }};
}

TypeP MetaStore::nf(const std::vector<KindP>& delta, const TypeP& t, const KindP& k) const {
  return normalize(ctx(delta), zonk(t), k);
}

PredP MetaStore::nf(const std::vector<KindP>& delta, const PredP& p) const {
  return normalizePred(ctx(delta), zonk(p));
}

namespace {

TypeP spineOf(TypeP t, std::vector<TypeP>& args) {
  while (t->tag == TT::App) {
    args.push_back(t->b);
    t = t->a;
  }
  std::reverse(args.begin(), args.end());
  return t;
}

// The variable an eta-expanded argument stands for, if any.
std::optional<int> etaVar(const TypeP& t) {
  int n = 0;
  TypeP body = t;
  while (body->tag == TT::Lam) {
    body = body->a;
    ++n;
  }
  std::vector<TypeP> args;
  TypeP h = spineOf(body, args);
  if (h->tag != TT::Var || (int)args.size() != n || h->ix < n) return std::nullopt;
  for (int i = 0; i < n; ++i) {
    auto v = etaVar(args[i]);
    if (!v || *v != n - 1 - i) return std::nullopt;
  }
  return h->ix - n;
}

bool isFlavorConst(const TypeP& t) {
  return (t->tag == TT::Pi || t->tag == TT::Sigma) && t->kind && kindEq(t->kind, kStar());
}

}  // namespace

bool Unifier::unify(const std::vector<KindP>& delta, const TypeP& x, const TypeP& y, const KindP& k) {
  std::vector<KindP> d = delta;
  TypeP nx = ms_.nf(d, x, k), ny = ms_.nf(d, y, k);
  if (typeEq(nx, ny)) return true;
  if (nesting_ > 0) return go(d, nx, ny, k);
  ++nesting_;
  deferred_.clear();
  bool ok = go(d, nx, ny, k) && solveDeferred();
  deferred_.clear();
  --nesting_;
  return ok;
}

bool Unifier::solveDeferred() {
  while (!deferred_.empty()) {
    std::vector<Deferred> todo;
    todo.swap(deferred_);
    bool progress = false;
    for (auto& e : todo) {
      TypeP nx = ms_.nf(e.delta, e.x, e.k), ny = ms_.nf(e.delta, e.y, e.k);
      if (typeEq(nx, ny)) {
        progress = true;
        continue;
      }
      if (typeEq(nx, e.x) && typeEq(ny, e.y)) {
        deferred_.push_back(e);
        continue;
      }
      progress = true;
      if (!go(e.delta, nx, ny, e.k)) return false;
    }
    if (!progress) return false;
  }
  return true;
}

bool Unifier::unifyPred(const std::vector<KindP>& delta, const PredP& x, const PredP& y) {
  if (x->tag != y->tag || !kindEq(x->kind, y->kind)) return false;
  if (!unify(delta, x->a, y->a, x->kind) || !unify(delta, x->b, y->b, x->kind)) return false;
  return x->tag == Pred::Leq || unify(delta, x->c, y->c, x->kind);
}

std::optional<TypeP> Unifier::escape(int id, int lift, const std::vector<int>& args, const TypeP& y, int c) {
  int n = (int)args.size();
  int d = ms_.info(id).depth;
  if (y->tag == TT::Var) {
    if (y->ix < c) return y;
    int j = y->ix - c;
    for (int p = 0; p < n; ++p)
      if (args[p] == j) return tVar(c + n - 1 - p, y->name);
    if (j < lift) return std::nullopt;
    return tVar(c + j - lift + n, y->name);
  }
  if (y->tag == TT::Meta) {
    if (y->ix == id) return std::nullopt;
    const MetaInfo mi = ms_.info(y->ix);
    if (mi.sol) return escape(id, lift, args, ms_.zonk(y), c);  // pruned earlier in this pass
    if (mi.depth > d) {
      int p = ms_.fresh(mi.kind, d, mi.flavor);
      ms_.solve(y->ix, tMeta(p, mi.depth - d));
      return tMeta(p, n + c);
    }
    return tMeta(y->ix, d + n + c - mi.depth);
  }
  bool ok = true;
  TypeP r = mapKids(y, [&](const TypeP& ch, int bump) -> TypeP {
    if (!ok) return ch;
    auto e = escape(id, lift, args, ch, c + bump);
    if (!e) {
      ok = false;
      return ch;
    }
    return *e;
  });
  if (!ok) return std::nullopt;
  return r;
}

// x has an unsolved meta head. Solves it when x is a pattern or a flavor application.
bool Unifier::flex(std::vector<KindP>& delta, const TypeP& x, const TypeP& y, bool& handled) {
  handled = false;
  std::vector<TypeP> args;
  TypeP h = spineOf(x, args);
  if (h->tag != TT::Meta) return false;
  const MetaInfo mi = ms_.info(h->ix);
  if (mi.flavor) {
    if (args.size() != 1) return false;
    std::vector<TypeP> yargs;
    TypeP yh = spineOf(y, yargs);
    if (yargs.size() != 1) return false;
    if (isFlavorConst(yh)) {
      handled = true;
      ms_.solve(h->ix, yh);
    } else if (yh->tag == TT::Meta && ms_.info(yh->ix).flavor) {
      handled = true;
      int a = h->ix, b = yh->ix;
      if (ms_.info(a).depth < ms_.info(b).depth) std::swap(a, b);
      ms_.solve(a, tMeta(b, ms_.info(a).depth - ms_.info(b).depth));
    } else {
      return false;
    }
    return unify(delta, args[0], yargs[0], kRow(kStar()));
  }
  std::vector<int> vars;
  for (const auto& a : args) {
    auto v = etaVar(a);
    if (!v || std::find(vars.begin(), vars.end(), *v) != vars.end()) return false;
    vars.push_back(*v);
  }
  handled = true;
  KindP k = mi.kind;
  std::vector<KindP> doms;
  for (size_t i = 0; i < vars.size(); ++i) {
    if (k->tag != Kind::Arrow) throw InternalError("meta applied beyond its kind");
    doms.push_back(k->a);
    k = k->b;
  }
  int id = h->ix;
  auto body = escape(id, h->lift, vars, y, 0);
  if (!body) return false;
  TypeP sol = *body;
  for (size_t i = doms.size(); i-- > 0;) sol = tLam(doms[i], sol);
  ms_.solve(id, sol);
  return true;
}

bool Unifier::spine(std::vector<KindP>& delta, const TypeP& x, const TypeP& y) {
  std::vector<TypeP> xa, ya;
  TypeP xh = spineOf(x, xa), yh = spineOf(y, ya);
  if (xa.size() != ya.size() || xh->tag != yh->tag) return false;
  KindP k;
  switch (xh->tag) {
    case TT::Var:
      if (xh->ix != yh->ix) return false;
      k = delta[delta.size() - 1 - xh->ix];
      break;
    case TT::Meta:
      if (xh->ix != yh->ix || xh->lift != yh->lift) return false;
      k = ms_.info(xh->ix).kind;
      break;
    case TT::Pi:
    case TT::Sigma:
      if (!kindEq(xh->kind, yh->kind)) return false;
      k = kArrow(kRow(xh->kind), xh->kind);
      break;
    case TT::Mu: k = kArrow(kArrow(kStar(), kStar()), kStar()); break;
    default: return false;
  }
  for (size_t i = 0; i < xa.size(); ++i) {
    if (k->tag != Kind::Arrow) return false;
    if (!unify(delta, xa[i], ya[i], k->a)) return false;
    k = k->b;
  }
  return true;
}

bool Unifier::go(std::vector<KindP>& delta, const TypeP& x, const TypeP& y, const KindP& k) {
  if (typeEq(x, y)) return true;
  bool handled = false;
  bool r = flex(delta, x, y, handled);
  if (handled) return r;
  r = flex(delta, y, x, handled);
  if (handled) return r;
  {
    std::vector<TypeP> xa, ya;
    TypeP xh = spineOf(x, xa), yh = spineOf(y, ya);
    bool xf = xh->tag == TT::Meta && !xa.empty(), yf = yh->tag == TT::Meta && !ya.empty();
    if ((xf || yf) && !(xf && yf && xh->ix == yh->ix)) {
      deferred_.push_back({delta, x, y, k});
      return true;
    }
  }
  auto under = [&](const KindP& bk, const TypeP& a, const TypeP& b, const KindP& rk) {
    delta.push_back(bk);
    bool ok = unify(delta, a, b, rk);
    delta.pop_back();
    return ok;
  };
  // Map over an unknown row against a literal: fix the row's shape, then compare again.
  auto shape = [&](const TypeP& m, const TypeP& lit) {
    const TypeP& row = m->b;
    if (row->tag != TT::Meta || !m->kind) return false;
    const MetaInfo mi = ms_.info(row->ix);
    std::vector<RowEntry> es;
    for (const auto& e : lit->row) es.push_back({e.label, tMeta(ms_.fresh(m->kind->a, mi.depth), 0)});
    ms_.solve(row->ix, tRow(std::move(es)));
    return unify(delta, m, lit, k);
  };
  // A map over an unknown row against a complement: the row is a complement too.
  auto splitCompl = [&](const TypeP& m, const TypeP& c) {
    const TypeP& row = m->b;
    if (row->tag != TT::Meta || !m->kind) return false;
    const MetaInfo mi = ms_.info(row->ix);
    KindP rk = kRow(m->kind->a);
    TypeP a = tMeta(ms_.fresh(rk, mi.depth), 0), b = tMeta(ms_.fresh(rk, mi.depth), 0);
    ms_.solve(row->ix, tCompl(a, b, rk));
    return unify(delta, m, c, k);
  };
  if (x->tag == TT::Map && y->tag == TT::Compl) return splitCompl(x, y);
  if (y->tag == TT::Map && x->tag == TT::Compl) return splitCompl(y, x);
  // A complement blocked on unknown entry types may compute once they are solved.
  if ((x->tag == TT::Compl && hasMeta(x) && y->tag == TT::Row) ||
      (y->tag == TT::Compl && hasMeta(y) && x->tag == TT::Row)) {
    deferred_.push_back({delta, x, y, k});
    return true;
  }
  if (x->tag == TT::Map && y->tag == TT::Row) return shape(x, y);
  if (y->tag == TT::Map && x->tag == TT::Row) return shape(y, x);
  auto labRow = [&](const TypeP& lr, const TypeP& lit) {
    if (lit->row.size() != 1 || k->tag != Kind::Row) return false;
    return unify(delta, lr->a, tLabel(lit->row[0].label), kLabel()) &&
           unify(delta, lr->b, lit->row[0].ty, k->a);
  };
  if (x->tag == TT::LabRow && y->tag == TT::Row) return labRow(x, y);
  if (y->tag == TT::LabRow && x->tag == TT::Row) return labRow(y, x);
  if (k->tag == Kind::Arrow) {
    if (x->tag != TT::Lam || y->tag != TT::Lam) return false;
    return under(k->a, x->a, y->a, k->b);
  }
  if (x->tag == TT::App || y->tag == TT::App) return spine(delta, x, y);
  if (x->tag != y->tag) return false;
  switch (x->tag) {
    case TT::Arrow: return unify(delta, x->a, y->a, kStar()) && unify(delta, x->b, y->b, kStar());
    case TT::Forall:
      return kindEq(x->kind, y->kind) && under(x->kind, x->a, y->a, kStar());
    case TT::Qual:
      return unifyPred(delta, x->pred, y->pred) && unify(delta, x->a, y->a, kStar());
    case TT::Row: {
      if (x->row.size() != y->row.size() || k->tag != Kind::Row) return false;
      for (size_t i = 0; i < x->row.size(); ++i) {
        if (x->row[i].label != y->row[i].label) return false;
        if (!unify(delta, x->row[i].ty, y->row[i].ty, k->a)) return false;
      }
      return true;
    }
    case TT::Sing: return kindEq(x->kind, y->kind) && unify(delta, x->a, y->a, x->kind);
    case TT::LabRow:
      return k->tag == Kind::Row && unify(delta, x->a, y->a, kLabel()) && unify(delta, x->b, y->b, k->a);
    case TT::Map: {
      size_t m = ms_.mark();
      if (kindEq(x->kind, y->kind) && unify(delta, x->a, y->a, x->kind) &&
          unify(delta, x->b, y->b, kRow(x->kind->a)))
        return true;
      ms_.rollback(m);
      // f (?m) against g r: try ?m := h r, so that f . h must equal g.
      auto compose = [&](const TypeP& mx, const TypeP& my) {
        if (mx->b->tag != TT::Meta) return false;
        const MetaInfo mi = ms_.info(mx->b->ix);
        KindP hk = kArrow(my->kind->a, mx->kind->a);
        TypeP h = tMeta(ms_.fresh(hk, mi.depth), mx->b->lift);
        return unify(delta, mx->b, tMap(h, my->b, hk), kRow(mx->kind->a)) && unify(delta, mx, my, k);
      };
      if (compose(x, y)) return true;
      ms_.rollback(m);
      if (compose(y, x)) return true;
      ms_.rollback(m);
      return false;
    }
    case TT::Compl: return unify(delta, x->a, y->a, k) && unify(delta, x->b, y->b, k);
    default: return false;
  }
}

}  // namespace rome
