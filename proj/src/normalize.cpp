#include <unordered_map>

#include "rome/kinding.hpp"
#include "rome/normalize.hpp"

namespace rome {

namespace {

struct Val;
using V = std::shared_ptr<const Val>;
// Semantic functions receive the depth of the context they are applied in.
using Fn = std::function<V(const V&, int)>;

enum class VT { Fun, Ne, Arrow, Forall, Qual, Sing, Label, PiStar, SigmaStar, Mu, RowLit, RowLab, RowMap, RowCompl };

struct Val {
  VT tag;
  Fn fn;       // Fun, Forall body, RowMap function
  KindP kind;  // Forall binder, Sing, RowMap function kind, RowCompl row kind
  bool metaHead = false;
  int head = 0;  // Ne: variable level, or meta id
  int base = 0;  // Ne with meta head: level count at the meta's scope
  std::vector<std::pair<V, KindP>> spine;
  V a, b;  // Arrow a->b; Qual body a; Sing a; PiStar/SigmaStar row a; Mu a; RowLab a:=b; RowMap base a; RowCompl a-b
  std::string name;
  std::vector<std::pair<std::string, V>> row;
  Pred::Tag ptag = Pred::Leq;
  V pa, pb, pc;
  KindP pkind;
};

std::shared_ptr<Val> mkv(VT tag) {
  auto v = std::make_shared<Val>();
  v->tag = tag;
  return v;
}

V vfun(Fn f) {
  auto v = mkv(VT::Fun);
  v->fn = std::move(f);
  return v;
}

V apply(const V& f, const V& x, int depth) {
  if (f->tag != VT::Fun) throw InternalError("type application of a non-function");
  return f->fn(x, depth);
}

V reflect(bool metaHead, int head, int base, std::vector<std::pair<V, KindP>> spine, const KindP& k) {
  if (k->tag == Kind::Meta) throw InternalError("normalize: unresolved kind");
  if (k->tag == Kind::Arrow) {
    return vfun([=](const V& x, int) {
      auto sp = spine;
      sp.emplace_back(x, k->a);
      return reflect(metaHead, head, base, std::move(sp), k->b);
    });
  }
  auto v = mkv(VT::Ne);
  v->metaHead = metaHead;
  v->head = head;
  v->base = base;
  v->spine = std::move(spine);
  return v;
}

V reflectVar(int level, const KindP& k) { return reflect(false, level, 0, {}, k); }

TypeP reify(const V& v, const KindP& k, int depth);

V mapRow(const V& f, const KindP& fk, const V& r, int depth);

// True when t mentions a variable bound outside its own binders.
bool open(const TypeP& t, int bound = 0) {
  if (!t) return false;
  switch (t->tag) {
    case TT::Var: return t->ix >= bound;
    case TT::Forall:
    case TT::Lam: return open(t->a, bound + 1);
    case TT::Qual: return open(t->pred->a, bound) || open(t->pred->b, bound) || open(t->pred->c, bound) ||
                          open(t->a, bound);
    case TT::Row:
      for (const auto& e : t->row)
        if (open(e.ty, bound)) return true;
      return false;
    default: return open(t->a, bound) || open(t->b, bound);
  }
}

V complRow(const V& a, const V& b, const KindP& rowKind, int depth) {
  if (a->tag == VT::RowLit && b->tag == VT::RowLit) {
    auto out = mkv(VT::RowLit);
    size_t j = 0;
    bool decided = true;
    for (const auto& [l, t] : a->row) {
      while (j < b->row.size() && labelLess(b->row[j].first, l)) ++j;
      bool drop = false;
      if (j < b->row.size() && b->row[j].first == l) {
        TypeP x = reify(t, rowKind->a, depth), y = reify(b->row[j].second, rowKind->a, depth);
        drop = typeEq(x, y);
        // Distinct open entries may become equal under substitution. Entries with metavariables
        // are provisional and revisited by unification, so they are compared as they stand.
        if (!drop && !hasMeta(x) && !hasMeta(y) && (open(x) || open(y))) decided = false;
      }
      if (!drop) out->row.emplace_back(l, t);
    }
    if (decided) return out;
  }
  auto v = mkv(VT::RowCompl);
  v->a = a;
  v->b = b;
  v->kind = rowKind;
  return v;
}

V mapRow(const V& f, const KindP& fk, const V& r, int depth) {
  switch (r->tag) {
    case VT::RowLit: {
      auto out = mkv(VT::RowLit);
      for (const auto& [l, t] : r->row) out->row.emplace_back(l, apply(f, t, depth));
      return out;
    }
    case VT::RowLab: {
      auto out = mkv(VT::RowLab);
      out->a = r->a;
      out->b = apply(f, r->b, depth);
      return out;
    }
    case VT::RowCompl:
      return complRow(mapRow(f, fk, r->a, depth), mapRow(f, fk, r->b, depth), kRow(fk->b), depth);
    case VT::RowMap: {
      auto out = mkv(VT::RowMap);
      Fn inner = r->fn, outer = f->fn;
      out->fn = [inner, outer](const V& x, int d) { return outer(inner(x, d), d); };
      out->kind = kArrow(r->kind->a, fk->b);
      out->a = r->a;
      return out;
    }
    case VT::Ne: {
      auto out = mkv(VT::RowMap);
      out->fn = f->fn;
      out->kind = fk;
      out->a = r;
      return out;
    }
    default: throw InternalError("map over a non-row");
  }
}

// Pi or Sigma at kind k applied to row r.
V liftFlavor(VT star, const KindP& k, const V& r, int depth) {
  switch (k->tag) {
    case Kind::Star: {
      auto v = mkv(star);
      v->a = r;
      return v;
    }
    case Kind::Arrow: {
      KindP fk = kArrow(k, k->b);
      return vfun([=](const V& x, int d) {
        V at = vfun([x](const V& f, int d2) { return apply(f, x, d2); });
        return liftFlavor(star, k->b, mapRow(at, fk, r, d), d);
      });
    }
    case Kind::Row: {
      KindP sub = k->a;
      V f = vfun([=](const V& x, int d) { return liftFlavor(star, sub, x, d); });
      return mapRow(f, kArrow(k, sub), r, depth);
    }
    default: throw InternalError("record or variant at a label or unresolved kind");
  }
}

using Env = std::vector<V>;  // back() is index 0

struct Evaluator {
  const NormCtx& ctx;

  V eval(const TypeP& t, const Env& env, int depth) const {
    switch (t->tag) {
      case TT::Var:
        if (t->ix >= (int)env.size()) throw InternalError("normalize: unbound type variable");
        return env[env.size() - 1 - t->ix];
      case TT::Meta: {
        if (!ctx.metaKind) throw InternalError("normalize: metavariable without kind lookup");
        int base = (int)env.size() - t->lift;
        if (base < 0) throw InternalError("normalize: metavariable lift exceeds scope");
        return reflect(true, t->ix, base, {}, ctx.metaKind(t->ix));
      }
      case TT::Arrow: {
        auto v = mkv(VT::Arrow);
        v->a = eval(t->a, env, depth);
        v->b = eval(t->b, env, depth);
        return v;
      }
      case TT::Pi:
      case TT::Sigma: {
        VT star = t->tag == TT::Pi ? VT::PiStar : VT::SigmaStar;
        KindP k = t->kind;
        return vfun([=](const V& r, int d) { return liftFlavor(star, k, r, d); });
      }
      case TT::Mu:
        return vfun([](const V& f, int) {
          auto v = mkv(VT::Mu);
          v->a = f;
          return v;
        });
      case TT::Forall: {
        auto v = mkv(VT::Forall);
        v->kind = t->kind;
        v->name = t->name;
        v->fn = closure(t->a, env);
        return v;
      }
      case TT::Lam: return vfun(closure(t->a, env));
      case TT::Qual: {
        auto v = mkv(VT::Qual);
        evalPredInto(*v, t->pred, env, depth);
        v->a = eval(t->a, env, depth);
        return v;
      }
      case TT::App: return apply(eval(t->a, env, depth), eval(t->b, env, depth), depth);
      case TT::Row: {
        auto v = mkv(VT::RowLit);
        for (const auto& e : t->row) v->row.emplace_back(e.label, eval(e.ty, env, depth));
        return v;
      }
      case TT::Label: {
        auto v = mkv(VT::Label);
        v->name = t->name;
        return v;
      }
      case TT::Sing: {
        auto v = mkv(VT::Sing);
        v->a = eval(t->a, env, depth);
        v->kind = t->kind;
        return v;
      }
      case TT::LabRow: {
        V l = eval(t->a, env, depth);
        V x = eval(t->b, env, depth);
        if (l->tag == VT::Label) {
          auto v = mkv(VT::RowLit);
          v->row.emplace_back(l->name, x);
          return v;
        }
        auto v = mkv(VT::RowLab);
        v->a = l;
        v->b = x;
        return v;
      }
      case TT::Map:
        if (!t->kind) throw InternalError("normalize: map without function kind");
        return mapRow(eval(t->a, env, depth), t->kind, eval(t->b, env, depth), depth);
      case TT::Compl:
        if (!t->kind) throw InternalError("normalize: complement without row kind");
        return complRow(eval(t->a, env, depth), eval(t->b, env, depth), t->kind, depth);
    }
    throw InternalError("normalize: unknown type");
  }

  Fn closure(const TypeP& body, const Env& env) const {
    const Evaluator* self = this;
    return [self, body, env](const V& x, int d) {
      Env e = env;
      e.push_back(x);
      return self->eval(body, e, d);
    };
  }

  void evalPredInto(Val& v, const PredP& p, const Env& env, int depth) const {
    if (!p->kind) throw InternalError("normalize: predicate without row kind");
    v.ptag = p->tag;
    v.pkind = p->kind;
    v.pa = eval(p->a, env, depth);
    v.pb = eval(p->b, env, depth);
    if (p->c) v.pc = eval(p->c, env, depth);
  }
};

TypeP reifyNe(const Val& v, int depth) {
  TypeP h = v.metaHead ? tMeta(v.head, depth - v.base) : tVar(depth - 1 - v.head);
  for (const auto& [x, k] : v.spine) h = tApp(h, reify(x, k, depth));
  return h;
}

PredP reifyPred(const Val& v, int depth) {
  TypeP a = reify(v.pa, v.pkind, depth), b = reify(v.pb, v.pkind, depth);
  if (v.ptag == Pred::Leq) return pLeq(a, b, v.pkind);
  return pPlus(a, b, reify(v.pc, v.pkind, depth), v.pkind);
}

bool isIdentity(const TypeP& fn, const KindP& fk, int depth) {
  if (!kindEq(fk->a, fk->b)) return false;
  TypeP id = reify(vfun([](const V& x, int) { return x; }), fk, depth);
  return typeEq(fn, id);
}

TypeP reify(const V& v, const KindP& k, int depth) {
  if (k->tag == Kind::Meta) throw InternalError("normalize: unresolved kind");
  if (k->tag == Kind::Arrow) {
    V body = apply(v, reflectVar(depth, k->a), depth + 1);
    return tLam(k->a, reify(body, k->b, depth + 1));
  }
  switch (v->tag) {
    case VT::Ne: return reifyNe(*v, depth);
    case VT::Arrow: return tArrow(reify(v->a, kStar(), depth), reify(v->b, kStar(), depth));
    case VT::Forall: {
      V body = v->fn(reflectVar(depth, v->kind), depth + 1);
      return tForall(v->kind, reify(body, kStar(), depth + 1), v->name);
    }
    case VT::Qual: return tQual(reifyPred(*v, depth), reify(v->a, kStar(), depth));
    case VT::Sing: return tSing(reify(v->a, v->kind, depth), v->kind);
    case VT::Label: return tLabel(v->name);
    case VT::PiStar: return tApp(tPi(kStar()), reify(v->a, kRow(kStar()), depth));
    case VT::SigmaStar: return tApp(tSigma(kStar()), reify(v->a, kRow(kStar()), depth));
    case VT::Mu: return tApp(tMu(), reify(v->a, kArrow(kStar(), kStar()), depth));
    case VT::RowLit: {
      if (k->tag != Kind::Row) throw InternalError("normalize: row at a non-row kind");
      std::vector<RowEntry> es;
      for (const auto& [l, t] : v->row) es.push_back({l, reify(t, k->a, depth)});
      return tRow(std::move(es));
    }
    case VT::RowLab:
      if (k->tag != Kind::Row) throw InternalError("normalize: row at a non-row kind");
      return tLabRow(reify(v->a, kLabel(), depth), reify(v->b, k->a, depth));
    case VT::RowMap: {
      TypeP fn = reify(vfun(v->fn), v->kind, depth);
      if (isIdentity(fn, v->kind, depth)) return reifyNe(*v->a, depth);
      return tMap(fn, reifyNe(*v->a, depth), v->kind);
    }
    case VT::RowCompl: return tCompl(reify(v->a, v->kind, depth), reify(v->b, v->kind, depth), v->kind);
    case VT::Fun: throw InternalError("normalize: function at a non-arrow kind");
  }
  throw InternalError("normalize: unknown value");
}

Env identityEnv(const NormCtx& ctx) {
  Env env;
  int n = (int)ctx.delta.size();
  // level i is index n-1-i, i.e. delta[i]
  for (int i = 0; i < n; ++i) env.push_back(reflectVar(i, ctx.delta[i]));
  return env;
}

}  // namespace

TypeP normalize(const NormCtx& ctx, const TypeP& t, const KindP& k) {
  Evaluator ev{ctx};
  int depth = (int)ctx.delta.size();
  return reify(ev.eval(t, identityEnv(ctx), depth), k, depth);
}

PredP normalizePred(const NormCtx& ctx, const PredP& p) {
  Evaluator ev{ctx};
  int depth = (int)ctx.delta.size();
  Val v;
  v.tag = VT::Qual;
  ev.evalPredInto(v, p, identityEnv(ctx), depth);
  return reifyPred(v, depth);
}

bool typeEqual(const NormCtx& ctx, const TypeP& x, const TypeP& y, const KindP& k) {
  return typeEq(normalize(ctx, x, k), normalize(ctx, y, k));
}

bool predEqual(const NormCtx& ctx, const PredP& x, const PredP& y) {
  return predEq(normalizePred(ctx, x), normalizePred(ctx, y));
}

bool isNormal(const NormCtx& ctx, const TypeP& t, const KindP& k) { return typeEq(normalize(ctx, t, k), t); }

namespace {

size_t mix(size_t h, size_t x) { return h ^ (x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

size_t kindHash(const KindP& k) {
  if (!k) return 1;
  size_t h = mix(7, (size_t)k->tag);
  if (k->a) h = mix(h, kindHash(k->a));
  if (k->b) h = mix(h, kindHash(k->b));
  return h;
}

size_t typeHash(const TypeP& t) {
  if (!t) return 3;
  size_t h = mix(mix(mix(11, (size_t)t->tag), (size_t)t->ix), kindHash(t->kind));
  if (t->tag == TT::Label) h = mix(h, std::hash<std::string>()(t->name));
  h = mix(mix(h, typeHash(t->a)), typeHash(t->b));
  if (t->pred) h = mix(mix(mix(h, typeHash(t->pred->a)), typeHash(t->pred->b)), typeHash(t->pred->c));
  for (const auto& e : t->row) h = mix(mix(h, std::hash<std::string>()(e.label)), typeHash(e.ty));
  return h;
}

}  // namespace

ClosedNormal normalizeClosed(const TypeP& t) {
  struct Entry {
    TypeP key;  // keeps the node alive
    ClosedNormal nf;
  };
  // By identity first, then by structure: substitution rebuilds equal types as new nodes.
  thread_local std::unordered_map<const Type*, Entry> byNode;
  thread_local std::unordered_multimap<size_t, Entry> byShape;
  auto it = byNode.find(t.get());
  if (it != byNode.end()) return it->second.nf;
  if (byNode.size() > 200000) byNode.clear(), byShape.clear();
  size_t h = typeHash(t);
  auto [lo, hi] = byShape.equal_range(h);
  for (auto s = lo; s != hi; ++s)
    if (typeEq(s->second.key, t)) {
      byNode.emplace(t.get(), Entry{t, s->second.nf});
      return s->second.nf;
    }
  KindP k = kindOf({}, t);
  ClosedNormal nf{k, normalize(NormCtx{}, t, k)};
  byShape.emplace(h, Entry{t, nf});
  byNode.emplace(t.get(), Entry{t, nf});
  byNode.emplace(nf.type.get(), Entry{nf.type, nf});
  return nf;
}

std::vector<RowEntry> subtract(const std::vector<RowEntry>& big, const std::vector<RowEntry>& small,
                               const std::function<bool(const TypeP&, const TypeP&)>& same) {
  std::vector<RowEntry> out;
  size_t j = 0;
  for (const auto& e : big) {
    while (j < small.size() && labelLess(small[j].label, e.label)) ++j;
    bool drop = j < small.size() && small[j].label == e.label && same(e.ty, small[j].ty);
    if (!drop) out.push_back(e);
  }
  return out;
}

}  // namespace rome
