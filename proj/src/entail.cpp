#include "rome/entail.hpp"

namespace rome {

namespace {

struct Fact {
  PredP p;
  EvP ev;
};

class Solver {
 public:
  explicit Solver(const SolverEnv& env) : env_(env) {}

  SolveResult run(const PredP& goal) {
    PredP g = nfPred(goal);
    collectMaps(g);
    buildFacts();
    EvP ev = go(g, env_.depth);
    if (ev) return {SolveStatus::Solved, ev};
    PredP z = nfPred(goal);
    return {hasMeta(z) ? SolveStatus::Stuck : SolveStatus::Failed, nullptr};
  }

 private:
  const SolverEnv& env_;
  std::vector<Fact> facts_;
  std::vector<TypeP> maps_;
  bool ambiguous_ = false;  // several hypotheses matched and guessing is off  // map nodes seen in the goal, for lifting hypotheses

  TypeP nf(const TypeP& t, const KindP& k) const {
    return env_.nf ? env_.nf(t, k) : normalize(env_.norm, t, k);
  }
  PredP nfPred(const PredP& p) const {
    TypeP a = nf(p->a, p->kind), b = nf(p->b, p->kind);
    if (p->tag == Pred::Leq) return pLeq(a, b, p->kind);
    return pPlus(a, b, nf(p->c, p->kind), p->kind);
  }
  bool equate(const TypeP& x, const TypeP& y, const KindP& k) const {
    if (env_.equate) return env_.equate(x, y, k);
    return typeEqual(env_.norm, x, y, k);
  }
  size_t mark() const { return env_.mark ? env_.mark() : 0; }
  void rollback(size_t m) const {
    if (env_.rollback) env_.rollback(m);
  }
  // Runs f; on failure undoes any metavariable solutions it made.
  template <class F>
  EvP attempt(F&& f) {
    size_t m = mark();
    EvP r = f();
    if (!r) rollback(m);
    return r;
  }

  void collectMaps(const PredP& p) {
    for (const auto& t : {p->a, p->b, p->c})
      if (t && t->tag == TT::Map) {
        bool seen = false;
        for (const auto& m : maps_) seen = seen || typeEq(m->a, t->a);
        if (!seen) maps_.push_back(t);
      }
  }

  void addFact(const PredP& p, const EvP& ev) {
    PredP n = nfPred(p);
    for (const auto& f : facts_)
      if (predEq(f.p, n)) return;
    facts_.push_back({n, ev});
  }

  void upward(size_t from) {
    size_t end = facts_.size();
    for (size_t i = from; i < end; ++i) {
      Fact f = facts_[i];
      const PredP& p = f.p;
      if (p->tag == Pred::Plus) {
        addFact(pLeq(p->a, p->c, p->kind), eNode(ET::PlusL, {p->b}, f.ev));
        addFact(pLeq(p->b, p->c, p->kind), eNode(ET::PlusR, {p->a}, f.ev));
      } else {
        TypeP rest = tCompl(p->b, p->a, p->kind);
        addFact(pPlus(p->a, rest, p->b, p->kind), eNode(ET::ComplR, {p->a, p->b}, f.ev));
        addFact(pPlus(rest, p->a, p->b, p->kind), eNode(ET::ComplL, {p->a, p->b}, f.ev));
      }
    }
  }

  void buildFacts() {
    int n = (int)env_.phi.size();
    for (int i = 0; i < n; ++i) addFact(env_.phi[i], eVar(n - 1 - i));
    upward(0);
    upward(0);
    size_t base = facts_.size();
    for (const auto& m : maps_) {
      const KindP& fk = m->kind;
      for (size_t i = 0; i < base; ++i) {
        Fact f = facts_[i];
        if (!kindEq(f.p->kind, kRow(fk->a))) continue;
        KindP rk = kRow(fk->b);
        auto lift = [&](const TypeP& t) { return tMap(m->a, t, fk); };
        if (f.p->tag == Pred::Leq)
          addFact(pLeq(lift(f.p->a), lift(f.p->b), rk), eNode(ET::LeqMap, {m->a, f.p->a, f.p->b}, f.ev));
        else
          addFact(pPlus(lift(f.p->a), lift(f.p->b), lift(f.p->c), rk),
                  eNode(ET::PlusMap, {m->a, f.p->a, f.p->b, f.p->c}, f.ev));
      }
    }
  }

  static bool isMeta(const TypeP& t) { return t->tag == TT::Meta; }
  static bool isLit(const TypeP& t) { return t->tag == TT::Row; }
  static bool isEmpty(const TypeP& t) { return t->tag == TT::Row && t->row.empty(); }

  EvP go(const PredP& g0, int depth) {
    PredP g = nfPred(g0);
    return g->tag == Pred::Leq ? leq(g, depth) : plus(g, depth);
  }

  // Locates each entry of small in big, equating the types.
  std::optional<IndexMap> locate(const TypeP& small, const TypeP& big, const KindP& rk) {
    IndexMap p;
    size_t j = 0;
    for (const auto& e : small->row) {
      while (j < big->row.size() && big->row[j].label != e.label) ++j;
      if (j == big->row.size()) return std::nullopt;
      if (!equate(e.ty, big->row[j].ty, rk->a)) return std::nullopt;
      p.push_back((int)j++);
    }
    return p;
  }

  EvP matchFact(const PredP& g, bool unify) {
    std::vector<const Fact*> candidates;
    for (const auto& f : facts_) {
      if (f.p->tag != g->tag) continue;
      if (!kindEq(f.p->kind, g->kind)) continue;
      if (!unify) {
        if (predEq(f.p, g)) return f.ev;
        continue;
      }
      candidates.push_back(&f);
    }
    if (!unify) return nullptr;
    // Without guessing, an unknown containing row is left for the caller to determine.
    if (!env_.guess && hasMeta(g->tag == Pred::Leq ? g->b : g->c)) return nullptr;
    auto tryFact = [&](const Fact* f) {
      return attempt([&]() -> EvP {
        bool ok = equate(g->a, f->p->a, g->kind) && equate(g->b, f->p->b, g->kind) &&
                  (g->tag == Pred::Leq || equate(g->c, f->p->c, g->kind));
        return ok ? f->ev : nullptr;
      });
    };
    // Complement facts restate other facts, so they only count when nothing else matches.
    auto derived = [](const Fact* f) { return f->ev->tag == ET::ComplR || f->ev->tag == ET::ComplL; };
    const Fact* found = nullptr;
    int matches = 0;
    for (int pass = 0; pass < 2 && !found; ++pass)
      for (const Fact* f : candidates) {
        if (derived(f) != (pass == 1)) continue;
        size_t m = mark();
        if (tryFact(f)) {
          if (!found) found = f;
          ++matches;
        }
        rollback(m);
      }
    if (!found) return nullptr;
    if (matches > 1 && !env_.guess) {
      ambiguous_ = true;
      return nullptr;
    }
    return tryFact(found);
  }

  EvP leq(const PredP& g, int depth) {
    const KindP& rk = g->kind;
    const TypeP &a = g->a, &b = g->b;
    if (isLit(a) && isLit(b)) {
      return attempt([&]() -> EvP {
        auto p = locate(a, b, rk);
        return p ? eIncl(*p) : nullptr;
      });
    }
    if (typeEq(a, b)) return eNode(ET::Refl, {a});
    if (isEmpty(a)) return eNode(ET::PlusL, {b}, eNode(ET::EmptyL, {b}));
    if (EvP f = matchFact(g, false)) return f;
    if (depth <= 0) return nullptr;
    if (a->tag == TT::Map && b->tag == TT::Map && typeEq(a->a, b->a)) {
      KindP inner = kRow(a->kind->a);
      if (EvP r = go(pLeq(a->b, b->b, inner), depth - 1)) return eNode(ET::LeqMap, {a->a, a->b, b->b}, r);
    }
    // Transitivity through a hypothesis ending at b.
    for (size_t i = 0; i < facts_.size(); ++i) {
      const Fact f = facts_[i];
      if (f.p->tag != Pred::Leq || !typeEq(f.p->b, b) || typeEq(f.p->a, a)) continue;
      if (EvP r = attempt([&] { return go(pLeq(a, f.p->a, rk), depth - 1); }))
        return eNode(ET::Trans, {f.p->a}, r, f.ev);
    }
    if (hasMeta(a) || hasMeta(b)) {
      if (EvP f = matchFact(g, true)) return f;
    }
    return nullptr;
  }

  EvP plus(const PredP& g, int depth) {
    const KindP& rk = g->kind;
    const TypeP &x = g->a, &y = g->b, &z = g->c;
    if (isLit(x) && isLit(y) && isLit(z)) {
      if (x->row.size() + y->row.size() != z->row.size()) return nullptr;
      return attempt([&]() -> EvP {
        auto p = locate(x, z, rk);
        if (!p) return nullptr;
        auto q = locate(y, z, rk);
        if (!q) return nullptr;
        for (int i : *p)
          for (int j : *q)
            if (i == j) return nullptr;
        return eComb(*p, *q);
      });
    }
    if (EvP f = matchFact(g, false)) return f;
    if (isEmpty(x))
      if (EvP r = attempt([&]() -> EvP { return equate(y, z, rk) ? eNode(ET::EmptyL, {z}) : nullptr; })) return r;
    if (isEmpty(y))
      if (EvP r = attempt([&]() -> EvP { return equate(x, z, rk) ? eNode(ET::EmptyR, {z}) : nullptr; })) return r;
    if (depth <= 0) return nullptr;
    // Complements against the whole.
    if (y->tag == TT::Compl && typeEq(y->a, z) && typeEq(y->b, x))
      if (EvP r = go(pLeq(x, z, rk), depth - 1)) return eNode(ET::ComplR, {x, z}, r);
    if (x->tag == TT::Compl && typeEq(x->a, z) && typeEq(x->b, y))
      if (EvP r = go(pLeq(y, z, rk), depth - 1)) return eNode(ET::ComplL, {y, z}, r);
    if (x->tag == TT::Map && y->tag == TT::Map && z->tag == TT::Map && typeEq(x->a, y->a) && typeEq(x->a, z->a)) {
      KindP inner = kRow(x->kind->a);
      if (EvP r = go(pPlus(x->b, y->b, z->b, inner), depth - 1))
        return eNode(ET::PlusMap, {x->a, x->b, y->b, z->b}, r);
    }
    if (hasMeta(x) || hasMeta(y) || hasMeta(z)) {
      if (EvP f = matchFact(g, true)) return f;
      if (ambiguous_) return nullptr;
      if (EvP r = improve(g, depth)) return r;
    }
    return nullptr;
  }

  // Solves a metavariable operand that is determined by the other two.
  EvP improve(const PredP& g, int depth) {
    const KindP& rk = g->kind;
    const TypeP &x = g->a, &y = g->b, &z = g->c;
    if (isMeta(y) && !isMeta(x) && !isMeta(z)) {
      return attempt([&]() -> EvP {
        if (!equate(y, tCompl(z, x, rk), rk)) return nullptr;
        if (isLit(x) && isLit(z)) return go(g, depth - 1);
        EvP r = go(pLeq(x, z, rk), depth - 1);
        return r ? eNode(ET::ComplR, {x, z}, r) : nullptr;
      });
    }
    if (isMeta(x) && !isMeta(y) && !isMeta(z)) {
      return attempt([&]() -> EvP {
        if (!equate(x, tCompl(z, y, rk), rk)) return nullptr;
        if (isLit(y) && isLit(z)) return go(g, depth - 1);
        EvP r = go(pLeq(y, z, rk), depth - 1);
        return r ? eNode(ET::ComplL, {y, z}, r) : nullptr;
      });
    }
    if (isMeta(z) && isLit(x) && isLit(y)) {
      std::vector<RowEntry> merged = x->row;
      for (const auto& e : y->row) {
        try {
          merged = rowInsertSorted(std::move(merged), e.label, e.ty);
        } catch (const std::invalid_argument&) {
          return nullptr;
        }
      }
      return attempt([&]() -> EvP { return equate(z, tRow(merged), rk) ? go(g, depth - 1) : nullptr; });
    }
    return nullptr;
  }
};

}  // namespace

SolveResult solve(const SolverEnv& env, const PredP& goal) { return Solver(env).run(goal); }

namespace {

struct Checker {
  const SolverEnv& env;

  TypeP nf(const TypeP& t, const KindP& k) const { return env.nf ? env.nf(t, k) : normalize(env.norm, t, k); }
  bool same(const TypeP& x, const TypeP& y, const KindP& k) const { return typeEq(nf(x, k), nf(y, k)); }
  bool samePred(const PredP& x, const PredP& y) const {
    if (x->tag != y->tag || !same(x->a, y->a, x->kind) || !same(x->b, y->b, x->kind)) return false;
    return x->tag == Pred::Leq || same(x->c, y->c, x->kind);
  }

  bool locates(const IndexMap& p, const TypeP& small, const TypeP& big, const KindP& elem) const {
    if (p.size() != small->row.size()) return false;
    for (size_t k = 0; k < p.size(); ++k) {
      if (p[k] < 0 || p[k] >= (int)big->row.size()) return false;
      if (k > 0 && p[k] <= p[k - 1]) return false;
      const RowEntry& e = big->row[p[k]];
      if (e.label != small->row[k].label || !typeEq(e.ty, small->row[k].ty)) return false;
    }
    (void)elem;
    return true;
  }

  bool check(const EvP& e, const PredP& p0) const {
    const KindP& rk = p0->kind;
    PredP p = p0->tag == Pred::Leq ? pLeq(nf(p0->a, rk), nf(p0->b, rk), rk)
                                   : pPlus(nf(p0->a, rk), nf(p0->b, rk), nf(p0->c, rk), rk);
    bool isLeq = p->tag == Pred::Leq;
    auto leq = [&](const TypeP& a, const TypeP& b) { return pLeq(a, b, rk); };
    auto pls = [&](const TypeP& a, const TypeP& b, const TypeP& c) { return pPlus(a, b, c, rk); };
    switch (e->tag) {
      case ET::Var: {
        int n = (int)env.phi.size();
        return e->ix < n && samePred(env.phi[n - 1 - e->ix], p);
      }
      case ET::Meta: return false;
      case ET::Incl:
        return isLeq && p->a->tag == TT::Row && p->b->tag == TT::Row && locates(e->p, p->a, p->b, rk->a);
      case ET::Comb: {
        if (isLeq || p->a->tag != TT::Row || p->b->tag != TT::Row || p->c->tag != TT::Row) return false;
        if (!locates(e->p, p->a, p->c, rk->a) || !locates(e->q, p->b, p->c, rk->a)) return false;
        if (e->p.size() + e->q.size() != p->c->row.size()) return false;
        for (int i : e->p)
          for (int j : e->q)
            if (i == j) return false;
        return true;
      }
      case ET::Refl: return isLeq && same(p->a, e->ann[0], rk) && same(p->b, e->ann[0], rk);
      case ET::Trans:
        return isLeq && check(e->a, leq(p->a, e->ann[0])) && check(e->b, leq(e->ann[0], p->b));
      case ET::PlusL: return isLeq && check(e->a, pls(p->a, e->ann[0], p->b));
      case ET::PlusR: return isLeq && check(e->a, pls(e->ann[0], p->a, p->b));
      case ET::EmptyL:
        return !isLeq && same(p->a, tRow({}), rk) && same(p->b, e->ann[0], rk) && same(p->c, e->ann[0], rk);
      case ET::EmptyR:
        return !isLeq && same(p->b, tRow({}), rk) && same(p->a, e->ann[0], rk) && same(p->c, e->ann[0], rk);
      case ET::ComplR: {
        const TypeP &x = e->ann[0], &z = e->ann[1];
        return !isLeq && samePred(p, pls(x, tCompl(z, x, rk), z)) && check(e->a, leq(x, z));
      }
      case ET::ComplL: {
        const TypeP &y = e->ann[0], &z = e->ann[1];
        return !isLeq && samePred(p, pls(tCompl(z, y, rk), y, z)) && check(e->a, leq(y, z));
      }
      case ET::LeqMap:
      case ET::PlusMap: {
        const TypeP& fn = e->ann[0];
        KindP fk = kindOfMapFn(fn, rk);
        if (!fk) return false;
        KindP inner = kRow(fk->a);
        auto lift = [&](const TypeP& t) { return tMap(fn, t, fk); };
        if (e->tag == ET::LeqMap)
          return isLeq && samePred(p, leq(lift(e->ann[1]), lift(e->ann[2]))) &&
                 check(e->a, pLeq(e->ann[1], e->ann[2], inner));
        return !isLeq && samePred(p, pls(lift(e->ann[1]), lift(e->ann[2]), lift(e->ann[3]))) &&
               check(e->a, pPlus(e->ann[1], e->ann[2], e->ann[3], inner));
      }
    }
    return false;
  }

  // The map function of a lifted predicate is a normal lambda whose binder gives the domain kind.
  static KindP kindOfMapFn(const TypeP& fn, const KindP& rk) {
    if (fn->tag != TT::Lam) return nullptr;
    return kArrow(fn->kind, rk->a);
  }
};

}  // namespace

bool checkEvidence(const SolverEnv& env, const EvP& e, const PredP& p) { return Checker{env}.check(e, p); }

}  // namespace rome
