#include "elab.hpp"

namespace rome {

std::string Diagnostic::where() const { return std::to_string(line) + ":" + std::to_string(col); }

bool Elab::unify(const TypeP& x, const TypeP& y, const KindP& k) {
  size_t m = ms_.mark();
  if (un_.unify(ty_.kinds, x, y, k)) return true;
  ms_.rollback(m);
  return false;
}

std::vector<PredP> Elab::phiNow() const {
  std::vector<PredP> out;
  for (const auto& h : phi_) out.push_back(shift(h.p, 0, depth() - h.depth));
  return out;
}

void Elab::fail(const std::string& msg, Pos pos) const { throw TypeError(msg, pos.line, pos.col); }

void Elab::mismatch(const TypeP& got, const TypeP& want, Pos pos) const {
  fail("type mismatch: expected " + show(nf(want)) + ", found " + show(nf(got)), pos);
}

bool Elab::solvable(Goal& g, bool guess) {
  SolverEnv env;
  env.guess = guess;
  env.norm = ms_.ctx(g.delta);
  env.phi = g.phi;
  env.depth = prog_.entailDepth;
  env.nf = [&](const TypeP& t, const KindP& k) { return ms_.nf(g.delta, t, k); };
  env.equate = [&](const TypeP& x, const TypeP& y, const KindP& k) {
    size_t m = ms_.mark();
    if (un_.unify(g.delta, x, y, k)) return true;
    ms_.rollback(m);
    return false;
  };
  env.mark = [&]() { return ms_.mark(); };
  env.rollback = [&](size_t m) { ms_.rollback(m); };
  SolveResult r = solve(env, g.pred);
  if (r.status == SolveStatus::Solved) {
    g.sol = r.ev;
    return true;
  }
  if (r.status == SolveStatus::Failed) {
    std::vector<std::string> ns;
    for (size_t i = 0; i < g.delta.size(); ++i) ns.push_back("");
    fail("cannot prove " + showPred(ms_.nf(g.delta, g.pred), ns), g.pos);
  }
  return false;
}

bool Elab::retryPostponed() {
  bool progress = false;
  for (size_t i = 0; i < postponed_.size();) {
    const Postponed& p = postponed_[i];
    size_t m = ms_.mark();
    if (un_.unify(p.delta, p.x, p.y, kStar())) {
      postponed_.erase(postponed_.begin() + (long)i);
      progress = true;
    } else {
      ms_.rollback(m);
      ++i;
    }
  }
  return progress;
}

void Elab::discharge(bool final) {
  auto round = [&](bool guess) {
    bool any = false;
    for (bool progress = true; progress;) {
      progress = retryPostponed();
      for (size_t i = 0; i < goals_.size(); ++i)
        if (!goals_[i].sol && solvable(goals_[i], guess)) progress = true;
      any = any || progress;
    }
    return any;
  };
  round(false);
  if (!final) return;
  while (round(true)) {
  }
  for (const auto& p : postponed_) {
    std::vector<std::string> ns(p.delta.size());
    fail("type mismatch: expected " + showType(ms_.nf(p.delta, p.y, kStar()), ns) + ", found " +
             showType(ms_.nf(p.delta, p.x, kStar()), ns),
         p.pos);
  }
  for (auto& g : goals_)
    if (!g.sol) {
      std::vector<std::string> ns(g.delta.size());
      fail("ambiguous predicate " + showPred(ms_.nf(g.delta, g.pred), ns) +
               "; add an explicit type argument [t] or a signature",
           g.pos);
    }
}

TypeP Elab::zonkNorm(const TypeP& t, const std::vector<KindP>& delta) const {
  TypeP z = ms_.zonk(t);
  KindP k = kindOf(delta, z, [this](int id) { return ms_.info(id).kind; });
  return normalize(ms_.ctx(delta), z, k);
}

EvP Elab::zonkEv(const EvP& e, const std::vector<KindP>& delta) const {
  if (!e) return e;
  if (e->tag == ET::Meta) {
    const Goal& g = goals_[e->ix];
    return g.sol ? zonkEv(g.sol, delta) : e;
  }
  auto n = std::make_shared<Evidence>(*e);
  n->a = zonkEv(e->a, delta);
  n->b = zonkEv(e->b, delta);
  for (auto& t : n->ann) t = zonkNorm(t, delta);
  return n;
}

TermP Elab::zonkTerm(const TermP& m, std::vector<KindP>& delta) const {
  auto n = std::make_shared<Term>(*m);
  if (m->ty) n->ty = m->tag == MT::Sing ? ms_.nf(delta, m->ty, m->kind) : zonkNorm(m->ty, delta);
  if (m->pred) n->pred = ms_.nf(delta, m->pred);
  if (m->ev) n->ev = zonkEv(m->ev, delta);
  if (m->a) {
    if (m->tag == MT::TyLam) delta.push_back(m->kind);
    n->a = zonkTerm(m->a, delta);
    if (m->tag == MT::TyLam) delta.pop_back();
  }
  if (m->b) n->b = zonkTerm(m->b, delta);
  for (auto& f : n->fields) f = zonkTerm(f, delta);
  if ((m->tag == MT::LabIntro || m->tag == MT::LabElim) && m->ix > 0) {
    TypeP f = ms_.zonk(tMeta(m->ix - 1, 0));
    if (f->tag == TT::Pi || f->tag == TT::Sigma) {
      n->flavor = f->tag == TT::Pi ? Flavor::Pi : Flavor::Sigma;
      n->ix = 0;
    }
  }
  return n;
}

namespace {
bool evHasMeta(const EvP& e) {
  if (!e) return false;
  if (e->tag == ET::Meta) return true;
  for (const auto& t : e->ann)
    if (hasMeta(t)) return true;
  return evHasMeta(e->a) || evHasMeta(e->b);
}
}  // namespace

void Elab::unresolved(const TermP& m, Pos pos) const {
  if ((m->tag == MT::LabIntro || m->tag == MT::LabElim) && m->ix > 0)
    fail(std::string("cannot tell whether '") + (m->tag == MT::LabIntro ? ":=" : "/") +
             "' works on a record or a variant; add a type signature",
         pos);
  if ((m->ty && hasMeta(m->ty)) || (m->pred && hasMeta(m->pred)) || evHasMeta(m->ev))
    fail("ambiguous type argument; add an explicit type argument [t] or a signature", pos);
  if (m->a) unresolved(m->a, pos);
  if (m->b) unresolved(m->b, pos);
  for (const auto& f : m->fields) unresolved(f, pos);
}

TermP Elab::finish(const TermP& m, Pos pos) {
  std::vector<KindP> delta = ty_.kinds;
  TermP t = zonkTerm(m, delta);
  unresolved(t, pos);
  return t;
}

TypeP Elab::elabType(const STypeP& t, const KindP& k) {
  KindChecker kc(prog_.synonyms);
  TypeP r = kc.finish(kc.check(t, ty_, k), t->pos);
  return nf(r, k);
}

// Elaborates a label argument; returns its label type.
TypeP Elab::label(const STermP& l, TermP& out) {
  Elaborated e = infer(l);
  TypeP t = nf(e.type);
  if (t->tag != TT::Sing || !kindEq(t->kind, kLabel())) {
    TypeP xi = freshMeta(kLabel());
    if (!unify(t, tSing(xi, kLabel()))) fail("expected a label singleton, found " + show(t), l->pos);
    t = nf(t);
  }
  out = e.term;
  return t->a;
}

}  // namespace rome
