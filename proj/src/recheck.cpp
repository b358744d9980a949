#include <map>
#include <unordered_map>

#include "rome/pretty.hpp"
#include "rome/typecheck.hpp"

namespace rome {

namespace {

class Rechecker {
 public:
  Rechecker(const Program& prog, Contexts ctx) : prog_(prog), ctx_(std::move(ctx)) {}

  // Subterms are shared between reduction steps, so types are cached by term identity and the
  // identities of the term-variable types in scope. Only used without type variables or hypotheses.
  TypeP type(const TermP& m) {
    if (!ctx_.delta.empty() || !ctx_.phi.empty()) return compute(m);
    Key key{m.get(), {}};
    key.gamma.reserve(ctx_.gamma.size());
    for (const auto& t : ctx_.gamma) key.gamma.push_back(t.get());
    auto& cache = sharedCache();
    auto it = cache.find(key);
    if (it != cache.end() && it->second.prog == &prog_ && it->second.globals == prog_.globals.size())
      return it->second.type;
    TypeP t = compute(m);
    if (cache.size() > 200000) cache.clear();
    cache[std::move(key)] = {m, ctx_.gamma, &prog_, prog_.globals.size(), t};
    return t;
  }

 private:
  struct Key {
    const Term* term;
    std::vector<const Type*> gamma;
    bool operator==(const Key& o) const { return term == o.term && gamma == o.gamma; }
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      size_t h = std::hash<const void*>()(k.term);
      for (const Type* t : k.gamma) h = h * 1000003u ^ std::hash<const void*>()(t);
      return h;
    }
  };
  struct Cached {
    TermP term;                // keeps the key alive
    std::vector<TypeP> gamma;  // likewise
    const Program* prog;
    size_t globals;
    TypeP type;
  };
  static std::unordered_map<Key, Cached, KeyHash>& sharedCache() {
    thread_local std::unordered_map<Key, Cached, KeyHash> cache;
    return cache;
  }

  TypeP compute(const TermP& m) {
    switch (m->tag) {
      case MT::Var:
        if (m->ix < 0 || m->ix >= (int)ctx_.gamma.size()) fail("unbound term variable");
        return ctx_.gamma[ctx_.gamma.size() - 1 - m->ix];
      case MT::Global:
        if (m->ix < 0 || m->ix >= (int)prog_.globals.size()) fail("unknown global '" + m->name + "'");
        return shift(prog_.globals[m->ix].type, 0, (int)ctx_.delta.size());
      case MT::Const: return nf(constScheme(m->k, m->kind));
      case MT::Lam: {
        star(m->ty);
        TypeP dom = nf(m->ty);
        ctx_.gamma.push_back(dom);
        TypeP body = type(m->a);
        ctx_.gamma.pop_back();
        return tArrow(dom, body);
      }
      case MT::App: {
        TypeP f = type(m->a);
        if (f->tag != TT::Arrow) fail("application of a term of type " + show(f));
        expect(type(m->b), f->a);
        return f->b;
      }
      case MT::TyLam: {
        Contexts saved = ctx_;
        ctx_.delta.push_back(m->kind);
        ctx_.deltaNames.push_back(m->name);
        for (auto& p : ctx_.phi) p = shift(p, 0, 1);
        for (auto& t : ctx_.gamma) t = shift(t, 0, 1);
        TypeP body = type(m->a);
        ctx_ = std::move(saved);
        return tForall(m->kind, body, m->name);
      }
      case MT::TyApp: {
        TypeP f = type(m->a);
        if (f->tag != TT::Forall) fail("type application of a term of type " + show(f));
        if (!kindEq(kind(m->ty), f->kind)) fail("type argument " + show(m->ty) + " has the wrong kind");
        if (!ctx_.delta.empty()) return nf(substType(f->a, m->ty));
        thread_local std::map<std::pair<const Type*, const Type*>, std::pair<std::vector<TypeP>, TypeP>> inst;
        auto key = std::make_pair(f.get(), m->ty.get());
        auto it = inst.find(key);
        if (it != inst.end()) return it->second.second;
        TypeP r = nf(substType(f->a, m->ty));
        if (inst.size() > 100000) inst.clear();
        inst[key] = {{f, m->ty}, r};
        return r;
      }
      case MT::EvLam: {
        checkPredKinds(ctx_.delta, m->pred);
        PredP p = normalizePred(norm(), m->pred);
        ctx_.phi.push_back(p);
        TypeP body = type(m->a);
        ctx_.phi.pop_back();
        return tQual(p, body);
      }
      case MT::EvApp: {
        TypeP f = type(m->a);
        if (f->tag != TT::Qual) fail("evidence application of a term of type " + show(f));
        if (ctx_.delta.empty() && ctx_.phi.empty()) {
          thread_local std::map<std::pair<const Evidence*, const Pred*>, std::pair<EvP, PredP>> proved;
          auto key = std::make_pair(m->ev.get(), f->pred.get());
          if (proved.count(key)) return f->a;
          SolverEnv env;
          if (!checkEvidence(env, m->ev, f->pred))
            fail("evidence " + showEvidence(m->ev) + " does not prove " + showPred(f->pred, ctx_.deltaNames));
          if (proved.size() > 100000) proved.clear();
          proved[key] = {m->ev, f->pred};
          return f->a;
        }
        SolverEnv env;
        env.norm = norm();
        env.phi = ctx_.phi;
        if (!checkEvidence(env, m->ev, f->pred))
          fail("evidence " + showEvidence(m->ev) + " does not prove " + showPred(f->pred, ctx_.deltaNames));
        return f->a;
      }
      case MT::Sing:
        if (!kindEq(kind(m->ty), m->kind)) fail("singleton annotation has the wrong kind");
        return tSing(ctx_.delta.empty() ? normalizeClosed(m->ty).type : normalize(norm(), m->ty, m->kind), m->kind);
      case MT::LabIntro: {
        TypeP xi = label(m->a);
        TypeP t = type(m->b);
        if (ctx_.delta.empty() && xi->tag == TT::Label) {
          // Closed labels are literals and t is normal, so the row is already normal.
          TypeP row = tRow({{xi->name, t}});
          if (!typeEq(normalizeClosed(m->ty).type, row))
            fail("label annotation " + show(m->ty) + " does not match " + show(row));
          return tApp(flavor(m->flavor), row);
        }
        TypeP row = tLabRow(xi, t);
        if (!typeEqual(norm(), m->ty, row, kRow(kStar())))
          fail("label annotation " + show(m->ty) + " does not match " + show(nfRow(row)));
        return nf(tApp(flavor(m->flavor), row));
      }
      case MT::LabElim: {
        TypeP xi = label(m->b);
        TypeP t = type(m->a);
        TypeP want = m->flavor == Flavor::Pi ? tPi(kStar()) : tSigma(kStar());
        if (t->tag != TT::App || t->a->tag != want->tag) fail("label elimination from a term of type " + show(t));
        TypeP r = t->b;
        if (r->tag == TT::LabRow && typeEq(r->a, xi)) return r->b;
        if (r->tag == TT::Row && r->row.size() == 1 && xi->tag == TT::Label && r->row[0].label == xi->name)
          return r->row[0].ty;
        fail("label elimination at " + show(xi) + " from a term of type " + show(t));
      }
      case MT::Record:
      case MT::Variant: {
        TypeP row = nfRow(m->ty);
        if (row->tag != TT::Row) fail("literal annotation is not a row literal");
        if (m->tag == MT::Record) {
          if (row->row.size() != m->fields.size()) fail("record literal has the wrong number of fields");
          for (size_t i = 0; i < m->fields.size(); ++i) expect(type(m->fields[i]), row->row[i].ty);
          return tApp(tPi(kStar()), row);
        }
        if (m->ix < 0 || m->ix >= (int)row->row.size()) fail("variant tag out of range");
        expect(type(m->a), row->row[m->ix].ty);
        return tApp(tSigma(kStar()), row);
      }
    }
    fail("unknown term");
  }

  const Program& prog_;
  Contexts ctx_;

  [[noreturn]] void fail(const std::string& msg) const { throw TypeError(msg, 0, 0); }
  NormCtx norm() const { return {ctx_.delta, nullptr}; }
  TypeP nf(const TypeP& t) const {
    return ctx_.delta.empty() ? normalizeClosed(t).type : normalize(norm(), t, kStar());
  }
  TypeP nfRow(const TypeP& t) const {
    return ctx_.delta.empty() ? normalizeClosed(t).type : normalize(norm(), t, kRow(kStar()));
  }
  KindP kind(const TypeP& t) const { return ctx_.delta.empty() ? normalizeClosed(t).kind : kindOf(ctx_.delta, t); }
  std::string show(const TypeP& t) const { return showType(t, ctx_.deltaNames); }
  static TypeP flavor(Flavor f) { return f == Flavor::Pi ? tPi(kStar()) : tSigma(kStar()); }

  void star(const TypeP& t) const {
    if (!kindEq(kind(t), kStar())) fail("annotation " + show(t) + " is not a type");
  }
  void expect(const TypeP& got, const TypeP& want) const {
    if (!typeEq(got, want)) fail("type mismatch: expected " + show(want) + ", found " + show(got));
  }
  TypeP label(const TermP& l) {
    TypeP t = type(l);
    if (t->tag != TT::Sing || !kindEq(t->kind, kLabel())) fail("expected a label singleton, found " + show(t));
    return t->a;
  }
};

}  // namespace

TypeP typeOf(const Program& prog, const Contexts& ctx, const TermP& m) {
  Contexts c = ctx;
  while (c.deltaNames.size() < c.delta.size()) c.deltaNames.insert(c.deltaNames.begin(), "");
  try {
    return Rechecker(prog, std::move(c)).type(m);
  } catch (const InternalError& e) {
    throw TypeError(std::string("ill-formed term: ") + e.what(), 0, 0);
  }
}

}  // namespace rome
