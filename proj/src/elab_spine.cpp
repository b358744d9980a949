#include <algorithm>
#include <map>

#include "elab.hpp"

namespace rome {

namespace {

const std::map<std::string, Konst>& constants() {
  static const std::map<std::string, Konst> m = {{"prj", Konst::Prj}, {"inj", Konst::Inj}, {"syn", Konst::Syn},
                                                 {"ana", Konst::Ana}, {"in", Konst::In},   {"out", Konst::Out},
                                                 {"fix", Konst::Fix}};
  return m;
}

}  // namespace

KindP Elab::synKind(const Arg& first) {
  if (!first.term) fail("syn and ana take a #f argument first", first.pos);
  if (first.term->tag == SM::Sing) {
    KindChecker kc(prog_.synonyms);
    KindP k;
    TypeP t = kc.infer(first.term->ty, ty_, k);
    KindP kap = kc.fresh();
    if (!kc.unify(k, kArrow(kap, kStar())))
      fail("the first argument of syn and ana must have kind k -> *", first.pos);
    kc.finish(t, first.pos);
    return kc.finish(kc.zonk(kap), first.pos);
  }
  TypeP t = nf(infer(first.term).type);
  if (t->tag != TT::Sing || t->kind->tag != Kind::Arrow || !kindEq(t->kind->b, kStar()))
    fail("the first argument of syn and ana must be a singleton #f with f : k -> *", first.pos);
  return t->kind->a;
}

Elaborated Elab::head(const STermP& h, const std::vector<Arg>& args) {
  if (h->tag != SM::Var) return infer(h);
  for (size_t i = gamma_.size(); i-- > 0;) {
    const Var& v = gamma_[i];
    if (v.name == h->name) {
      int ix = (int)(gamma_.size() - 1 - i);
      return {mVar(ix, v.name), shift(v.type, 0, depth() - v.depth)};
    }
  }
  auto c = constants().find(h->name);
  if (c != constants().end()) {
    KindP kappa;
    if (c->second == Konst::Syn || c->second == Konst::Ana) {
      if (args.empty()) fail(h->name + " needs its #f argument", h->pos);
      kappa = synKind(args[0]);
    }
    return {mConst(c->second, kappa), constScheme(c->second, kappa)};
  }
  if (const GlobalEntry* g = prog_.lookup(h->name)) return {mGlobal(prog_.slots.at(h->name), h->name), g->type};
  fail("unbound variable '" + h->name + "'", h->pos);
}

Elaborated Elab::spine(const STermP& m, const TypeP& expected) {
  std::vector<Arg> args;
  STermP h = m;
  for (;;) {
    if (h->tag == SM::App) {
      args.push_back({h->b, nullptr, h->b->pos});
    } else if (h->tag == SM::TyApp) {
      args.push_back({nullptr, h->ty, h->pos});
    } else {
      break;
    }
    h = h->a;
  }
  std::reverse(args.begin(), args.end());
  Elaborated hd;
  if (h->tag == SM::Concat || h->tag == SM::Branch) {
    Konst k = h->tag == SM::Concat ? Konst::Concat : Konst::Branch;
    args.insert(args.begin(), {{h->a, nullptr, h->a->pos}, {h->b, nullptr, h->b->pos}});
    hd = {mConst(k), constScheme(k)};
  } else {
    hd = head(h, args);
  }

  struct Op {
    enum { Ty, Ev, Tm } tag;
    TypeP t;
    EvP e;
    size_t arg = 0;
  };
  std::vector<Op> ops;
  std::vector<TypeP> doms(args.size());
  std::vector<TermP> terms(args.size());
  // Checks the collected arguments before index `upto`, lambdas last.
  auto checkArgs = [&](size_t upto) {
    for (int lam = 0; lam < 2; ++lam)
      for (size_t i = 0; i < upto; ++i) {
        if (!doms[i] || terms[i] || (args[i].term->tag == SM::Lam) != (lam == 1)) continue;
        discharge(false);
        TypeP d = nf(doms[i]);
        TypeP dh = d;
        while (dh->tag == TT::App) dh = dh->a;
        if (dh->tag == TT::Meta && dh != d && !lam) {
          // The expected type waits on other constraints: infer, and compare again later.
          Elaborated e = infer(args[i].term);
          if (!unify(e.type, d)) postponed_.push_back({e.type, d, ty_.kinds, args[i].pos});
          terms[i] = e.term;
          continue;
        }
        terms[i] = check(args[i].term, d).term;
      }
  };
  size_t ai = 0;
  TypeP t = hd.type;
  for (;;) {
    t = nf(t);
    if (t->tag == TT::Forall) {
      TypeP x;
      if (ai < args.size() && args[ai].type) {
        x = elabType(args[ai].type, t->kind);
        ++ai;
      } else {
        x = freshMeta(t->kind);
      }
      ops.push_back({Op::Ty, x, nullptr});
      t = substType(t->a, x);
      continue;
    }
    if (t->tag == TT::Qual) {
      goals_.push_back({t->pred, ty_.kinds, phiNow(), h->pos, nullptr});
      ops.push_back({Op::Ev, nullptr, eMeta((int)goals_.size() - 1)});
      t = t->a;
      continue;
    }
    if (ai == args.size()) break;
    if (args[ai].type) fail("unexpected type argument for a term of type " + show(t), args[ai].pos);
    if (t->tag == TT::Arrow) {
      doms[ai] = t->a;
      ops.push_back({Op::Tm, nullptr, nullptr, ai});
      t = t->b;
      ++ai;
      continue;
    }
    TypeP th = t;
    while (th->tag == TT::App) th = th->a;
    if (th->tag == TT::Meta) {
      checkArgs(ai);
      discharge(false);
      TypeP z = nf(t);
      if (z->tag == TT::Meta) unify(z, tArrow(freshMeta(kStar()), freshMeta(kStar())));
      if (!typeEq(nf(t), t)) continue;
    }
    fail("applied to too many arguments: function has type " + show(t), args[ai].pos);
  }

  bool early = false;
  if (expected) early = unify(t, expected);
  checkArgs(args.size());
  if (expected && !early && !unify(t, expected)) mismatch(t, expected, m->pos);

  TermP out = hd.term;
  for (const auto& op : ops) {
    if (op.tag == Op::Ty) out = mTyApp(out, op.t);
    else if (op.tag == Op::Ev) out = mEvApp(out, op.e);
    else out = mApp(out, terms[op.arg]);
  }
  return {out, expected ? expected : t};
}

}  // namespace rome
