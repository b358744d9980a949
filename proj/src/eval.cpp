#include "rome/eval.hpp"

#include <algorithm>
#include <unordered_map>

#include "rome/pretty.hpp"

namespace rome {

namespace {

struct Arg {
  enum Tag { Ty, Ev, Tm } tag;
  TypeP ty;
  EvP ev;
  TermP tm;
};

struct Spine {
  TermP head;
  std::vector<Arg> args;  // innermost first
};

Spine unwind(TermP m) {
  Spine s;
  for (;;) {
    if (m->tag == MT::App) s.args.push_back({Arg::Tm, nullptr, nullptr, m->b});
    else if (m->tag == MT::TyApp) s.args.push_back({Arg::Ty, m->ty, nullptr, nullptr});
    else if (m->tag == MT::EvApp) s.args.push_back({Arg::Ev, nullptr, m->ev, nullptr});
    else break;
    m = m->a;
  }
  s.head = m;
  std::reverse(s.args.begin(), s.args.end());
  return s;
}

TermP apply(TermP m, const Arg& a) {
  switch (a.tag) {
    case Arg::Ty: return mTyApp(std::move(m), a.ty);
    case Arg::Ev: return mEvApp(std::move(m), a.ev);
    case Arg::Tm: return mApp(std::move(m), a.tm);
  }
  return m;
}

TermP rebuild(TermP head, const std::vector<Arg>& args, size_t from = 0) {
  for (size_t i = from; i < args.size(); ++i) head = apply(std::move(head), args[i]);
  return head;
}

// Argument shape of each constant: T type, E evidence, M term.
const char* arity(Konst k) {
  switch (k) {
    case Konst::Prj: return "TTEM";
    case Konst::Concat: return "TTTEMM";
    case Konst::Inj: return "TTEM";
    case Konst::Branch: return "TTTTEMMM";
    case Konst::Syn: return "TTMM";
    case Konst::Ana: return "TTTMMM";
    case Konst::In: return "TM";
    case Konst::Out: return "TM";
    case Konst::Fix: return "TM";
  }
  return "";
}

const KindP& rowStar() {
  static const KindP k = kRow(kStar());
  return k;
}

TypeP closedNormal(const TypeP& t, const KindP& k) { return normalize(NormCtx{}, t, k); }

// Spine type arguments repeat across steps, so closed normal forms are memoized.
TypeP closedNormal(const TypeP& t) { return normalizeClosed(t).type; }

const std::vector<RowEntry>& literalRow(const TypeP& t, const char* what) {
  if (t->tag != TT::Row) throw StuckTerm(std::string(what) + ": row is not a literal: " + showType(t));
  return t->row;
}

bool argValue(const Arg& a) {
  switch (a.tag) {
    case Arg::Ty: return true;
    case Arg::Ev: return isEvidenceValue(a.ev);
    case Arg::Tm: return isValue(a.tm);
  }
  return false;
}

}  // namespace

bool isValue(const TermP& m) {
  switch (m->tag) {
    case MT::Lam:
    case MT::TyLam:
    case MT::EvLam:
    case MT::Sing: return true;
    case MT::Record:
      for (const auto& f : m->fields)
        if (!isValue(f)) return false;
      return true;
    case MT::Variant: return isValue(m->a);
    case MT::App:
    case MT::TyApp:
    case MT::EvApp:
    case MT::Const: {
      Spine s = unwind(m);
      if (s.head->tag != MT::Const) return false;
      std::string shape = arity(s.head->k);
      bool full = s.args.size() >= shape.size();
      if (full && s.head->k != Konst::In) return false;
      if (s.args.size() > shape.size()) return false;
      for (size_t i = 0; i < s.args.size(); ++i) {
        if ("TEM"[s.args[i].tag] != shape[i] || !argValue(s.args[i])) return false;
      }
      return true;
    }
    default: return false;
  }
}

namespace {

std::optional<Step> stepIn(const Program& prog, const TermP& m);

// Steps a subterm and plugs the result back with `plug`.
template <class F>
std::optional<Step> inside(const Program& prog, const TermP& sub, F plug) {
  auto s = stepIn(prog, sub);
  if (!s) throw StuckTerm("stuck subterm: " + showTerm(sub));
  s->term = plug(s->term);
  return s;
}

TermP labelTerm(const std::string& l) { return mSing(tLabel(l), kLabel()); }

// V [l_i] [t_i] {Incl (0 -> i)} #l_i, the field or case body for entry i of a literal row.
TermP instantiate(const TermP& body, const std::vector<RowEntry>& row, int i) {
  TermP m = mTyApp(body, tLabel(row[i].label));
  m = mTyApp(m, row[i].ty);
  m = mEvApp(m, eIncl({i}));
  return mApp(m, labelTerm(row[i].label));
}

TermP delta(Konst k, const std::vector<Arg>& a) {
  switch (k) {
    case Konst::Prj: {
      const auto& y = literalRow(a[0].ty, "prj");
      const TermP& r = a[3].tm;
      if (r->tag != MT::Record || a[2].ev->tag != ET::Incl) throw StuckTerm("prj: malformed arguments");
      const IndexMap& p = a[2].ev->p;
      if (p.size() != y.size()) throw StuckTerm("prj: evidence does not match row");
      std::vector<TermP> fs;
      for (int j : p) fs.push_back(r->fields.at(j));
      return mRecord(a[0].ty, std::move(fs));
    }
    case Konst::Concat: {
      const auto& z = literalRow(a[2].ty, "++");
      const TermP &r1 = a[4].tm, &r2 = a[5].tm;
      const EvP& e = a[3].ev;
      if (r1->tag != MT::Record || r2->tag != MT::Record || e->tag != ET::Comb)
        throw StuckTerm("++: malformed arguments");
      std::vector<TermP> fs;
      for (int i = 0; i < (int)z.size(); ++i) {
        auto pk = pickIndex(e->p, e->q, i);
        fs.push_back(pk.index() == 0 ? r1->fields.at(std::get<0>(pk)) : r2->fields.at(std::get<1>(pk)));
      }
      return mRecord(a[2].ty, std::move(fs));
    }
    case Konst::Inj: {
      const TermP& v = a[3].tm;
      if (v->tag != MT::Variant || a[2].ev->tag != ET::Incl) throw StuckTerm("inj: malformed arguments");
      return mVariant(a[1].ty, a[2].ev->p.at(v->ix), v->a);
    }
    case Konst::Branch: {
      const TermP& v = a[7].tm;
      const EvP& e = a[4].ev;
      if (v->tag != MT::Variant || e->tag != ET::Comb) throw StuckTerm("|: malformed arguments");
      auto pk = pickIndex(e->p, e->q, v->ix);
      if (pk.index() == 0) return mApp(a[5].tm, mVariant(a[0].ty, std::get<0>(pk), v->a));
      return mApp(a[6].tm, mVariant(a[1].ty, std::get<1>(pk), v->a));
    }
    case Konst::Syn: {
      const auto& rho = literalRow(a[1].ty, "syn");
      KindP fk = kindOf({}, a[0].ty);
      TypeP out = closedNormal(tMap(a[0].ty, a[1].ty, fk), rowStar());
      std::vector<TermP> fs;
      for (int i = 0; i < (int)rho.size(); ++i) fs.push_back(instantiate(a[3].tm, rho, i));
      return mRecord(out, std::move(fs));
    }
    case Konst::Ana: {
      const auto& rho = literalRow(a[1].ty, "ana");
      const TermP& v = a[5].tm;
      if (v->tag != MT::Variant) throw StuckTerm("ana: malformed arguments");
      return mApp(instantiate(a[4].tm, rho, v->ix), v->a);
    }
    case Konst::Out: {
      Spine s = unwind(a[1].tm);
      if (s.head->tag != MT::Const || s.head->k != Konst::In || s.args.size() != 2)
        throw StuckTerm("out: argument is not in");
      return s.args[1].tm;
    }
    case Konst::Fix: return mApp(a[1].tm, rebuild(mConst(Konst::Fix), a, 0));
    case Konst::In: break;
  }
  throw StuckTerm("no rule for constant");
}

const char* deltaName(Konst k) {
  switch (k) {
    case Konst::Out: return "out-in";
    case Konst::Concat: return "concat";
    case Konst::Branch: return "branch";
    default: return konstName(k);
  }
}

std::optional<Step> stepConst(const Program& prog, const TermP& whole, const Spine& s) {
  std::string shape = arity(s.head->k);
  size_t n = std::min(shape.size(), s.args.size());
  for (size_t i = 0; i < n; ++i) {
    const Arg& a = s.args[i];
    if ("TEM"[a.tag] != shape[i]) throw StuckTerm("ill-formed spine: " + showTerm(whole));
    auto with = [&](Arg b) {
      std::vector<Arg> args = s.args;
      args[i] = std::move(b);
      return rebuild(s.head, args);
    };
    if (a.tag == Arg::Ty) {
      TypeP nt = closedNormal(a.ty);
      if (!typeEq(nt, a.ty)) return Step{with({Arg::Ty, nt, nullptr, nullptr}), whole, "xi-type"};
    } else if (a.tag == Arg::Ev) {
      if (isEvidenceValue(a.ev)) continue;
      auto e = evidenceStep(a.ev);
      if (!e) throw StuckTerm("stuck evidence: " + showEvidence(a.ev));
      return Step{with({Arg::Ev, nullptr, e->first, nullptr}), whole, "xi-evidence/" + e->second};
    } else if (!isValue(a.tm)) {
      return inside(prog, a.tm, [&](TermP t) { return with({Arg::Tm, nullptr, nullptr, std::move(t)}); });
    }
  }
  if (s.args.size() < shape.size() || s.head->k == Konst::In) return std::nullopt;
  std::vector<Arg> used(s.args.begin(), s.args.begin() + shape.size());
  TermP redex = rebuild(s.head, used);
  TermP r = delta(s.head->k, used);
  return Step{rebuild(r, s.args, shape.size()), redex, deltaName(s.head->k)};
}

TermP singletonRow(const TermP& m) {
  TypeP row = closedNormal(m->ty, rowStar());
  if (row->tag != TT::Row || row->row.size() != 1) throw StuckTerm("label annotation is not a singleton row");
  return mVariant(row, 0, m->b);  // caller rewraps as record when needed
}

std::optional<Step> stepIn(const Program& prog, const TermP& m) {
  switch (m->tag) {
    case MT::Var: throw StuckTerm("free variable");
    case MT::Global: {
      if (m->ix < 0 || m->ix >= (int)prog.globals.size()) throw StuckTerm("unknown global " + m->name);
      return Step{prog.globals[m->ix].term, m, "unfold"};
    }
    case MT::Lam:
    case MT::TyLam:
    case MT::EvLam:
    case MT::Sing:
    case MT::Const: return std::nullopt;
    case MT::Record:
      for (size_t i = 0; i < m->fields.size(); ++i) {
        if (isValue(m->fields[i])) continue;
        return inside(prog, m->fields[i], [&](TermP t) {
          auto fs = m->fields;
          fs[i] = std::move(t);
          return mRecord(m->ty, std::move(fs));
        });
      }
      return std::nullopt;
    case MT::Variant:
      if (isValue(m->a)) return std::nullopt;
      return inside(prog, m->a, [&](TermP t) { return mVariant(m->ty, m->ix, std::move(t)); });
    case MT::LabIntro: {
      if (!isValue(m->a))
        return inside(prog, m->a, [&](TermP t) { return mLabIntro(m->flavor, std::move(t), m->b, m->ty); });
      if (!isValue(m->b))
        return inside(prog, m->b, [&](TermP t) { return mLabIntro(m->flavor, m->a, std::move(t), m->ty); });
      TermP v = singletonRow(m);
      if (m->flavor == Flavor::Sigma) return Step{v, m, "label-variant"};
      return Step{mRecord(v->ty, {m->b}), m, "label-record"};
    }
    case MT::LabElim: {
      if (!isValue(m->a))
        return inside(prog, m->a, [&](TermP t) { return mLabElim(m->flavor, std::move(t), m->b); });
      if (!isValue(m->b))
        return inside(prog, m->b, [&](TermP t) { return mLabElim(m->flavor, m->a, std::move(t)); });
      const TermP& t = m->a;
      if (m->flavor == Flavor::Sigma) {
        if (t->tag != MT::Variant || t->ix != 0) throw StuckTerm("unlabel: not a singleton variant");
        return Step{t->a, m, "unlabel-variant"};
      }
      if (t->tag != MT::Record || t->fields.size() != 1) throw StuckTerm("unlabel: not a singleton record");
      return Step{t->fields[0], m, "unlabel-record"};
    }
    case MT::App:
    case MT::TyApp:
    case MT::EvApp: break;
  }
  Spine s = unwind(m);
  const TermP& h = s.head;
  const Arg& a0 = s.args[0];
  switch (h->tag) {
    case MT::Const: return stepConst(prog, m, s);
    case MT::Lam:
      if (a0.tag != Arg::Tm) break;
      return Step{rebuild(substTermTerm(h->a, a0.tm), s.args, 1), mApp(h, a0.tm), "beta"};
    case MT::TyLam:
      if (a0.tag != Arg::Ty) break;
      return Step{rebuild(substTermType(h->a, a0.ty), s.args, 1), mTyApp(h, a0.ty), "beta-type"};
    case MT::EvLam:
      if (a0.tag != Arg::Ev) break;
      return Step{rebuild(substTermEv(h->a, a0.ev), s.args, 1), mEvApp(h, a0.ev), "beta-evidence"};
    default:
      if (isValue(h)) break;
      return inside(prog, h, [&](TermP t) { return rebuild(std::move(t), s.args); });
  }
  throw StuckTerm("stuck application: " + showTerm(m));
}

std::string atom(const TermP& v);

std::string show(const TermP& v) {
  switch (v->tag) {
    case MT::Sing: {
      TypeP t = closedNormal(v->ty, v->kind);
      if (t->tag == TT::Label) return t->name == "Unit" ? "tt" : "#'" + t->name;
      return "#(" + showType(t) + ")";
    }
    case MT::Variant: {
      const auto& row = literalRow(v->ty, "variant");
      return "#'" + row.at(v->ix).label + " := " + show(v->a);
    }
    case MT::Record: {
      const auto& row = literalRow(v->ty, "record");
      if (row.empty()) return "{}";
      if (row.size() == 1) return "#'" + row[0].label + " := " + show(v->fields[0]);
      std::string out;
      for (size_t i = 0; i < row.size(); ++i)
        out += (i ? " ++ (#'" : "(#'") + row[i].label + " := " + show(v->fields[i]) + ")";
      return out;
    }
    default: break;
  }
  Spine s = unwind(v);
  if (s.head->tag == MT::Const && s.head->k == Konst::In && s.args.size() == 2) return "in " + atom(s.args[1].tm);
  return "<function>";
}

std::string atom(const TermP& v) {
  std::string s = show(v);
  bool simple = v->tag == MT::Sing || (v->tag == MT::Record && v->fields.empty()) || s == "<function>";
  return simple ? s : "(" + s + ")";
}

}  // namespace

std::optional<Step> step(const Program& prog, const TermP& m) {
  if (isValue(m)) return std::nullopt;
  auto s = stepIn(prog, m);
  if (!s) throw StuckTerm("stuck term: " + showTerm(m));
  return s;
}

TermP evalToValue(const Program& prog, const TermP& m, long fuel, const TraceFn& trace) {
  TermP cur = m;
  for (long n = 0;; ++n) {
    if (isValue(cur)) return cur;
    if (n >= fuel) throw OutOfFuel(n);
    auto s = stepIn(prog, cur);
    if (!s) throw StuckTerm("stuck term: " + showTerm(cur));
    if (trace) trace(*s);
    cur = std::move(s->term);
  }
}

std::string showValue(const TermP& v) { return show(v); }

}  // namespace rome
