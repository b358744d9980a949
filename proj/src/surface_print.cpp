#include "rome/parser.hpp"

namespace rome {

std::string showKind(const KindP& k) {
  switch (k->tag) {
    case Kind::Star: return "*";
    case Kind::Label: return "L";
    case Kind::Row: return "R[" + showKind(k->a) + "]";
    case Kind::Arrow: {
      std::string dom = showKind(k->a);
      if (k->a->tag == Kind::Arrow) dom = "(" + dom + ")";
      return dom + " -> " + showKind(k->b);
    }
    case Kind::Meta: return "?k" + std::to_string(k->meta);
  }
  return "?";
}

namespace {

// Type precedence levels: 0 binder/qual, 1 arrow, 2 complement, 3 application, 4 atom.
std::string showT(const STypeP& t, int prec);

std::string paren(bool wrap, const std::string& s) { return wrap ? "(" + s + ")" : s; }

std::string showBinders(const std::vector<SBinder>& bs) {
  std::string out;
  for (const auto& b : bs) {
    if (!out.empty()) out += " ";
    out += b.kind ? "(" + b.name + " : " + showKind(b.kind) + ")" : b.name;
  }
  return out;
}

std::string showPred(const SPred& p) {
  if (p.tag == Pred::Leq) return showT(p.a, 2) + " < " + showT(p.b, 2);
  return showT(p.a, 2) + " + " + showT(p.b, 2) + " ~ " + showT(p.c, 2);
}

std::string showT(const STypeP& t, int prec) {
  switch (t->tag) {
    case ST::Var: return t->name;
    case ST::Label: return "'" + t->name;
    case ST::Pi: return "Pi";
    case ST::Sigma: return "Sigma";
    case ST::Mu: return "Mu";
    case ST::Forall:
    case ST::Lam:
      return paren(prec > 0, std::string(t->tag == ST::Forall ? "forall " : "\\ ") + showBinders(t->binders) +
                                 ". " + showT(t->a, 0));
    case ST::Qual: {
      std::string s;
      for (const auto& p : t->preds) s += (s.empty() ? "" : ", ") + showPred(p);
      return paren(prec > 0, s + " => " + showT(t->a, 0));
    }
    case ST::Arrow: return paren(prec > 1, showT(t->a, 2) + " -> " + showT(t->b, 1));
    case ST::Compl: return paren(prec > 2, showT(t->a, 2) + " - " + showT(t->b, 3));
    case ST::App: return paren(prec > 3, showT(t->a, 3) + " " + showT(t->b, 4));
    case ST::Sing: return "#" + showT(t->a, 4);
    case ST::Row: {
      std::string s;
      for (const auto& [l, x] : t->row) s += (s.empty() ? "" : ", ") + showT(l, 4) + " := " + showT(x, 0);
      return "{" + s + "}";
    }
  }
  return "?";
}

// Term precedence levels: 0 :=, 1 |, 2 ++, 3 /, 4 application, 5 atom.
std::string showM(const STermP& m, int prec) {
  switch (m->tag) {
    case SM::Var: return m->name;
    case SM::Lam: {
      std::string vs;
      for (const auto& v : m->vars) vs += " " + v;
      return paren(prec > 0, "\\" + vs + ". " + showM(m->a, 0));
    }
    case SM::TyLam: return paren(prec > 0, "/\\ " + showBinders(m->binders) + ". " + showM(m->a, 0));
    case SM::App: return paren(prec > 4, showM(m->a, 4) + " " + showM(m->b, 5));
    case SM::TyApp: return paren(prec > 4, showM(m->a, 4) + " [" + showT(m->ty, 0) + "]");
    case SM::Sing: return "#" + showT(m->ty, 4);
    case SM::LabIntro: return paren(prec > 0, showM(m->a, 1) + " := " + showM(m->b, 0));
    case SM::Branch: return paren(prec > 1, showM(m->a, 1) + " | " + showM(m->b, 2));
    case SM::Concat: return paren(prec > 2, showM(m->a, 2) + " ++ " + showM(m->b, 3));
    case SM::LabElim: return paren(prec > 3, showM(m->a, 3) + " / " + showM(m->b, 4));
  }
  return "?";
}

}  // namespace

std::string showSType(const STypeP& t) { return showT(t, 0); }
std::string showSTerm(const STermP& m) { return showM(m, 0); }

}  // namespace rome
