#include "rome/pretty.hpp"

#include <algorithm>

#include "rome/entail.hpp"
#include "rome/parser.hpp"

namespace rome {

namespace {

std::string paren(bool wrap, const std::string& s) { return wrap ? "(" + s + ")" : s; }

class TypePrinter {
 public:
  explicit TypePrinter(std::vector<std::string> names) : names_(std::move(names)) {}

  // Levels: 0 binder, 1 arrow, 2 complement, 3 application, 4 atom.
  std::string type(const TypeP& t, int prec) {
    switch (t->tag) {
      case TT::Var: {
        int i = (int)names_.size() - 1 - t->ix;
        if (i < 0) return "#free" + std::to_string(t->ix);
        return names_[i].empty() ? "_t" + std::to_string(i) : names_[i];
      }
      case TT::Meta: return "?" + std::to_string(t->ix);
      case TT::Arrow: return paren(prec > 1, type(t->a, 2) + " -> " + type(t->b, 1));
      case TT::Pi: return "Pi";
      case TT::Sigma: return "Sigma";
      case TT::Mu: return "Mu";
      case TT::Forall:
      case TT::Lam: {
        bool all = t->tag == TT::Forall;
        std::string head = all ? "forall" : "\\";
        std::string bs;
        TypeP cur = t;
        int pushed = 0;
        while (cur->tag == t->tag) {
          std::string n = fresh(cur->name);
          std::string b = !kindEq(cur->kind, kStar()) ? "(" + n + " : " + showKind(cur->kind) + ")" : n;
          bs += " " + b;
          names_.push_back(n);
          ++pushed;
          cur = cur->a;
        }
        std::string body = type(cur, 0);
        for (int i = 0; i < pushed; ++i) names_.pop_back();
        return paren(prec > 0, head + bs + ". " + body);
      }
      case TT::Qual: {
        std::string ps = pred(t->pred);
        TypeP cur = t->a;
        while (cur->tag == TT::Qual) {
          ps += ", " + pred(cur->pred);
          cur = cur->a;
        }
        return paren(prec > 0, ps + " => " + type(cur, 0));
      }
      case TT::App:
      case TT::Map: return paren(prec > 3, type(t->a, 3) + " " + type(t->b, 4));
      case TT::Row: {
        std::string s;
        for (const auto& e : t->row) s += (s.empty() ? "" : ", ") + ("'" + e.label) + " := " + type(e.ty, 0);
        return "{" + s + "}";
      }
      case TT::Label: return "'" + t->name;
      case TT::Sing: return "#" + type(t->a, 4);
      case TT::LabRow: return "{" + type(t->a, 4) + " := " + type(t->b, 0) + "}";
      case TT::Compl: return paren(prec > 2, type(t->a, 2) + " - " + type(t->b, 3));
    }
    return "?";
  }

  std::string pred(const PredP& p) {
    if (p->tag == Pred::Leq) return type(p->a, 2) + " < " + type(p->b, 2);
    return type(p->a, 2) + " + " + type(p->b, 2) + " ~ " + type(p->c, 2);
  }

 private:
  std::vector<std::string> names_;

  bool used(const std::string& n) const { return std::find(names_.begin(), names_.end(), n) != names_.end(); }

  std::string fresh(const std::string& hint) {
    std::string base = hint.empty() ? "t" : hint;
    if (!hint.empty() && !used(base)) return base;
    for (int i = 1;; ++i) {
      std::string n = base + std::to_string(i);
      if (!used(n)) return n;
    }
  }
};

std::string term(const TermP& m, int prec) {
  switch (m->tag) {
    case MT::Var: return m->name.empty() ? "x" + std::to_string(m->ix) : m->name;
    case MT::Global: return m->name;
    case MT::Const: return konstName(m->k);
    case MT::Lam: return paren(prec > 0, "\\" + (m->name.empty() ? std::string("_") : m->name) + ". " + term(m->a, 0));
    case MT::App: return paren(prec > 4, term(m->a, 4) + " " + term(m->b, 5));
    case MT::TyLam: return paren(prec > 0, "/\\" + (m->name.empty() ? std::string("_") : m->name) + ". " + term(m->a, 0));
    case MT::TyApp: return paren(prec > 4, term(m->a, 4) + " [" + showType(m->ty) + "]");
    case MT::EvLam: return paren(prec > 0, "\\{" + showPred(m->pred) + "}. " + term(m->a, 0));
    case MT::EvApp: return paren(prec > 4, term(m->a, 4) + " {" + showEvidence(m->ev) + "}");
    case MT::Sing: return "#" + showType(m->ty);
    case MT::LabIntro: return paren(prec > 0, term(m->a, 1) + " := " + term(m->b, 0));
    case MT::LabElim: return paren(prec > 3, term(m->a, 3) + " / " + term(m->b, 4));
    case MT::Record: {
      std::string s;
      for (const auto& f : m->fields) s += (s.empty() ? "" : ", ") + term(f, 0);
      return "Record[" + showType(m->ty) + "](" + s + ")";
    }
    case MT::Variant:
      return "Variant[" + showType(m->ty) + "] " + std::to_string(m->ix) + " (" + term(m->a, 0) + ")";
  }
  return "?";
}

}  // namespace

std::string showType(const TypeP& t, std::vector<std::string> names) { return TypePrinter(std::move(names)).type(t, 0); }
std::string showPred(const PredP& p, std::vector<std::string> names) { return TypePrinter(std::move(names)).pred(p); }
std::string showTerm(const TermP& m) { return term(m, 0); }

}  // namespace rome
