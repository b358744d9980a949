#include "acceptance.hpp"
#include "fixtures.hpp"

namespace rome::acceptance {

namespace {

// True when t mentions a variable bound outside `depth` local binders.
bool hasFree(const TypeP& t, int depth) {
  if (!t) return false;
  switch (t->tag) {
    case TT::Var: return t->ix >= depth;
    case TT::Meta: return true;
    case TT::Forall:
    case TT::Lam: return hasFree(t->a, depth + 1);
    case TT::Qual:
      return hasFree(t->pred->a, depth) || hasFree(t->pred->b, depth) || hasFree(t->pred->c, depth) ||
             hasFree(t->a, depth);
    case TT::Row:
      for (const auto& e : t->row)
        if (hasFree(e.ty, depth)) return true;
      return false;
    default: return hasFree(t->a, depth) || hasFree(t->b, depth);
  }
}

struct Audit {
  int rows = 0, labels = 0;
  std::string failure;

  void closedNormal(const TypeP& t) {
    KindP k = kindOf({}, t);
    if (k->tag == Kind::Row) {
      ++rows;
      if (t->tag != TT::Row && failure.empty()) failure = "closed row not literal: " + showType(t);
    } else if (k->tag == Kind::Label) {
      ++labels;
      if (t->tag != TT::Label && failure.empty()) failure = "closed label not literal: " + showType(t);
    }
  }

  // Visits every closed subtree of a normal type.
  void normal(const TypeP& t, int depth) {
    if (!t) return;
    if (!hasFree(t, 0)) closedNormal(t);
    switch (t->tag) {
      case TT::Forall:
      case TT::Lam: normal(t->a, depth + 1); return;
      case TT::Qual:
        normal(t->pred->a, depth), normal(t->pred->b, depth), normal(t->pred->c, depth);
        normal(t->a, depth);
        return;
      case TT::Row:
        for (const auto& e : t->row) normal(e.ty, depth);
        return;
      default: normal(t->a, depth), normal(t->b, depth);
    }
  }

  void type(const TypeP& t, const std::vector<KindP>& delta) {
    if (!t) return;
    normal(normalize(NormCtx{delta, nullptr}, t, kindOf(delta, t)), 0);
  }

  void evidence(const EvP& e, const std::vector<KindP>& delta) {
    if (!e) return;
    for (const auto& t : e->ann) type(t, delta);
    evidence(e->a, delta);
    evidence(e->b, delta);
  }

  void term(const TermP& m, std::vector<KindP>& delta) {
    if (!m) return;
    if (m->tag == MT::TyLam) {
      delta.push_back(m->kind);
      term(m->a, delta);
      delta.pop_back();
      return;
    }
    type(m->ty, delta);
    if (m->pred) type(m->pred->a, delta), type(m->pred->b, delta), type(m->pred->c, delta);
    evidence(m->ev, delta);
    term(m->a, delta);
    term(m->b, delta);
    for (const auto& f : m->fields) term(f, delta);
  }
};

}  // namespace

Outcome canonicity() {
  const Program& p = fixture::goldens();
  Audit a;
  for (const auto& g : p.globals) {
    std::vector<KindP> delta;
    a.term(g.term, delta);
    a.type(g.type, delta);
    if (!a.failure.empty()) return {false, g.name + ": " + a.failure};
  }
  for (const char* entry : {"evalIf", "desugared", "prjB", "wandLeft"}) {
    std::vector<KindP> delta;
    a.term(evalToValue(p, mGlobal(p.slots.at(entry), entry), kDefaultFuel, nullptr), delta);
    if (!a.failure.empty()) return {false, std::string(entry) + " value: " + a.failure};
  }
  return {true, std::to_string(a.rows) + " closed rows and " + std::to_string(a.labels) +
                    " closed labels are literals"};
}

}  // namespace rome::acceptance
