#include "rome/entail.hpp"
#include "rome/kinding.hpp"

namespace rome {

std::variant<int, int> pickIndex(const IndexMap& p, const IndexMap& q, int i) {
  for (size_t j = 0; j < p.size(); ++j)
    if (p[j] == i) return std::variant<int, int>(std::in_place_index<0>, (int)j);
  for (size_t j = 0; j < q.size(); ++j)
    if (q[j] == i) return std::variant<int, int>(std::in_place_index<1>, (int)j);
  throw InternalError("pick: index " + std::to_string(i) + " in neither range");
}

IndexMap dual(const IndexMap& p, int targetSize) {
  IndexMap out;
  size_t j = 0;
  for (int i = 0; i < targetSize; ++i) {
    while (j < p.size() && p[j] < i) ++j;
    if (j < p.size() && p[j] == i) continue;
    out.push_back(i);
  }
  return out;
}

IndexMap composeMaps(const IndexMap& inner, const IndexMap& outer) {
  IndexMap out;
  for (int i : inner) {
    if (i < 0 || i >= (int)outer.size()) throw InternalError("compose: index out of range");
    out.push_back(outer[i]);
  }
  return out;
}

namespace {

IndexMap identityMap(int n) {
  IndexMap m;
  for (int i = 0; i < n; ++i) m.push_back(i);
  return m;
}

int closedRowSize(const TypeP& t) {
  TypeP n = normalize(NormCtx{}, t, kindOf({}, t));
  if (n->tag != TT::Row) throw InternalError("evidence annotation is not a closed literal row");
  return (int)n->row.size();
}

std::string showMap(const IndexMap& p) {
  std::string s = "{";
  for (size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + std::to_string(i) + "->" + std::to_string(p[i]);
  return s + "}";
}

const char* etName(ET t) {
  switch (t) {
    case ET::Var: return "var";
    case ET::Meta: return "meta";
    case ET::Trans: return "trans";
    case ET::Incl: return "incl";
    case ET::Comb: return "comb";
    case ET::Refl: return "refl";
    case ET::LeqMap: return "leqMap";
    case ET::PlusL: return "plusL";
    case ET::PlusR: return "plusR";
    case ET::EmptyL: return "emptyL";
    case ET::EmptyR: return "emptyR";
    case ET::PlusMap: return "plusMap";
    case ET::ComplL: return "complL";
    case ET::ComplR: return "complR";
  }
  return "?";
}

}  // namespace

std::string showEvidence(const EvP& e) {
  switch (e->tag) {
    case ET::Var: return "v" + std::to_string(e->ix);
    case ET::Meta: return "?e" + std::to_string(e->ix);
    case ET::Incl: return "incl " + showMap(e->p);
    case ET::Comb: return "comb " + showMap(e->p) + " " + showMap(e->q);
    default: break;
  }
  std::string s = etName(e->tag);
  if (e->a) s += "(" + showEvidence(e->a) + (e->b ? ", " + showEvidence(e->b) : "") + ")";
  return s;
}

std::optional<std::pair<EvP, std::string>> evidenceStep(const EvP& e) {
  using R = std::pair<EvP, std::string>;
  if (isEvidenceValue(e) || e->tag == ET::Var || e->tag == ET::Meta) return std::nullopt;
  // Congruence: reduce children first.
  if (e->a && !isEvidenceValue(e->a)) {
    auto s = evidenceStep(e->a);
    if (!s) return std::nullopt;
    auto r = std::make_shared<Evidence>(*e);
    r->a = s->first;
    return R{r, s->second};
  }
  if (e->b && !isEvidenceValue(e->b)) {
    auto s = evidenceStep(e->b);
    if (!s) return std::nullopt;
    auto r = std::make_shared<Evidence>(*e);
    r->b = s->first;
    return R{r, s->second};
  }
  const EvP& a = e->a;
  switch (e->tag) {
    case ET::Refl: return R{eIncl(identityMap(closedRowSize(e->ann.at(0)))), "refl"};
    case ET::Trans:
      if (a->tag != ET::Incl || e->b->tag != ET::Incl) return std::nullopt;
      return R{eIncl(composeMaps(a->p, e->b->p)), "trans"};
    case ET::LeqMap:
      if (a->tag != ET::Incl) return std::nullopt;
      return R{a, "map"};
    case ET::PlusMap:
      if (a->tag != ET::Comb) return std::nullopt;
      return R{a, "map"};
    case ET::PlusL:
      if (a->tag != ET::Comb) return std::nullopt;
      return R{eIncl(a->p), "plusL"};
    case ET::PlusR:
      if (a->tag != ET::Comb) return std::nullopt;
      return R{eIncl(a->q), "plusR"};
    case ET::EmptyL: return R{eComb({}, identityMap(closedRowSize(e->ann.at(0)))), "emptyL"};
    case ET::EmptyR: return R{eComb(identityMap(closedRowSize(e->ann.at(0))), {}), "emptyR"};
    case ET::ComplR:
      if (a->tag != ET::Incl) return std::nullopt;
      return R{eComb(a->p, dual(a->p, closedRowSize(e->ann.at(1)))), "complR"};
    case ET::ComplL:
      if (a->tag != ET::Incl) return std::nullopt;
      return R{eComb(dual(a->p, closedRowSize(e->ann.at(1))), a->p), "complL"};
    default: return std::nullopt;
  }
}

EvP evidenceNormalize(const EvP& e) {
  EvP cur = e;
  while (auto s = evidenceStep(cur)) cur = s->first;
  if (!isEvidenceValue(cur)) throw InternalError("stuck evidence: " + showEvidence(cur));
  return cur;
}

}  // namespace rome
