#pragma once

#include "rome/typecheck.hpp"

namespace rome {

// Type metavariables. A meta created at depth d has its solution at depth d; an occurrence
// Meta(id, lift) stands for the solution shifted by lift.
struct MetaInfo {
  KindP kind;
  int depth = 0;
  TypeP sol;
  bool flavor = false;  // may only be solved to Pi or Sigma at kind *
};

class MetaStore {
 public:
  int fresh(KindP k, int depth, bool flavor = false);
  const MetaInfo& info(int id) const { return metas_[id]; }
  void solve(int id, TypeP sol);
  size_t mark() const { return trail_.size(); }
  void rollback(size_t m);

  TypeP zonk(const TypeP& t) const;
  PredP zonk(const PredP& p) const;
  NormCtx ctx(const std::vector<KindP>& delta) const;
  TypeP nf(const std::vector<KindP>& delta, const TypeP& t, const KindP& k) const;
  PredP nf(const std::vector<KindP>& delta, const PredP& p) const;

 private:
  std::vector<MetaInfo> metas_;
  std::vector<int> trail_;
};

// Higher-order pattern unification over normal forms. Does not undo partial solutions on failure.
class Unifier {
 public:
  explicit Unifier(MetaStore& ms) : ms_(ms) {}
  bool unify(const std::vector<KindP>& delta, const TypeP& x, const TypeP& y, const KindP& k);
  bool unifyPred(const std::vector<KindP>& delta, const PredP& x, const PredP& y);

 private:
  MetaStore& ms_;
  struct Deferred {
    std::vector<KindP> delta;
    TypeP x, y;
    KindP k;
  };
  std::vector<Deferred> deferred_;  // non-pattern equations waiting for other solutions
  int nesting_ = 0;
  bool solveDeferred();
  bool go(std::vector<KindP>& delta, const TypeP& x, const TypeP& y, const KindP& k);
  bool flex(std::vector<KindP>& delta, const TypeP& x, const TypeP& y, bool& handled);
  bool spine(std::vector<KindP>& delta, const TypeP& x, const TypeP& y);
  std::optional<TypeP> escape(int id, int lift, const std::vector<int>& args, const TypeP& y, int c);
};

// Applies f to every immediate child; the second argument counts binders entered.
template <class F>
TypeP mapKids(const TypeP& t, F&& f) {
  auto n = std::make_shared<Type>(*t);
  bool binds = t->tag == TT::Forall || t->tag == TT::Lam;
  if (t->a) n->a = f(t->a, binds ? 1 : 0);
  if (t->b) n->b = f(t->b, 0);
  if (t->pred) {
    auto p = std::make_shared<Pred>(*t->pred);
    p->a = f(p->a, 0);
    p->b = f(p->b, 0);
    if (p->c) p->c = f(p->c, 0);
    n->pred = p;
  }
  for (auto& e : n->row) e.ty = f(e.ty, 0);
  return n;
}

}  // namespace rome
