#pragma once

#include "checker.hpp"
#include "rome/pretty.hpp"

namespace rome {

// A predicate to be proved at an instantiation point, with the context it arose in.
struct Goal {
  PredP pred;
  std::vector<KindP> delta;
  std::vector<PredP> phi;
  Pos pos;
  EvP sol;
};

// Elaborates one top-level definition.
class Elab {
 public:
  explicit Elab(const Program& prog) : prog_(prog) {}

  Elaborated check(const STermP& m, const TypeP& expected);
  Elaborated infer(const STermP& m);

  // Proves every goal that can be proved now; with `final`, unproved goals are errors.
  void discharge(bool final);
  // Substitutes solutions and normalizes annotations; errors if anything is left unsolved.
  TermP finish(const TermP& m, Pos pos);
  TypeP nf(const TypeP& t, const KindP& k = kStar()) const { return ms_.nf(ty_.kinds, t, k); }
  TypeP elabType(const STypeP& t, const KindP& k);

 private:
  struct Hyp {
    PredP p;
    int depth;
  };
  struct Var {
    std::string name;
    TypeP type;
    int depth;
  };
  struct Arg {
    STermP term;  // term argument, or
    STypeP type;  // explicit type argument
    Pos pos;
  };

  const Program& prog_;
  MetaStore ms_;
  Unifier un_{ms_};
  TyScope ty_;
  std::vector<Hyp> phi_;
  std::vector<Var> gamma_;
  std::vector<Goal> goals_;
  struct Postponed {
    TypeP x, y;
    std::vector<KindP> delta;
    Pos pos;
  };
  std::vector<Postponed> postponed_;

  int depth() const { return (int)ty_.kinds.size(); }
  TypeP freshMeta(const KindP& k, bool flavor = false) { return tMeta(ms_.fresh(k, depth(), flavor), 0); }
  bool unify(const TypeP& x, const TypeP& y, const KindP& k = kStar());
  std::vector<PredP> phiNow() const;
  std::vector<std::string> names() const { return ty_.names; }
  std::string show(const TypeP& t) const { return showType(ms_.zonk(t), names()); }
  [[noreturn]] void fail(const std::string& msg, Pos pos) const;
  void mismatch(const TypeP& got, const TypeP& want, Pos pos) const;

  Elaborated checkLam(const STermP& m, const TypeP& expected);
  Elaborated checkLabIntro(const STermP& m, const TypeP& expected);
  Elaborated checkLabElim(const STermP& m, const TypeP& expected);
  Elaborated inferLam(const STermP& m);
  Elaborated inferTyLam(const STermP& m);
  Elaborated spine(const STermP& m, const TypeP& expected);
  Elaborated head(const STermP& h, const std::vector<Arg>& args);
  KindP synKind(const Arg& first);
  TypeP label(const STermP& l, TermP& out);
  bool solvable(Goal& g, bool guess);
  bool retryPostponed();

  EvP zonkEv(const EvP& e, const std::vector<KindP>& delta) const;
  TermP zonkTerm(const TermP& m, std::vector<KindP>& delta) const;
  TypeP zonkNorm(const TypeP& t, const std::vector<KindP>& delta) const;
  void unresolved(const TermP& m, Pos pos) const;
};

}  // namespace rome
