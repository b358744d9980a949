#pragma once

#include <functional>
#include <map>

#include "rome/parser.hpp"

namespace rome {

struct KindError : SourceError {
  using SourceError::SourceError;
};

// Top-level type synonyms; bodies are closed and fully kinded.
struct TypeSynonym {
  KindP kind;
  TypeP body;
};
using SynonymEnv = std::map<std::string, TypeSynonym>;

// Type variables in scope by name; back() is index 0.
struct TyScope {
  std::vector<std::string> names;
  std::vector<KindP> kinds;
  void push(std::string n, KindP k) {
    names.push_back(std::move(n));
    kinds.push_back(std::move(k));
  }
  void pop() {
    names.pop_back();
    kinds.pop_back();
  }
};

// Elaborates surface types to core types, inferring omitted kinds with kind metavariables,
// resolving Pi/Sigma kind overloading, and inserting implicit maps.
class KindChecker {
 public:
  explicit KindChecker(const SynonymEnv& syns) : syns_(syns) {}

  TypeP infer(const STypeP& t, TyScope& scope, KindP& out);
  TypeP check(const STypeP& t, TyScope& scope, const KindP& k);
  PredP pred(const SPred& p, TyScope& scope, Pos pos);

  KindP fresh();
  bool unify(const KindP& x, const KindP& y);
  KindP zonk(const KindP& k) const;
  TypeP zonk(const TypeP& t) const;
  PredP zonk(const PredP& p) const;
  bool resolved(const KindP& k) const;
  bool resolved(const TypeP& t) const;

  // Zonks all kinds in t; reports an error at pos if any kind is still unknown.
  TypeP finish(const TypeP& t, Pos pos) const;
  KindP finish(const KindP& k, Pos pos) const;

  size_t mark() const { return sol_.size(); }
  std::vector<KindP> snapshot() const { return sol_; }
  void restore(std::vector<KindP> s) { sol_ = std::move(s); }

 private:
  const SynonymEnv& syns_;
  std::vector<KindP> sol_;  // kind metavariable solutions, null when unsolved

  bool occurs(int id, const KindP& k) const;
  TypeP app(TypeP f, KindP kf, TypeP x, KindP kx, Pos pos, KindP& out);
};

// Kind of a fully elaborated core type; throws InternalError when ill-kinded.
KindP kindOf(const std::vector<KindP>& delta, const TypeP& t, const std::function<KindP(int)>& metaKind = nullptr);
void checkPredKinds(const std::vector<KindP>& delta, const PredP& p,
                    const std::function<KindP(int)>& metaKind = nullptr);

}  // namespace rome
