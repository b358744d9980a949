#pragma once

#include <functional>
#include <optional>
#include <variant>

#include "rome/normalize.hpp"

namespace rome {

// What the solver needs from its caller. Types passed in and out are at the depth of `norm.delta`.
struct SolverEnv {
  NormCtx norm;
  std::vector<PredP> phi;  // hypotheses; back() is evidence variable 0
  int depth = 4;           // bound on transitive and structural search
  bool guess = true;       // with several hypotheses matching by unification, take the first
  // Normal form, with solved metavariables substituted (defaults to normalize).
  std::function<TypeP(const TypeP&, const KindP&)> nf;
  // Makes two types equal, possibly solving metavariables (defaults to typeEqual).
  std::function<bool(const TypeP&, const TypeP&, const KindP&)> equate;
  // Undo log for metavariable solutions (default: nothing to undo).
  std::function<size_t()> mark;
  std::function<void(size_t)> rollback;
};

enum class SolveStatus { Solved, Stuck, Failed };

struct SolveResult {
  SolveStatus status;
  EvP ev;
};

SolveResult solve(const SolverEnv& env, const PredP& goal);

// Index maps.
std::variant<int, int> pickIndex(const IndexMap& p, const IndexMap& q, int i);  // index 0: Left, 1: Right
IndexMap dual(const IndexMap& p, int targetSize);
IndexMap composeMaps(const IndexMap& inner, const IndexMap& outer);  // outer after inner

// Closed evidence reduction. Annotation rows are normalized in the empty context.
std::optional<std::pair<EvP, std::string>> evidenceStep(const EvP& e);
EvP evidenceNormalize(const EvP& e);

// Declarative check that e proves p under the hypotheses in env.
bool checkEvidence(const SolverEnv& env, const EvP& e, const PredP& p);

std::string showEvidence(const EvP& e);

}  // namespace rome
