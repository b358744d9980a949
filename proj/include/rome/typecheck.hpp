#pragma once

#include <map>

#include "rome/entail.hpp"
#include "rome/kinding.hpp"

namespace rome {

struct TypeError : SourceError {
  using SourceError::SourceError;
};

struct GlobalEntry {
  std::string name;
  TypeP type;  // closed, normal
  TermP term;  // elaborated body
  Pos pos;
};

// Everything declared so far: type synonyms and checked term definitions.
struct Program {
  SynonymEnv synonyms;
  std::vector<GlobalEntry> globals;
  std::map<std::string, int> slots;
  int entailDepth = 4;

  const GlobalEntry* lookup(const std::string& name) const {
    auto it = slots.find(name);
    return it == slots.end() ? nullptr : &globals[it->second];
  }
};

struct Diagnostic {
  std::string message;
  int line = 0, col = 0;
  std::string where() const;
};

// Checks declarations in order, adding each successful one to prog.
std::vector<Diagnostic> checkProgram(Program& prog, const std::vector<SDecl>& decls);

struct Elaborated {
  TermP term;
  TypeP type;  // normal
};

// Elaborates a closed expression, against `expected` when given.
Elaborated elaborateTerm(const Program& prog, const STermP& m, const TypeP& expected = nullptr);
// Elaborates a closed surface type of kind *.
TypeP elaborateType(const Program& prog, const STypeP& t);

// Type scheme of a constant; kappa is the kind index of syn and ana.
TypeP constScheme(Konst k, const KindP& kappa = nullptr);

// Normal type of an elaborated or runtime term, following the typing rules without inference.
// Throws TypeError when the term is ill-typed.
TypeP typeOf(const Program& prog, const Contexts& ctx, const TermP& m);

}  // namespace rome
