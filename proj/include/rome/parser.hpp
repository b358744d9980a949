#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "rome/syntax.hpp"

namespace rome {

// A user-facing error with a source position (line and column are 1-based, 0 if unknown).
struct SourceError : std::runtime_error {
  int line, col;
  SourceError(const std::string& msg, int line, int col)
      : std::runtime_error(msg), line(line), col(col) {}
  std::string where() const;
};

struct ParseError : SourceError {
  using SourceError::SourceError;
};

struct Pos {
  int line = 0, col = 0;
};

// ---------------------------------------------------------------- surface types

struct SType;
using STypeP = std::shared_ptr<const SType>;

struct SPred {
  Pred::Tag tag;
  STypeP a, b, c;
};

struct SBinder {
  std::string name;
  KindP kind;  // null when omitted
};

enum class ST { Var, Label, Pi, Sigma, Mu, Arrow, Forall, Lam, Qual, App, Row, Sing, Compl };

struct SType {
  ST tag;
  Pos pos;
  std::string name;              // Var, Label
  std::vector<SBinder> binders;  // Forall, Lam
  std::vector<SPred> preds;      // Qual
  STypeP a, b;                   // Arrow, App, Compl: a b; Forall/Lam/Qual/Sing body a
  std::vector<std::pair<STypeP, STypeP>> row;  // Row: (label, type)
};

// ---------------------------------------------------------------- surface terms

struct STerm;
using STermP = std::shared_ptr<const STerm>;

enum class SM { Var, Lam, TyLam, App, TyApp, Sing, LabIntro, LabElim, Concat, Branch };

struct STerm {
  SM tag;
  Pos pos;
  std::string name;              // Var
  std::vector<std::string> vars;  // Lam
  std::vector<SBinder> binders;  // TyLam
  STypeP ty;                     // TyApp, Sing
  STermP a, b;
};

// ---------------------------------------------------------------- declarations

struct SDecl {
  enum Tag { TypeSig, TypeDef, TermSig, TermDef } tag;
  Pos pos;
  std::string name;
  KindP kind;    // TypeSig
  STypeP type;   // TypeDef, TermSig
  STermP term;   // TermDef
};

std::vector<SDecl> parseProgram(const std::string& source);
STermP parseTerm(const std::string& source);
STypeP parseType(const std::string& source);
KindP parseKind(const std::string& source);

// Surface rendering, re-parseable by the functions above.
std::string showSType(const STypeP& t);
std::string showSTerm(const STermP& m);
std::string showKind(const KindP& k);

}  // namespace rome
