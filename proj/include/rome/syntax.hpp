#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rome {

// Raised when an internal invariant is violated. Never a user error.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------- kinds

struct Kind;
using KindP = std::shared_ptr<const Kind>;

struct Kind {
  enum Tag { Star, Label, Row, Arrow, Meta } tag;
  KindP a, b;  // Row: a = element; Arrow: a -> b
  int meta = -1;
};

KindP kStar();
KindP kLabel();
KindP kRow(KindP elem);
KindP kArrow(KindP dom, KindP cod);
KindP kMeta(int id);
bool kindEq(const KindP& x, const KindP& y);
bool isGround(const KindP& k);

// ---------------------------------------------------------------- types

struct Type;
struct Pred;
using TypeP = std::shared_ptr<const Type>;
using PredP = std::shared_ptr<const Pred>;

enum class TT {
  Var,     // de Bruijn index ix
  Meta,    // unification variable ix, occurring under `lift` extra binders
  Arrow,   // a -> b
  Pi,      // constant at kind `kind`
  Sigma,   // constant at kind `kind`
  Mu,      // constant
  Forall,  // binder kind, body a
  Qual,    // pred => a
  Lam,     // binder kind, body a
  App,     // a b
  Row,     // literal row with label-literal entries, strictly ascending
  Label,   // label literal `name`
  Sing,    // #a, `kind` is the kind of a
  LabRow,  // singleton row {a := b} with a non-literal label a
  Map,     // pointwise map of a over row b; `kind` is the kind of a
  Compl,   // a - b; `kind` is the row kind
};

struct RowEntry {
  std::string label;
  TypeP ty;
};

struct Type {
  TT tag;
  int ix = 0;
  int lift = 0;
  KindP kind;
  std::string name;  // label text, or binder name hint
  TypeP a, b;
  PredP pred;
  std::vector<RowEntry> row;
};

struct Pred {
  enum Tag { Leq, Plus } tag;
  TypeP a, b, c;  // Leq: a < b; Plus: a + b ~ c
  KindP kind;     // the shared row kind R[k], filled by kinding
};

TypeP tVar(int ix, std::string hint = "");
TypeP tMeta(int id, int lift = 0);
TypeP tArrow(TypeP a, TypeP b);
TypeP tPi(KindP k);
TypeP tSigma(KindP k);
TypeP tMu();
TypeP tForall(KindP k, TypeP body, std::string hint = "");
TypeP tQual(PredP p, TypeP body);
TypeP tLam(KindP k, TypeP body, std::string hint = "");
TypeP tApp(TypeP f, TypeP x);
TypeP tRow(std::vector<RowEntry> entries);
TypeP tLabel(std::string name);
TypeP tSing(TypeP t, KindP k);
TypeP tLabRow(TypeP label, TypeP t);
TypeP tMap(TypeP f, TypeP row, KindP fnKind = nullptr);
TypeP tCompl(TypeP a, TypeP b, KindP rowKind = nullptr);
PredP pLeq(TypeP a, TypeP b, KindP k = nullptr);
PredP pPlus(TypeP a, TypeP b, TypeP c, KindP k = nullptr);

// Structural equality, ignoring binder name hints.
bool typeEq(const TypeP& x, const TypeP& y);
bool predEq(const PredP& x, const PredP& y);

// Free indices >= cutoff move by amount.
TypeP shift(const TypeP& t, int cutoff, int amount);
PredP shift(const PredP& p, int cutoff, int amount);
// Replace index j by arg (given in the context outside the binder), decrement indices above j.
TypeP substAt(const TypeP& body, int j, const TypeP& arg);
PredP substAt(const PredP& p, int j, const TypeP& arg);
TypeP substType(const TypeP& body, const TypeP& arg);
PredP substPred(const PredP& p, const TypeP& arg);

bool mentionsVar(const TypeP& t, int ix);
bool hasMeta(const TypeP& t);
bool hasMeta(const PredP& p);

// Sorted insertion into a literal row; throws on a duplicate label.
std::vector<RowEntry> rowInsertSorted(std::vector<RowEntry> entries, const std::string& label, TypeP ty);
bool labelLess(const std::string& x, const std::string& y);

// ---------------------------------------------------------------- evidence

using IndexMap = std::vector<int>;

struct Evidence;
using EvP = std::shared_ptr<const Evidence>;

enum class ET {
  Var, Meta, Trans, Incl, Comb, Refl, LeqMap, PlusL, PlusR, EmptyL, EmptyR, PlusMap, ComplL, ComplR
};

// `ann` carries the rows the rule was applied at, so the evidence can be re-checked and
// reduced without inference:
//   Trans: [mid]   Refl: [row]   EmptyL/EmptyR: [row]   PlusL: [other]   PlusR: [other]
//   LeqMap: [fn, lhs, rhs]   PlusMap: [fn, x, y, z]   ComplL/ComplR: [small, big]
struct Evidence {
  ET tag;
  int ix = 0;
  IndexMap p, q;
  EvP a, b;
  std::vector<TypeP> ann;
};

EvP eVar(int ix);
EvP eMeta(int id);
EvP eIncl(IndexMap p);
EvP eComb(IndexMap p, IndexMap q);
EvP eNode(ET tag, std::vector<TypeP> ann, EvP a = nullptr, EvP b = nullptr);

bool evEq(const EvP& x, const EvP& y);
bool isEvidenceValue(const EvP& e);
EvP shiftEvTypes(const EvP& e, int cutoff, int amount);
EvP substEvType(const EvP& e, int j, const TypeP& arg);
EvP shiftEvVars(const EvP& e, int cutoff, int amount);
EvP substEvVar(const EvP& e, int j, const EvP& arg);

// ---------------------------------------------------------------- terms

enum class Konst { Prj, Concat, Inj, Branch, Syn, Ana, In, Out, Fix };
enum class Flavor { Pi, Sigma };

const char* konstName(Konst k);

struct Term;
using TermP = std::shared_ptr<const Term>;

enum class MT {
  Var,       // term index ix
  Global,    // top-level definition `name`, slot ix
  Const,     // constant k (syn/ana carry `kind`)
  Lam,       // \x : ty. a
  App,       // a b
  TyLam,     // /\ : kind. a
  TyApp,     // a [ty]
  EvLam,     // \v : pred. a
  EvApp,     // a {ev}
  Sing,      // #ty, `kind` is the kind of ty
  LabIntro,  // a := b at flavor; ty = annotated row {l := t}
  LabElim,   // a / b at flavor
  Record,    // Record[ty] fields
  Variant,   // Variant[ty] ix a
};

struct Term {
  MT tag;
  int ix = 0;
  Konst k = Konst::Fix;
  Flavor flavor = Flavor::Pi;
  KindP kind;
  std::string name;
  TypeP ty;
  PredP pred;
  EvP ev;
  TermP a, b;
  std::vector<TermP> fields;
  int line = 0, col = 0;  // source position when known
};

TermP mVar(int ix, std::string hint = "");
TermP mGlobal(int slot, std::string name);
TermP mConst(Konst k, KindP kind = nullptr);
TermP mLam(TypeP dom, TermP body, std::string hint = "");
TermP mApp(TermP f, TermP x);
TermP mTyLam(KindP k, TermP body, std::string hint = "");
TermP mTyApp(TermP f, TypeP t);
TermP mEvLam(PredP p, TermP body);
TermP mEvApp(TermP f, EvP e);
TermP mSing(TypeP t, KindP k);
TermP mLabIntro(Flavor fl, TermP label, TermP payload, TypeP row);
TermP mLabElim(Flavor fl, TermP target, TermP label);
TermP mRecord(TypeP row, std::vector<TermP> fields);
TermP mVariant(TypeP row, int tag, TermP payload);

// Type-variable plumbing inside terms.
TermP shiftTermTypes(const TermP& m, int cutoff, int amount);
TermP substTermType(const TermP& m, const TypeP& arg);
// Evidence-variable plumbing.
TermP shiftTermEvs(const TermP& m, int cutoff, int amount);
TermP substTermEv(const TermP& m, const EvP& arg);
// Term-variable plumbing.
TermP shiftTermVars(const TermP& m, int cutoff, int amount);
TermP substTermTerm(const TermP& m, const TermP& arg);

bool termEq(const TermP& x, const TermP& y);

// ---------------------------------------------------------------- contexts

struct Contexts {
  std::vector<KindP> delta;  // delta.back() is index 0
  std::vector<std::string> deltaNames;
  std::vector<PredP> phi;    // each at the full depth of delta
  std::vector<TypeP> gamma;  // each at the full depth of delta
};

}  // namespace rome
