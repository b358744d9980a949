#pragma once

#include <functional>

#include "rome/syntax.hpp"

namespace rome {

// Kinds of the type variables in scope (back() is index 0) and of unsolved metas.
// Solved metas must be substituted away before normalizing.
struct NormCtx {
  std::vector<KindP> delta;
  std::function<KindP(int)> metaKind;
};

// Beta-eta-map normal form of t at kind k.
TypeP normalize(const NormCtx& ctx, const TypeP& t, const KindP& k);
PredP normalizePred(const NormCtx& ctx, const PredP& p);
bool typeEqual(const NormCtx& ctx, const TypeP& x, const TypeP& y, const KindP& k);
bool predEqual(const NormCtx& ctx, const PredP& x, const PredP& y);
bool isNormal(const NormCtx& ctx, const TypeP& t, const KindP& k);

// Kind and normal form of a closed type, memoized by node identity.
struct ClosedNormal {
  KindP kind;
  TypeP type;
};
ClosedNormal normalizeClosed(const TypeP& t);

// Normal types are a subset of types, so the embedding is the identity.
inline TypeP embed(const TypeP& n) { return n; }

// Entries of `big` not matched (same label and equal type) in `small`; both sorted.
std::vector<RowEntry> subtract(const std::vector<RowEntry>& big, const std::vector<RowEntry>& small,
                               const std::function<bool(const TypeP&, const TypeP&)>& same = typeEq);

}  // namespace rome
