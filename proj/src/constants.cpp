#include "rome/typecheck.hpp"

namespace rome {

namespace {
TypeP V(int i) { return tVar(i); }
TypeP piS(TypeP r) { return tApp(tPi(kStar()), std::move(r)); }
TypeP sigmaS(TypeP r) { return tApp(tSigma(kStar()), std::move(r)); }
KindP rowStar() { return kRow(kStar()); }
}  // namespace

TypeP constScheme(Konst k, const KindP& kappa) {
  KindP rs = rowStar();
  switch (k) {
    case Konst::Prj:  // forall y z. y < z => Pi z -> Pi y
      return tForall(rs, tForall(rs, tQual(pLeq(V(1), V(0), rs), tArrow(piS(V(0)), piS(V(1)))), "z"), "y");
    case Konst::Inj:  // forall y z. y < z => Sigma y -> Sigma z
      return tForall(rs, tForall(rs, tQual(pLeq(V(1), V(0), rs), tArrow(sigmaS(V(1)), sigmaS(V(0)))), "z"), "y");
    case Konst::Concat:  // forall x y z. x + y ~ z => Pi x -> Pi y -> Pi z
      return tForall(
          rs,
          tForall(rs,
                  tForall(rs,
                          tQual(pPlus(V(2), V(1), V(0), rs),
                                tArrow(piS(V(2)), tArrow(piS(V(1)), piS(V(0))))),
                          "z"),
                  "y"),
          "x");
    case Konst::Branch:  // forall x y z t. x + y ~ z => (Sigma x -> t) -> (Sigma y -> t) -> Sigma z -> t
      return tForall(
          rs,
          tForall(rs,
                  tForall(rs,
                          tForall(kStar(),
                                  tQual(pPlus(V(3), V(2), V(1), rs),
                                        tArrow(tArrow(sigmaS(V(3)), V(0)),
                                               tArrow(tArrow(sigmaS(V(2)), V(0)), tArrow(sigmaS(V(1)), V(0))))),
                                  "t"),
                          "z"),
                  "y"),
          "x");
    case Konst::Syn: {  // forall f z. #f -> (forall l t. {l := t} < z => #l -> f t) -> Pi (f z)
      if (!kappa) throw InternalError("syn without kind");
      KindP fk = kArrow(kappa, kStar());
      KindP rk = kRow(kappa);
      TypeP body = tForall(
          kLabel(),
          tForall(kappa, tQual(pLeq(tLabRow(V(1), V(0)), V(2), rk), tArrow(tSing(V(1), kLabel()), tApp(V(3), V(0)))),
                  "t"),
          "l");
      return tForall(
          fk, tForall(rk, tArrow(tSing(V(1), fk), tArrow(body, piS(tMap(V(1), V(0), fk)))), "z"), "f");
    }
    case Konst::Ana: {  // forall f z t. #f -> (forall l u. {l := u} < z => #l -> f u -> t) -> Sigma (f z) -> t
      if (!kappa) throw InternalError("ana without kind");
      KindP fk = kArrow(kappa, kStar());
      KindP rk = kRow(kappa);
      TypeP body = tForall(
          kLabel(),
          tForall(kappa,
                  tQual(pLeq(tLabRow(V(1), V(0)), V(3), rk),
                        tArrow(tSing(V(1), kLabel()), tArrow(tApp(V(4), V(0)), V(2)))),
                  "u"),
          "l");
      return tForall(
          fk,
          tForall(rk,
                  tForall(kStar(), tArrow(tSing(V(2), fk), tArrow(body, tArrow(sigmaS(tMap(V(2), V(1), fk)), V(0)))),
                          "t"),
                  "z"),
          "f");
    }
    case Konst::In: {  // forall f. f (Mu f) -> Mu f
      TypeP mu = tApp(tMu(), V(0));
      return tForall(kArrow(kStar(), kStar()), tArrow(tApp(V(0), mu), mu), "f");
    }
    case Konst::Out: {  // forall f. Mu f -> f (Mu f)
      TypeP mu = tApp(tMu(), V(0));
      return tForall(kArrow(kStar(), kStar()), tArrow(mu, tApp(V(0), mu)), "f");
    }
    case Konst::Fix:  // forall t. (t -> t) -> t
      return tForall(kStar(), tArrow(tArrow(V(0), V(0)), V(0)), "t");
  }
  throw InternalError("unknown constant");
}

}  // namespace rome
