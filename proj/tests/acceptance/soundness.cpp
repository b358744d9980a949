#include <random>

#include "acceptance.hpp"
#include "fixtures.hpp"

namespace rome::acceptance {

namespace {

// Random closed surface expressions over the prelude, indexed by result sort.
class ExprGen {
 public:
  explicit ExprGen(unsigned seed) : rng_(seed) {}

  std::string top() {
    switch (below(10)) {
      case 0: return "histo [AllF] (eval [Val]) " + atom(arith(2)) + " nil";
      case 1: return "histo [BL] (desugar [BL] lamFunctor) " + atom(lam(3));
      case 2: return bools(4);
      case 3: return list(3);
      case 4: return maybe(3);
      case 5: return "pair " + atom(nat(2)) + " " + atom(bools(2));
      default: return nat(4);
    }
  }

 private:
  std::mt19937 rng_;

  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  static std::string atom(const std::string& s) { return "(" + s + ")"; }

  std::string nat(int d) {
    if (d <= 0) return pick({"zero", "one", "two", "three"});
    switch (below(13)) {
      case 0: return "succ " + atom(nat(d - 1));
      case 1: return "add " + atom(nat(d - 1)) + " " + atom(nat(d - 1));
      case 2: return "sel ((#'a := " + nat(d - 1) + ") ++ (#'b := " + bools(d - 1) + ")) #'a";
      case 3: return "wand (#'l := " + nat(d - 1) + ") (#'m := " + bools(d - 1) + ")";
      case 4: return "wand (#'k := " + bools(d - 1) + ") ((#'l := " + nat(d - 1) + ") ++ (#'m := zero))";
      case 5: return "fromMaybe " + atom(nat(d - 1)) + " " + atom(maybe(d - 1));
      case 6: return "match " + atom(nat(d - 1)) + " (\\ x. add x " + atom(nat(d - 1)) + ")";
      case 7: return "case #'a (\\ x. succ x) (con #'a " + atom(nat(d - 1)) + ")";
      case 8: return "fst (pair " + atom(nat(d - 1)) + " " + atom(bools(d - 1)) + ")";
      case 9: return "thd (triple " + atom(bools(d - 1)) + " tt " + atom(nat(d - 1)) + ")";
      case 10: return "id [Nat] " + atom(nat(d - 1));
      case 11: return "const " + atom(nat(d - 1)) + " " + atom(bools(d - 1));
      default: return "o succ (add one) " + atom(nat(d - 1));
    }
  }

  std::string bools(int d) {
    if (d <= 0) return pick({"True", "False"});
    switch (below(6)) {
      case 0: return "not " + atom(bools(d - 1));
      case 1: return "notMatch " + atom(bools(d - 1));
      case 2: return "snd (pair " + atom(nat(d - 1)) + " " + atom(bools(d - 1)) + ")";
      case 3: return "((case #'a (\\ x. x)) | (case #'b not)) (con #'a " + atom(bools(d - 1)) + ")";
      case 4: return "sel (#'c := " + bools(d - 1) + ") #'c";
      default: return "match " + atom(bools(d - 1)) + " not";
    }
  }

  std::string maybe(int d) {
    if (d <= 0) return pick({"Nothing", "Just zero"});
    switch (below(3)) {
      case 0: return "Just " + atom(nat(d - 1));
      case 1: return "head " + atom(list(d - 1));
      default: return "nth " + atom(list(d - 1)) + " " + atom(nat(d - 1));
    }
  }

  std::string list(int d) {
    if (d <= 0) return "nil";
    switch (below(3)) {
      case 0: return "cons " + atom(nat(d - 1)) + " " + atom(list(d - 1));
      case 1: return "tail " + atom(list(d - 1));
      default: return "cons zero " + atom(list(d - 1));
    }
  }

  std::string arith(int d) {
    if (d <= 0) return below(2) ? "rcon #'IConst " + atom(nat(1)) : "rcon #'BConst " + atom(bools(1));
    switch (below(4)) {
      case 0: return "rcon #'Plus (pair " + atom(arith(d - 1)) + " " + atom(arith(d - 1)) + ")";
      case 1:
        return "rcon #'If (triple " + atom(arith(d - 1)) + " " + atom(arith(d - 1)) + " " + atom(arith(d - 1)) + ")";
      default: return arith(0);
    }
  }

  std::string lam(int d) {
    if (d <= 0) return below(2) ? "rcon #'Var " + atom(nat(1)) : "rcon #'BConst " + atom(bools(1));
    switch (below(5)) {
      case 0: return "rcon #'Lam " + atom(lam(d - 1));
      case 1: return "rcon #'App (pair " + atom(lam(d - 1)) + " " + atom(lam(d - 1)) + ")";
      case 2:
        return "rcon #'If (triple " + atom(lam(d - 1)) + " " + atom(lam(d - 1)) + " " + atom(lam(d - 1)) + ")";
      default: return lam(0);
    }
  }

  std::string pick(std::initializer_list<const char*> xs) { return *(xs.begin() + below((int)xs.size())); }
};

}  // namespace

Outcome soundness() {
  const Program& p = fixture::goldens();
  ExprGen g(515);
  int terms = 0, rejected = 0;
  long steps = 0;
  for (int attempt = 0; terms < 250 && attempt < 2000; ++attempt) {
    std::string src = g.top();
    Elaborated e;
    try {
      e = elaborateTerm(p, parseTerm(src));
    } catch (const SourceError&) {
      ++rejected;
      continue;
    }
    TermP cur = e.term;
    long n = 0;
    for (;;) {
      std::optional<Step> s;
      try {
        s = step(p, cur);
      } catch (const StuckTerm& err) {
        return {false, "stuck in " + src + ": " + err.what()};
      }
      if (!s) break;
      cur = s->term;
      TypeP t = typeOf(p, Contexts{}, cur);
      if (!typeEqual(NormCtx{}, t, e.type, kStar()))
        return {false, "type changed by " + s->rule + " in " + src + ": " + showType(t)};
      if (++n > kDefaultFuel) return {false, "out of fuel: " + src};
    }
    steps += n;
    ++terms;
  }
  if (terms < 200) return {false, "only " + std::to_string(terms) + " generated terms elaborated"};
  return {true, std::to_string(terms) + " terms, " + std::to_string(steps) + " steps rechecked, " +
                    std::to_string(rejected) + " candidates rejected by the checker"};
}

}  // namespace rome::acceptance
