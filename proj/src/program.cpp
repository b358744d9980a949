#include "elab.hpp"

namespace rome {

namespace {

[[noreturn]] void fail(const std::string& msg, Pos pos) { throw TypeError(msg, pos.line, pos.col); }

Elaborated elaborate(const Program& prog, const STermP& m, const TypeP& expected, const std::string& what,
                     Pos pos) {
  Elab e(prog);
  Elaborated r = expected ? e.check(m, expected) : e.infer(m);
  e.discharge(true);
  TermP t = e.finish(r.term, pos);
  TypeP ty = e.nf(r.type);
  if (hasMeta(ty)) fail("cannot infer a closed type for " + what + "; add a type signature", pos);
  return {t, ty};
}

}  // namespace

TypeP elaborateType(const Program& prog, const STypeP& t) {
  KindChecker kc(prog.synonyms);
  TyScope scope;
  TypeP r = kc.finish(kc.check(t, scope, kStar()), t->pos);
  return normalize({}, r, kStar());
}

Elaborated elaborateTerm(const Program& prog, const STermP& m, const TypeP& expected) {
  return elaborate(prog, m, expected ? normalize({}, expected, kStar()) : nullptr, "the expression", m->pos);
}

std::vector<Diagnostic> checkProgram(Program& prog, const std::vector<SDecl>& decls) {
  std::vector<Diagnostic> diags;
  std::map<std::string, KindP> kindSigs;
  std::map<std::string, TypeP> typeSigs;
  for (const auto& d : decls) {
    try {
      switch (d.tag) {
        case SDecl::TypeSig:
          if (prog.synonyms.count(d.name) || kindSigs.count(d.name))
            fail("duplicate type declaration '" + d.name + "'", d.pos);
          kindSigs[d.name] = d.kind;
          break;
        case SDecl::TypeDef: {
          if (prog.synonyms.count(d.name)) fail("duplicate type definition '" + d.name + "'", d.pos);
          KindChecker kc(prog.synonyms);
          TyScope scope;
          KindP k;
          TypeP t;
          auto sig = kindSigs.find(d.name);
          if (sig != kindSigs.end()) {
            k = sig->second;
            t = kc.check(d.type, scope, k);
          } else {
            t = kc.infer(d.type, scope, k);
          }
          t = kc.finish(t, d.pos);
          k = kc.finish(kc.zonk(k), d.pos);
          prog.synonyms[d.name] = {k, normalize({}, t, k)};
          break;
        }
        case SDecl::TermSig:
          if (typeSigs.count(d.name) || prog.lookup(d.name)) fail("duplicate signature for '" + d.name + "'", d.pos);
          typeSigs[d.name] = elaborateType(prog, d.type);
          break;
        case SDecl::TermDef: {
          if (prog.lookup(d.name)) fail("duplicate definition of '" + d.name + "'", d.pos);
          auto sig = typeSigs.find(d.name);
          TypeP expected = sig == typeSigs.end() ? nullptr : sig->second;
          Elaborated r = elaborate(prog, d.term, expected, "'" + d.name + "'", d.pos);
          prog.slots[d.name] = (int)prog.globals.size();
          prog.globals.push_back({d.name, r.type, r.term, d.pos});
          break;
        }
      }
    } catch (const SourceError& e) {
      Pos p = e.line ? Pos{e.line, e.col} : d.pos;
      diags.push_back({e.what(), p.line, p.col});
    } catch (const InternalError& e) {
      diags.push_back({std::string("internal error: ") + e.what(), d.pos.line, d.pos.col});
    }
  }
  return diags;
}

}  // namespace rome
