#include "rome/driver.hpp"

#include "rome/prelude_data.hpp"

namespace rome {

std::vector<Diagnostic> loadSource(Program& prog, const std::string& source) {
  std::vector<SDecl> decls;
  try {
    decls = parseProgram(source);
  } catch (const ParseError& e) {
    return {{e.what(), e.line, e.col}};
  }
  return checkProgram(prog, decls);
}

void loadPrelude(Program& prog) {
  for (const auto& [name, text] : kPreludeFiles) {
    auto diags = loadSource(prog, text);
    if (!diags.empty()) throw InternalError("prelude " + formatDiagnostic(name, diags.front()));
  }
}

std::string formatDiagnostic(const std::string& file, const Diagnostic& d) {
  std::string at = file;
  if (d.line > 0) at += ":" + d.where();
  return at + ": error: " + d.message;
}

KindP kindOfSurface(const Program& prog, const STypeP& t) {
  KindChecker kc(prog.synonyms);
  TyScope scope;
  KindP k;
  TypeP r = kc.infer(t, scope, k);
  kc.finish(r, t->pos);
  return kc.finish(kc.zonk(k), t->pos);
}

TypeP schemeOf(const Program& prog, const std::string& name) {
  if (const GlobalEntry* g = prog.lookup(name)) return g->type;
  for (Konst k : {Konst::Prj, Konst::Concat, Konst::Inj, Konst::Branch, Konst::Syn, Konst::Ana, Konst::In, Konst::Out,
                  Konst::Fix})
    if (name == konstName(k)) return constScheme(k, kStar());
  return nullptr;
}

}  // namespace rome
