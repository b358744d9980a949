// rome: check, run, and explore programs.
#include <unistd.h>

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rome/driver.hpp"
#include "rome/pretty.hpp"

using namespace rome;

namespace {

enum Exit { kOk = 0, kLanguage = 1, kIo = 2, kFuel = 3 };

struct Options {
  long fuel = kDefaultFuel;
  bool trace = false;
  bool dumpTypes = false;
  bool explainEvidence = false;
  bool noPrelude = false;
  int entailDepth = 4;
};

bool readFile(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::stringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool startProgram(Program& prog, const Options& o) {
  prog.entailDepth = o.entailDepth;
  if (o.noPrelude) return true;
  try {
    loadPrelude(prog);
  } catch (const std::exception& e) {
    std::cerr << "rome: " << e.what() << "\n";
    return false;
  }
  return true;
}

void describe(const GlobalEntry& g, const Options& o, std::ostream& os) {
  if (o.dumpTypes) os << g.name << " : " << showType(g.type) << "\n";
  if (o.explainEvidence) os << g.name << " = " << showTerm(g.term) << "\n";
}

// Loads a file into prog; returns an exit code.
int loadFile(Program& prog, const std::string& path, const Options& o) {
  std::string text;
  if (!readFile(path, text)) {
    std::cerr << "rome: cannot read " << path << "\n";
    return kIo;
  }
  size_t before = prog.globals.size();
  auto diags = loadSource(prog, text);
  for (const auto& d : diags) std::cerr << formatDiagnostic(path, d) << "\n";
  for (size_t i = before; i < prog.globals.size(); ++i) describe(prog.globals[i], o, std::cout);
  return diags.empty() ? kOk : kLanguage;
}

int evaluate(const Program& prog, const TermP& m, const Options& o, std::ostream& os) {
  long n = 0;
  TraceFn trace;
  if (o.trace)
    trace = [&](const Step& s) { std::cerr << "step " << ++n << ": " << s.rule << ": " << showTerm(s.redex) << "\n"; };
  try {
    os << showValue(evalToValue(prog, m, o.fuel, trace)) << "\n";
  } catch (const OutOfFuel& e) {
    std::cerr << "rome: " << e.what() << "\n";
    return kFuel;
  } catch (const InternalError& e) {
    std::cerr << "rome: internal error: " << e.what() << "\n";
    return kLanguage;
  }
  return kOk;
}

int cmdCheck(const std::vector<std::string>& files, const Options& o) {
  Program prog;
  if (!startProgram(prog, o)) return kLanguage;
  int worst = kOk;
  for (const auto& f : files) worst = std::max(worst, loadFile(prog, f, o));
  return worst;
}

int cmdRun(const std::string& file, const std::string& entry, const std::string& expr, const Options& o) {
  Program prog;
  if (!startProgram(prog, o)) return kLanguage;
  if (!file.empty()) {
    if (int rc = loadFile(prog, file, o)) return rc;
  }
  TermP m;
  if (!expr.empty()) {
    try {
      Elaborated e = elaborateTerm(prog, parseTerm(expr));
      if (o.dumpTypes) std::cout << "it : " << showType(e.type) << "\n";
      if (o.explainEvidence) std::cout << "it = " << showTerm(e.term) << "\n";
      m = e.term;
    } catch (const SourceError& e) {
      std::cerr << formatDiagnostic("<expr>", {e.what(), e.line, e.col}) << "\n";
      return kLanguage;
    }
  } else {
    const GlobalEntry* g = prog.lookup(entry);
    if (!g) {
      std::cerr << "rome: no definition named '" << entry << "'\n";
      return kLanguage;
    }
    m = mGlobal(prog.slots.at(entry), entry);
  }
  return evaluate(prog, m, o, std::cout);
}

class Repl {
 public:
  explicit Repl(const Options& o) : o_(o) {}

  bool start() { return startProgram(prog_, o_); }

  // Handles one input line; returns false on :quit.
  bool line(const std::string& raw, std::ostream& os) {
    std::string s = trim(raw);
    if (s.empty() || s.rfind("--", 0) == 0) return true;
    if (s == ":q" || s == ":quit") return false;
    try {
      if (s.rfind(":t ", 0) == 0) {
        std::string body = trim(s.substr(3));
        if (body.size() > 2 && body.front() == '(' && body.back() == ')') body = trim(body.substr(1, body.size() - 2));
        if (TypeP t = schemeOf(prog_, body)) {
          os << showType(t) << "\n";
        } else {
          Elaborated e = elaborateTerm(prog_, parseTerm(body));
          os << showType(e.type) << "\n";
        }
      } else if (s.rfind(":k ", 0) == 0) {
        os << showKind(kindOfSurface(prog_, parseType(s.substr(3)))) << "\n";
      } else if (s.rfind(":load ", 0) == 0) {
        loadFile(prog_, trim(s.substr(6)), o_);
      } else if (s == ":help") {
        os << ":t EXPR  type of an expression\n:k TYPE  kind of a type\n:load FILE  check and add a file\n"
              ":q  quit\nDECL  add a declaration\nEXPR  evaluate\n";
      } else if (s[0] == ':') {
        os << "unknown command " << s << "; try :help\n";
      } else if (looksLikeDecl(s)) {
        declare(s);
      } else {
        Elaborated e = elaborateTerm(prog_, parseTerm(s));
        evaluate(prog_, e.term, o_, os);
      }
    } catch (const SourceError& e) {
      std::cerr << formatDiagnostic("<repl>", {e.what(), e.line, e.col}) << "\n";
    } catch (const InternalError& e) {
      std::cerr << "<repl>: internal error: " << e.what() << "\n";
    }
    return true;
  }

 private:
  Options o_;
  Program prog_;
  std::string pending_;  // signatures waiting for their definitions

  static std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n"), b = s.find_last_not_of(" \t\r\n");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
  }

  static bool looksLikeDecl(const std::string& s) {
    if (s.rfind("type ", 0) == 0) return true;
    size_t i = 0;
    while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_' || s[i] == '\'')) ++i;
    while (i < s.size() && s[i] == ' ') ++i;
    return i > 0 && i < s.size() && (s[i] == ':' || s[i] == '=');
  }

  void declare(const std::string& s) {
    std::string src = pending_ + s + "\n";
    std::vector<SDecl> decls = parseProgram(src);
    // A trailing signature is held until its definition arrives.
    const SDecl& last = decls.back();
    if (last.tag == SDecl::TermSig || last.tag == SDecl::TypeSig) {
      pending_ = src;
      return;
    }
    pending_.clear();
    size_t before = prog_.globals.size();
    for (const auto& d : checkProgram(prog_, decls)) std::cerr << formatDiagnostic("<repl>", d) << "\n";
    for (size_t i = before; i < prog_.globals.size(); ++i) describe(prog_.globals[i], o_, std::cout);
  }
};

int cmdRepl(const std::vector<std::string>& files, const Options& o, bool interactive) {
  Repl repl(o);
  if (!repl.start()) return kLanguage;
  for (const auto& f : files) repl.line(":load " + f, std::cout);
  std::string l;
  for (;;) {
    if (interactive) std::cout << "rome> " << std::flush;
    if (!std::getline(std::cin, l)) break;
    if (!repl.line(l, std::cout)) break;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rome: row-typed functional language"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--fuel", o.fuel, "evaluation step limit")->capture_default_str();
  app.add_flag("--trace", o.trace, "print each reduction step to stderr");
  app.add_flag("--dump-types", o.dumpTypes, "print the type of each definition");
  app.add_flag("--explain-evidence", o.explainEvidence, "print elaborated terms with their evidence");
  app.add_flag("--no-prelude", o.noPrelude, "do not load the standard prelude");
  app.add_option("--entail-depth", o.entailDepth, "search bound for predicate entailment")->capture_default_str();

  std::vector<std::string> checkFiles;
  auto* check = app.add_subcommand("check", "type-check files");
  check->add_option("files", checkFiles, "source files")->required();

  std::string runFile, entry = "main", expr;
  auto* run = app.add_subcommand("run", "evaluate a definition or expression");
  run->add_option("file", runFile, "source file");
  run->add_option("entry", entry, "definition to evaluate")->capture_default_str();
  run->add_option("-e,--expr", expr, "expression to evaluate instead of an entry");

  std::vector<std::string> replFiles;
  auto* repl = app.add_subcommand("repl", "interactive loop");
  repl->add_option("files", replFiles, "files to load first");

  for (auto* sub : {check, run, repl}) sub->fallthrough();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kIo;
  }
  if (*check) return cmdCheck(checkFiles, o);
  if (*run) {
    if (runFile.empty() && expr.empty()) {
      std::cerr << "rome: run needs a file or --expr\n";
      return kIo;
    }
    return cmdRun(runFile, entry, expr, o);
  }
  return cmdRepl(replFiles, o, isatty(0));
}
