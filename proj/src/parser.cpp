#include "rome/parser.hpp"

#include <cctype>

namespace rome {

std::string SourceError::where() const {
  if (line <= 0) return what();
  return std::to_string(line) + ":" + std::to_string(col) + ": " + what();
}

namespace {

enum class Tok { Ident, Label, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  Pos pos;
};

const char* kSymbols[] = {"/\\", ":=", "=>", "->", "++", "\\", ".", ":", "=", "<", "+", "~", ",",
                          "(",   ")",  "{",  "}",  "[",  "]", "#", "|", "/", "-", "*"};

bool identStart(char c) { return std::isalpha((unsigned char)c) || c == '_'; }
bool identChar(char c) { return std::isalnum((unsigned char)c) || c == '_' || c == '\''; }

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace((unsigned char)c)) {
      advance(1);
      continue;
    }
    if (src.compare(i, 2, "--") == 0) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Pos pos{line, col};
    if (identStart(c)) {
      size_t j = i;
      while (j < src.size() && identChar(src[j])) ++j;
      out.push_back({Tok::Ident, src.substr(i, j - i), pos});
      advance(j - i);
      continue;
    }
    if (c == '\'') {
      size_t j = i + 1;
      while (j < src.size() && (std::isalnum((unsigned char)src[j]) || src[j] == '_')) ++j;
      if (j == i + 1) throw ParseError("lexical error: empty label", line, col);
      out.push_back({Tok::Label, src.substr(i + 1, j - i - 1), pos});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (const char* s : kSymbols) {
      std::string sym(s);
      if (src.compare(i, sym.size(), sym) == 0) {
        out.push_back({Tok::Sym, sym, pos});
        advance(sym.size());
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(std::string("lexical error: unexpected character '") + c + "'", line, col);
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

template <class T>
std::shared_ptr<T> node(Pos p) {
  auto n = std::make_shared<T>();
  n->pos = p;
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  std::vector<SDecl> program() {
    std::vector<SDecl> out;
    while (!atEnd()) out.push_back(decl());
    return out;
  }

  STermP wholeTerm() {
    auto m = term();
    expectEnd();
    return m;
  }
  STypeP wholeType() {
    auto t = type();
    expectEnd();
    return t;
  }
  KindP wholeKind() {
    auto k = kind();
    expectEnd();
    return k;
  }

 private:
  std::vector<Token> toks_;
  size_t p_ = 0;

  const Token& peek(size_t k = 0) const { return toks_[std::min(p_ + k, toks_.size() - 1)]; }
  bool atEnd() const { return peek().kind == Tok::End; }
  bool isSym(const char* s, size_t k = 0) const { return peek(k).kind == Tok::Sym && peek(k).text == s; }
  bool isIdent(const char* s) const { return peek().kind == Tok::Ident && peek().text == s; }
  Token next() { return toks_[p_ < toks_.size() - 1 ? p_++ : p_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", found " + found, t.pos.line, t.pos.col);
  }
  void expect(const char* s) {
    if (!isSym(s)) fail(std::string("expected '") + s + "'");
    next();
  }
  void expectEnd() {
    if (!atEnd()) fail("unexpected token");
  }
  std::string ident(const char* what) {
    if (peek().kind != Tok::Ident || isKeyword(peek().text)) fail(std::string("expected ") + what);
    return next().text;
  }
  static bool isKeyword(const std::string& s) {
    return s == "type" || s == "forall" || s == "Pi" || s == "Sigma" || s == "Mu";
  }
  // An identifier followed by '=' or ':' begins the next declaration.
  bool atDeclStart() const {
    if (isIdent("type")) return true;
    return peek().kind == Tok::Ident && (isSym("=", 1) || isSym(":", 1));
  }

  SDecl decl() {
    SDecl d{};
    d.pos = peek().pos;
    if (isIdent("type")) {
      next();
      d.name = ident("a type name");
      if (isSym(":")) {
        next();
        d.tag = SDecl::TypeSig;
        d.kind = kind();
      } else {
        expect("=");
        d.tag = SDecl::TypeDef;
        d.type = type();
      }
      if (!atEnd() && !atDeclStart()) fail("expected a new declaration");
      return d;
    }
    d.name = ident("a declaration");
    if (isSym(":")) {
      next();
      d.tag = SDecl::TermSig;
      d.type = type();
    } else {
      expect("=");
      d.tag = SDecl::TermDef;
      d.term = term();
    }
    if (!atEnd() && !atDeclStart()) fail("expected a new declaration");
    return d;
  }

  // ---------------------------------------------------------------- kinds

  KindP kind() {
    KindP k = kindAtom();
    if (isSym("->")) {
      next();
      return kArrow(k, kind());
    }
    return k;
  }
  KindP kindAtom() {
    if (isSym("*")) {
      next();
      return kStar();
    }
    if (isSym("(")) {
      next();
      KindP k = kind();
      expect(")");
      return k;
    }
    if (isIdent("L")) {
      next();
      return kLabel();
    }
    if (isIdent("R") && isSym("[", 1)) {
      next();
      next();
      KindP k = kind();
      expect("]");
      return kRow(k);
    }
    fail("expected a kind");
  }

  // Binder groups: `a b`, `a b : k`, `(a b : k) (c : k)`.
  std::vector<SBinder> binders() {
    std::vector<SBinder> out;
    while (true) {
      if (isSym("(")) {
        next();
        size_t start = out.size();
        while (peek().kind == Tok::Ident) out.push_back({ident("a binder"), nullptr});
        if (out.size() == start) fail("expected a binder");
        expect(":");
        KindP k = kind();
        for (size_t i = start; i < out.size(); ++i) out[i].kind = k;
        expect(")");
      } else if (peek().kind == Tok::Ident && !isKeyword(peek().text)) {
        out.push_back({next().text, nullptr});
      } else {
        break;
      }
    }
    if (out.empty()) fail("expected a binder");
    if (isSym(":")) {
      next();
      KindP k = kind();
      for (auto& b : out)
        if (!b.kind) b.kind = k;
    }
    return out;
  }

  // ---------------------------------------------------------------- types

  STypeP type() {
    Pos pos = peek().pos;
    if (isIdent("forall") || isSym("\\")) {
      bool all = isIdent("forall");
      next();
      auto t = node<SType>(pos);
      t->tag = all ? ST::Forall : ST::Lam;
      t->binders = binders();
      expect(".");
      t->a = type();
      return t;
    }
    STypeP first = arrowType();
    if (!isSym("<") && !isSym("+")) return first;
    auto q = node<SType>(pos);
    q->tag = ST::Qual;
    q->preds.push_back(predRest(first));
    while (isSym(",")) {
      next();
      q->preds.push_back(predRest(complType()));
    }
    expect("=>");
    q->a = type();
    return q;
  }

  SPred predRest(const STypeP& lhs) {
    if (isSym("<")) {
      next();
      return SPred{Pred::Leq, lhs, complType(), nullptr};
    }
    expect("+");
    STypeP b = complType();
    expect("~");
    return SPred{Pred::Plus, lhs, b, complType()};
  }

  STypeP arrowType() {
    Pos pos = peek().pos;
    STypeP a = complType();
    if (!isSym("->")) return a;
    next();
    auto t = node<SType>(pos);
    t->tag = ST::Arrow;
    t->a = a;
    t->b = isSym("\\") || isIdent("forall") ? type() : arrowType();
    return t;
  }

  STypeP complType() {
    Pos pos = peek().pos;
    STypeP a = appType();
    while (isSym("-")) {
      next();
      auto t = node<SType>(pos);
      t->tag = ST::Compl;
      t->a = a;
      t->b = appType();
      a = t;
    }
    return a;
  }

  bool typeAtomStart() const {
    if (atDeclStart()) return false;
    const Token& t = peek();
    if (t.kind == Tok::Ident) return t.text != "type" && t.text != "forall";
    if (t.kind == Tok::Label) return true;
    return isSym("(") || isSym("{") || isSym("#") || isSym("\\");
  }

  STypeP appType() {
    Pos pos = peek().pos;
    if (!typeAtomStart()) fail("expected a type");
    STypeP f = typeAtom();
    while (typeAtomStart()) {
      auto t = node<SType>(pos);
      t->tag = ST::App;
      t->a = f;
      t->b = typeAtom();
      f = t;
    }
    return f;
  }

  STypeP typeAtom() {
    Pos pos = peek().pos;
    if (isSym("\\")) return type();
    auto t = node<SType>(pos);
    const Token& tok = peek();
    if (tok.kind == Tok::Label) {
      t->tag = ST::Label;
      t->name = next().text;
      return t;
    }
    if (tok.kind == Tok::Ident) {
      std::string s = next().text;
      t->tag = s == "Pi" ? ST::Pi : s == "Sigma" ? ST::Sigma : s == "Mu" ? ST::Mu : ST::Var;
      t->name = s;
      return t;
    }
    if (isSym("#")) {
      next();
      t->tag = ST::Sing;
      t->a = typeAtom();
      return t;
    }
    if (isSym("(")) {
      next();
      STypeP inner = type();
      expect(")");
      return inner;
    }
    expect("{");
    t->tag = ST::Row;
    if (!isSym("}")) {
      while (true) {
        if (!typeAtomStart() || isSym("\\")) fail("expected a row label");
        STypeP l = typeAtom();
        expect(":=");
        t->row.emplace_back(l, type());
        if (!isSym(",")) break;
        next();
      }
    }
    expect("}");
    return t;
  }

  // ---------------------------------------------------------------- terms

  STermP binary(SM tag, Pos pos, STermP a, STermP b) {
    auto m = node<STerm>(pos);
    m->tag = tag;
    m->a = std::move(a);
    m->b = std::move(b);
    return m;
  }

  // Loosest first: `:=` (right), `|`, `++`, `/` (left), application.
  STermP term() {
    Pos pos = peek().pos;
    STermP a = branchTerm();
    if (isSym(":=")) {
      next();
      return binary(SM::LabIntro, pos, a, term());
    }
    return a;
  }
  STermP branchTerm() {
    Pos pos = peek().pos;
    STermP a = concatTerm();
    while (isSym("|")) {
      next();
      a = binary(SM::Branch, pos, a, concatTerm());
    }
    return a;
  }
  STermP concatTerm() {
    Pos pos = peek().pos;
    STermP a = elimTerm();
    while (isSym("++")) {
      next();
      a = binary(SM::Concat, pos, a, elimTerm());
    }
    return a;
  }
  STermP elimTerm() {
    Pos pos = peek().pos;
    STermP a = appTerm();
    while (isSym("/") ) {
      next();
      a = binary(SM::LabElim, pos, a, appTerm());
    }
    return a;
  }

  bool termAtomStart() const {
    if (atDeclStart()) return false;
    const Token& t = peek();
    if (t.kind == Tok::Ident) return !isKeyword(t.text);
    return isSym("(") || isSym("#") || isSym("\\") || isSym("/\\");
  }

  STermP appTerm() {
    Pos pos = peek().pos;
    if (!termAtomStart()) fail("expected a term");
    STermP f = termAtom();
    while (true) {
      if (isSym("[")) {
        next();
        auto m = node<STerm>(pos);
        m->tag = SM::TyApp;
        m->a = f;
        m->ty = type();
        expect("]");
        f = m;
      } else if (termAtomStart()) {
        bool lam = isSym("\\") || isSym("/\\");
        f = binary(SM::App, pos, f, termAtom());
        if (lam) break;
      } else {
        break;
      }
    }
    return f;
  }

  STermP termAtom() {
    Pos pos = peek().pos;
    auto m = node<STerm>(pos);
    if (isSym("\\")) {
      next();
      m->tag = SM::Lam;
      while (peek().kind == Tok::Ident && !isKeyword(peek().text)) m->vars.push_back(next().text);
      if (m->vars.empty()) fail("expected a variable");
      expect(".");
      m->a = term();
      return m;
    }
    if (isSym("/\\")) {
      next();
      m->tag = SM::TyLam;
      m->binders = binders();
      expect(".");
      m->a = term();
      return m;
    }
    if (isSym("#")) {
      next();
      m->tag = SM::Sing;
      m->ty = typeAtom();
      return m;
    }
    if (isSym("(")) {
      next();
      STermP inner = term();
      expect(")");
      return inner;
    }
    m->tag = SM::Var;
    m->name = ident("a term");
    return m;
  }
};

}  // namespace

std::vector<SDecl> parseProgram(const std::string& source) { return Parser(source).program(); }
STermP parseTerm(const std::string& source) { return Parser(source).wholeTerm(); }
STypeP parseType(const std::string& source) { return Parser(source).wholeType(); }
KindP parseKind(const std::string& source) { return Parser(source).wholeKind(); }

}  // namespace rome
