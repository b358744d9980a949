#include <gtest/gtest.h>

#include <filesystem>

#include "fixtures.hpp"

using namespace rome;

namespace {

std::vector<std::string> preludeSources() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(fixture::sourcePath("prelude")))
    if (e.path().extension() == ".rome") out.push_back(fixture::readFile(e.path().string()));
  return out;
}

}  // namespace

TEST(Parser, EmptyProgram) {
  EXPECT_TRUE(parseProgram("").empty());
  EXPECT_TRUE(parseProgram("-- only a comment\n\n").empty());
}

TEST(Parser, SignatureAndDefinition) {
  auto ds = parseProgram(
      "wand : forall x y z t. x + y ~ z, {'l := t} < z => Pi x -> Pi y -> t\n"
      "wand = \\ m n. prj (m ++ n) / #'l\n");
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds[0].tag, SDecl::TermSig);
  EXPECT_EQ(ds[0].name, "wand");
  EXPECT_EQ(ds[0].type->tag, ST::Forall);
  EXPECT_EQ(ds[0].type->binders.size(), 4u);
  EXPECT_EQ(ds[0].type->a->tag, ST::Qual);
  EXPECT_EQ(ds[0].type->a->preds.size(), 2u);
  EXPECT_EQ(ds[1].tag, SDecl::TermDef);
  EXPECT_EQ(ds[1].term->tag, SM::Lam);
  EXPECT_EQ(ds[1].term->vars.size(), 2u);
  EXPECT_EQ(ds[1].term->a->tag, SM::LabElim);
}

TEST(Parser, TypeSynonym) {
  auto ds = parseProgram("type Pair : * -> * -> *\ntype Pair = \\ t u. Pi {'1 := t, '2 := u}\n");
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds[0].tag, SDecl::TypeSig);
  EXPECT_EQ(showKind(ds[0].kind), "* -> * -> *");
  EXPECT_EQ(ds[1].tag, SDecl::TypeDef);
  EXPECT_EQ(showSType(ds[1].type), "\\ t u. Pi {'1 := t, '2 := u}");
}

TEST(Parser, ContinuationLinesJoin) {
  auto ds = parseProgram("x : Nat\nx =\n  add\n    one two\n");
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(showSTerm(ds[1].term), "add one two");
}

TEST(Parser, OperatorPrecedence) {
  EXPECT_EQ(showSTerm(parseTerm("#'a := x ++ y")), "#'a := x ++ y");
  EXPECT_EQ(parseTerm("a ++ b ++ c")->tag, SM::Concat);
  EXPECT_EQ(parseTerm("f | g")->tag, SM::Branch);
  EXPECT_EQ(parseTerm("r / #'l")->tag, SM::LabElim);
  EXPECT_EQ(parseType("a -> b -> c")->b->tag, ST::Arrow);
  EXPECT_EQ(parseType("z - y")->tag, ST::Compl);
}

TEST(Parser, Kinds) {
  EXPECT_EQ(showKind(parseKind("R[* -> *]")), "R[* -> *]");
  EXPECT_EQ(showKind(parseKind("(* -> *) -> *")), "(* -> *) -> *");
  EXPECT_EQ(showKind(parseKind("L")), "L");
}

TEST(Parser, ErrorsCarryPositions) {
  try {
    parseProgram("x : Nat\nx = (one\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_GE(e.line, 2);
  }
  EXPECT_THROW(parseType("{'a := }"), ParseError);
  EXPECT_THROW(parseTerm("\\ . x"), ParseError);
}

TEST(Parser, PreludeRoundTrips) {
  auto sources = preludeSources();
  ASSERT_GE(sources.size(), 7u);
  int n = 0;
  for (const auto& src : sources)
    for (const auto& d : parseProgram(src)) {
      if (d.type) {
        std::string s = showSType(d.type);
        EXPECT_EQ(showSType(parseType(s)), s) << d.name;
      }
      if (d.term) {
        std::string s = showSTerm(d.term);
        EXPECT_EQ(showSTerm(parseTerm(s)), s) << d.name;
      }
      ++n;
    }
  EXPECT_GT(n, 80);
}

TEST(Parser, CoreTypesPrintReparseable) {
  const Program& p = fixture::prelude();
  for (const auto& g : p.globals) {
    std::string s = showType(g.type);
    TypeP back;
    ASSERT_NO_THROW(back = elaborateType(p, parseType(s))) << g.name << ": " << s;
    EXPECT_TRUE(typeEqual(NormCtx{}, back, g.type, kStar())) << g.name << ": " << s;
  }
}
