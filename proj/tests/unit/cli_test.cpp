#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fixtures.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

// Runs the CLI with stdout and stderr captured together.
Run runCli(const std::string& args, const std::string& input = "") {
  std::string cmd = std::string("\"") + ROME_BIN + "\" " + args + " 2>&1";
  if (!input.empty()) {
    auto in = std::filesystem::temp_directory_path() / "rome_cli_input.txt";
    std::ofstream(in) << input;
    cmd += " < \"" + in.string() + "\"";
  }
  FILE* f = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof buf, f)) out.append(buf, n);
  int st = pclose(f);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string tempFile(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return "\"" + p.string() + "\"";
}

std::string golden() { return "\"" + rome::fixture::sourcePath("tests/golden/eval.rome") + "\""; }

}  // namespace

TEST(Cli, CheckSucceeds) {
  auto r = runCli("check " + golden());
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Cli, RunEntry) {
  auto r = runCli("run " + golden() + " notTrue");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "#'False := tt\n");
}

TEST(Cli, RunExpression) {
  auto r = runCli("run -e \"add one two\"");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "in (#'Succ := in (#'Succ := in (#'Succ := in (#'Zero := tt))))\n");
}

TEST(Cli, TypeErrorExitsOne) {
  auto r = runCli("check " + tempFile("rome_bad.rome", "bad : Nat\nbad = True\n"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("rome_bad.rome:2:"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("error: type mismatch"), std::string::npos);
}

TEST(Cli, ParseErrorExitsOne) {
  EXPECT_EQ(runCli("check " + tempFile("rome_parse.rome", "x = (one\n")).code, 1);
}

TEST(Cli, MissingFileExitsTwo) { EXPECT_EQ(runCli("check /nonexistent/file.rome").code, 2); }

TEST(Cli, UnknownEntryExitsTwoOrOne) {
  int c = runCli("run " + golden() + " noSuchEntry").code;
  EXPECT_TRUE(c == 1 || c == 2);
}

TEST(Cli, OutOfFuelExitsThree) {
  auto f = tempFile("rome_loop.rome", "main : Nat\nmain = fix (\\ x. x)\n");
  auto r = runCli("--fuel 100 run " + f);
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("out of fuel"), std::string::npos);
}

TEST(Cli, TraceGoesToStderr) {
  auto r = runCli("--trace run -e \"not True\"");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("step 1: "), std::string::npos);
  EXPECT_NE(r.out.find("branch"), std::string::npos);
}

TEST(Cli, DumpTypes) {
  auto r = runCli("--dump-types check " + golden());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("notTrue : Sigma {'False := #'Unit, 'True := #'Unit}"), std::string::npos) << r.out;
}

TEST(Cli, NoPreludeHidesDefinitions) {
  EXPECT_EQ(runCli("--no-prelude run -e \"add one two\"").code, 1);
}

TEST(Cli, ReplCommands) {
  auto r = runCli("repl", ":k Pair\n:t id\nfour = add two two\nfour\n:q\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("* -> * -> *"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("forall a. a -> a"), std::string::npos);
  EXPECT_NE(r.out.find("in (#'Succ := in (#'Succ := in (#'Succ := in (#'Succ := in (#'Zero := tt)))))"),
            std::string::npos);
}

TEST(Cli, ReplReportsErrorsAndContinues) {
  auto r = runCli("repl", "undefinedThing\n:t not\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("unbound"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("-> Sigma"), std::string::npos);
}
