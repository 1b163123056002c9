#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "cirq/io.hpp"
#include "cirq/rules.hpp"

using namespace cirq;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

std::string data(const std::string& f) { return std::string(CIRQ_TEST_DATA) + "/" + f; }

Outcome run(const std::string& args) {
  std::string cmd = std::string(CIRQ_BINARY) + " " + args + " 2>/dev/null";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "cirq_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Cli, Version) {
  Outcome r = run("--version");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "cirq 0.1.0\n");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("valid").code, 2);
  EXPECT_EQ(run("php -n 9").code, 2);
  EXPECT_EQ(run("check " + data("four_shared_proof.clp") + " --profile nope").code, 2);
  EXPECT_EQ(run("valid /nonexistent/file.cirq").code, 2);
}

TEST(Cli, Parse) {
  Outcome bad = run("parse 'P | '");
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(bad.out, "syntax-error position=4\n");
  Outcome ok = run("parse 'P | ~P'");
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(read_cirquent(ok.out).ports().size(), 2u);
}

TEST(Cli, Valid) {
  Outcome yes = run("valid " + data("four_shared.cirq"));
  EXPECT_EQ(yes.code, 0);
  EXPECT_EQ(yes.out, "valid {p1~p3, p2~p5, p4~p6}\n");
  Outcome no = run("valid " + data("tautology_invalid.cirq"));
  EXPECT_EQ(no.code, 1);
  EXPECT_EQ(no.out.rfind("not-valid\n", 0), 0u);
  Outcome tight = run("valid " + data("eight_ports.cirq") + " --port-limit 3");
  EXPECT_EQ(tight.code, 2);
  EXPECT_EQ(tight.out, "budget-exceeded\n");
}

TEST(Cli, Check) {
  Outcome ok = run("check " + data("four_shared_proof.clp"));
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out.rfind("ok steps=", 0), 0u);
  Outcome blass = run("check " + data("blass_merge.clp"));
  EXPECT_EQ(blass.code, 1);
  EXPECT_NE(blass.out.find("kind=RuleNotInProfile"), std::string::npos);
  EXPECT_EQ(run("check " + data("blass_merge.clp") + " --profile cl8-merge").code, 0);
  // A lone cirquent is a derivation of no steps, but not a proof.
  Outcome lone = run("check " + data("eight_ports.cirq"));
  EXPECT_EQ(lone.code, 1);
  EXPECT_EQ(lone.out.rfind("check-failed", 0), 0u);
  EXPECT_EQ(run("check " + data("eight_ports.cirq") + " --derivation").code, 0);
}

TEST(Cli, ProveThenCheck) {
  auto out = scratch("eight_ports.clp");
  Outcome p = run("prove " + data("eight_ports.cirq") + " -o " + out.string());
  EXPECT_EQ(p.code, 0);
  EXPECT_EQ(p.out.rfind("provable steps=", 0), 0u);
  EXPECT_EQ(run("check " + out.string()).code, 0);
  Outcome no = run("prove " + data("tautology_invalid.cirq"));
  EXPECT_EQ(no.code, 1);
  EXPECT_EQ(no.out.rfind("unprovable not-valid", 0), 0u);
}

TEST(Cli, FromG) {
  auto in = scratch("em.gpf");
  write_file(in.string(), "(or (P ~P) (axiom P ~P))\n");
  Outcome r = run("from-g " + in.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(check_proof(read_derivation(r.out), Profile::CL8));
  write_file(in.string(), "(or (P ~P) (axiom P ~Q))\n");
  Outcome bad = run("from-g " + in.string());
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.out.rfind("g-proof-invalid", 0), 0u);
}

TEST(Cli, PhpIsDeterministic) {
  Outcome a = run("php -n 2");
  Outcome b = run("php -n 2");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(check_proof(read_derivation(a.out), Profile::CL8));
  auto out = scratch("php2.clp");
  Outcome s = run("php -n 2 --stats -o " + out.string());
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(s.out.rfind("n 2\nsteps ", 0), 0u);
  EXPECT_EQ(read_file(out.string()), a.out);
}

TEST(Cli, RenderAndStats) {
  Outcome dot = run("render " + data("four_shared.cirq"));
  EXPECT_EQ(dot.code, 0);
  EXPECT_NE(dot.out.find("digraph"), std::string::npos);
  EXPECT_EQ(run("render " + data("four_shared.cirq") + " --format svg").code, 2);
  Outcome st = run("stats " + data("four_shared_proof.clp"));
  EXPECT_EQ(st.code, 0);
  EXPECT_NE(st.out.find("\nrule "), std::string::npos);
}
