#include <gtest/gtest.h>

#include <algorithm>

#include "cirq/formula.hpp"
#include "cirq/gbridge.hpp"
#include "cirq/io.hpp"
#include "cirq/prover.hpp"
#include "generators.hpp"

using namespace cirq;
namespace gen = cirq::testing;

namespace {

std::string data(const std::string& f) { return read_file(std::string(CIRQ_TEST_DATA) + "/" + f); }

std::size_t error_line(const std::string& text) {
  try {
    read_derivation(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(CirqFormat, RoundTrip) {
  gen::Rng rng(61);
  for (int t = 0; t < 200; ++t) {
    gen::RandomSpec spec;
    spec.gates = 1 + t % 6;
    spec.ports = t % 7;
    Cirquent c = gen::random_cirquent(rng, spec);
    EXPECT_EQ(read_cirquent(write_cirquent(c)), c);
  }
  for (const char* f : {"four_shared.cirq", "eight_ports.cirq", "tautology_invalid.cirq", "mixed_gates.cirq"}) {
    Cirquent c = read_cirquent(data(f));
    EXPECT_EQ(read_cirquent(write_cirquent(c, "x")), c) << f;
  }
}

TEST(CirqFormat, CommentsAndBlocks) {
  std::string text =
      "# leading comment\n"
      "cirquent one\n"
      "node o gate and  # trailing\n"
      "root o\n"
      "end\n"
      "\n"
      "cirquent two\n"
      "node o gate or\n"
      "node p port ~P\n"
      "edge o p\n"
      "root o\n"
      "end\n";
  auto blocks = read_cirquents(text);
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0].first, "one");
  EXPECT_TRUE(blocks[0].second.is_axiom());
  EXPECT_EQ(blocks[1].second.label("p"), Label::port("P", true));
  EXPECT_THROW(read_cirquent(text), ParseError);
}

TEST(CirqFormat, ErrorsCarryLines) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      read_cirquents(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("cirquent c\nnode o gate xor\nend\n"), 2u);
  EXPECT_EQ(line_of("cirquent c\nnode o gate and\nedge o q\nroot o\nend\n"), 5u);
  EXPECT_EQ(line_of("cirquent c\nnode o gate and\nroot o\n"), 3u);
  EXPECT_EQ(line_of("node o gate and\n"), 1u);
  EXPECT_EQ(line_of("cirquent c\nnode 1x! gate and\nend\n"), 2u);
}

TEST(ClpFormat, StepLines) {
  Step s{RuleId(Rule::Deepening, Gate::Or), {}};
  s.params.with("a", "g1").with("b", "g2").with("Gamma", NameSet{"p", "q"}).with("Delta", NameSet{});
  std::string line = write_step(s);
  EXPECT_EQ(line, "step deepening/or a=g1 b=g2 Gamma={p,q}");
  Step back = read_step(line);
  EXPECT_EQ(back.rule, s.rule);
  EXPECT_EQ(back.params, s.params);

  Step c{Rule::Coupling, {}};
  c.params.with("a", "o").with("b", "x").with("c", "y");
  c.params.atom = "P";
  EXPECT_EQ(read_step(write_step(c)).params, c.params);

  Step r{Rule::Redraw, {}};
  r.params.mapping = {{"a", "b"}, {"b", "a"}};
  EXPECT_EQ(read_step(write_step(r)).params, r.params);

  EXPECT_THROW(read_step("step deepening a=x"), ParseError);
  EXPECT_THROW(read_step("step coupling a=x Gamma={p"), ParseError);
  EXPECT_THROW(read_step("stop coupling"), ParseError);
}

TEST(ClpFormat, DerivationRoundTrip) {
  for (const char* f : {"four_shared_proof.clp", "blass_merge.clp"}) {
    Derivation d = read_derivation(data(f));
    Derivation e = read_derivation(write_derivation(d));
    EXPECT_EQ(e.cirquents, d.cirquents) << f;
    ASSERT_EQ(e.steps.size(), d.steps.size());
    for (std::size_t k = 0; k < d.steps.size(); ++k) {
      EXPECT_EQ(e.steps[k].rule, d.steps[k].rule);
      EXPECT_EQ(e.steps[k].params, d.steps[k].params);
    }
  }
  Derivation p = *prove(read_cirquent(data("eight_ports.cirq"))).proof;
  EXPECT_EQ(read_derivation(write_derivation(p)).cirquents, p.cirquents);
}

TEST(ClpFormat, StepErrorsCarryLines) {
  std::string text = data("four_shared_proof.clp");
  // Corrupt the first step line.
  auto pos = text.find("\nstep ") + 1;
  ASSERT_NE(pos, 0u);
  std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + pos, '\n'));
  text.replace(pos, 5, "step nonsense ");
  EXPECT_EQ(error_line(text), line);
  EXPECT_NE(error_line("cirquent a\nnode o gate and\nroot o\nend\ncirquent b\nnode o gate and\nroot o\nend\n"),
            0u);
}

TEST(GpfFormat, RoundTrip) {
  gen::Rng rng(62);
  for (int t = 0; t < 40; ++t) {
    Formula f = gen::random_tautology(rng, 2 + t % 5, 3);
    auto g = prove_g(f);
    ASSERT_TRUE(g);
    GProof back = read_gproof(write_gproof(*g));
    EXPECT_EQ(write_gproof(back), write_gproof(*g));
    EXPECT_TRUE(check_g_proof(back));
    EXPECT_EQ(back.sequent, g->sequent);
  }
}

TEST(GpfFormat, HandWritten) {
  GProof g = read_gproof(
      "; excluded middle\n"
      "(or (P ~P) (axiom P ~P))\n");
  EXPECT_TRUE(check_g_proof(g));
  EXPECT_EQ(g.sequent, (Sequent{parse("P | ~P")}));
  EXPECT_THROW(read_gproof("(or (P ~P) (axiom P ~P)"), ParseError);
  EXPECT_THROW(read_gproof("(cut (P) (axiom P ~P))"), ParseError);
}

// ~P is both a side formula and a component; only the header says which.
TEST(GpfFormat, ConclusionHeader) {
  const std::string body = "(or (~P P) (axiom ~P P))\n";
  GProof bare = read_gproof(body);
  EXPECT_EQ(bare.sequent, (Sequent{parse("~P | P")}));
  GProof g = read_gproof("(conclusion ~P \"~P | P\")\n" + body);
  EXPECT_EQ(g.sequent, (Sequent{parse("~P"), parse("~P | P")}));
  EXPECT_TRUE(check_g_proof(g));
}

TEST(Dot, Shapes) {
  std::string dot = render_dot(read_cirquent(data("four_shared.cirq")), "shared");
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("rankdir=BT"), std::string::npos);
  EXPECT_NE(dot.find("shape=box"), std::string::npos);
  EXPECT_NE(dot.find("\"p1\""), std::string::npos);
  EXPECT_EQ(dot.back(), '\n');
}
