#include <gtest/gtest.h>

#include <functional>

#include "cirq/formula.hpp"
#include "cirq/io.hpp"
#include "generators.hpp"

using namespace cirq;
namespace gen = cirq::testing;

namespace {

Cirquent load(const std::string& f) { return read_cirquent(read_file(std::string(CIRQ_TEST_DATA) + "/" + f)); }

Formula L(const std::string& a, bool neg = false) { return Formula::lit(a, neg); }

std::size_t count_label(const Cirquent& c, const Label& l) {
  std::size_t k = 0;
  for (const auto& [_, n] : c.nodes()) k += n.label == l;
  return k;
}

std::size_t syntax_error_at(const std::string& text) {
  try {
    parse(text);
  } catch (const SyntaxError& e) {
    return e.position();
  }
  return std::string::npos;
}

// Random hyperformula: overlines on some subterms, never directly nested.
Formula random_hyper(gen::Rng& rng, std::size_t size, bool inside) {
  Formula f = gen::random_formula(rng, size, 3);
  std::function<void(Formula&, bool)> mark = [&](Formula& x, bool parent_marked) {
    if (!parent_marked && rng() % 4 == 0) x.overlined = true;
    for (auto& ch : x.children) mark(ch, x.overlined);
  };
  mark(f, inside);
  return f;
}

}  // namespace

TEST(Parse, Abbreviations) {
  EXPECT_EQ(parse("P -> Q"), Formula::disj({L("P", true), L("Q")}));
  EXPECT_EQ(parse("~(P & Q)"), Formula::disj({L("P", true), L("Q", true)}));
  EXPECT_EQ(parse("~~P"), L("P"));
  EXPECT_EQ(parse("#t"), Formula::top());
  EXPECT_EQ(parse("#f"), Formula::bottom());
  EXPECT_EQ(parse("~#t"), Formula::bottom());
  EXPECT_EQ(parse("((P))"), L("P"));
  EXPECT_EQ(parse("&{P}"), L("P"));
}

TEST(Parse, PrecedenceAndArity) {
  EXPECT_EQ(parse("P | Q & R"), Formula::disj({L("P"), Formula::conj({L("Q"), L("R")})}));
  EXPECT_EQ(parse("P & Q & R"), parse("&{P, Q, R}"));
  EXPECT_EQ(parse("P -> Q -> R").kind, Formula::Kind::Or);
  EXPECT_EQ(parse("|{}"), Formula::bottom());
  EXPECT_EQ(parse("~|{P, ~Q}"), Formula::conj({L("P", true), L("Q")}));
}

TEST(Parse, Overlines) {
  Formula f = parse("[P] & Q");
  EXPECT_TRUE(f.children[0].overlined);
  EXPECT_FALSE(f.children[1].overlined);
  EXPECT_TRUE(parse("[[P] & Q]").overlined);
}

TEST(Parse, Errors) {
  EXPECT_EQ(syntax_error_at("P | "), 4u);
  // The second & starts a variadic &{...}, so the brace is missing at Q.
  EXPECT_EQ(syntax_error_at("P & & Q"), 6u);
  EXPECT_EQ(syntax_error_at("(P"), 2u);
  EXPECT_EQ(syntax_error_at("P Q"), 2u);
  EXPECT_NE(syntax_error_at("$"), std::string::npos);
  try {
    parse("[[P]]");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.kind(), SyntaxError::Kind::DoubleOverline);
  }
  try {
    parse("~[P & Q]");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.kind(), SyntaxError::Kind::NegatedOverline);
  }
}

TEST(ToCirquent, SharedOverlinedPort) {
  Cirquent c = to_cirquent(parse("(Q | [R]) & ([R] & Q)"));
  EXPECT_EQ(c.node_count(), 6u);
  EXPECT_EQ(count_label(c, Label::port("R")), 1u);
  EXPECT_EQ(count_label(c, Label::port("Q")), 2u);
  EXPECT_TRUE(c.label(c.root()).is(Gate::And));
  EXPECT_EQ(count_label(c, Label::disj()), 1u);
  EXPECT_EQ(count_label(c, Label::conj()), 2u);
}

TEST(ToCirquent, CompressedRegion) {
  Cirquent c = to_cirquent(parse("[(~P | P) & (~P | P) & P]"));
  EXPECT_EQ(c.node_count(), 4u);
  EXPECT_TRUE(c.label(c.root()).is(Gate::And));
  EXPECT_EQ(c.children(c.root()).size(), 2u);
}

TEST(ToCirquent, TreeWithoutOverlines) {
  Cirquent c = to_cirquent(parse("(Q | R) & (R & Q)"));
  EXPECT_EQ(c.node_count(), 7u);
  EXPECT_EQ(c.edge_count(), 6u);
}

TEST(ToCirquent, ScopeDecidesSharing) {
  Cirquent c = to_cirquent(parse("(Q | [R]) & (R & Q)"));
  EXPECT_EQ(count_label(c, Label::port("R")), 2u);
}

TEST(ToCirquent, SingleLiteral) {
  Cirquent c = to_cirquent(underline(L("P")));
  EXPECT_EQ(c.node_count(), 1u);
  EXPECT_EQ(c.label(c.root()), Label::port("P"));
  Cirquent pp = to_cirquent(underline(Formula::conj({L("P"), L("P")})));
  EXPECT_EQ(pp.node_count(), 2u);
  EXPECT_EQ(pp.edge_count(), 1u);
}

TEST(Underline, GivesFourShared) {
  Formula f = parse("~P | (~Q & P) | (P & ~R) | (Q & R)");
  Cirquent c = to_cirquent(underline(f));
  EXPECT_EQ(c.node_count(), 10u);
  EXPECT_EQ(canonical_key(c), canonical_key(load("four_shared.cirq")));
  EXPECT_EQ(canonical_key(to_cirquent(f)), canonical_key(load("four_tree.cirq")));
}

TEST(Underline, AlwaysCircuitAndEquivalent) {
  gen::Rng rng(3);
  std::size_t repeats = 0;
  for (int t = 0; t < 500; ++t) {
    Formula f = gen::random_formula(rng, 2 + t % 6, 3);
    std::set<std::pair<std::string, bool>> seen;
    bool repeated = false;
    std::function<void(const Formula&)> walk = [&](const Formula& x) {
      if (x.is_lit() && !seen.emplace(x.atom, x.negated).second) repeated = true;
      for (const auto& ch : x.children) walk(ch);
    };
    walk(f);
    repeats += repeated;
    // Identical underlined literals share one port, so the result is always a circuit.
    EXPECT_TRUE(is_circuit(to_cirquent(underline(f)))) << render(f);
    EXPECT_EQ(is_circuit(to_cirquent(f)), !repeated) << render(f);
    EXPECT_EQ(to_cirquent(underline(f)).ports().size(), seen.size());
  }
  EXPECT_GT(repeats, 100u);
}

TEST(ToCirquent, TreeNodeCountIsOccurrenceCount) {
  gen::Rng rng(4);
  for (int t = 0; t < 500; ++t) {
    Formula f = gen::random_formula(rng, 1 + t % 9, 3);
    Cirquent c = to_cirquent(f);
    EXPECT_EQ(c.node_count(), f.size());
    EXPECT_EQ(c.edge_count() + 1, c.node_count());
  }
}

TEST(Render, Examples) {
  EXPECT_EQ(render(Formula::disj({L("P", true), L("Q")})), "~P | Q");
  EXPECT_EQ(render(Formula::top()), "#t");
  EXPECT_EQ(render(Formula::bottom()), "#f");
}

TEST(Render, RoundTrip) {
  gen::Rng rng(20240611);
  for (int t = 0; t < 1000; ++t) {
    Formula h = random_hyper(rng, 1 + t % 12, false);
    std::string text = render(h);
    EXPECT_EQ(parse(text), h) << text;
  }
}

TEST(Dual, MatchesNegatedTruthTable) {
  gen::Rng rng(9);
  for (int t = 0; t < 200; ++t) {
    Formula f = gen::random_formula(rng, 6, 3);
    Formula d = dual(f);
    EXPECT_EQ(dual(d), f);
    for (int m = 0; m < 8; ++m) {
      std::map<std::string, bool> v{{"A0", m & 1}, {"A1", (m >> 1) & 1}, {"A2", (m >> 2) & 1}};
      EXPECT_NE(eval(f, v), eval(d, v));
    }
  }
}
