#include <gtest/gtest.h>

#include "cirq/formula.hpp"
#include "cirq/io.hpp"
#include "cirq/semantics.hpp"
#include "generators.hpp"

using namespace cirq;
namespace gen = cirq::testing;

namespace {

Cirquent load(const std::string& f) { return read_cirquent(read_file(std::string(CIRQ_TEST_DATA) + "/" + f)); }

// Truth table over atoms, each port reading its atom.
bool tautology_oracle(const Cirquent& c) {
  std::vector<std::string> atoms;
  for (const auto& p : c.ports())
    if (std::find(atoms.begin(), atoms.end(), c.label(p).atom) == atoms.end()) atoms.push_back(c.label(p).atom);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << atoms.size()); ++bits) {
    Assignment f;
    for (const auto& p : c.ports()) {
      auto k = std::find(atoms.begin(), atoms.end(), c.label(p).atom) - atoms.begin();
      f[p] = (((bits >> k) & 1u) != 0) != c.label(p).negated;
    }
    if (!evaluate(c, f)) return false;
  }
  return true;
}

}  // namespace

TEST(Evaluate, Gates) {
  Cirquent ax = Cirquent::axiom();
  EXPECT_TRUE(evaluate(ax, {}));
  EXPECT_FALSE(evaluate(Cirquent::counter_axiom(), {}));
  Cirquent c = to_cirquent(parse("P & (Q | R)"));
  std::map<std::string, std::string> by_atom;
  for (const auto& p : c.ports()) by_atom[c.label(p).atom] = p;
  EXPECT_TRUE(evaluate(c, {{by_atom["P"], true}, {by_atom["Q"], false}, {by_atom["R"], true}}));
  EXPECT_FALSE(evaluate(c, {{by_atom["P"], true}, {by_atom["Q"], false}, {by_atom["R"], false}}));
  EXPECT_THROW(evaluate(c, {{by_atom["P"], true}}), SemanticsError);
}

TEST(Arrangement, Checks) {
  Cirquent f4 = load("eight_ports.cirq");
  EXPECT_NO_THROW(check_arrangement(f4, {make_allocation("p1", "p5")}));
  EXPECT_THROW(check_arrangement(f4, {make_allocation("p1", "p2")}), SemanticsError);
  EXPECT_THROW(check_arrangement(f4, {make_allocation("p1", "p5"), make_allocation("p1", "p6")}), SemanticsError);
  EXPECT_THROW(check_arrangement(f4, {make_allocation("p1", "left")}), SemanticsError);
  EXPECT_EQ(make_allocation("b", "a"), (Allocation{"a", "b"}));
}

TEST(Consistency, OppositeValuesRequired) {
  Arrangement arr{make_allocation("x", "y")};
  EXPECT_TRUE(is_consistent({{"x", true}, {"y", false}}, arr));
  EXPECT_FALSE(is_consistent({{"x", true}, {"y", true}}, arr));
  EXPECT_FALSE(is_consistent({{"x", false}, {"y", false}}, arr));
}

TEST(Validity, EightPorts) {
  Cirquent f4 = load("eight_ports.cirq");
  Arrangement alpha{make_allocation("p1", "p5"), make_allocation("p2", "p6"), make_allocation("p3", "p7"),
                    make_allocation("p4", "p8")};
  Arrangement beta{make_allocation("p1", "p5"), make_allocation("p2", "p7"), make_allocation("p3", "p6"),
                   make_allocation("p4", "p8")};
  EXPECT_FALSE(is_validating(f4, alpha));
  EXPECT_TRUE(is_validating(f4, beta));
  auto v = decide_validity(f4);
  ASSERT_TRUE(v.valid());
  EXPECT_TRUE(is_validating(f4, *v.witness));
}

TEST(Validity, FourSharedAndTree) {
  auto left = decide_validity(load("four_shared.cirq"));
  ASSERT_TRUE(left.valid());
  EXPECT_EQ(format_witness(left), "valid {p1~p3, p2~p5, p4~p6}");
  auto right = decide_validity(load("four_tree.cirq"));
  EXPECT_FALSE(right.valid());
  EXPECT_EQ(format_witness(right), "not-valid");
  ASSERT_FALSE(right.countermodels.empty());
  Cirquent r = load("four_tree.cirq");
  for (const auto& f : right.countermodels) EXPECT_FALSE(evaluate(r, f));
}

TEST(Validity, ClassicalAndResourceDiffer) {
  // four_tree_p is a classical tautology without a validating arrangement.
  Cirquent f3 = load("four_tree_p.cirq");
  EXPECT_TRUE(tautology_oracle(f3));
  EXPECT_FALSE(decide_validity(f3).valid());
  EXPECT_THROW(classical_tautology(f3), SemanticsError);
  EXPECT_TRUE(tautology_oracle(load("tautology_invalid.cirq")));
  EXPECT_FALSE(decide_validity(load("tautology_invalid.cirq")).valid());
}

TEST(Validity, AxiomsAndBudget) {
  EXPECT_TRUE(decide_validity(Cirquent::axiom()).valid());
  EXPECT_FALSE(decide_validity(Cirquent::counter_axiom()).valid());
  SemanticsOptions tiny;
  tiny.port_budget = 3;
  try {
    decide_validity(load("eight_ports.cirq"), tiny);
    FAIL();
  } catch (const SemanticsError& e) {
    EXPECT_EQ(e.kind(), SemanticsError::Kind::BudgetExceeded);
  }
}

// On circuits validity is classical truth.
TEST(Validity, CircuitsMatchTruthTables) {
  gen::Rng rng(31);
  std::size_t valid = 0;
  for (int t = 0; t < 400; ++t) {
    gen::RandomSpec spec;
    spec.gates = 1 + t % 5;
    spec.ports = 2 + t % 7;
    spec.atoms = 2;
    spec.circuit = true;
    Cirquent c = gen::random_cirquent(rng, spec);
    ASSERT_TRUE(is_circuit(c));
    bool oracle = tautology_oracle(c);
    EXPECT_EQ(classical_tautology(c), oracle);
    EXPECT_EQ(decide_validity(c).valid(), oracle) << write_cirquent(c);
    valid += oracle;
  }
  EXPECT_GT(valid, 20u);
}

TEST(Validity, ValidImpliesTautology) {
  gen::Rng rng(32);
  for (int t = 0; t < 300; ++t) {
    gen::RandomSpec spec;
    spec.gates = 1 + t % 5;
    spec.ports = 2 + t % 7;
    spec.atoms = 2;
    Cirquent c = gen::random_cirquent(rng, spec);
    auto v = decide_validity(c);
    if (v.valid()) {
      EXPECT_TRUE(tautology_oracle(c));
      EXPECT_NO_THROW(check_arrangement(c, *v.witness));
    }
  }
}

TEST(Generalize, CircuitInstance) {
  Cirquent f4 = load("eight_ports.cirq");
  auto v = decide_validity(f4);
  ASSERT_TRUE(v.valid());
  Generalization g = generalize_to_circuit(f4, *v.witness);
  EXPECT_TRUE(is_circuit(g.circuit));
  EXPECT_TRUE(classical_tautology(g.circuit));
  EXPECT_EQ(rename_atoms(g.circuit, g.renaming), f4);
}

TEST(Format, Assignment) {
  EXPECT_EQ(format_assignment({{"a", true}, {"b", false}}), "a=1 b=0");
}
