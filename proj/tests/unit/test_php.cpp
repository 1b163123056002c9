#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>

#include "cirq/formula.hpp"
#include "cirq/php.hpp"
#include "cirq/semantics.hpp"

using namespace cirq;

namespace {

// PHP^n written out as text: pigeons 0..n, holes 1..n, positive literals overlined.
std::string php_text(int n) {
  std::string left, right;
  for (int i = 0; i <= n; ++i) {
    std::string row;
    for (int j = 1; j <= n; ++j) row += (j > 1 ? ", ~" : "~") + php_atom(i, j);
    left += (i ? ", &{" : "&{") + row + "}";
  }
  for (int i = 0; i <= n; ++i)
    for (int e = i + 1; e <= n; ++e)
      for (int j = 1; j <= n; ++j)
        right += (right.empty() ? "" : ", ") + std::string("&{[") + php_atom(i, j) + "], [" + php_atom(e, j) + "]}";
  return "|{|{" + left + "}, |{" + right + "}}";
}

bool same_truth_table(const Cirquent& x, const Cirquent& y, int n) {
  std::vector<std::pair<int, int>> atoms;
  for (int i = 0; i <= n; ++i)
    for (int j = 1; j <= n; ++j) atoms.emplace_back(i, j);
  auto assign = [&](const Cirquent& c, std::uint64_t bits) {
    Assignment f;
    for (const auto& p : c.ports()) {
      const Label& l = c.label(p);
      std::size_t k = 0;
      while (php_atom(atoms[k].first, atoms[k].second) != l.atom) ++k;
      f[p] = (((bits >> k) & 1u) != 0) != l.negated;
    }
    return f;
  };
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << atoms.size()); ++bits)
    if (evaluate(x, assign(x, bits)) != evaluate(y, assign(y, bits))) return false;
  return true;
}

}  // namespace

TEST(Php, AtomNames) { EXPECT_EQ(php_atom(0, 3), "P_0_3"); }

TEST(Php, MatchesDefinitionText) {
  for (int n = 1; n <= 4; ++n) {
    Cirquent c = build_php(n);
    EXPECT_EQ(canonical_key(c), canonical_key(to_cirquent(parse(php_text(n))))) << n;
    EXPECT_EQ(canonical_key(c), canonical_key(to_cirquent(php_formula(n)))) << n;
    EXPECT_EQ(c.ports().size(), static_cast<std::size_t>(2 * n * (n + 1))) << n;
  }
}

TEST(Php, SmallestInstance) {
  Cirquent c = build_php(1);
  std::size_t neg = 0, pos = 0;
  for (const auto& p : c.ports()) (c.label(p).negated ? neg : pos)++;
  EXPECT_EQ(neg, 2u);
  EXPECT_EQ(pos, 2u);
  EXPECT_TRUE(decide_validity(c).valid());
}

TEST(Php, CnIsPhp) {
  for (int n = 1; n <= 3; ++n) {
    PhpDefs defs = build_defs(n);
    EXPECT_EQ(canonical_key(defs.C(n)), canonical_key(build_php(n))) << n;
  }
}

TEST(Php, BOneShape) {
  PhpDefs defs = build_defs(3);
  Cirquent b1 = defs.B(1);
  EXPECT_TRUE(b1.label(b1.root()).is(Gate::And));
  EXPECT_EQ(b1.children(b1.root()).size(), 2u);
  for (const auto& ch : b1.children(b1.root())) EXPECT_TRUE(b1.label(ch).is(Gate::Or));
}

TEST(Php, ProofPassesThroughDefinitions) {
  for (int n = 1; n <= 3; ++n) {
    PhpProof p = php_proof(n);
    EXPECT_TRUE(check_proof(p.proof, Profile::CL8)) << n;
    EXPECT_EQ(canonical_key(p.proof.last()), canonical_key(build_php(n)));
    PhpDefs defs = build_defs(n);
    std::vector<std::string> tags;
    for (const auto& [tag, idx] : p.checkpoints) {
      tags.push_back(tag);
      int k = std::stoi(tag.substr(1));
      const Cirquent& expect = tag[0] == 'B' ? defs.B(k) : defs.C(k);
      // The proof carries its own gate layout, so compare truth tables over the atoms.
      EXPECT_TRUE(same_truth_table(p.proof.cirquents.at(idx), expect, n)) << n << " " << tag;
    }
    std::vector<std::string> want;
    for (int k = n; k >= 1; --k) want.push_back("B" + std::to_string(k));
    for (int k = 1; k <= n; ++k) want.push_back("C" + std::to_string(k));
    EXPECT_EQ(tags, want);
  }
}

TEST(Php, DefinitionSizesStayPolynomial) {
  PhpDefs defs = build_defs(4);
  std::size_t prev = 0;
  for (int k = 4; k >= 1; --k) {
    std::size_t nodes = defs.B(k).node_count();
    EXPECT_GT(nodes, prev) << k;
    prev = nodes;
  }
  double last = 0;
  for (int n = 2; n <= 6; ++n) {
    double nodes = static_cast<double>(build_defs(n).B(1).node_count());
    if (n > 2) EXPECT_LT(std::log(nodes / last) / std::log(n / (n - 1.0)), 6.0) << n;
    last = nodes;
  }
}

TEST(Php, SizeReport) {
  auto rows = php_size_report(3);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].slope, 0.0);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    EXPECT_GT(rows[k].size, rows[k - 1].size);
    EXPECT_LT(rows[k].slope, 10.0);
    EXPECT_LE(rows[k].max_cirquent, rows[k].size);
  }
}
