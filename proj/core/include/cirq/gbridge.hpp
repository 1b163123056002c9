#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cirq/formula.hpp"
#include "cirq/rules.hpp"

namespace cirq {

using Sequent = std::set<Formula>;

struct GProof {
  enum class Rule { Axiom, Or, And };

  Rule rule = Rule::Axiom;
  Sequent sequent;
  Formula principal;  // unused for axioms
  std::vector<GProof> children;

  // Formula occurrences summed over all sequents.
  std::size_t size() const;
  std::size_t node_count() const;
};

class GError : public std::runtime_error {
 public:
  enum class Kind { NotAxiom, PremiseMismatch, EmptySequent, BudgetExceeded, NotSingleton, GProofInvalid };
  GError(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string to_string(GError::Kind k);

struct GCheck {
  bool ok = true;
  std::vector<std::size_t> path;  // child indices from the root to the offending node
  GError::Kind kind = GError::Kind::NotAxiom;
  std::string detail;
  explicit operator bool() const { return ok; }
};

GCheck check_g_proof(const GProof& p);

// Decomposes the leftmost compound formula first; stops at a complementary pair.
// Returns nothing when some branch ends without one.
std::optional<GProof> prove_g(const Formula& f, std::size_t node_budget = 200000);

// CL8 proof of to_cirquent(underline(F)) for a proof of the sequent {F}.
Derivation translate_g_to_cl8(const GProof& p);

}  // namespace cirq
