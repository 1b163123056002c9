#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cirq/cirquent.hpp"
#include "cirq/rules.hpp"
#include "cirq/semantics.hpp"

namespace cirq {

using Rank = boost::multiprecision::cpp_int;

struct Standardization {
  Cirquent standard;
  Derivation derivation;  // from `standard` down to the input
};

Standardization standardize(const Cirquent& c);
// Every non-root gate has one parent, no gate has a child of its own type,
// and no gate has exactly one child.
bool is_standard(const Cirquent& c);

// Sum of s^m over disjunctive gates without disjunctive ancestors, m being the
// number of conjunctive descendants.
Rank rank(const Cirquent& c, std::size_t s);

// Primitive derivation from the trade premise to `conclusion`.
Derivation expand_trade(const Cirquent& conclusion, const RuleParams& params);

struct ProverTrace {
  std::vector<std::pair<std::string, Cirquent>> stages;  // J, D, E, F, G
  std::size_t s = 0;
  std::vector<Rank> ranks;  // before each trade round, then the final value
};

class ProverError : public std::runtime_error {
 public:
  enum class Kind { BudgetExceeded, RankNotDecreasing };
  ProverError(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct ProverOptions {
  SemanticsOptions semantics;
  std::size_t node_limit = 200000;  // largest intermediate cirquent allowed
};

struct ProofResult {
  std::optional<Derivation> proof;  // empty when not valid
  Validity validity;
};

ProofResult prove(const Cirquent& c, const ProverOptions& opt = {}, ProverTrace* trace = nullptr);

// Proof for a circuit that is a classical tautology; no validity search.
Derivation prove_circuit(const Cirquent& circuit, const ProverOptions& opt = {},
                         ProverTrace* trace = nullptr);

Derivation lift_instance(const Derivation& proof, const AtomRenaming& r);

// Reverses the derivation, negates each cirquent and dualizes each rule.
Derivation dualize(const Derivation& d);

}  // namespace cirq
