#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cirq/cirquent.hpp"

namespace cirq {

enum class Rule {
  Deepening,
  Flattening,
  Globalization,
  Localization,
  Lengthening,
  Shortening,
  Coupling,
  Weakening,
  Pulldown,
  Cocoupling,
  Coweakening,
  Copulldown,
  Merging,
  Comerging,
  Trade,
  Redraw,
};

bool is_restructuring(Rule r);

struct RuleId {
  Rule rule = Rule::Redraw;
  std::optional<Gate> flavor;  // present exactly on the six restructuring rules

  RuleId() = default;
  RuleId(Rule r) : rule(r) {}  // NOLINT: implicit on purpose, rules without flavor
  RuleId(Rule r, Gate g) : rule(r), flavor(g) {}

  std::string str() const;  // "deepening/and", "coupling", ...
  static RuleId parse(const std::string& s);

  friend bool operator==(const RuleId& x, const RuleId& y) {
    return x.rule == y.rule && x.flavor == y.flavor;
  }
};

// The rule whose instances are the negated, reversed instances of r.
RuleId dual(const RuleId& r);

struct RuleParams {
  std::map<std::string, std::string> central;     // a, b, c, b1.., c1..
  std::map<std::string, NameSet> peripheral;      // Gamma, Delta, ..., Gamma1.., Omega1..
  std::optional<std::string> atom;                // coupling, cocoupling
  std::map<std::string, std::string> mapping;     // redraw

  const std::string& at(const std::string& role) const;
  const NameSet& set(const std::string& role) const;  // empty if absent

  RuleParams& with(const std::string& role, const std::string& node) {
    central[role] = node;
    return *this;
  }
  RuleParams& with(const std::string& role, NameSet nodes) {
    peripheral[role] = std::move(nodes);
    return *this;
  }
  friend bool operator==(const RuleParams& x, const RuleParams& y) {
    auto nonempty = [](const std::map<std::string, NameSet>& m) {
      std::map<std::string, NameSet> out;
      for (const auto& [k, v] : m)
        if (!v.empty()) out.emplace(k, v);
      return out;
    };
    return x.central == y.central && nonempty(x.peripheral) == nonempty(y.peripheral) &&
           x.atom == y.atom && x.mapping == y.mapping;
  }
};

struct Step {
  RuleId rule;
  RuleParams params;
};

enum class Direction { PremiseToConclusion, ConclusionToPremise };

class RuleError : public std::runtime_error {
 public:
  enum class Kind {
    ParamViolation,
    FreshNameClash,
    ConclusionMismatch,
    RuleNotInProfile,
    AxiomMismatch,
    MacroStep,
    BudgetExceeded,
  };
  RuleError(Kind k, std::string condition, const std::string& detail);
  Kind kind() const { return kind_; }
  const std::string& condition() const { return condition_; }

 private:
  Kind kind_;
  std::string condition_;
};

std::string to_string(RuleError::Kind k);

// Returns the uniquely determined other cirquent of the rule instance.
// Throws RuleError when a schema condition fails.
Cirquent apply_rule(const Cirquent& c, const RuleId& rule, const RuleParams& params, Direction dir);

struct CheckResult {
  bool ok = true;
  RuleError::Kind kind = RuleError::Kind::ParamViolation;
  std::string condition;
  std::string detail;
  explicit operator bool() const { return ok; }
};

CheckResult check_step(const Cirquent& premise, const Cirquent& conclusion, const Step& step);

enum class Profile { CL8, CL8S, CL8Merge, CL8Local };

std::string to_string(Profile p);
Profile parse_profile(const std::string& s);
bool rule_in_profile(const RuleId& r, Profile p);

struct Derivation {
  std::vector<Cirquent> cirquents;  // C1..Cn
  std::vector<Step> steps;          // n-1 steps, steps[i] takes cirquents[i] to cirquents[i+1]

  const Cirquent& first() const { return cirquents.front(); }
  const Cirquent& last() const { return cirquents.back(); }
  std::size_t size() const;  // nodes + edges summed over all cirquents

  void append(Step s, Cirquent next);
  // Appends d, whose first cirquent must equal our last.
  void extend(const Derivation& d);
};

struct DerivationCheck {
  bool ok = true;
  std::size_t step = 0;  // index into steps when !ok
  CheckResult result;
  explicit operator bool() const { return ok; }
};

DerivationCheck check_derivation(const Derivation& d, Profile profile);
// Also requires the first cirquent to be the axiom.
DerivationCheck check_proof(const Derivation& d, Profile profile);
// Also requires the last cirquent to be the counter-axiom.
DerivationCheck check_refutation(const Derivation& d, Profile profile);

bool is_i_analytic_step(const Cirquent& premise, const Cirquent& conclusion);

struct EnumerateOptions {
  std::vector<std::string> atoms{"P"};  // alphabet for coupling atoms
  std::size_t budget = 200000;          // max candidates examined
};

// All parameter assignments under which apply_rule succeeds in the given direction.
// New nodes get fresh names; throws RuleError(BudgetExceeded) past the budget.
std::vector<RuleParams> enumerate_params(const Cirquent& c, const RuleId& rule, Direction dir,
                                         const EnumerateOptions& opt = {});

// Trade is not primitive; these give its schema for n = number of c_i groups.
// Roles: a, b, b1..bn, c1..cn; sets Theta, Pi, Gamma1..n, Omega1..n.
Cirquent trade_premise(const Cirquent& conclusion, const RuleParams& params);
std::size_t trade_arity(const RuleParams& params);

}  // namespace cirq
