#pragma once

#include <string>
#include <vector>

#include "cirq/cirquent.hpp"
#include "cirq/rules.hpp"

namespace cirq {

// Builds a derivation bottom-up: each step replaces the current top cirquent
// by the premise the rule determines from it.
class BackwardBuilder {
 public:
  explicit BackwardBuilder(Cirquent bottom);

  const Cirquent& top() const { return top_; }
  std::size_t step_count() const { return steps_.size(); }

  // A node name absent from the top cirquent and never handed out before.
  std::string fresh(const std::string& base);

  void apply(const RuleId& rule, const RuleParams& params);

  // Deepening read upward: gate b is flattened into its sole parent of the same type.
  void flatten(const std::string& b);
  // Globalization read upward: gate c splits into a copy kept by `theta` and one
  // kept by the remaining parents. Returns {a, b}.
  std::pair<std::string, std::string> split(const std::string& c, const NameSet& theta);
  // Lengthening read upward: the one-child gate b disappears.
  void unwrap(const std::string& b);
  // Shortening read upward: a fresh gate is inserted between `theta` and a.
  std::string wrap(const std::string& a, const NameSet& theta, Gate g);
  // Localization read upward: gates a and b with equal children merge into one.
  std::string merge(const std::string& a, const std::string& b);
  // Coupling read upward: a disjunction of one opposite port pair becomes a childless conjunction.
  void uncouple(const std::string& a);
  // Weakening read upward: only `keep` stays among a's children.
  void weaken(const std::string& a, const NameSet& keep);
  // Trade read upward, expanded into primitive steps.
  void trade(const RuleParams& params);

  // The derivation from the top cirquent down to the bottom one.
  Derivation finish() const;

 private:
  Cirquent top_;
  std::vector<Cirquent> cirquents_;  // bottom first
  std::vector<Step> steps_;          // bottom first
  NameSet handed_;
};

// Builds a derivation top-down.
class ForwardBuilder {
 public:
  explicit ForwardBuilder(Cirquent top);

  const Cirquent& current() const { return cur_; }
  const Derivation& derivation() const { return d_; }

  std::string fresh(const std::string& base);
  void apply(const RuleId& rule, const RuleParams& params);
  // Appends a step whose result is given; the step is checked like any other.
  void apply_to(const RuleId& rule, const RuleParams& params, const Cirquent& next);
  void append(const Derivation& d);

 private:
  Cirquent cur_;
  Derivation d_;
  NameSet handed_;
};

// The same transition read in the other direction. Only restructuring and
// redraw steps can be reversed; anything else throws std::invalid_argument.
Derivation reverse_derivation(const Derivation& d);

}  // namespace cirq
