#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cirq/cirquent.hpp"

namespace cirq {

using Assignment = std::map<std::string, bool>;  // port name -> value
using Allocation = std::pair<std::string, std::string>;  // stored with first < second
using Arrangement = std::set<Allocation>;

Allocation make_allocation(const std::string& x, const std::string& y);

class SemanticsError : public std::runtime_error {
 public:
  enum class Kind { IncompleteAssignment, BudgetExceeded, NotACircuit, NotValidating, BadArrangement };
  SemanticsError(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct SemanticsOptions {
  std::size_t port_budget = 24;
  // Consistency test: strict f(a) != f(b), or the weaker "at least one true".
  bool weak_consistency = false;
};

bool evaluate(const Cirquent& c, const Assignment& f);
bool is_consistent(const Assignment& f, const Arrangement& arr);
// Throws BadArrangement if arr is not a monogamous set of opposite-label pairs of c.
void check_arrangement(const Cirquent& c, const Arrangement& arr);
bool is_validating(const Cirquent& c, const Arrangement& arr, const SemanticsOptions& opt = {});

struct Validity {
  std::optional<Arrangement> witness;
  // When not valid: for each maximal arrangement tried, a falsifying assignment (deduplicated).
  std::vector<Assignment> countermodels;
  bool valid() const { return witness.has_value(); }
};

Validity decide_validity(const Cirquent& c, const SemanticsOptions& opt = {});
bool classical_tautology(const Cirquent& c, const SemanticsOptions& opt = {});

struct Generalization {
  Cirquent circuit;
  AtomRenaming renaming;  // circuit atoms -> original atoms
};

Generalization generalize_to_circuit(const Cirquent& c, const Arrangement& arr,
                                     const SemanticsOptions& opt = {});

// "valid {p1~p2, ...}" / "not-valid"
std::string format_witness(const Validity& v);
std::string format_assignment(const Assignment& f);

}  // namespace cirq
