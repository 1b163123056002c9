#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cirq/cirquent.hpp"

namespace cirq {

// A (hyper)formula in negation normal form. `overlined` marks the subterms
// whose cirquent translation may be shared; a Formula proper has no marks.
struct Formula {
  enum class Kind { Lit, And, Or };

  Kind kind = Kind::And;
  std::string atom;
  bool negated = false;
  bool overlined = false;
  std::vector<Formula> children;

  static Formula lit(std::string atom, bool negated = false);
  static Formula conj(std::vector<Formula> kids);
  static Formula disj(std::vector<Formula> kids);
  static Formula top() { return conj({}); }
  static Formula bottom() { return disj({}); }

  bool is_lit() const { return kind == Kind::Lit; }
  Formula overline() const;

  // Occurrence count of the AST.
  std::size_t size() const;

  friend bool operator==(const Formula& x, const Formula& y);
  friend bool operator!=(const Formula& x, const Formula& y) { return !(x == y); }
  friend bool operator<(const Formula& x, const Formula& y);
};

using Hyperformula = Formula;

class SyntaxError : public std::runtime_error {
 public:
  enum class Kind { Syntax, DoubleOverline, NegatedOverline };
  SyntaxError(Kind k, std::size_t pos, const std::string& msg);
  Kind kind() const { return kind_; }
  std::size_t position() const { return pos_; }

 private:
  Kind kind_;
  std::size_t pos_;
};

Hyperformula parse(const std::string& text);
std::string render(const Hyperformula& h);

// Classical negation pushed to the atoms; overline marks are dropped.
Formula dual(const Formula& f);
Formula strip_overlines(const Hyperformula& h);

// Overlines every literal and nothing else.
Hyperformula underline(const Formula& f);

// Node names are n0 (root), n1, ... in preorder of first creation.
Cirquent to_cirquent(const Hyperformula& h);

// Truth value of a formula under a classical assignment of atoms.
bool eval(const Formula& f, const std::map<std::string, bool>& atoms);
std::set<std::string> atoms_of(const Formula& f);

}  // namespace cirq
