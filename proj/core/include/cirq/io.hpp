#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cirq/cirquent.hpp"
#include "cirq/gbridge.hpp"
#include "cirq/rules.hpp"

namespace cirq {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& msg);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// .cirq: `cirquent <name>`, `node <n> port [~]<atom>`, `node <n> gate and|or`,
// `edge <p> <c>`, `root <n>`, `end`. A token starting with # opens a comment.
std::string write_cirquent(const Cirquent& c, const std::string& name = "c");
std::vector<std::pair<std::string, Cirquent>> read_cirquents(const std::string& text);
// Exactly one block.
Cirquent read_cirquent(const std::string& text);

// .clp: cirquent blocks with one `step` line between consecutive blocks.
std::string write_step(const Step& s);
Step read_step(const std::string& line);
std::string write_derivation(const Derivation& d);
Derivation read_derivation(const std::string& text);

// .gpf: optional (conclusion F..) header, then (axiom F..), (or (E F..) child),
// (and (E F..) child..). Formulas that are not literals are written in double
// quotes.
std::string write_gproof(const GProof& p);
GProof read_gproof(const std::string& text);

// Graphviz: ports are boxes, conjunctive gates open circles, disjunctive gates
// filled circles; the root is drawn lowest.
std::string render_dot(const Cirquent& c, const std::string& name = "c");

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace cirq
