#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cirq/cirquent.hpp"
#include "cirq/formula.hpp"
#include "cirq/rules.hpp"

namespace cirq {

// Pigeons are 0..n, holes 1..n. P_i_j says pigeon i sits in hole j.
std::string php_atom(int i, int j);

// Positive literals overlined, arity-1 connectives collapsed.
Hyperformula php_formula(int n);
Cirquent build_php(int n);

enum class Family { X, Y, B, C, D };

struct PhpIndex {
  int k = 1;
  int i = 0;
  int j = 0;
  friend bool operator<(const PhpIndex& x, const PhpIndex& y) {
    return std::tie(x.k, x.i, x.j) < std::tie(y.k, y.i, y.j);
  }
};

// All definitional families in one graph with full compression: two gates of
// the same type with the same children are one node.
struct PhpDefs {
  int n = 0;
  Graph shared;  // several sources, root unset
  std::map<std::pair<Family, PhpIndex>, std::string> table;

  const std::string& at(Family f, int k, int i = 0, int j = 0) const;
  // The part of `shared` below one node, as a cirquent rooted there.
  Cirquent extract(const std::string& node) const;
  Cirquent B(int k) const { return extract(at(Family::B, k)); }
  Cirquent C(int k) const { return extract(at(Family::C, k)); }
};

PhpDefs build_defs(int n);

struct PhpProof {
  Derivation proof;
  // "B4", ..., "B1", "C1", ..., "C4" with the index of that cirquent in the proof.
  std::vector<std::pair<std::string, std::size_t>> checkpoints;
};

PhpProof php_proof(int n);

struct PhpSizeRow {
  int n = 0;
  std::size_t size = 0;       // nodes + edges over all cirquents
  std::size_t cirquents = 0;
  std::size_t max_cirquent = 0;
  double slope = 0;           // log-log slope from the previous row; 0 on the first
};

std::vector<PhpSizeRow> php_size_report(int n_max);

}  // namespace cirq
