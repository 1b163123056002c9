#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cirq {

enum class Gate { And, Or };

inline Gate flip(Gate g) { return g == Gate::And ? Gate::Or : Gate::And; }

struct Label {
  enum class Kind { Port, Gate };

  Kind kind = Kind::Gate;
  std::string atom;     // ports only
  bool negated = false; // ports only
  Gate gate = Gate::And;

  static Label port(std::string atom, bool negated = false) {
    Label l;
    l.kind = Kind::Port;
    l.atom = std::move(atom);
    l.negated = negated;
    return l;
  }
  static Label gate_of(Gate g) {
    Label l;
    l.kind = Kind::Gate;
    l.gate = g;
    return l;
  }
  static Label conj() { return gate_of(Gate::And); }
  static Label disj() { return gate_of(Gate::Or); }

  bool is_port() const { return kind == Kind::Port; }
  bool is_gate() const { return kind == Kind::Gate; }
  bool is(Gate g) const { return is_gate() && gate == g; }
  bool opposite_of(const Label& o) const {
    return is_port() && o.is_port() && atom == o.atom && negated != o.negated;
  }

  // "P", "~P", "and", "or"
  std::string str() const;

  friend bool operator==(const Label& x, const Label& y) {
    if (x.kind != y.kind) return false;
    if (x.is_port()) return x.atom == y.atom && x.negated == y.negated;
    return x.gate == y.gate;
  }
  friend bool operator<(const Label& x, const Label& y) { return x.str() < y.str(); }
};

bool is_identifier(const std::string& s);

using Edge = std::pair<std::string, std::string>; // (parent, child)
using NameSet = std::set<std::string>;

struct Node {
  Label label;
  NameSet children;
  NameSet parents;
};

// Mutable graph storage. A Cirquent is a Graph that passed validation.
struct Graph {
  std::map<std::string, Node> nodes;
  std::string root;

  bool has(const std::string& n) const { return nodes.count(n) != 0; }
  void add_node(const std::string& n, Label l);
  // Adds the edge; both endpoints must exist. Returns false if it was present.
  bool add_edge(const std::string& p, const std::string& c);
  bool remove_edge(const std::string& p, const std::string& c);
  void remove_node(const std::string& n);
  // The unique parentless node, if exactly one exists.
  std::optional<std::string> sole_source() const;
};

enum class Violation { CycleDetected, PortHasChild, UnreachableNode, DanglingEdge, MissingRoot };

std::string to_string(Violation v);

struct ViolationReport {
  Violation kind;
  std::string where; // offending node or "p->c"
};

class Cirquent;

struct ValidationResult;

class InvalidCirquent : public std::runtime_error {
 public:
  explicit InvalidCirquent(std::vector<ViolationReport> v);
  const std::vector<ViolationReport>& violations() const { return v_; }

 private:
  std::vector<ViolationReport> v_;
};

class Cirquent {
 public:
  // The axiom: one childless conjunctive gate.
  Cirquent();

  static Cirquent axiom(const std::string& name = "o");
  static Cirquent counter_axiom(const std::string& name = "o");

  const Graph& graph() const { return g_; }
  const std::map<std::string, Node>& nodes() const { return g_.nodes; }
  const std::string& root() const { return g_.root; }
  bool has(const std::string& n) const { return g_.has(n); }
  const Node& node(const std::string& n) const;
  const Label& label(const std::string& n) const { return node(n).label; }
  const NameSet& children(const std::string& n) const { return node(n).children; }
  const NameSet& parents(const std::string& n) const { return node(n).parents; }

  std::size_t node_count() const { return g_.nodes.size(); }
  std::size_t edge_count() const;
  std::vector<Edge> edges() const;
  std::vector<std::string> ports() const;
  std::vector<std::string> gates() const;
  // Parents before children; ties broken by name.
  std::vector<std::string> topological_order() const;

  bool is_axiom() const;
  bool is_counter_axiom() const;

  friend bool operator==(const Cirquent& x, const Cirquent& y);
  friend bool operator!=(const Cirquent& x, const Cirquent& y) { return !(x == y); }

 private:
  explicit Cirquent(Graph g) : g_(std::move(g)) {}
  friend ValidationResult validate_graph(Graph g);

  Graph g_;
};

bool operator==(const Cirquent& x, const Cirquent& y);

struct ValidationResult {
  std::optional<Cirquent> cirquent;
  std::vector<ViolationReport> violations;
  bool ok() const { return cirquent.has_value(); }
};

// Checks every invariant and reports all failures.
ValidationResult validate_graph(Graph g);
ValidationResult validate_cirquent(const std::map<std::string, Label>& nodes,
                                   const std::vector<Edge>& edges, const std::string& root);
// Throws InvalidCirquent on failure.
Cirquent make_cirquent(Graph g);
Cirquent make_cirquent(const std::map<std::string, Label>& nodes, const std::vector<Edge>& edges,
                       const std::string& root);

bool is_circuit(const Cirquent& c);
Cirquent negate(const Cirquent& c);

using AtomRenaming = std::map<std::string, std::string>; // identity outside its keys

std::string rename_atom(const AtomRenaming& r, const std::string& atom);
Cirquent rename_atoms(const Cirquent& c, const AtomRenaming& r);

// Renames nodes; names missing from the map are kept. Throws if not injective.
Cirquent rename_nodes(const Cirquent& c, const std::map<std::string, std::string>& m);

// Repeatedly removes parentless non-root nodes. The root must be present.
Graph delete_orphans(Graph g);
Cirquent delete_orphans(const std::map<std::string, Label>& nodes, const std::vector<Edge>& edges,
                        const std::string& root);

// stem#k with the smallest k >= 1 not in `used`; stem is base up to its first #.
std::string fresh_name(const std::string& base, const NameSet& used);
std::string fresh_name(const std::string& base, const Cirquent& c);
NameSet node_names(const Cirquent& c);

// Isomorphism invariant: equal iff the cirquents are isomorphic.
std::string canonical_key(const Cirquent& c);

// Nodes reachable downward from n, n included.
NameSet descendants(const Cirquent& c, const std::string& n);
NameSet ancestors(const Cirquent& c, const std::string& n);

}  // namespace cirq
