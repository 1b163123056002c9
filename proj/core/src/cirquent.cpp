#include "cirq/cirquent.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

namespace cirq {

std::string Label::str() const {
  if (is_port()) return negated ? "~" + atom : atom;
  return gate == Gate::And ? "and" : "or";
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
  });
}

void Graph::add_node(const std::string& n, Label l) {
  auto& node = nodes[n];
  node.label = std::move(l);
}

bool Graph::add_edge(const std::string& p, const std::string& c) {
  auto pi = nodes.find(p);
  auto ci = nodes.find(c);
  if (pi == nodes.end() || ci == nodes.end())
    throw std::logic_error("add_edge on missing node " + p + "->" + c);
  bool fresh = pi->second.children.insert(c).second;
  ci->second.parents.insert(p);
  return fresh;
}

bool Graph::remove_edge(const std::string& p, const std::string& c) {
  auto pi = nodes.find(p);
  auto ci = nodes.find(c);
  if (pi == nodes.end() || ci == nodes.end()) return false;
  bool had = pi->second.children.erase(c) > 0;
  ci->second.parents.erase(p);
  return had;
}

void Graph::remove_node(const std::string& n) {
  auto it = nodes.find(n);
  if (it == nodes.end()) return;
  for (const auto& ch : it->second.children) {
    auto ci = nodes.find(ch);
    if (ci != nodes.end()) ci->second.parents.erase(n);
  }
  for (const auto& p : it->second.parents) {
    auto pi = nodes.find(p);
    if (pi != nodes.end()) pi->second.children.erase(n);
  }
  nodes.erase(it);
}

std::optional<std::string> Graph::sole_source() const {
  std::optional<std::string> found;
  for (const auto& [name, node] : nodes) {
    if (!node.parents.empty()) continue;
    if (found) return std::nullopt;
    found = name;
  }
  return found;
}

std::string to_string(Violation v) {
  switch (v) {
    case Violation::CycleDetected: return "CycleDetected";
    case Violation::PortHasChild: return "PortHasChild";
    case Violation::UnreachableNode: return "UnreachableNode";
    case Violation::DanglingEdge: return "DanglingEdge";
    case Violation::MissingRoot: return "MissingRoot";
  }
  return "?";
}

static std::string describe(const std::vector<ViolationReport>& v) {
  std::string s = "invalid cirquent:";
  for (const auto& r : v) s += " " + to_string(r.kind) + "(" + r.where + ")";
  return s;
}

InvalidCirquent::InvalidCirquent(std::vector<ViolationReport> v)
    : std::runtime_error(describe(v)), v_(std::move(v)) {}

Cirquent::Cirquent() {
  g_.add_node("o", Label::conj());
  g_.root = "o";
}

Cirquent Cirquent::axiom(const std::string& name) {
  Graph g;
  g.add_node(name, Label::conj());
  g.root = name;
  return Cirquent(std::move(g));
}

Cirquent Cirquent::counter_axiom(const std::string& name) {
  Graph g;
  g.add_node(name, Label::disj());
  g.root = name;
  return Cirquent(std::move(g));
}

const Node& Cirquent::node(const std::string& n) const {
  auto it = g_.nodes.find(n);
  if (it == g_.nodes.end()) throw std::out_of_range("no node named " + n);
  return it->second;
}

std::size_t Cirquent::edge_count() const {
  std::size_t e = 0;
  for (const auto& [_, node] : g_.nodes) e += node.children.size();
  return e;
}

std::vector<Edge> Cirquent::edges() const {
  std::vector<Edge> out;
  for (const auto& [name, node] : g_.nodes)
    for (const auto& ch : node.children) out.emplace_back(name, ch);
  return out;
}

std::vector<std::string> Cirquent::ports() const {
  std::vector<std::string> out;
  for (const auto& [name, node] : g_.nodes)
    if (node.label.is_port()) out.push_back(name);
  return out;
}

std::vector<std::string> Cirquent::gates() const {
  std::vector<std::string> out;
  for (const auto& [name, node] : g_.nodes)
    if (node.label.is_gate()) out.push_back(name);
  return out;
}

std::vector<std::string> Cirquent::topological_order() const {
  std::map<std::string, std::size_t> indeg;
  std::set<std::string> ready;
  for (const auto& [name, node] : g_.nodes) {
    indeg[name] = node.parents.size();
    if (node.parents.empty()) ready.insert(name);
  }
  std::vector<std::string> out;
  out.reserve(g_.nodes.size());
  while (!ready.empty()) {
    std::string n = *ready.begin();
    ready.erase(ready.begin());
    out.push_back(n);
    for (const auto& ch : g_.nodes.at(n).children)
      if (--indeg[ch] == 0) ready.insert(ch);
  }
  return out;
}

bool Cirquent::is_axiom() const {
  return g_.nodes.size() == 1 && g_.nodes.begin()->second.label.is(Gate::And);
}

bool Cirquent::is_counter_axiom() const {
  return g_.nodes.size() == 1 && g_.nodes.begin()->second.label.is(Gate::Or);
}

bool operator==(const Cirquent& x, const Cirquent& y) {
  if (x.g_.root != y.g_.root || x.g_.nodes.size() != y.g_.nodes.size()) return false;
  auto it = y.g_.nodes.begin();
  for (const auto& [name, node] : x.g_.nodes) {
    if (it->first != name || !(it->second.label == node.label) ||
        it->second.children != node.children)
      return false;
    ++it;
  }
  return true;
}

ValidationResult validate_graph(Graph g) {
  std::vector<ViolationReport> bad;

  // Dangling references and port children.
  for (const auto& [name, node] : g.nodes) {
    for (const auto& ch : node.children) {
      auto ci = g.nodes.find(ch);
      if (ci == g.nodes.end() || ci->second.parents.count(name) == 0)
        bad.push_back({Violation::DanglingEdge, name + "->" + ch});
    }
    for (const auto& p : node.parents) {
      auto pi = g.nodes.find(p);
      if (pi == g.nodes.end() || pi->second.children.count(name) == 0)
        bad.push_back({Violation::DanglingEdge, p + "->" + name});
    }
    if (node.label.is_port() && !node.children.empty())
      bad.push_back({Violation::PortHasChild, name});
  }

  if (g.root.empty() || !g.has(g.root)) {
    bad.push_back({Violation::MissingRoot, g.root});
    return {std::nullopt, std::move(bad)};
  }
  if (!bad.empty()) return {std::nullopt, std::move(bad)};

  // Cycles: Kahn's algorithm leaves exactly the nodes on or below a cycle.
  std::map<std::string, std::size_t> indeg;
  std::deque<std::string> queue;
  for (const auto& [name, node] : g.nodes) {
    indeg[name] = node.parents.size();
    if (node.parents.empty()) queue.push_back(name);
  }
  std::size_t seen = 0;
  while (!queue.empty()) {
    std::string n = queue.front();
    queue.pop_front();
    ++seen;
    for (const auto& ch : g.nodes.at(n).children)
      if (--indeg[ch] == 0) queue.push_back(ch);
  }
  if (seen != g.nodes.size()) {
    for (const auto& [name, d] : indeg)
      if (d > 0) bad.push_back({Violation::CycleDetected, name});
  }

  // Reachability from the root.
  std::set<std::string> reach{g.root};
  std::vector<std::string> stack{g.root};
  while (!stack.empty()) {
    std::string n = stack.back();
    stack.pop_back();
    for (const auto& ch : g.nodes.at(n).children)
      if (reach.insert(ch).second) stack.push_back(ch);
  }
  for (const auto& [name, _] : g.nodes)
    if (!reach.count(name)) bad.push_back({Violation::UnreachableNode, name});

  if (!bad.empty()) return {std::nullopt, std::move(bad)};
  return {Cirquent(std::move(g)), {}};
}

ValidationResult validate_cirquent(const std::map<std::string, Label>& nodes,
                                   const std::vector<Edge>& edges, const std::string& root) {
  Graph g;
  std::vector<ViolationReport> dangling;
  for (const auto& [name, l] : nodes) g.add_node(name, l);
  for (const auto& [p, c] : edges) {
    if (!g.has(p) || !g.has(c)) {
      dangling.push_back({Violation::DanglingEdge, p + "->" + c});
      continue;
    }
    g.add_edge(p, c);
  }
  g.root = root;
  auto r = validate_graph(std::move(g));
  if (!dangling.empty()) {
    r.cirquent.reset();
    r.violations.insert(r.violations.begin(), dangling.begin(), dangling.end());
  }
  return r;
}

Cirquent make_cirquent(Graph g) {
  auto r = validate_graph(std::move(g));
  if (!r.ok()) throw InvalidCirquent(std::move(r.violations));
  return std::move(*r.cirquent);
}

Cirquent make_cirquent(const std::map<std::string, Label>& nodes, const std::vector<Edge>& edges,
                       const std::string& root) {
  auto r = validate_cirquent(nodes, edges, root);
  if (!r.ok()) throw InvalidCirquent(std::move(r.violations));
  return std::move(*r.cirquent);
}

bool is_circuit(const Cirquent& c) {
  std::set<std::pair<std::string, bool>> seen;
  for (const auto& [_, node] : c.nodes())
    if (node.label.is_port() && !seen.emplace(node.label.atom, node.label.negated).second)
      return false;
  return true;
}

Cirquent negate(const Cirquent& c) {
  Graph g = c.graph();
  for (auto& [_, node] : g.nodes) {
    if (node.label.is_port())
      node.label.negated = !node.label.negated;
    else
      node.label.gate = flip(node.label.gate);
  }
  return make_cirquent(std::move(g));
}

std::string rename_atom(const AtomRenaming& r, const std::string& atom) {
  auto it = r.find(atom);
  return it == r.end() ? atom : it->second;
}

Cirquent rename_atoms(const Cirquent& c, const AtomRenaming& r) {
  Graph g = c.graph();
  for (auto& [_, node] : g.nodes)
    if (node.label.is_port()) node.label.atom = rename_atom(r, node.label.atom);
  return make_cirquent(std::move(g));
}

Cirquent rename_nodes(const Cirquent& c, const std::map<std::string, std::string>& m) {
  auto map = [&](const std::string& n) {
    auto it = m.find(n);
    return it == m.end() ? n : it->second;
  };
  Graph g;
  for (const auto& [name, node] : c.nodes()) {
    std::string to = map(name);
    if (g.has(to)) throw std::invalid_argument("node renaming is not injective at " + to);
    g.add_node(to, node.label);
  }
  for (const auto& [p, ch] : c.edges()) g.add_edge(map(p), map(ch));
  g.root = map(c.root());
  return make_cirquent(std::move(g));
}

Graph delete_orphans(Graph g) {
  // Removing a node only lowers in-degrees, so any processing order reaches the same fixpoint.
  std::deque<std::string> queue;
  for (const auto& [name, node] : g.nodes)
    if (node.parents.empty() && name != g.root) queue.push_back(name);
  while (!queue.empty()) {
    std::string n = queue.front();
    queue.pop_front();
    auto it = g.nodes.find(n);
    if (it == g.nodes.end()) continue;
    NameSet kids = it->second.children;
    g.remove_node(n);
    for (const auto& ch : kids) {
      auto ci = g.nodes.find(ch);
      if (ci != g.nodes.end() && ci->second.parents.empty() && ch != g.root) queue.push_back(ch);
    }
  }
  return g;
}

Cirquent delete_orphans(const std::map<std::string, Label>& nodes, const std::vector<Edge>& edges,
                        const std::string& root) {
  Graph g;
  for (const auto& [name, l] : nodes) g.add_node(name, l);
  for (const auto& [p, c] : edges) g.add_edge(p, c);
  g.root = root;
  return make_cirquent(delete_orphans(std::move(g)));
}

std::string fresh_name(const std::string& base, const NameSet& used) {
  std::string stem = base.substr(0, base.find('#'));
  for (std::size_t k = 1;; ++k) {
    std::string cand = stem + "#" + std::to_string(k);
    if (!used.count(cand)) return cand;
  }
}

NameSet node_names(const Cirquent& c) {
  NameSet s;
  for (const auto& [name, _] : c.nodes()) s.insert(s.end(), name);
  return s;
}

std::string fresh_name(const std::string& base, const Cirquent& c) {
  std::string stem = base.substr(0, base.find('#'));
  for (std::size_t k = 1;; ++k) {
    std::string cand = stem + "#" + std::to_string(k);
    if (!c.has(cand)) return cand;
  }
}

NameSet descendants(const Cirquent& c, const std::string& n) {
  NameSet out{n};
  std::vector<std::string> stack{n};
  while (!stack.empty()) {
    std::string x = stack.back();
    stack.pop_back();
    for (const auto& ch : c.children(x))
      if (out.insert(ch).second) stack.push_back(ch);
  }
  return out;
}

NameSet ancestors(const Cirquent& c, const std::string& n) {
  NameSet out{n};
  std::vector<std::string> stack{n};
  while (!stack.empty()) {
    std::string x = stack.back();
    stack.pop_back();
    for (const auto& p : c.parents(x))
      if (out.insert(p).second) stack.push_back(p);
  }
  return out;
}

}  // namespace cirq
