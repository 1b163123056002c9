#include "cirq/prover.hpp"

#include <algorithm>
#include <map>

#include "cirq/builder.hpp"

namespace cirq {

namespace {

bool standardize_once(BackwardBuilder& bb) {
  const Cirquent& x = bb.top();
  auto order = x.topological_order();
  for (const auto& n : order) {
    if (n == x.root() || !x.label(n).is_gate() || x.parents(n).size() < 2) continue;
    bb.split(n, {*x.parents(n).begin()});
    return true;
  }
  for (const auto& n : order) {
    if (n == x.root() || !x.label(n).is_gate() || x.parents(n).size() != 1) continue;
    if (x.label(*x.parents(n).begin()) == x.label(n)) {
      bb.flatten(n);
      return true;
    }
  }
  for (const auto& n : order) {
    if (x.label(n).is_gate() && x.children(n).size() == 1) {
      bb.unwrap(n);
      return true;
    }
  }
  return false;
}

void standardize_into(BackwardBuilder& bb, std::size_t node_limit) {
  while (standardize_once(bb))
    if (bb.top().node_count() > node_limit)
      throw ProverError(ProverError::Kind::BudgetExceeded,
                        "standardization exceeded " + std::to_string(node_limit) + " nodes");
}

std::map<std::string, bool> or_ancestor(const Cirquent& c) {
  std::map<std::string, bool> out;
  for (const auto& n : c.topological_order()) {
    bool any = false;
    for (const auto& p : c.parents(n)) any = any || c.label(p).is(Gate::Or) || out[p];
    out[n] = any;
  }
  return out;
}

std::vector<std::string> active_gates(const Cirquent& c) {
  auto anc = or_ancestor(c);
  std::vector<std::string> out;
  for (const auto& [n, node] : c.nodes())
    if (node.label.is(Gate::Or) && !anc[n]) out.push_back(n);
  return out;
}

// First opposite-label pair among the children of g, in name order.
std::optional<NameSet> first_pair(const Cirquent& c, const std::string& g) {
  const auto& kids = c.children(g);
  for (auto i = kids.begin(); i != kids.end(); ++i)
    for (auto j = std::next(i); j != kids.end(); ++j)
      if (c.label(*i).opposite_of(c.label(*j))) return NameSet{*i, *j};
  return std::nullopt;
}

}  // namespace

Standardization standardize(const Cirquent& c) {
  BackwardBuilder bb(c);
  standardize_into(bb, static_cast<std::size_t>(-1));
  return {bb.top(), bb.finish()};
}

bool is_standard(const Cirquent& c) {
  for (const auto& [n, node] : c.nodes()) {
    if (!node.label.is_gate()) continue;
    if (n != c.root() && node.parents.size() != 1) return false;
    if (node.children.size() == 1) return false;
    for (const auto& ch : node.children)
      if (c.label(ch) == node.label) return false;
  }
  return true;
}

Rank rank(const Cirquent& c, std::size_t s) {
  Rank total = 0;
  for (const auto& a : active_gates(c)) {
    unsigned m = 0;
    for (const auto& d : descendants(c, a))
      if (c.label(d).is(Gate::And)) ++m;
    total += boost::multiprecision::pow(Rank(s), m);
  }
  return total;
}

Derivation expand_trade(const Cirquent& conclusion, const RuleParams& params) {
  Cirquent premise = trade_premise(conclusion, params);
  BackwardBuilder bb(conclusion);
  bb.trade(params);
  Derivation d = bb.finish();
  if (d.first() != premise) throw std::logic_error("trade expansion does not reach the trade premise");
  return d;
}

Derivation prove_circuit(const Cirquent& circuit, const ProverOptions& opt, ProverTrace* trace) {
  BackwardBuilder bb(circuit);
  auto stage = [&](const char* name) {
    if (trace) trace->stages.emplace_back(name, bb.top());
  };
  auto guard = [&] {
    if (bb.top().node_count() > opt.node_limit)
      throw ProverError(ProverError::Kind::BudgetExceeded,
                        "prover exceeded " + std::to_string(opt.node_limit) + " nodes");
  };
  standardize_into(bb, opt.node_limit);
  stage("J");
  const std::size_t s = std::max<std::size_t>(2, bb.top().node_count() + 1);
  if (trace) trace->s = s;

  Rank current = rank(bb.top(), s);
  for (;;) {
    if (trace) trace->ranks.push_back(current);
    const Cirquent& x = bb.top();
    std::string b, a;
    for (const auto& g : active_gates(x)) {
      for (const auto& ch : x.children(g))
        if (x.label(ch).is(Gate::And)) {
          a = ch;
          break;
        }
      if (!a.empty()) {
        b = g;
        break;
      }
    }
    if (a.empty()) break;

    NameSet shared;
    for (const auto& ch : x.children(a))
      if (x.parents(ch).size() > 1) shared.insert(ch);
    for (const auto& ch : shared) bb.wrap(ch, {a}, Gate::Or);

    const Cirquent& y = bb.top();
    RuleParams tp;
    tp.with("a", a).with("b", b);
    tp.with("Theta", y.parents(b));
    NameSet pi = y.children(b);
    pi.erase(a);
    tp.with("Pi", pi);
    std::size_t i = 0;
    for (const auto& ci : y.children(a)) {
      std::string k = std::to_string(++i);
      tp.with("c" + k, ci);
      tp.with("b" + k, bb.fresh("b"));
      tp.with("Gamma" + k, y.children(ci));
      NameSet om = y.parents(ci);
      om.erase(a);
      tp.with("Omega" + k, om);
    }
    bb.trade(tp);
    guard();
    standardize_into(bb, opt.node_limit);
    Rank next = rank(bb.top(), s);
    if (next >= current)
      throw ProverError(ProverError::Kind::RankNotDecreasing,
                        "rank went from " + current.str() + " to " + next.str());
    current = next;
  }
  stage("D");

  if (bb.top().label(bb.top().root()).is(Gate::Or)) bb.wrap(bb.top().root(), {}, Gate::And);

  {
    std::vector<std::string> ors;
    for (const auto& [n, node] : bb.top().nodes())
      if (node.label.is(Gate::Or)) ors.push_back(n);
    for (const auto& g : ors) {
      auto pair = first_pair(bb.top(), g);
      if (!pair) throw std::logic_error("disjunction " + g + " has no opposite pair; input is not a tautology");
      if (bb.top().children(g).size() > 2) bb.weaken(g, *pair);
    }
  }
  stage("E");

  {
    std::map<NameSet, std::vector<std::string>> by_kids;
    for (const auto& [n, node] : bb.top().nodes())
      if (node.label.is(Gate::Or)) by_kids[node.children].push_back(n);
    for (const auto& [_, gs] : by_kids) {
      std::string acc = gs.front();
      for (std::size_t k = 1; k < gs.size(); ++k) acc = bb.merge(acc, gs[k]);
    }
  }
  stage("F");

  {
    std::vector<std::string> ors;
    for (const auto& [n, node] : bb.top().nodes())
      if (node.label.is(Gate::Or)) ors.push_back(n);
    for (const auto& g : ors) bb.uncouple(g);
  }
  stage("G");

  for (;;) {
    const Cirquent& x = bb.top();
    std::string target;
    for (const auto& ch : x.children(x.root()))
      if (x.label(ch).is(Gate::And) && x.children(ch).empty()) {
        target = ch;
        break;
      }
    if (target.empty()) break;
    bb.flatten(target);
  }
  if (!bb.top().is_axiom()) throw std::logic_error("prover did not reach the axiom");
  return bb.finish();
}

ProofResult prove(const Cirquent& c, const ProverOptions& opt, ProverTrace* trace) {
  ProofResult out;
  out.validity = decide_validity(c, opt.semantics);
  if (!out.validity.valid()) return out;
  Generalization gen = generalize_to_circuit(c, *out.validity.witness, opt.semantics);
  Derivation d = lift_instance(prove_circuit(gen.circuit, opt, trace), gen.renaming);
  if (d.last() != c) throw std::logic_error("lifted proof does not end at the input");
  out.proof = std::move(d);
  return out;
}

Derivation lift_instance(const Derivation& proof, const AtomRenaming& r) {
  Derivation out;
  for (const auto& c : proof.cirquents) out.cirquents.push_back(rename_atoms(c, r));
  out.steps = proof.steps;
  for (auto& s : out.steps)
    if (s.params.atom) s.params.atom = rename_atom(r, *s.params.atom);
  return out;
}

Derivation dualize(const Derivation& d) {
  Derivation out;
  for (auto it = d.cirquents.rbegin(); it != d.cirquents.rend(); ++it) out.cirquents.push_back(negate(*it));
  for (auto it = d.steps.rbegin(); it != d.steps.rend(); ++it) {
    Step s{dual(it->rule), it->params};
    if (s.rule.rule == Rule::Coupling || s.rule.rule == Rule::Cocoupling) {
      // Negation swaps the polarity of the two ports.
      std::swap(s.params.central.at("b"), s.params.central.at("c"));
    }
    if (s.rule.rule == Rule::Redraw) {
      std::map<std::string, std::string> inv;
      for (const auto& [from, to] : it->params.mapping) inv[to] = from;
      s.params.mapping = std::move(inv);
    }
    out.steps.push_back(std::move(s));
  }
  return out;
}

}  // namespace cirq
