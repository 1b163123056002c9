#include "cirq/php.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cirq/builder.hpp"
#include "cirq/prover.hpp"

namespace cirq {

std::string php_atom(int i, int j) { return "P_" + std::to_string(i) + "_" + std::to_string(j); }

namespace {

void require_n(int n) {
  if (n < 1) throw std::invalid_argument("pigeonhole instances need n >= 1");
}

Formula conj_c(std::vector<Formula> v) { return v.size() == 1 ? v.front() : Formula::conj(std::move(v)); }
Formula disj_c(std::vector<Formula> v) { return v.size() == 1 ? v.front() : Formula::disj(std::move(v)); }

NameSet minus(NameSet s, const NameSet& drop) {
  for (const auto& x : drop) s.erase(x);
  return s;
}

}  // namespace

Hyperformula php_formula(int n) {
  require_n(n);
  std::vector<Formula> left, right;
  for (int i = 0; i <= n; ++i) {
    std::vector<Formula> row;
    for (int j = 1; j <= n; ++j) row.push_back(Formula::lit(php_atom(i, j), true));
    left.push_back(conj_c(std::move(row)));
  }
  for (int i = 0; i <= n; ++i)
    for (int e = i + 1; e <= n; ++e)
      for (int j = 1; j <= n; ++j)
        right.push_back(Formula::conj({Formula::lit(php_atom(i, j)).overline(), Formula::lit(php_atom(e, j)).overline()}));
  return Formula::disj({disj_c(std::move(left)), disj_c(std::move(right))});
}

Cirquent build_php(int n) { return to_cirquent(php_formula(n)); }

// ---------------------------------------------------------------------------
// Definitional families

const std::string& PhpDefs::at(Family f, int k, int i, int j) const {
  auto it = table.find({f, PhpIndex{k, i, j}});
  if (it == table.end())
    throw std::out_of_range("no definitional node for k=" + std::to_string(k) + " i=" + std::to_string(i) +
                            " j=" + std::to_string(j));
  return it->second;
}

Cirquent PhpDefs::extract(const std::string& node) const {
  Graph g;
  std::vector<std::string> stack{node};
  while (!stack.empty()) {
    std::string n = stack.back();
    stack.pop_back();
    if (g.has(n)) continue;
    g.add_node(n, shared.nodes.at(n).label);
    for (const auto& ch : shared.nodes.at(n).children) stack.push_back(ch);
  }
  for (auto& [n, _] : g.nodes)
    for (const auto& ch : shared.nodes.at(n).children) g.add_edge(n, ch);
  g.root = node;
  return make_cirquent(std::move(g));
}

namespace {

class DefBuilder {
 public:
  explicit DefBuilder(int n) { d_.n = n; }

  PhpDefs run() {
    const int n = d_.n;
    for (int i = 0; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        put(Family::X, n, i, j, port(php_atom(i, j), false));
        put(Family::Y, n, i, j, port(php_atom(i, j), true));
      }
    for (int k = n; k >= 2; --k)
      for (int i = 0; i < k; ++i)
        for (int j = 1; j < k; ++j) {
          auto X = [&](int a, int b) { return d_.at(Family::X, k, a, b); };
          auto Y = [&](int a, int b) { return d_.at(Family::Y, k, a, b); };
          put(Family::X, k - 1, i, j,
              gate(Gate::And, {gate(Gate::Or, {X(i, j), X(i, k)}), gate(Gate::Or, {X(i, j), X(k, j)})}));
          put(Family::Y, k - 1, i, j,
              gate(Gate::And, {Y(i, j), gate(Gate::Or, {Y(i, k), Y(k, j)}), gate(Gate::Or, {X(i, k), Y(i, k)}),
                               gate(Gate::Or, {X(k, k), Y(k, k)})}));
        }
    for (int k = 1; k <= n; ++k) {
      auto X = [&](int a, int b) { return d_.at(Family::X, k, a, b); };
      auto Y = [&](int a, int b) { return d_.at(Family::Y, k, a, b); };
      for (int i = 0; i < k; ++i)
        put(Family::D, k, i, 0, gate(Gate::And, {gate(Gate::Or, {X(i, k), Y(i, k)}), gate(Gate::Or, {X(k, k), Y(k, k)})}));
      std::vector<std::string> b;
      for (int i = 0; i <= k; ++i)
        for (int j = 1; j <= k; ++j) b.push_back(gate(Gate::Or, {X(i, j), Y(i, j)}));
      put(Family::B, k, 0, 0, gate(Gate::And, b));
      std::vector<std::string> left, right;
      for (int i = 0; i <= k; ++i) {
        std::vector<std::string> row;
        for (int j = 1; j <= k; ++j) row.push_back(Y(i, j));
        left.push_back(gate(Gate::And, row));
      }
      for (int i = 0; i <= k; ++i)
        for (int e = i + 1; e <= k; ++e)
          for (int j = 1; j <= k; ++j) right.push_back(gate(Gate::And, {X(i, j), X(e, j)}));
      put(Family::C, k, 0, 0, gate(Gate::Or, {gate(Gate::Or, left), gate(Gate::Or, right)}));
    }
    return std::move(d_);
  }

 private:
  void put(Family f, int k, int i, int j, const std::string& node) { d_.table[{f, PhpIndex{k, i, j}}] = node; }

  std::string port(const std::string& atom, bool neg) {
    std::string name = (neg ? "nP" : "P") + atom.substr(1);
    d_.shared.add_node(name, Label::port(atom, neg));
    return name;
  }

  // Arity-1 gates collapse to their child.
  std::string gate(Gate g, const std::vector<std::string>& kids) {
    NameSet set(kids.begin(), kids.end());
    if (set.size() == 1) return *set.begin();
    auto key = std::make_pair(g, set);
    auto it = cons_.find(key);
    if (it != cons_.end()) return it->second;
    std::string name = "d" + std::to_string(cons_.size());
    d_.shared.add_node(name, Label::gate_of(g));
    for (const auto& ch : set) d_.shared.add_edge(name, ch);
    cons_[key] = name;
    return name;
  }

  PhpDefs d_;
  std::map<std::pair<Gate, NameSet>, std::string> cons_;
};

}  // namespace

PhpDefs build_defs(int n) {
  require_n(n);
  return DefBuilder(n).run();
}

// ---------------------------------------------------------------------------
// The proof

namespace {

// A cirquent fragment to be drawn below a node. Leaves name nodes that already exist.
struct Term {
  enum class K { Leaf, And, Or };
  K k = K::Leaf;
  std::string name;
  std::vector<Term> kids;
};

Term leaf(const std::string& n) { return {Term::K::Leaf, n, {}}; }

// Restructuring steps are the only ones that never change what a cirquent says.
// Two cirquents that differ only by them have the same normal form, computed
// here below a focus gate: shared gates are split, same-type chains flattened,
// one-child gates removed, and then identical sibling subtrees merged. Nodes
// in `frozen_` count as leaves. A restructuring is then the path from the
// current cirquent down to its normal form, a redraw, and the path from the
// target's normal form back up to the target.
class PhpProver {
 public:
  explicit PhpProver(int n) : n_(n), goal_(build_php(n)), fb_(Cirquent::axiom(goal_.root())) {
    for (const auto& p : goal_.ports()) port_[{goal_.label(p).atom, goal_.label(p).negated}] = p;
  }

  PhpProof run() {
    couplings();
    for (int k = n_; k >= 2; --k) descend(k);
    base();
    for (int k = 2; k <= n_; ++k) ascend(k);
    if (n_ == 1) restructure("", term_of(goal_, goal_.root()));
    if (fb_.current() != goal_) throw std::logic_error("pigeonhole proof does not end at PHP");
    return {fb_.derivation(), checkpoints_};
  }

 private:
  // ---- terms

  Term gate(Gate g, std::vector<Term> kids) {
    return {g == Gate::And ? Term::K::And : Term::K::Or, fb_.fresh("g"), std::move(kids)};
  }
  Term conj(std::vector<Term> kids) { return gate(Gate::And, std::move(kids)); }
  Term disj(std::vector<Term> kids) { return gate(Gate::Or, std::move(kids)); }
  static Term named(Gate g, const std::string& name, std::vector<Term> kids) {
    return {g == Gate::And ? Term::K::And : Term::K::Or, name, std::move(kids)};
  }

  Term term_of(const Cirquent& c, const std::string& n) const {
    const Label& l = c.label(n);
    if (l.is_port()) return leaf(n);
    Term t{l.is(Gate::And) ? Term::K::And : Term::K::Or, n, {}};
    for (const auto& ch : c.children(n)) t.kids.push_back(term_of(c, ch));
    return t;
  }

  Term x(int i, int j) const { return leaf(X_.at({level_, i, j})); }
  Term y(int i, int j) const { return leaf(Y_.at({level_, i, j})); }
  std::string xn(int i, int j) const { return X_.at({level_, i, j}); }
  std::string yn(int i, int j) const { return Y_.at({level_, i, j}); }

  bool fixed(const Cirquent& c, const std::string& n) const { return !c.label(n).is_gate() || frozen_.count(n); }

  void set_level(int k) {
    level_ = k;
    frozen_.clear();
    for (const auto* m : {&X_, &Y_})
      for (const auto& [idx, name] : *m)
        if (idx.k == k) freeze(name);
  }

  void freeze(const std::string& n) {
    for (const auto& d : descendants(fb_.current(), n)) frozen_.insert(d);
  }

  void checkpoint(const std::string& tag) { checkpoints_.emplace_back(tag, fb_.derivation().cirquents.size() - 1); }

  // ---- primitive steps

  void pulldown(const std::string& c, const std::string& b, const std::string& a, const NameSet& pi) {
    const Cirquent& x = fb_.current();
    RuleParams p;
    p.with("c", c).with("b", b).with("a", a);
    p.with("Gamma", minus(x.children(a), pi)).with("Pi", pi);
    p.with("Sigma", minus(x.children(b), {a}));
    p.with("Delta", minus(x.children(c), {b}));
    p.with("Theta", x.parents(c));
    fb_.apply(Rule::Pulldown, p);
  }

  void weaken(const std::string& a, const NameSet& delta) {
    const Cirquent& x = fb_.current();
    RuleParams p;
    p.with("a", a).with("Gamma", x.children(a)).with("Delta", delta).with("Theta", x.parents(a));
    Graph g = x.graph();
    for (const auto& d : delta) g.add_edge(a, d);
    fb_.apply_to(Rule::Weakening, p, make_cirquent(std::move(g)));
  }

  std::string globalize(const std::string& a, const std::string& b) {
    const Cirquent& x = fb_.current();
    std::string c = fb_.fresh("s");
    RuleParams p;
    p.with("a", a).with("b", b).with("c", c);
    p.with("Gamma", x.children(a)).with("Theta", x.parents(a)).with("Omega", x.parents(b));
    fb_.apply({Rule::Globalization, x.label(a).gate}, p);
    return c;
  }

  // a∘{b_i} with b_i•{c_i}∪Pi becomes •{a∘{c_i}}∪Pi, expanded into primitives.
  void trade(const std::string& a, const std::vector<std::string>& bs, const NameSet& pi) {
    const Cirquent& x = fb_.current();
    RuleParams tp;
    tp.with("a", a).with("b", fb_.fresh("t")).with("Pi", pi).with("Theta", x.parents(a));
    for (std::size_t i = 0; i < bs.size(); ++i) {
      NameSet rest = minus(x.children(bs[i]), pi);
      if (rest.size() != 1) throw std::logic_error("trade: " + bs[i] + " does not have the form c_i plus Pi");
      const std::string& ci = *rest.begin();
      std::string k = std::to_string(i + 1);
      tp.with("b" + k, bs[i]).with("c" + k, ci);
      tp.with("Gamma" + k, x.children(ci)).with("Omega" + k, minus(x.parents(ci), {bs[i]}));
    }
    Cirquent concl = apply_rule(x, Rule::Trade, tp, Direction::PremiseToConclusion);
    fb_.append(expand_trade(concl, tp));
  }

  // ---- restructuring

  NameSet region(const Cirquent& c, const std::string& focus) const {
    const std::string start = focus.empty() ? c.root() : focus;
    NameSet out;
    std::vector<std::string> stack{start};
    if (focus.empty() && !fixed(c, start)) out.insert(start);
    while (!stack.empty()) {
      std::string n = stack.back();
      stack.pop_back();
      if (n != start && fixed(c, n)) continue;
      for (const auto& ch : c.children(n))
        if (!fixed(c, ch) && out.insert(ch).second) stack.push_back(ch);
    }
    return out;
  }

  bool standardize_once(BackwardBuilder& bb, const std::string& focus) const {
    const Cirquent& x = bb.top();
    NameSet reg = region(x, focus);
    auto order = x.topological_order();
    for (const auto& n : order)
      if (reg.count(n) && x.parents(n).size() >= 2) {
        bb.split(n, {*x.parents(n).begin()});
        return true;
      }
    for (const auto& n : order) {
      if (!reg.count(n) || x.parents(n).size() != 1) continue;
      const std::string& p = *x.parents(n).begin();
      if ((reg.count(p) || p == focus) && x.label(p) == x.label(n)) {
        bb.flatten(n);
        return true;
      }
    }
    for (const auto& n : order)
      if (reg.count(n) && x.children(n).size() == 1) {
        bb.unwrap(n);
        return true;
      }
    return false;
  }

  std::string canon(const Cirquent& c, const std::string& n, std::map<std::string, std::string>& memo) const {
    if (fixed(c, n)) return n;
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    std::vector<std::string> parts;
    for (const auto& ch : c.children(n)) parts.push_back(canon(c, ch, memo));
    std::sort(parts.begin(), parts.end());
    std::string s = c.label(n).is(Gate::And) ? "and(" : "or(";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
    return memo[n] = s + ")";
  }

  // u and v are disjoint trees with equal canonical form.
  std::string merge_trees(ForwardBuilder& fw, const std::string& u, const std::string& v) const {
    std::map<std::string, std::string> memo;
    const Cirquent& x0 = fw.current();
    std::vector<std::pair<std::string, std::string>> pairs;
    NameSet used;
    for (const auto& cu : x0.children(u)) {
      if (fixed(x0, cu)) continue;
      std::string key = canon(x0, cu, memo);
      for (const auto& cv : x0.children(v))
        if (!fixed(x0, cv) && !used.count(cv) && canon(x0, cv, memo) == key) {
          used.insert(cv);
          pairs.emplace_back(cu, cv);
          break;
        }
    }
    for (const auto& [cu, cv] : pairs) merge_trees(fw, cu, cv);
    const Cirquent& x = fw.current();
    std::string c = fw.fresh(u);
    RuleParams p;
    p.with("a", u).with("b", v).with("c", c);
    p.with("Gamma", x.children(u)).with("Theta", x.parents(u)).with("Omega", x.parents(v));
    fw.apply({Rule::Globalization, x.label(u).gate}, p);
    return c;
  }

  bool dedupe_once(ForwardBuilder& fw, const std::string& focus) const {
    const Cirquent& x = fw.current();
    NameSet parents = region(x, focus);
    if (!focus.empty()) parents.insert(focus);
    std::map<std::string, std::string> memo;
    for (const auto& p : parents) {
      std::map<std::string, std::string> seen;
      for (const auto& ch : x.children(p)) {
        if (fixed(x, ch)) continue;
        auto [it, fresh] = seen.emplace(canon(x, ch, memo), ch);
        if (!fresh) {
          std::string u = it->second, v = ch;
          merge_trees(fw, u, v);
          return true;
        }
      }
    }
    return false;
  }

  Derivation normalize(const Cirquent& c, const std::string& focus) const {
    ForwardBuilder path(c);
    for (;;) {
      bool changed = false;
      BackwardBuilder bb(path.current());
      while (standardize_once(bb, focus)) changed = true;
      if (bb.step_count()) path.append(reverse_derivation(bb.finish()));
      while (dedupe_once(path, focus)) changed = true;
      if (!changed) break;
    }
    return path.derivation();
  }

  void match(const Cirquent& a, const Cirquent& b, const std::string& na, const std::string& nb,
             std::map<std::string, std::string>& memo_a, std::map<std::string, std::string>& memo_b,
             std::map<std::string, std::string>& out) const {
    if (na != nb) out[na] = nb;
    std::map<std::string, std::string> by_key;
    for (const auto& ch : b.children(nb))
      if (!fixed(b, ch)) by_key[canon(b, ch, memo_b)] = ch;
    for (const auto& ch : a.children(na)) {
      if (fixed(a, ch)) continue;
      auto it = by_key.find(canon(a, ch, memo_a));
      if (it == by_key.end()) throw std::logic_error("restructuring target differs below " + na);
      match(a, b, ch, it->second, memo_a, memo_b, out);
    }
  }

  std::string add_term(Graph& g, const Term& t, const Cirquent& from) const {
    if (t.k == Term::K::Leaf) {
      if (!from.has(t.name) || !fixed(from, t.name))
        throw std::logic_error("restructuring target refers to " + t.name + ", which is not a fixed node");
      if (!g.has(t.name)) {
        NameSet below = descendants(from, t.name);
        for (const auto& d : below)
          if (!g.has(d)) g.add_node(d, from.label(d));
        for (const auto& d : below)
          for (const auto& ch : from.children(d)) g.add_edge(d, ch);
      }
      return t.name;
    }
    if (g.has(t.name)) throw std::logic_error("restructuring target reuses the name " + t.name);
    g.add_node(t.name, Label::gate_of(t.k == Term::K::And ? Gate::And : Gate::Or));
    for (const auto& k : t.kids) g.add_edge(t.name, add_term(g, k, from));
    return t.name;
  }

  // The current cirquent with everything below `focus` redrawn as `target`;
  // with an empty focus, the whole cirquent.
  Cirquent draw(const Cirquent& a, const std::string& focus, const Term& target) const {
    Graph g;
    if (focus.empty()) {
      g.root = add_term(g, target, a);
      return make_cirquent(std::move(g));
    }
    if (target.name != focus || a.label(focus) != Label::gate_of(target.k == Term::K::And ? Gate::And : Gate::Or))
      throw std::logic_error("restructuring target must keep the focus " + focus);
    g = a.graph();
    NameSet reg = region(a, focus);
    for (const auto& r : reg)
      for (const auto& p : a.parents(r))
        if (!reg.count(p) && p != focus) throw std::logic_error(r + " is shared outside the focus " + focus);
    for (const auto& r : reg) g.remove_node(r);
    for (const auto& ch : NameSet(g.nodes.at(focus).children)) g.remove_edge(focus, ch);
    for (const auto& k : target.kids) g.add_edge(focus, add_term(g, k, a));
    return make_cirquent(std::move(g));
  }

  void restructure(const std::string& focus, const Term& target) {
    const Cirquent a = fb_.current();
    Cirquent b = draw(a, focus, target);
    Derivation da = normalize(a, focus);
    Derivation db = normalize(b, focus);
    const Cirquent& na = da.last();
    const Cirquent& nb = db.last();
    std::map<std::string, std::string> ma, mb, mapping;
    const std::string ra = focus.empty() ? na.root() : focus;
    const std::string rb = focus.empty() ? nb.root() : focus;
    if (fixed(na, ra) || fixed(nb, rb)) {
      if (ra != rb) throw std::logic_error("restructuring target has a different root");
    } else {
      if (canon(na, ra, ma) != canon(nb, rb, mb))
        throw std::logic_error("restructuring target is not equivalent below " + (focus.empty() ? ra : focus));
      match(na, nb, ra, rb, ma, mb, mapping);
    }
    fb_.append(da);
    if (!mapping.empty()) {
      RuleParams p;
      p.mapping = mapping;
      fb_.apply(Rule::Redraw, p);
    }
    if (fb_.current() != nb) throw std::logic_error("restructuring normal forms disagree outside the focus");
    fb_.append(reverse_derivation(db));
  }

  // ---- the pipeline

  // One coupled disjunction per pair (i, j) under the root conjunction.
  void couplings() {
    level_ = n_;
    const std::string root = goal_.root();
    for (int i = 0; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j) {
        const std::string pos = port_.at({php_atom(i, j), false});
        const std::string neg = port_.at({php_atom(i, j), true});
        X_[{n_, i, j}] = pos;
        Y_[{n_, i, j}] = neg;
        const Cirquent& x = fb_.current();
        std::string g = fb_.fresh("c");
        RuleParams d;
        d.with("a", root).with("b", g).with("Gamma", x.children(root)).with("Delta", NameSet{}).with("Theta", NameSet{});
        fb_.apply({Rule::Deepening, Gate::And}, d);
        RuleParams c;
        c.with("a", g).with("b", pos).with("c", neg).with("Theta", NameSet{root});
        c.atom = php_atom(i, j);
        fb_.apply(Rule::Coupling, c);
      }
    checkpoint("B" + std::to_string(n_));
  }

  Term d_part(int i, int k) {
    return conj({disj({x(i, k), y(i, k)}), disj({x(k, k), y(k, k)})});
  }

  // From B^k to B^(k-1).
  void descend(int k) {
    set_level(k);
    struct Slot {
      int i, j;
      std::string t, c, m, a1, a2;
    };
    std::vector<Slot> slots;
    std::vector<Term> conjuncts;
    for (int i = 0; i < k; ++i)
      for (int j = 1; j < k; ++j) {
        Term a1 = disj({x(i, k), y(i, k)});
        Term a2 = disj({x(k, j), y(k, j)});
        Term m = conj({a1, a2});
        Term c = disj({m});
        Term t = conj({disj({x(i, j), y(i, j)}), c, d_part(i, k)});
        slots.push_back({i, j, t.name, c.name, m.name, a1.name, a2.name});
        conjuncts.push_back(std::move(t));
      }
    restructure("", named(Gate::And, goal_.root(), std::move(conjuncts)));

    for (const auto& s : slots) {
      const int i = s.i, j = s.j;
      // (x_ik v y_ik) & (x_kj v y_kj)  ->  (x_ik & x_kj) v y_ik v y_kj
      pulldown(s.c, s.m, s.a1, {yn(i, k)});
      pulldown(s.c, s.m, s.a2, {yn(k, j)});
      // x_ik & x_kj  ->  (x_ik v x_ij) & (x_kj v x_ij)
      weaken(s.a1, {xn(i, j)});
      weaken(s.a2, {xn(i, j)});

      // x_ij  ->  (x_ij v x_ik) & (x_ij v x_kj)
      Term w1 = disj({x(i, j)}), w2 = disj({x(i, j)});
      Term m1 = conj({w1, w2});
      Term a1 = disj({x(i, k), x(i, j)}), a2 = disj({x(k, j), x(i, j)});
      Term m2 = conj({a1, a2});
      restructure(s.t, named(Gate::And, s.t,
                             {disj({m1, y(i, j)}), disj({m2, y(i, k), y(k, j)}), d_part(i, k)}));
      weaken(w1.name, {xn(i, k)});
      weaken(w2.name, {xn(k, j)});

      // Both copies of X^(k-1)_ij become one shared node.
      globalize(w1.name, a1.name);
      globalize(w2.name, a2.name);
      const std::string X = globalize(m1.name, m2.name);
      freeze(X);
      X_[{k - 1, i, j}] = X;

      Term p1 = disj({leaf(X), y(i, j)});
      Term p2 = disj({leaf(X), y(i, k), y(k, j)});
      Term b = conj({p1, p2, d_part(i, k)});
      Term o = disj({b});
      restructure(s.t, named(Gate::And, s.t, {o}));
      pulldown(o.name, b.name, p1.name, {X});
      pulldown(o.name, b.name, p2.name, {X});

      Term Y = conj({y(i, j), disj({y(i, k), y(k, j)}), disj({x(i, k), y(i, k)}), disj({x(k, k), y(k, k)})});
      const std::string yname = Y.name;
      restructure(s.t, named(Gate::And, s.t, {disj({leaf(X), std::move(Y)})}));
      freeze(yname);
      Y_[{k - 1, i, j}] = yname;
    }

    level_ = k - 1;
    std::vector<Term> next;
    for (int i = 0; i < k; ++i)
      for (int j = 1; j < k; ++j) next.push_back(disj({x(i, j), y(i, j)}));
    restructure("", named(Gate::And, goal_.root(), std::move(next)));
    checkpoint("B" + std::to_string(k - 1));
  }

  // From B^1 to C^1.
  void base() {
    set_level(1);
    Term c0 = disj({x(0, 1), y(0, 1)});
    Term c1 = disj({x(1, 1), y(1, 1)});
    Term b = conj({c0, c1});
    const std::string bn = b.name, c0n = c0.name, c1n = c1.name;
    restructure("", named(Gate::Or, goal_.root(), {std::move(b)}));
    pulldown(goal_.root(), bn, c0n, {yn(0, 1)});
    pulldown(goal_.root(), bn, c1n, {yn(1, 1)});
    checkpoint("C1");
  }

  Term x_prev(int i, int j, int k) { return conj({disj({x(i, j), x(i, k)}), disj({x(i, j), x(k, j)})}); }
  Term y_prev(int i, int j, int k) {
    return conj({y(i, j), disj({y(i, k), y(k, j)}), disj({x(i, k), y(i, k)}), disj({x(k, k), y(k, k)})});
  }

  // From C^(k-1) to C^k.
  void ascend(int k) {
    set_level(k);
    struct Pair {
      int i, e, j;
      std::string z, a, s1, s2;
    };
    std::vector<Pair> pairs;
    std::vector<std::string> rows;
    std::vector<Term> top;
    for (int i = 0; i < k; ++i) {
      std::vector<Term> ys;
      for (int j = 1; j < k; ++j) ys.push_back(y_prev(i, j, k));
      Term z = disj({conj(std::move(ys))});
      rows.push_back(z.name);
      top.push_back(std::move(z));
    }
    for (int i = 0; i < k; ++i)
      for (int e = i + 1; e < k; ++e)
        for (int j = 1; j < k; ++j) {
          Term pi = x_prev(i, j, k);
          Term q = conj({pi, x_prev(e, j, k)});
          Term z = disj({q});
          pairs.push_back({i, e, j, z.name, pi.name, pi.kids[0].name, pi.kids[1].name});
          top.push_back(std::move(z));
        }
    restructure("", named(Gate::Or, goal_.root(), std::move(top)));

    for (const auto& p : pairs) {
      const int i = p.i, e = p.e, j = p.j;
      // X^(k-1)_ij & X^(k-1)_ej, the first factor traded into x_ij v (x_ik & x_kj)
      trade(p.a, {p.s1, p.s2}, {xn(i, j)});

      Term bt = disj({x(i, j), conj({x(i, k), x(k, j)})});
      Term bb = conj({bt, disj({x(e, j), x(e, k)})});
      Term cp = disj({bb});
      Term q = conj({cp, disj({x(e, j), x(k, j)})});
      const std::string btn = bt.name, bbn = bb.name, cpn = cp.name, qn = q.name;
      restructure(p.z, named(Gate::Or, p.z, {std::move(q)}));
      pulldown(cpn, bbn, btn, {xn(i, j)});
      pulldown(p.z, qn, cpn, {bbn});

      Term t1 = disj({x(e, j), x(e, k)});
      Term b3 = conj({t1, x(k, j)});
      Term c3 = disj({b3});
      Term m = conj({x(i, k), c3});
      const std::string t1n = t1.name, b3n = b3.name, c3n = c3.name, mn = m.name;
      restructure(p.z, named(Gate::Or, p.z, {conj({x(i, j), disj({x(e, j), x(k, j)})}), std::move(m)}));
      pulldown(c3n, b3n, t1n, {xn(e, k)});
      pulldown(p.z, mn, c3n, {b3n});

      Term a = disj({x(k, j), x(e, j)});
      Term b = conj({a, x(i, j)});
      Term c = disj({b});
      Term pp = conj({x(i, j), c});
      const std::string an = a.name, bn = b.name, cn = c.name, ppn = pp.name;
      restructure(p.z, named(Gate::Or, p.z, {std::move(pp), conj({x(e, j), x(k, j)}), conj({x(i, k), x(e, k)})}));
      pulldown(cn, bn, an, {xn(e, j)});
      pulldown(p.z, ppn, cn, {bn});
    }

    for (int i = 0; i < k; ++i) {
      const std::string& z = rows[static_cast<std::size_t>(i)];
      std::vector<Term> yb, bs;
      std::vector<std::string> bnames;
      for (int j = 1; j < k; ++j) {
        yb.push_back(y(i, j));
        Term bj = disj({y(i, k), y(k, j)});
        bnames.push_back(bj.name);
        bs.push_back(std::move(bj));
      }
      Term a0 = conj(std::move(bs));
      const std::string a0n = a0.name;
      Term q = conj({std::move(a0), disj({x(k, k), y(k, k)})});
      restructure(z, named(Gate::Or, z, {conj({conj(yb), disj({x(i, k), y(i, k)}), std::move(q)})}));
      // the y_ik disjuncts of the second factor pulled out by a trade
      trade(a0n, bnames, {yn(i, k)});

      std::vector<Term> ykj;
      for (int j = 1; j < k; ++j) ykj.push_back(y(k, j));
      Term bt = disj({conj(ykj), y(i, k)});
      Term e2 = disj({x(k, k), y(k, k)});
      Term q2 = conj({bt, e2});
      Term c = disj({q2});
      const std::string btn = bt.name, e2n = e2.name, q2n = q2.name, cn = c.name;
      restructure(z, named(Gate::Or, z, {conj({conj(yb), disj({x(i, k), y(i, k)}), std::move(c)})}));
      pulldown(cn, q2n, btn, {yn(i, k)});
      pulldown(cn, q2n, e2n, {xn(k, k)});

      ykj.push_back(y(k, k));
      Term yk = conj(std::move(ykj));
      Term cc = disj({yk, x(k, k), y(i, k)});
      Term e1 = disj({x(i, k), y(i, k)});
      Term b = conj({e1, cc});
      Term c2 = disj({b});
      Term w = conj({conj(yb), c2});
      const std::string ykn = yk.name, ccn = cc.name, e1n = e1.name, bn = b.name, c2n = c2.name, wn = w.name;
      restructure(z, named(Gate::Or, z, {std::move(w)}));
      pulldown(c2n, bn, ccn, {ykn, yn(i, k)});
      pulldown(c2n, bn, e1n, {yn(i, k)});
      pulldown(z, wn, c2n, {ykn, bn});
    }

    if (k == n_) {
      restructure("", term_of(goal_, goal_.root()));
    } else {
      std::vector<Term> left, right;
      for (int i = 0; i <= k; ++i) {
        std::vector<Term> row;
        for (int j = 1; j <= k; ++j) row.push_back(y(i, j));
        left.push_back(conj(std::move(row)));
      }
      for (int i = 0; i <= k; ++i)
        for (int e = i + 1; e <= k; ++e)
          for (int j = 1; j <= k; ++j) right.push_back(conj({x(i, j), x(e, j)}));
      restructure("", named(Gate::Or, goal_.root(), {disj(std::move(left)), disj(std::move(right))}));
    }
    checkpoint("C" + std::to_string(k));
  }

  int n_;
  Cirquent goal_;
  ForwardBuilder fb_;
  int level_ = 0;
  std::map<std::pair<std::string, bool>, std::string> port_;
  std::map<PhpIndex, std::string> X_, Y_;
  NameSet frozen_;
  std::vector<std::pair<std::string, std::size_t>> checkpoints_;
};

}  // namespace

PhpProof php_proof(int n) {
  require_n(n);
  return PhpProver(n).run();
}

std::vector<PhpSizeRow> php_size_report(int n_max) {
  require_n(n_max);
  std::vector<PhpSizeRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    PhpProof p = php_proof(n);
    PhpSizeRow r;
    r.n = n;
    r.size = p.proof.size();
    r.cirquents = p.proof.cirquents.size();
    for (const auto& c : p.proof.cirquents) r.max_cirquent = std::max(r.max_cirquent, c.node_count() + c.edge_count());
    if (!rows.empty())
      r.slope = std::log(static_cast<double>(r.size) / static_cast<double>(rows.back().size)) /
                std::log(static_cast<double>(n) / static_cast<double>(n - 1));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace cirq
