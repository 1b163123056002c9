#include "cirq/semantics.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>

namespace cirq {

Allocation make_allocation(const std::string& x, const std::string& y) {
  return x < y ? Allocation{x, y} : Allocation{y, x};
}

namespace {

// Bit-parallel evaluator: each node value is a 64-lane word.
struct Compiled {
  std::vector<std::string> ports;  // index = variable slot
  std::map<std::string, std::size_t> port_index;
  struct Gate {
    std::size_t node;
    bool conj;
    std::vector<std::size_t> kids;
  };
  std::vector<Gate> gates;  // children before parents
  std::vector<std::size_t> port_node;
  std::size_t node_count = 0;
  std::size_t root = 0;

  explicit Compiled(const Cirquent& c) {
    std::map<std::string, std::size_t> id;
    auto order = c.topological_order();
    for (const auto& n : order) id[n] = node_count++;
    for (const auto& n : order)
      if (c.label(n).is_port()) {
        port_index[n] = ports.size();
        ports.push_back(n);
        port_node.push_back(id[n]);
      }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const auto& l = c.label(*it);
      if (!l.is_gate()) continue;
      Gate g{id[*it], l.gate == cirq::Gate::And, {}};
      for (const auto& ch : c.children(*it)) g.kids.push_back(id[ch]);
      gates.push_back(std::move(g));
    }
    root = id[c.root()];
  }

  // Lanes where the root is true, given one word per port.
  std::uint64_t run(const std::vector<std::uint64_t>& port_words, std::vector<std::uint64_t>& v) const {
    v.assign(node_count, 0);
    for (std::size_t i = 0; i < ports.size(); ++i) v[port_node[i]] = port_words[i];
    for (const auto& g : gates) {
      std::uint64_t acc = g.conj ? ~std::uint64_t{0} : 0;
      if (g.conj)
        for (auto k : g.kids) acc &= v[k];
      else
        for (auto k : g.kids) acc |= v[k];
      v[g.node] = acc;
    }
    return v[root];
  }
};

// Pattern of free variable `var` across 64 lanes of block `block`.
std::uint64_t lane_pattern(std::size_t var, std::uint64_t block) {
  static const std::uint64_t low[6] = {0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull,
                                       0xF0F0F0F0F0F0F0F0ull, 0xFF00FF00FF00FF00ull,
                                       0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
  if (var < 6) return low[var];
  return (block >> (var - 6) & 1) ? ~std::uint64_t{0} : 0;
}

// Searches for an assignment consistent with arr (strict) that falsifies c.
std::optional<Assignment> find_falsifier(const Compiled& cc, const Arrangement& arr) {
  const std::size_t k = cc.ports.size();
  // Each free variable drives one unallocated port or one allocated pair.
  std::vector<std::size_t> var_of(k);
  std::vector<bool> inverted(k, false);
  std::vector<bool> assigned(k, false);
  std::size_t vars = 0;
  for (const auto& [x, y] : arr) {
    std::size_t ix = cc.port_index.at(x), iy = cc.port_index.at(y);
    var_of[ix] = vars;
    var_of[iy] = vars;
    inverted[iy] = true;
    assigned[ix] = assigned[iy] = true;
    ++vars;
  }
  for (std::size_t i = 0; i < k; ++i)
    if (!assigned[i]) var_of[i] = vars++;

  const std::uint64_t total = vars >= 6 ? (std::uint64_t{1} << (vars - 6)) : 1;
  const std::uint64_t lane_mask = vars >= 6 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (1u << vars)) - 1);
  std::vector<std::uint64_t> words(k), scratch;
  for (std::uint64_t block = 0; block < total; ++block) {
    for (std::size_t i = 0; i < k; ++i) {
      std::uint64_t w = lane_pattern(var_of[i], block);
      words[i] = inverted[i] ? ~w : w;
    }
    std::uint64_t bad = ~cc.run(words, scratch) & lane_mask;
    if (!bad) continue;
    unsigned lane = static_cast<unsigned>(__builtin_ctzll(bad));
    Assignment f;
    for (std::size_t i = 0; i < k; ++i) f[cc.ports[i]] = (words[i] >> lane) & 1;
    return f;
  }
  return std::nullopt;
}

bool weak_validating(const Cirquent& c, const Arrangement& arr) {
  auto ports = c.ports();
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < ports.size(); ++i) idx[ports[i]] = i;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << ports.size()); ++m) {
    bool ok = true;
    for (const auto& [x, y] : arr)
      if (!((m >> idx[x]) & 1) && !((m >> idx[y]) & 1)) ok = false;
    if (!ok) continue;
    Assignment f;
    for (std::size_t i = 0; i < ports.size(); ++i) f[ports[i]] = (m >> i) & 1;
    if (!evaluate(c, f)) return false;
  }
  return true;
}

void check_budget(const Cirquent& c, const SemanticsOptions& opt) {
  std::size_t ports = c.ports().size();
  if (ports > opt.port_budget || ports > 62)
    throw SemanticsError(SemanticsError::Kind::BudgetExceeded,
                         std::to_string(ports) + " ports exceed the exhaustive budget of " +
                             std::to_string(opt.port_budget));
}

}  // namespace

bool evaluate(const Cirquent& c, const Assignment& f) {
  std::map<std::string, bool> val;
  auto order = c.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& l = c.label(*it);
    if (l.is_port()) {
      auto fi = f.find(*it);
      if (fi == f.end())
        throw SemanticsError(SemanticsError::Kind::IncompleteAssignment, "no value for port " + *it);
      val[*it] = fi->second;
      continue;
    }
    bool conj = l.gate == Gate::And;
    bool acc = conj;
    for (const auto& ch : c.children(*it)) acc = conj ? (acc && val[ch]) : (acc || val[ch]);
    val[*it] = acc;
  }
  return val[c.root()];
}

bool is_consistent(const Assignment& f, const Arrangement& arr) {
  for (const auto& [x, y] : arr)
    if (f.at(x) == f.at(y)) return false;
  return true;
}

void check_arrangement(const Cirquent& c, const Arrangement& arr) {
  std::set<std::string> used;
  for (const auto& [x, y] : arr) {
    if (!c.has(x) || !c.has(y) || !c.label(x).opposite_of(c.label(y)))
      throw SemanticsError(SemanticsError::Kind::BadArrangement,
                           "{" + x + "," + y + "} is not a pair of opposite-label ports");
    if (!used.insert(x).second || !used.insert(y).second)
      throw SemanticsError(SemanticsError::Kind::BadArrangement,
                           "allocations are not disjoint at {" + x + "," + y + "}");
  }
}

bool is_validating(const Cirquent& c, const Arrangement& arr, const SemanticsOptions& opt) {
  check_budget(c, opt);
  check_arrangement(c, arr);
  if (opt.weak_consistency) return weak_validating(c, arr);
  return !find_falsifier(Compiled(c), arr).has_value();
}

Validity decide_validity(const Cirquent& c, const SemanticsOptions& opt) {
  check_budget(c, opt);
  // Adding an allocation only shrinks the set of consistent assignments, so
  // it is enough to try the maximal arrangements.
  std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::string>>> by_atom;
  for (const auto& p : c.ports()) {
    const auto& l = c.label(p);
    (l.negated ? by_atom[l.atom].second : by_atom[l.atom].first).push_back(p);
  }
  struct Group {
    std::vector<std::string> small, large;
  };
  std::vector<Group> groups;
  for (auto& [_, pn] : by_atom) {
    if (pn.first.empty() || pn.second.empty()) continue;
    if (pn.first.size() <= pn.second.size())
      groups.push_back({pn.first, pn.second});
    else
      groups.push_back({pn.second, pn.first});
  }

  Compiled cc(c);
  Validity out;
  std::vector<Assignment> falsifiers;
  Arrangement current;
  std::function<bool(std::size_t, std::size_t, std::vector<bool>&)> search =
      [&](std::size_t g, std::size_t i, std::vector<bool>& used) -> bool {
    if (g == groups.size()) {
      for (const auto& f : falsifiers) {
        bool consistent = true;
        for (const auto& [x, y] : current)
          if (f.at(x) == f.at(y)) consistent = false;
        if (consistent) return false;
      }
      if (opt.weak_consistency) {
        if (!weak_validating(c, current)) return false;
        out.witness = current;
        return true;
      }
      auto bad = find_falsifier(cc, current);
      if (!bad) {
        out.witness = current;
        return true;
      }
      falsifiers.push_back(*bad);
      return false;
    }
    const Group& gr = groups[g];
    if (i == gr.small.size()) {
      std::vector<bool> fresh(groups.size() > g + 1 ? groups[g + 1].large.size() : 0, false);
      return search(g + 1, 0, fresh);
    }
    for (std::size_t j = 0; j < gr.large.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      auto alloc = make_allocation(gr.small[i], gr.large[j]);
      current.insert(alloc);
      bool found = search(g, i + 1, used);
      current.erase(alloc);
      used[j] = false;
      if (found) return true;
    }
    return false;
  };
  std::vector<bool> used(groups.empty() ? 0 : groups[0].large.size(), false);
  if (!search(0, 0, used)) {
    std::set<Assignment> uniq(falsifiers.begin(), falsifiers.end());
    out.countermodels.assign(uniq.begin(), uniq.end());
  }
  return out;
}

bool classical_tautology(const Cirquent& c, const SemanticsOptions& opt) {
  if (!is_circuit(c))
    throw SemanticsError(SemanticsError::Kind::NotACircuit, "classical_tautology needs a circuit");
  std::map<std::string, std::pair<std::string, std::string>> by_atom;
  for (const auto& p : c.ports()) {
    const auto& l = c.label(p);
    (l.negated ? by_atom[l.atom].second : by_atom[l.atom].first) = p;
  }
  Arrangement mu;
  for (const auto& [_, pn] : by_atom)
    if (!pn.first.empty() && !pn.second.empty()) mu.insert(make_allocation(pn.first, pn.second));
  SemanticsOptions strict = opt;
  strict.weak_consistency = false;
  return is_validating(c, mu, strict);
}

Generalization generalize_to_circuit(const Cirquent& c, const Arrangement& arr,
                                     const SemanticsOptions& opt) {
  if (!is_validating(c, arr, opt))
    throw SemanticsError(SemanticsError::Kind::NotValidating, "arrangement is not validating");
  Graph g = c.graph();
  AtomRenaming back;
  std::size_t k = 0;
  std::set<std::string> done;
  auto fresh_atom = [&](const std::string& original) {
    std::string a = "A" + std::to_string(++k);
    back[a] = original;
    return a;
  };
  for (const auto& [x, y] : arr) {
    std::string a = fresh_atom(g.nodes.at(x).label.atom);
    g.nodes.at(x).label.atom = a;
    g.nodes.at(y).label.atom = a;
    done.insert(x);
    done.insert(y);
  }
  for (auto& [name, node] : g.nodes)
    if (node.label.is_port() && !done.count(name)) node.label.atom = fresh_atom(node.label.atom);
  return {make_cirquent(std::move(g)), back};
}

std::string format_witness(const Validity& v) {
  if (!v.valid()) return "not-valid";
  std::string s = "valid {";
  bool first = true;
  for (const auto& [x, y] : *v.witness) {
    if (!first) s += ", ";
    s += x + "~" + y;
    first = false;
  }
  return s + "}";
}

std::string format_assignment(const Assignment& f) {
  std::string s;
  for (const auto& [p, v] : f) {
    if (!s.empty()) s += ' ';
    s += p + "=" + (v ? "1" : "0");
  }
  return s;
}

}  // namespace cirq
