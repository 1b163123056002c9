#include "cirq/rules.hpp"

#include <algorithm>
#include <functional>

namespace cirq {

bool is_restructuring(Rule r) {
  switch (r) {
    case Rule::Deepening:
    case Rule::Flattening:
    case Rule::Globalization:
    case Rule::Localization:
    case Rule::Lengthening:
    case Rule::Shortening: return true;
    default: return false;
  }
}

namespace {

const std::vector<std::pair<Rule, const char*>> kRuleNames = {
    {Rule::Deepening, "deepening"},     {Rule::Flattening, "flattening"},
    {Rule::Globalization, "globalization"}, {Rule::Localization, "localization"},
    {Rule::Lengthening, "lengthening"}, {Rule::Shortening, "shortening"},
    {Rule::Coupling, "coupling"},       {Rule::Weakening, "weakening"},
    {Rule::Pulldown, "pulldown"},       {Rule::Cocoupling, "cocoupling"},
    {Rule::Coweakening, "coweakening"}, {Rule::Copulldown, "copulldown"},
    {Rule::Merging, "merging"},         {Rule::Comerging, "comerging"},
    {Rule::Trade, "trade"},             {Rule::Redraw, "redraw"},
};

}  // namespace

std::string RuleId::str() const {
  std::string s;
  for (const auto& [r, name] : kRuleNames)
    if (r == rule) s = name;
  if (flavor) s += *flavor == Gate::And ? "/and" : "/or";
  return s;
}

RuleId RuleId::parse(const std::string& s) {
  std::string base = s;
  std::optional<Gate> flavor;
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    base = s.substr(0, slash);
    std::string f = s.substr(slash + 1);
    if (f == "and" || f == "o")
      flavor = Gate::And;
    else if (f == "or" || f == "*")
      flavor = Gate::Or;
    else
      throw std::invalid_argument("unknown rule flavor '" + f + "'");
  }
  for (const auto& [r, name] : kRuleNames) {
    if (base != name) continue;
    if (is_restructuring(r) != flavor.has_value())
      throw std::invalid_argument(is_restructuring(r) ? "rule " + base + " needs a flavor"
                                                      : "rule " + base + " takes no flavor");
    RuleId id(r);
    id.flavor = flavor;
    return id;
  }
  throw std::invalid_argument("unknown rule '" + s + "'");
}

RuleId dual(const RuleId& r) {
  auto flip_rule = [](Rule x) {
    switch (x) {
      case Rule::Deepening: return Rule::Flattening;
      case Rule::Flattening: return Rule::Deepening;
      case Rule::Globalization: return Rule::Localization;
      case Rule::Localization: return Rule::Globalization;
      case Rule::Lengthening: return Rule::Shortening;
      case Rule::Shortening: return Rule::Lengthening;
      case Rule::Coupling: return Rule::Cocoupling;
      case Rule::Cocoupling: return Rule::Coupling;
      case Rule::Weakening: return Rule::Coweakening;
      case Rule::Coweakening: return Rule::Weakening;
      case Rule::Pulldown: return Rule::Copulldown;
      case Rule::Copulldown: return Rule::Pulldown;
      case Rule::Merging: return Rule::Comerging;
      case Rule::Comerging: return Rule::Merging;
      default: return x;
    }
  };
  RuleId out(flip_rule(r.rule));
  if (r.flavor) out.flavor = flip(*r.flavor);
  return out;
}

const std::string& RuleParams::at(const std::string& role) const {
  auto it = central.find(role);
  if (it == central.end())
    throw RuleError(RuleError::Kind::ParamViolation, "missing-central",
                    "missing central parameter " + role);
  return it->second;
}

const NameSet& RuleParams::set(const std::string& role) const {
  static const NameSet empty;
  auto it = peripheral.find(role);
  return it == peripheral.end() ? empty : it->second;
}

RuleError::RuleError(Kind k, std::string condition, const std::string& detail)
    : std::runtime_error(to_string(k) + "(" + condition + "): " + detail),
      kind_(k),
      condition_(std::move(condition)) {}

std::string to_string(RuleError::Kind k) {
  switch (k) {
    case RuleError::Kind::ParamViolation: return "ParamViolation";
    case RuleError::Kind::FreshNameClash: return "FreshNameClash";
    case RuleError::Kind::ConclusionMismatch: return "ConclusionMismatch";
    case RuleError::Kind::RuleNotInProfile: return "RuleNotInProfile";
    case RuleError::Kind::AxiomMismatch: return "AxiomMismatch";
    case RuleError::Kind::MacroStep: return "MacroStep";
    case RuleError::Kind::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

namespace {

// A rule schema lists, for each side, the central nodes present there with
// their labels and their complete child and parent lists. Entries of those
// lists are central roles or names of peripheral sets.
enum class LSpec { Any, Flavor, And, Or, PosPort, NegPort };

struct NodeSpec {
  std::string role;
  LSpec label;
  std::vector<std::string> kids;
  std::vector<std::string> pars;
};

struct Schema {
  std::vector<NodeSpec> premise;
  std::vector<NodeSpec> conclusion;
  bool cascade_premise = false;     // orphans removed when computing the premise
  bool cascade_conclusion = false;  // orphans removed when computing the conclusion
};

Schema reversed(Schema s) {
  std::swap(s.premise, s.conclusion);
  std::swap(s.cascade_premise, s.cascade_conclusion);
  return s;
}

Schema flipped(Schema s) {
  auto flip_side = [](std::vector<NodeSpec>& side) {
    for (auto& n : side) {
      if (n.label == LSpec::And)
        n.label = LSpec::Or;
      else if (n.label == LSpec::Or)
        n.label = LSpec::And;
    }
  };
  flip_side(s.premise);
  flip_side(s.conclusion);
  return reversed(std::move(s));
}

Schema deepening() {
  return {{{"a", LSpec::Flavor, {"Gamma", "Delta"}, {"Theta"}}},
          {{"a", LSpec::Flavor, {"Gamma", "b"}, {"Theta"}}, {"b", LSpec::Flavor, {"Delta"}, {"a"}}}};
}

Schema globalization() {
  return {{{"a", LSpec::Flavor, {"Gamma"}, {"Theta"}}, {"b", LSpec::Flavor, {"Gamma"}, {"Omega"}}},
          {{"c", LSpec::Flavor, {"Gamma"}, {"Theta", "Omega"}}}};
}

Schema lengthening() {
  return {{{"a", LSpec::Any, {"Gamma"}, {"Theta", "Omega"}}},
          {{"b", LSpec::Flavor, {"a"}, {"Theta"}}, {"a", LSpec::Any, {"Gamma"}, {"b", "Omega"}}}};
}

Schema coupling() {
  return {{{"a", LSpec::And, {}, {"Theta"}}},
          {{"a", LSpec::Or, {"b", "c"}, {"Theta"}},
           {"b", LSpec::PosPort, {}, {"a"}},
           {"c", LSpec::NegPort, {}, {"a"}}}};
}

Schema weakening() {
  Schema s{{{"a", LSpec::Or, {"Gamma"}, {"Theta"}}},
           {{"a", LSpec::Or, {"Gamma", "Delta"}, {"Theta"}}}};
  s.cascade_premise = true;
  return s;
}

Schema pulldown() {
  return {{{"c", LSpec::Or, {"b", "Delta"}, {"Theta"}},
           {"b", LSpec::And, {"a", "Sigma"}, {"c"}},
           {"a", LSpec::Or, {"Gamma", "Pi"}, {"b"}}},
          {{"c", LSpec::Or, {"b", "Delta", "Pi"}, {"Theta"}},
           {"b", LSpec::And, {"a", "Sigma"}, {"c"}},
           {"a", LSpec::Or, {"Gamma"}, {"b"}}}};
}

Schema merging() {
  return {{{"b", LSpec::Or, {"Gamma"}, {"Theta"}}, {"c", LSpec::Or, {"Delta"}, {"Omega"}}},
          {{"a", LSpec::Or, {"Gamma", "Delta"}, {"Theta", "Omega"}}}};
}

Schema trade(std::size_t n) {
  Schema s;
  NodeSpec pa{"a", LSpec::And, {}, {"Theta"}};
  NodeSpec cb{"b", LSpec::Or, {"a", "Pi"}, {"Theta"}};
  NodeSpec ca{"a", LSpec::And, {}, {"b"}};
  for (std::size_t i = 1; i <= n; ++i) {
    std::string k = std::to_string(i);
    pa.kids.push_back("b" + k);
    ca.kids.push_back("c" + k);
  }
  s.premise.push_back(pa);
  s.conclusion.push_back(cb);
  s.conclusion.push_back(ca);
  for (std::size_t i = 1; i <= n; ++i) {
    std::string k = std::to_string(i);
    s.premise.push_back({"b" + k, LSpec::Or, {"c" + k, "Pi"}, {"a"}});
    s.premise.push_back({"c" + k, LSpec::Any, {"Gamma" + k}, {"b" + k, "Omega" + k}});
    s.conclusion.push_back({"c" + k, LSpec::Any, {"Gamma" + k}, {"a", "Omega" + k}});
  }
  s.cascade_premise = true;
  return s;
}

Schema schema_for(const RuleId& id, std::size_t trade_n) {
  switch (id.rule) {
    case Rule::Deepening: return deepening();
    case Rule::Flattening: return reversed(deepening());
    case Rule::Globalization: return globalization();
    case Rule::Localization: return reversed(globalization());
    case Rule::Lengthening: return lengthening();
    case Rule::Shortening: return reversed(lengthening());
    case Rule::Coupling: return coupling();
    case Rule::Weakening: return weakening();
    case Rule::Pulldown: return pulldown();
    case Rule::Cocoupling: {
      // Keep b as the positive port, matching the coupling parameter convention.
      Schema s = flipped(coupling());
      for (auto& n : s.premise) {
        if (n.role == "b") n.label = LSpec::PosPort;
        if (n.role == "c") n.label = LSpec::NegPort;
      }
      return s;
    }
    case Rule::Coweakening: return flipped(weakening());
    case Rule::Copulldown: return flipped(pulldown());
    case Rule::Merging: return merging();
    case Rule::Comerging: return flipped(merging());
    case Rule::Trade: return trade(trade_n);
    case Rule::Redraw: break;
  }
  throw std::logic_error("no schema for " + id.str());
}

[[noreturn]] void violation(const std::string& cond, const std::string& detail) {
  throw RuleError(RuleError::Kind::ParamViolation, cond, detail);
}

std::string show(const NameSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& n : s) {
    if (!first) out += ",";
    out += n;
    first = false;
  }
  return out + "}";
}

class Instance {
 public:
  Instance(const Schema& s, const RuleId& id, const RuleParams& p) : s_(s), id_(id), p_(p) {
    for (const auto* side : {&s.premise, &s.conclusion})
      for (const auto& n : *side) roles_.insert(n.role);
    std::set<std::string> used;
    for (const auto& role : roles_) {
      const std::string& name = p.at(role);
      if (!used.insert(name).second)
        violation("distinct", "central parameters must be pairwise distinct (" + name + ")");
    }
    for (const auto* side : {&s.premise, &s.conclusion})
      for (const auto& n : *side)
        for (const auto* list : {&n.kids, &n.pars})
          for (const auto& r : *list)
            if (!roles_.count(r))
              for (const auto& x : p.set(r))
                if (used.count(x))
                  violation("peripheral", "peripheral set " + r + " contains central node " + x);
    if (id.rule == Rule::Coupling || id.rule == Rule::Cocoupling) {
      if (!p.atom || !is_identifier(*p.atom)) violation("atom", "coupling needs an atom parameter");
    }
  }

  NameSet resolve(const std::vector<std::string>& list) const {
    NameSet out;
    for (const auto& r : list) {
      if (roles_.count(r))
        out.insert(p_.at(r));
      else
        out.insert(p_.set(r).begin(), p_.set(r).end());
    }
    return out;
  }

  std::optional<Label> label_of(LSpec l) const {
    switch (l) {
      case LSpec::Any: return std::nullopt;
      case LSpec::Flavor:
        if (!id_.flavor) violation("flavor", "restructuring rule without flavor");
        return Label::gate_of(*id_.flavor);
      case LSpec::And: return Label::conj();
      case LSpec::Or: return Label::disj();
      case LSpec::PosPort: return Label::port(*p_.atom, false);
      case LSpec::NegPort: return Label::port(*p_.atom, true);
    }
    return std::nullopt;
  }

  Cirquent apply(const Cirquent& c, Direction dir) const {
    bool fwd = dir == Direction::PremiseToConclusion;
    const auto& src = fwd ? s_.premise : s_.conclusion;
    const auto& dst = fwd ? s_.conclusion : s_.premise;
    bool cascade = fwd ? s_.cascade_conclusion : s_.cascade_premise;

    std::set<std::string> src_roles, dst_roles;
    for (const auto& n : src) src_roles.insert(n.role);
    for (const auto& n : dst) dst_roles.insert(n.role);

    for (const auto& n : src) {
      const std::string& name = p_.at(n.role);
      if (!c.has(name)) violation("presence", "central node " + n.role + "=" + name + " not present");
      auto want = label_of(n.label);
      if (want && !(c.label(name) == *want))
        violation("label", n.role + "=" + name + " is " + c.label(name).str() + ", expected " +
                               want->str());
      NameSet kids = resolve(n.kids);
      if (c.children(name) != kids)
        violation("shape", "children of " + n.role + "=" + name + " are " +
                               show(c.children(name)) + ", parameters give " + show(kids));
      NameSet pars = resolve(n.pars);
      if (c.parents(name) != pars)
        violation("shape", "parents of " + n.role + "=" + name + " are " +
                               show(c.parents(name)) + ", parameters give " + show(pars));
    }
    for (const auto& role : dst_roles) {
      if (src_roles.count(role)) continue;
      const std::string& name = p_.at(role);
      if (c.has(name)) {
        if (id_.rule == Rule::Coupling || id_.rule == Rule::Cocoupling)
          throw RuleError(RuleError::Kind::FreshNameClash, "fresh",
                          role + "=" + name + " is already present");
        violation("fresh", "new node " + role + "=" + name + " is already present");
      }
    }
    for (const auto& n : dst)
      for (const auto* list : {&n.kids, &n.pars})
        for (const auto& r : *list) {
          if (roles_.count(r)) continue;
          for (const auto& x : p_.set(r))
            if (!c.has(x)) violation("presence", "peripheral node " + x + " in " + r + " not present");
        }

    Graph g = c.graph();
    std::map<std::string, Label> old_labels;
    for (const auto& role : src_roles) {
      const std::string& name = p_.at(role);
      old_labels[role] = c.label(name);
      for (const auto& ch : c.children(name)) g.remove_edge(name, ch);
      for (const auto& pa : c.parents(name)) g.remove_edge(pa, name);
      if (!dst_roles.count(role)) g.remove_node(name);
    }
    for (const auto& n : dst) {
      const std::string& name = p_.at(n.role);
      auto want = label_of(n.label);
      if (!want) {
        auto it = old_labels.find(n.role);
        if (it == old_labels.end()) violation("label", "cannot infer label of " + n.role);
        want = it->second;
      }
      g.add_node(name, *want);
    }
    for (const auto& n : dst) {
      const std::string& name = p_.at(n.role);
      for (const auto& ch : resolve(n.kids)) g.add_edge(name, ch);
      for (const auto& pa : resolve(n.pars)) g.add_edge(pa, name);
    }
    if (cascade) {
      g.root = c.root();
      if (!g.has(g.root)) violation("root", "root was removed");
      g = delete_orphans(std::move(g));
    } else {
      auto root = g.sole_source();
      if (!root) violation("root", "result has no unique parentless node");
      g.root = *root;
    }
    auto r = validate_graph(std::move(g));
    if (!r.ok()) {
      std::string why;
      for (const auto& v : r.violations) why += " " + to_string(v.kind) + "(" + v.where + ")";
      violation("result", "result is not a cirquent:" + why);
    }
    return std::move(*r.cirquent);
  }

 private:
  const Schema& s_;
  const RuleId& id_;
  const RuleParams& p_;
  std::set<std::string> roles_;
};

Cirquent apply_redraw(const Cirquent& c, const RuleParams& p, Direction dir) {
  std::map<std::string, std::string> m;
  for (const auto& [from, to] : p.mapping) {
    if (dir == Direction::PremiseToConclusion)
      m[from] = to;
    else
      m[to] = from;
  }
  for (const auto& [from, _] : m)
    if (!c.has(from)) violation("redraw", "mapping names missing node " + from);
  try {
    return rename_nodes(c, m);
  } catch (const std::invalid_argument& e) {
    violation("redraw", e.what());
  }
}


// Subsets of `u` in a fixed order, smallest first.
std::vector<NameSet> subsets(const NameSet& u, std::size_t& budget) {
  std::vector<std::string> v(u.begin(), u.end());
  if (v.size() > 20) throw RuleError(RuleError::Kind::BudgetExceeded, "enumerate", "set too large");
  std::vector<NameSet> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << v.size()); ++mask) {
    if (budget == 0) throw RuleError(RuleError::Kind::BudgetExceeded, "enumerate", "budget");
    --budget;
    NameSet s;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (mask >> i & 1) s.insert(v[i]);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<RuleParams> enumerate_schema(const Cirquent& c, const RuleId& rule, const Schema& s,
                                         Direction dir, const EnumerateOptions& opt) {
  bool fwd = dir == Direction::PremiseToConclusion;
  const auto& src = fwd ? s.premise : s.conclusion;
  const auto& dst = fwd ? s.conclusion : s.premise;
  std::vector<std::string> src_roles, new_roles;
  std::set<std::string> all_roles;
  for (const auto& n : src) {
    src_roles.push_back(n.role);
    all_roles.insert(n.role);
  }
  for (const auto& n : dst)
    if (all_roles.insert(n.role).second) new_roles.push_back(n.role);
  std::vector<std::string> vars;
  for (const auto* side : {&src, &dst})
    for (const auto& n : *side)
      for (const auto* list : {&n.kids, &n.pars})
        for (const auto& r : *list)
          if (!all_roles.count(r) && std::find(vars.begin(), vars.end(), r) == vars.end())
            vars.push_back(r);

  std::vector<std::string> names;
  for (const auto& [name, _] : c.nodes()) names.push_back(name);
  std::vector<std::optional<std::string>> atoms;
  if (rule.rule == Rule::Coupling || rule.rule == Rule::Cocoupling)
    for (const auto& a : opt.atoms) atoms.emplace_back(a);
  else
    atoms.emplace_back(std::nullopt);

  std::size_t budget = opt.budget;
  std::vector<RuleParams> out;
  std::vector<std::string> pick(src_roles.size());
  // Label and central-to-central edge checks, so that hopeless picks are skipped early.
  auto fits = [&](std::size_t i, const std::string& n) {
    const Label& l = c.label(n);
    switch (src[i].label) {
      case LSpec::Any: break;
      case LSpec::Flavor:
        if (!rule.flavor || !l.is(*rule.flavor)) return false;
        break;
      case LSpec::And:
        if (!l.is(Gate::And)) return false;
        break;
      case LSpec::Or:
        if (!l.is(Gate::Or)) return false;
        break;
      case LSpec::PosPort:
      case LSpec::NegPort:
        if (!l.is_port() || l.negated != (src[i].label == LSpec::NegPort)) return false;
        break;
    }
    auto lists = [](const NodeSpec& x, const std::string& r) {
      return std::pair{std::find(x.kids.begin(), x.kids.end(), r) != x.kids.end(),
                       std::find(x.pars.begin(), x.pars.end(), r) != x.pars.end()};
    };
    for (std::size_t j = 0; j < i; ++j) {
      auto [kid, par] = lists(src[i], src[j].role);
      if (kid != (c.children(n).count(pick[j]) != 0)) return false;
      if (par != (c.parents(n).count(pick[j]) != 0)) return false;
    }
    return true;
  };
  std::function<void(std::size_t)> choose = [&](std::size_t i) {
    if (i < src_roles.size()) {
      for (const auto& n : names) {
        if (std::find(pick.begin(), pick.begin() + static_cast<long>(i), n) !=
            pick.begin() + static_cast<long>(i))
          continue;
        if (!fits(i, n)) continue;
        pick[i] = n;
        choose(i + 1);
      }
      return;
    }
    RuleParams base;
    NameSet centrals;
    for (std::size_t k = 0; k < src_roles.size(); ++k) {
      base.central[src_roles[k]] = pick[k];
      centrals.insert(pick[k]);
    }
    NameSet taken = node_names(c);
    for (const auto& r : new_roles) {
      std::string f = fresh_name(r, taken);
      taken.insert(f);
      base.central[r] = f;
      centrals.insert(f);
    }
    // Universe of each set variable: the intersection of the neighbour sets it must cover.
    std::map<std::string, NameSet> universe;
    for (const auto& v : vars) {
      NameSet u;
      for (const auto& [name, _] : c.nodes())
        if (!centrals.count(name)) u.insert(name);
      universe[v] = u;
    }
    for (const auto& n : src) {
      const std::string& x = base.central[n.role];
      for (int side = 0; side < 2; ++side) {
        const auto& list = side == 0 ? n.kids : n.pars;
        const NameSet& nb = side == 0 ? c.children(x) : c.parents(x);
        for (const auto& r : list) {
          if (all_roles.count(r)) continue;
          NameSet keep;
          for (const auto& y : universe[r])
            if (nb.count(y)) keep.insert(y);
          universe[r] = keep;
        }
      }
    }
    std::vector<std::vector<NameSet>> options;
    for (const auto& v : vars) options.push_back(subsets(universe[v], budget));
    std::vector<std::size_t> idx(vars.size(), 0);
    for (;;) {
      for (const auto& atom : atoms) {
        if (budget == 0) throw RuleError(RuleError::Kind::BudgetExceeded, "enumerate", "budget");
        --budget;
        RuleParams p = base;
        p.atom = atom;
        for (std::size_t k = 0; k < vars.size(); ++k)
          if (!options[k][idx[k]].empty()) p.peripheral[vars[k]] = options[k][idx[k]];
        try {
          Instance(s, rule, p).apply(c, dir);
          out.push_back(std::move(p));
        } catch (const RuleError& e) {
          if (e.kind() == RuleError::Kind::BudgetExceeded) throw;
        }
      }
      std::size_t k = 0;
      while (k < vars.size() && ++idx[k] == options[k].size()) idx[k++] = 0;
      if (k == vars.size()) break;
    }
  };
  choose(0);
  return out;
}

}  // namespace

std::size_t trade_arity(const RuleParams& params) {
  std::size_t n = 0;
  while (params.central.count("c" + std::to_string(n + 1))) ++n;
  return n;
}

Cirquent apply_rule(const Cirquent& c, const RuleId& rule, const RuleParams& params,
                    Direction dir) {
  if (rule.rule == Rule::Redraw) return apply_redraw(c, params, dir);
  if (is_restructuring(rule.rule) != rule.flavor.has_value())
    violation("flavor", "flavor must be given exactly for restructuring rules");
  Schema s = schema_for(rule, trade_arity(params));
  Instance inst(s, rule, params);
  return inst.apply(c, dir);
}

Cirquent trade_premise(const Cirquent& conclusion, const RuleParams& params) {
  return apply_rule(conclusion, Rule::Trade, params, Direction::ConclusionToPremise);
}

CheckResult check_step(const Cirquent& premise, const Cirquent& conclusion, const Step& step) {
  CheckResult res;
  try {
    // Weakening and trade may delete whole subgraphs going upward, so only the
    // downward-to-upward computation is deterministic for them.
    bool upward = step.rule.rule == Rule::Weakening || step.rule.rule == Rule::Trade;
    if (upward) {
      Cirquent got = apply_rule(conclusion, step.rule, step.params, Direction::ConclusionToPremise);
      if (got != premise)
        throw RuleError(RuleError::Kind::ConclusionMismatch, "premise",
                        "premise differs from the one determined by the conclusion");
    } else {
      Cirquent got = apply_rule(premise, step.rule, step.params, Direction::PremiseToConclusion);
      if (got != conclusion)
        throw RuleError(RuleError::Kind::ConclusionMismatch, "conclusion",
                        "conclusion differs from the rule's result");
    }
  } catch (const RuleError& e) {
    res.ok = false;
    res.kind = e.kind();
    res.condition = e.condition();
    res.detail = e.what();
  }
  return res;
}

std::string to_string(Profile p) {
  switch (p) {
    case Profile::CL8: return "cl8";
    case Profile::CL8S: return "cl8s";
    case Profile::CL8Merge: return "cl8-merge";
    case Profile::CL8Local: return "cl8-local";
  }
  return "?";
}

Profile parse_profile(const std::string& s) {
  for (Profile p : {Profile::CL8, Profile::CL8S, Profile::CL8Merge, Profile::CL8Local})
    if (to_string(p) == s) return p;
  throw std::invalid_argument("unknown profile '" + s + "'");
}

bool rule_in_profile(const RuleId& r, Profile p) {
  if (is_restructuring(r.rule) || r.rule == Rule::Redraw || r.rule == Rule::Coupling ||
      r.rule == Rule::Pulldown)
    return true;
  switch (r.rule) {
    case Rule::Weakening: return p != Profile::CL8Merge;
    case Rule::Cocoupling:
    case Rule::Coweakening:
    case Rule::Copulldown: return p == Profile::CL8S;
    case Rule::Merging:
    case Rule::Comerging: return p == Profile::CL8Merge;
    default: return false;
  }
}

std::size_t Derivation::size() const {
  std::size_t s = 0;
  for (const auto& c : cirquents) s += c.node_count() + c.edge_count();
  return s;
}

void Derivation::append(Step s, Cirquent next) {
  steps.push_back(std::move(s));
  cirquents.push_back(std::move(next));
}

void Derivation::extend(const Derivation& d) {
  if (d.cirquents.empty()) return;
  if (cirquents.empty()) {
    *this = d;
    return;
  }
  if (cirquents.back() != d.cirquents.front())
    throw std::logic_error("Derivation::extend: endpoints differ");
  for (std::size_t i = 0; i < d.steps.size(); ++i) append(d.steps[i], d.cirquents[i + 1]);
}

DerivationCheck check_derivation(const Derivation& d, Profile profile) {
  DerivationCheck out;
  if (d.cirquents.empty() || d.steps.size() + 1 != d.cirquents.size()) {
    out.ok = false;
    out.result = {false, RuleError::Kind::ParamViolation, "shape",
                  "a derivation needs n cirquents and n-1 steps"};
    return out;
  }
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const Step& s = d.steps[i];
    CheckResult r;
    if (s.rule.rule == Rule::Trade) {
      r = {false, RuleError::Kind::MacroStep, "trade", "trade must be expanded to primitive rules"};
    } else if (!rule_in_profile(s.rule, profile)) {
      r = {false, RuleError::Kind::RuleNotInProfile, "profile",
           s.rule.str() + " is not a rule of " + to_string(profile)};
    } else if (profile == Profile::CL8Local &&
               ((s.rule.rule == Rule::Weakening && s.params.set("Delta").size() != 1) ||
                (s.rule.rule == Rule::Pulldown && s.params.set("Pi").size() != 1))) {
      r = {false, RuleError::Kind::ParamViolation, "local",
           "local profile requires a singleton Delta/Pi"};
    } else {
      r = check_step(d.cirquents[i], d.cirquents[i + 1], s);
    }
    if (!r.ok) {
      out.ok = false;
      out.step = i;
      out.result = r;
      return out;
    }
  }
  return out;
}

DerivationCheck check_proof(const Derivation& d, Profile profile) {
  if (!d.cirquents.empty() && !d.first().is_axiom()) {
    DerivationCheck out;
    out.ok = false;
    out.result = {false, RuleError::Kind::AxiomMismatch, "axiom",
                  "a proof must start from the single conjunctive gate"};
    return out;
  }
  return check_derivation(d, profile);
}

DerivationCheck check_refutation(const Derivation& d, Profile profile) {
  if (!d.cirquents.empty() && !d.last().is_counter_axiom()) {
    DerivationCheck out;
    out.ok = false;
    out.step = d.steps.size();
    out.result = {false, RuleError::Kind::AxiomMismatch, "counter-axiom",
                  "a refutation must end at the single disjunctive gate"};
    return out;
  }
  return check_derivation(d, profile);
}

bool is_i_analytic_step(const Cirquent& premise, const Cirquent& conclusion) {
  for (const auto& [name, node] : premise.nodes()) {
    if (!node.label.is_port()) continue;
    if (!conclusion.has(name) || !(conclusion.label(name) == node.label)) return false;
  }
  return true;
}

}  // namespace cirq

namespace cirq {

std::vector<RuleParams> enumerate_params(const Cirquent& c, const RuleId& rule, Direction dir,
                                         const EnumerateOptions& opt) {
  if (rule.rule == Rule::Trade) throw std::invalid_argument("trade has no fixed schema");
  if (rule.rule == Rule::Redraw) return {RuleParams{}};
  if (is_restructuring(rule.rule) != rule.flavor.has_value())
    throw std::invalid_argument("flavor must be given exactly for restructuring rules");
  return enumerate_schema(c, rule, schema_for(rule, 0), dir, opt);
}

}  // namespace cirq
