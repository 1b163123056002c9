#include "cirq/builder.hpp"

#include <algorithm>
#include <stdexcept>

namespace cirq {

namespace {

NameSet minus(NameSet s, const NameSet& drop) {
  for (const auto& x : drop) s.erase(x);
  return s;
}

Gate gate_of(const Cirquent& c, const std::string& n) {
  const Label& l = c.label(n);
  if (!l.is_gate()) throw std::logic_error(n + " is not a gate");
  return l.gate;
}

}  // namespace

BackwardBuilder::BackwardBuilder(Cirquent bottom) : top_(std::move(bottom)) {
  cirquents_.push_back(top_);
}

std::string BackwardBuilder::fresh(const std::string& base) {
  std::string stem = base.substr(0, base.find('#'));
  for (std::size_t k = 1;; ++k) {
    std::string cand = stem + "#" + std::to_string(k);
    if (!top_.has(cand) && !handed_.count(cand)) {
      handed_.insert(cand);
      return cand;
    }
  }
}

void BackwardBuilder::apply(const RuleId& rule, const RuleParams& params) {
  top_ = apply_rule(top_, rule, params, Direction::ConclusionToPremise);
  cirquents_.push_back(top_);
  steps_.push_back({rule, params});
}

void BackwardBuilder::flatten(const std::string& b) {
  const auto& pars = top_.parents(b);
  if (pars.size() != 1) throw std::logic_error("flatten: " + b + " needs exactly one parent");
  const std::string a = *pars.begin();
  Gate g = gate_of(top_, a);
  RuleParams p;
  p.with("a", a).with("b", b);
  p.with("Gamma", minus(top_.children(a), {b}));
  p.with("Delta", top_.children(b));
  p.with("Theta", top_.parents(a));
  apply({Rule::Deepening, g}, p);
}

std::pair<std::string, std::string> BackwardBuilder::split(const std::string& c, const NameSet& theta) {
  Gate g = gate_of(top_, c);
  std::string a = fresh(c), b = fresh(c);
  RuleParams p;
  p.with("a", a).with("b", b).with("c", c);
  p.with("Gamma", top_.children(c));
  p.with("Theta", theta);
  p.with("Omega", minus(top_.parents(c), theta));
  apply({Rule::Globalization, g}, p);
  return {a, b};
}

void BackwardBuilder::unwrap(const std::string& b) {
  const auto& kids = top_.children(b);
  if (kids.size() != 1) throw std::logic_error("unwrap: " + b + " needs exactly one child");
  const std::string a = *kids.begin();
  RuleParams p;
  p.with("a", a).with("b", b);
  p.with("Gamma", top_.children(a));
  p.with("Theta", top_.parents(b));
  p.with("Omega", minus(top_.parents(a), {b}));
  apply({Rule::Lengthening, gate_of(top_, b)}, p);
}

std::string BackwardBuilder::wrap(const std::string& a, const NameSet& theta, Gate g) {
  std::string b = fresh("w");
  RuleParams p;
  p.with("a", a).with("b", b);
  p.with("Gamma", top_.children(a));
  p.with("Theta", theta);
  p.with("Omega", minus(top_.parents(a), theta));
  apply({Rule::Shortening, g}, p);
  return b;
}

std::string BackwardBuilder::merge(const std::string& a, const std::string& b) {
  std::string c = fresh(a);
  RuleParams p;
  p.with("a", a).with("b", b).with("c", c);
  p.with("Gamma", top_.children(a));
  p.with("Theta", top_.parents(a));
  p.with("Omega", top_.parents(b));
  apply({Rule::Localization, gate_of(top_, a)}, p);
  return c;
}

void BackwardBuilder::uncouple(const std::string& a) {
  const auto& kids = top_.children(a);
  if (kids.size() != 2) throw std::logic_error("uncouple: " + a + " needs two children");
  std::string x = *kids.begin(), y = *std::next(kids.begin());
  if (top_.label(x).negated) std::swap(x, y);
  RuleParams p;
  p.with("a", a).with("b", x).with("c", y);
  p.with("Theta", top_.parents(a));
  p.atom = top_.label(x).atom;
  apply(Rule::Coupling, p);
}

void BackwardBuilder::weaken(const std::string& a, const NameSet& keep) {
  RuleParams p;
  p.with("a", a);
  p.with("Gamma", keep);
  p.with("Delta", minus(top_.children(a), keep));
  p.with("Theta", top_.parents(a));
  apply(Rule::Weakening, p);
}

void BackwardBuilder::trade(const RuleParams& tp) {
  const std::size_t n = trade_arity(tp);
  const std::string& a = tp.at("a");
  const std::string& b = tp.at("b");
  const NameSet& pi = tp.set("Pi");
  const NameSet& theta = tp.set("Theta");
  if (n == 0) {
    RuleParams w;
    w.with("a", b).with("Gamma", NameSet{a}).with("Delta", pi).with("Theta", theta);
    apply(Rule::Weakening, w);
    RuleParams l;
    l.with("a", a).with("b", b).with("Theta", theta);
    apply({Rule::Lengthening, Gate::Or}, l);
    return;
  }
  NameSet bs;
  for (std::size_t i = 1; i <= n; ++i) bs.insert(tp.at("b" + std::to_string(i)));
  for (std::size_t i = n; i >= 1; --i) {
    std::string k = std::to_string(i);
    RuleParams s;
    s.with("b", tp.at("b" + k)).with("a", tp.at("c" + k));
    s.with("Gamma", tp.set("Gamma" + k)).with("Theta", NameSet{a}).with("Omega", tp.set("Omega" + k));
    apply({Rule::Shortening, Gate::Or}, s);
  }
  for (std::size_t i = n; i >= 1; --i) {
    std::string k = std::to_string(i);
    const std::string& bi = tp.at("b" + k);
    RuleParams q;
    q.with("c", b).with("b", a).with("a", bi);
    q.with("Gamma", NameSet{tp.at("c" + k)});
    q.with("Sigma", minus(bs, {bi}));
    q.with("Delta", i > 1 ? pi : NameSet{});
    q.with("Pi", pi);
    q.with("Theta", theta);
    apply(Rule::Pulldown, q);
  }
  RuleParams l;
  l.with("a", a).with("b", b).with("Gamma", bs).with("Theta", theta);
  apply({Rule::Lengthening, Gate::Or}, l);
}

Derivation BackwardBuilder::finish() const {
  Derivation d;
  d.cirquents.assign(cirquents_.rbegin(), cirquents_.rend());
  d.steps.assign(steps_.rbegin(), steps_.rend());
  return d;
}

ForwardBuilder::ForwardBuilder(Cirquent top) : cur_(std::move(top)) { d_.cirquents.push_back(cur_); }

std::string ForwardBuilder::fresh(const std::string& base) {
  std::string stem = base.substr(0, base.find('#'));
  for (std::size_t k = 1;; ++k) {
    std::string cand = stem + "#" + std::to_string(k);
    if (!cur_.has(cand) && !handed_.count(cand)) {
      handed_.insert(cand);
      return cand;
    }
  }
}

void ForwardBuilder::apply(const RuleId& rule, const RuleParams& params) {
  Cirquent next = apply_rule(cur_, rule, params, Direction::PremiseToConclusion);
  d_.append({rule, params}, next);
  cur_ = std::move(next);
}

void ForwardBuilder::apply_to(const RuleId& rule, const RuleParams& params, const Cirquent& next) {
  Step s{rule, params};
  auto r = check_step(cur_, next, s);
  if (!r) throw RuleError(r.kind, r.condition, r.detail);
  d_.append(std::move(s), next);
  cur_ = next;
}

void ForwardBuilder::append(const Derivation& d) {
  d_.extend(d);
  cur_ = d_.last();
}

Derivation reverse_derivation(const Derivation& d) {
  Derivation out;
  out.cirquents.assign(d.cirquents.rbegin(), d.cirquents.rend());
  for (auto it = d.steps.rbegin(); it != d.steps.rend(); ++it) {
    Step s = *it;
    switch (s.rule.rule) {
      case Rule::Deepening: s.rule.rule = Rule::Flattening; break;
      case Rule::Flattening: s.rule.rule = Rule::Deepening; break;
      case Rule::Globalization: s.rule.rule = Rule::Localization; break;
      case Rule::Localization: s.rule.rule = Rule::Globalization; break;
      case Rule::Lengthening: s.rule.rule = Rule::Shortening; break;
      case Rule::Shortening: s.rule.rule = Rule::Lengthening; break;
      case Rule::Redraw: {
        std::map<std::string, std::string> inv;
        for (const auto& [from, to] : s.params.mapping) inv[to] = from;
        s.params.mapping = std::move(inv);
        break;
      }
      default: throw std::invalid_argument(s.rule.str() + " cannot be read backward");
    }
    out.steps.push_back(std::move(s));
  }
  return out;
}

}  // namespace cirq
