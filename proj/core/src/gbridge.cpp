#include "cirq/gbridge.hpp"

#include <algorithm>
#include <map>

#include "cirq/builder.hpp"

namespace cirq {

std::size_t GProof::size() const {
  std::size_t s = 0;
  for (const auto& f : sequent) s += f.size();
  for (const auto& c : children) s += c.size();
  return s;
}

std::size_t GProof::node_count() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.node_count();
  return n;
}

std::string to_string(GError::Kind k) {
  switch (k) {
    case GError::Kind::NotAxiom: return "NotAxiom";
    case GError::Kind::PremiseMismatch: return "PremiseMismatch";
    case GError::Kind::EmptySequent: return "EmptySequent";
    case GError::Kind::BudgetExceeded: return "BudgetExceeded";
    case GError::Kind::NotSingleton: return "NotSingleton";
    case GError::Kind::GProofInvalid: return "GProofInvalid";
  }
  return "?";
}

namespace {

std::optional<std::pair<Formula, Formula>> complementary_pair(const Sequent& s) {
  for (const auto& f : s)
    if (f.is_lit() && !f.negated && s.count(Formula::lit(f.atom, true)))
      return std::make_pair(f, Formula::lit(f.atom, true));
  return std::nullopt;
}

Sequent with(Sequent s, const Formula& f) {
  s.insert(f);
  return s;
}

void check_node(const GProof& p, std::vector<std::size_t>& path, GCheck& out) {
  auto fail = [&](GError::Kind k, const std::string& why) {
    out.ok = false;
    out.path = path;
    out.kind = k;
    out.detail = why;
  };
  if (p.sequent.empty()) return fail(GError::Kind::EmptySequent, "empty sequent");
  if (p.rule == GProof::Rule::Axiom) {
    if (!p.children.empty()) return fail(GError::Kind::NotAxiom, "axiom with premises");
    if (!complementary_pair(p.sequent)) return fail(GError::Kind::NotAxiom, "no complementary literal pair");
    return;
  }
  const Formula& pr = p.principal;
  bool is_or = p.rule == GProof::Rule::Or;
  if (pr.kind != (is_or ? Formula::Kind::Or : Formula::Kind::And))
    return fail(GError::Kind::PremiseMismatch, "principal " + render(pr) + " has the wrong connective");
  if (!p.sequent.count(pr))
    return fail(GError::Kind::PremiseMismatch, "principal " + render(pr) + " not in the sequent");
  Sequent rest = p.sequent;
  rest.erase(pr);
  bool matched = false;
  for (const Sequent& gamma : {rest, p.sequent}) {
    if (is_or) {
      Sequent want = gamma;
      want.insert(pr.children.begin(), pr.children.end());
      matched = p.children.size() == 1 && p.children[0].sequent == want;
    } else {
      matched = p.children.size() == pr.children.size();
      for (std::size_t i = 0; matched && i < pr.children.size(); ++i)
        matched = p.children[i].sequent == with(gamma, pr.children[i]);
    }
    if (matched) break;
  }
  if (!matched)
    return fail(GError::Kind::PremiseMismatch,
                std::string(is_or ? "or" : "and") + "-introduction premises do not match " + render(pr));
  for (std::size_t i = 0; i < p.children.size() && out.ok; ++i) {
    path.push_back(i);
    check_node(p.children[i], path, out);
    path.pop_back();
  }
}

class GSearch {
 public:
  explicit GSearch(std::size_t budget) : budget_(budget) {}

  std::optional<GProof> go(const Sequent& s) {
    if (++used_ > budget_)
      throw GError(GError::Kind::BudgetExceeded, "prove_g exceeded " + std::to_string(budget_) + " nodes");
    GProof p;
    p.sequent = s;
    if (complementary_pair(s)) return p;
    auto it = std::find_if(s.begin(), s.end(), [](const Formula& f) { return !f.is_lit(); });
    if (it == s.end()) return std::nullopt;
    p.principal = *it;
    Sequent gamma = s;
    gamma.erase(*it);
    if (it->kind == Formula::Kind::Or) {
      p.rule = GProof::Rule::Or;
      Sequent next = gamma;
      next.insert(it->children.begin(), it->children.end());
      auto child = go(next);
      if (!child) return std::nullopt;
      p.children.push_back(std::move(*child));
    } else {
      p.rule = GProof::Rule::And;
      for (const auto& part : it->children) {
        auto child = go(with(gamma, part));
        if (!child) return std::nullopt;
        p.children.push_back(std::move(*child));
      }
    }
    return p;
  }

 private:
  std::size_t budget_;
  std::size_t used_ = 0;
};

class Translation {
 public:
  explicit Translation(const Formula& f) : bb_(to_cirquent(underline(f))) { annotate(f); }

  Derivation run(const GProof& p) {
    const Cirquent& bottom = bb_.top();
    std::string d = bb_.wrap(bottom.root(), {}, Gate::Or);
    root_ = bb_.wrap(d, {}, Gate::And);
    std::vector<std::pair<std::string, const GProof*>> jobs{{d, &p}};
    while (!jobs.empty()) {
      auto [conj, node] = jobs.back();
      jobs.pop_back();
      step(conj, *node, jobs);
    }
    endgame();
    if (!bb_.top().is_axiom()) throw std::logic_error("translation did not reach the axiom");
    return bb_.finish();
  }

 private:
  std::string annotate(const Formula& f) {
    if (f.is_lit()) {
      auto key = std::make_pair(f.atom, f.negated);
      auto it = port_.find(key);
      if (it != port_.end()) return it->second;
      std::string name = "n" + std::to_string(counter_++);
      port_[key] = name;
      return name;
    }
    std::string name = "n" + std::to_string(counter_++);
    form_[name] = f;
    for (const auto& c : f.children) annotate(c);
    return name;
  }

  Formula formula_of(const std::string& n) const {
    const Label& l = bb_.top().label(n);
    if (l.is_port()) return Formula::lit(l.atom, l.negated);
    return form_.at(n);
  }

  std::string find_child(const std::string& conj, const Formula& f) const {
    for (const auto& ch : bb_.top().children(conj))
      if (formula_of(ch) == f) return ch;
    throw GError(GError::Kind::GProofInvalid,
                 "conjunct " + conj + " has no copy of " + render(f) +
                     "; reusing a principal formula in its own premise is not supported");
  }

  // Node of each formula child of gate x, by position.
  std::vector<std::string> positions(const std::string& x) const {
    std::vector<std::string> out;
    NameSet used;
    for (const auto& f : form_.at(x).children) {
      if (f.is_lit()) {
        out.push_back(port_.at({f.atom, f.negated}));
        continue;
      }
      std::string hit;
      for (const auto& ch : bb_.top().children(x))
        if (!used.count(ch) && bb_.top().label(ch).is_gate() && form_.at(ch) == f) {
          hit = ch;
          break;
        }
      if (hit.empty()) throw std::logic_error("lost track of a subformula of " + x);
      used.insert(hit);
      out.push_back(hit);
    }
    return out;
  }

  void step(const std::string& conj, const GProof& node,
            std::vector<std::pair<std::string, const GProof*>>& jobs) {
    for (const auto& f : node.sequent) find_child(conj, f);
    if (node.rule == GProof::Rule::Axiom) {
      auto pair = complementary_pair(node.sequent);
      NameSet keep{port_.at({pair->first.atom, false}), port_.at({pair->first.atom, true})};
      if (bb_.top().children(conj).size() > 2) bb_.weaken(conj, keep);
      return;
    }
    std::string x = find_child(conj, node.principal);
    if (node.rule == GProof::Rule::Or) {
      bb_.flatten(x);
      form_.erase(x);
      jobs.emplace_back(conj, &node.children[0]);
      return;
    }
    // Each distinct child node of x follows the first premise that introduces it.
    auto pos = positions(x);
    std::vector<std::pair<std::string, std::size_t>> parts;
    for (std::size_t i = 0; i < pos.size(); ++i)
      if (std::none_of(parts.begin(), parts.end(), [&](const auto& q) { return q.first == pos[i]; }))
        parts.emplace_back(pos[i], i);

    std::vector<std::string> wraps;
    for (const auto& [c, _] : parts) wraps.push_back(bb_.wrap(c, {x}, Gate::Or));
    const Cirquent& y = bb_.top();
    RuleParams tp;
    tp.with("a", x).with("b", conj).with("Theta", y.parents(conj));
    NameSet pi = y.children(conj);
    pi.erase(x);
    tp.with("Pi", pi);
    std::vector<std::string> conjuncts;
    for (std::size_t i = 0; i < wraps.size(); ++i) {
      std::string k = std::to_string(i + 1);
      conjuncts.push_back(bb_.fresh("d"));
      tp.with("c" + k, wraps[i]).with("b" + k, conjuncts.back());
      tp.with("Gamma" + k, y.children(wraps[i]));
    }
    bb_.trade(tp);
    bb_.flatten(x);
    form_.erase(x);
    for (const auto& w : wraps) bb_.flatten(w);
    split_shared();
    for (std::size_t i = 0; i < parts.size(); ++i) jobs.emplace_back(conjuncts[i], &node.children[parts[i].second]);
  }

  // Gives every conjunct its own copy of the compound formulas it shares.
  void split_shared() {
    auto order = bb_.top().topological_order();
    for (const auto& n : order) {
      std::string cur = n;
      while (cur != root_ && bb_.top().label(cur).is_gate() && bb_.top().parents(cur).size() >= 2) {
        auto [a, b] = bb_.split(cur, {*bb_.top().parents(cur).begin()});
        form_[a] = form_[b] = form_.at(cur);
        form_.erase(cur);
        cur = b;
      }
    }
  }

  void endgame() {
    std::map<NameSet, std::vector<std::string>> by_kids;
    for (const auto& ch : bb_.top().children(root_)) by_kids[bb_.top().children(ch)].push_back(ch);
    std::vector<std::string> pairs;
    for (const auto& [_, gs] : by_kids) {
      std::string acc = gs.front();
      for (std::size_t k = 1; k < gs.size(); ++k) acc = bb_.merge(acc, gs[k]);
      pairs.push_back(acc);
    }
    for (const auto& g : pairs) bb_.uncouple(g);
    for (const auto& g : pairs) bb_.flatten(g);
  }

  BackwardBuilder bb_;
  std::map<std::string, Formula> form_;
  std::map<std::pair<std::string, bool>, std::string> port_;
  std::size_t counter_ = 0;
  std::string root_;
};

}  // namespace

GCheck check_g_proof(const GProof& p) {
  GCheck out;
  std::vector<std::size_t> path;
  check_node(p, path, out);
  return out;
}

std::optional<GProof> prove_g(const Formula& f, std::size_t node_budget) {
  return GSearch(node_budget).go({strip_overlines(f)});
}

Derivation translate_g_to_cl8(const GProof& p) {
  if (p.sequent.size() != 1) throw GError(GError::Kind::NotSingleton, "the root sequent must be a single formula");
  auto chk = check_g_proof(p);
  if (!chk) throw GError(GError::Kind::GProofInvalid, "G-proof does not check: " + chk.detail);
  return Translation(*p.sequent.begin()).run(p);
}

}  // namespace cirq
