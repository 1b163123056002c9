#include "cirq/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "cirq/formula.hpp"

namespace cirq {

ParseError::ParseError(std::size_t line, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}

namespace {

bool is_node_name(const std::string& s) {
  if (s.empty() || !(std::isalnum(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '#') return false;
  return true;
}

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string t;
  while (in >> t) {
    if (t[0] == '#') break;
    out.push_back(t);
  }
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) out.push_back(l);
  return out;
}

std::string name_arg(const std::vector<std::string>& t, std::size_t i, std::size_t line) {
  if (i >= t.size()) throw ParseError(line, "missing node name after '" + t[0] + "'");
  if (!is_node_name(t[i])) throw ParseError(line, "bad node name '" + t[i] + "'");
  return t[i];
}

// Reads one block starting at lines[pos] (which holds `cirquent`); leaves pos after `end`.
std::pair<std::string, Cirquent> read_block(const std::vector<std::string>& lines, std::size_t& pos) {
  auto head = tokens(lines[pos]);
  const std::size_t start = pos + 1;
  if (head.size() != 2 || head[0] != "cirquent") throw ParseError(start, "expected 'cirquent <name>'");
  std::string name = head[1];
  std::map<std::string, Label> nodes;
  std::vector<Edge> edges;
  std::optional<std::string> root;
  for (++pos; pos < lines.size(); ++pos) {
    const std::size_t ln = pos + 1;
    auto t = tokens(lines[pos]);
    if (t.empty()) continue;
    if (t[0] == "end") {
      if (t.size() != 1) throw ParseError(ln, "unexpected text after 'end'");
      ++pos;
      if (!root) throw ParseError(ln, "cirquent " + name + " has no root line");
      try {
        return {name, make_cirquent(nodes, edges, *root)};
      } catch (const InvalidCirquent& e) {
        throw ParseError(ln, std::string("cirquent ") + name + " is not valid: " + e.what());
      }
    }
    if (t[0] == "node") {
      std::string n = name_arg(t, 1, ln);
      if (nodes.count(n)) throw ParseError(ln, "node " + n + " declared twice");
      if (t.size() == 4 && t[2] == "port") {
        std::string a = t[3];
        bool neg = !a.empty() && a[0] == '~';
        if (neg) a = a.substr(1);
        if (!is_identifier(a)) throw ParseError(ln, "bad atom '" + t[3] + "'");
        nodes[n] = Label::port(a, neg);
      } else if (t.size() == 4 && t[2] == "gate" && (t[3] == "and" || t[3] == "or")) {
        nodes[n] = t[3] == "and" ? Label::conj() : Label::disj();
      } else {
        throw ParseError(ln, "expected 'node <name> port [~]<atom>' or 'node <name> gate and|or'");
      }
    } else if (t[0] == "edge") {
      if (t.size() != 3) throw ParseError(ln, "expected 'edge <parent> <child>'");
      edges.emplace_back(name_arg(t, 1, ln), name_arg(t, 2, ln));
    } else if (t[0] == "root") {
      if (t.size() != 2) throw ParseError(ln, "expected 'root <name>'");
      if (root) throw ParseError(ln, "second root line");
      root = name_arg(t, 1, ln);
    } else {
      throw ParseError(ln, "unknown keyword '" + t[0] + "'");
    }
  }
  throw ParseError(lines.size(), "cirquent " + name + " is missing 'end'");
}

std::string set_str(const NameSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& n : s) {
    out += (first ? "" : ",") + n;
    first = false;
  }
  return out + "}";
}

std::vector<std::string> split_list(const std::string& body) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : body) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

}  // namespace

std::string write_cirquent(const Cirquent& c, const std::string& name) {
  std::string out = "cirquent " + name + "\n";
  for (const auto& [n, node] : c.nodes()) {
    if (node.label.is_port())
      out += "node " + n + " port " + node.label.str() + "\n";
    else
      out += "node " + n + " gate " + node.label.str() + "\n";
  }
  for (const auto& [p, ch] : c.edges()) out += "edge " + p + " " + ch + "\n";
  out += "root " + c.root() + "\nend\n";
  return out;
}

std::vector<std::pair<std::string, Cirquent>> read_cirquents(const std::string& text) {
  auto lines = lines_of(text);
  std::vector<std::pair<std::string, Cirquent>> out;
  std::size_t pos = 0;
  while (pos < lines.size()) {
    if (tokens(lines[pos]).empty()) {
      ++pos;
      continue;
    }
    out.push_back(read_block(lines, pos));
  }
  return out;
}

Cirquent read_cirquent(const std::string& text) {
  auto all = read_cirquents(text);
  if (all.size() != 1) throw ParseError(1, "expected exactly one cirquent block, found " + std::to_string(all.size()));
  return all.front().second;
}

std::string write_step(const Step& s) {
  std::string out = "step " + s.rule.str();
  for (const auto& [role, n] : s.params.central) out += " " + role + "=" + n;
  if (s.params.atom) out += " atom=" + *s.params.atom;
  for (const auto& [role, set] : s.params.peripheral)
    if (!set.empty()) out += " " + role + "=" + set_str(set);
  if (!s.params.mapping.empty()) {
    out += " map={";
    bool first = true;
    for (const auto& [from, to] : s.params.mapping) {
      out += (first ? "" : ",") + from + ">" + to;
      first = false;
    }
    out += "}";
  }
  return out;
}

Step read_step(const std::string& line) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  };
  auto word = [&] {
    std::size_t b = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '=') ++i;
    return line.substr(b, i - b);
  };
  skip();
  if (word() != "step") throw ParseError(0, "expected 'step'");
  skip();
  Step s;
  try {
    s.rule = RuleId::parse(word());
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
  for (;;) {
    skip();
    if (i >= line.size() || line[i] == '#') break;
    std::string key = word();
    if (i >= line.size() || line[i] != '=') throw ParseError(0, "expected '=' after '" + key + "'");
    ++i;
    if (i < line.size() && line[i] == '{') {
      std::size_t close = line.find('}', i);
      if (close == std::string::npos) throw ParseError(0, "unclosed '{' in " + key);
      auto items = split_list(line.substr(i + 1, close - i - 1));
      i = close + 1;
      if (key == "map") {
        for (const auto& it : items) {
          auto gt = it.find('>');
          if (gt == std::string::npos) throw ParseError(0, "map entries are old>new, got '" + it + "'");
          std::string from = it.substr(0, gt), to = it.substr(gt + 1);
          if (!is_node_name(from) || !is_node_name(to)) throw ParseError(0, "bad map entry '" + it + "'");
          s.params.mapping[from] = to;
        }
      } else {
        NameSet set;
        for (const auto& it : items) {
          if (!is_node_name(it)) throw ParseError(0, "bad node name '" + it + "' in " + key);
          set.insert(it);
        }
        s.params.peripheral[key] = std::move(set);
      }
      continue;
    }
    std::string val = word();
    if (val.empty()) throw ParseError(0, "missing value for '" + key + "'");
    if (key == "atom") {
      if (!is_identifier(val)) throw ParseError(0, "bad atom '" + val + "'");
      s.params.atom = val;
    } else {
      if (!is_node_name(val)) throw ParseError(0, "bad node name '" + val + "' for " + key);
      s.params.central[key] = val;
    }
  }
  return s;
}

std::string write_derivation(const Derivation& d) {
  std::string out;
  for (std::size_t i = 0; i < d.cirquents.size(); ++i) {
    if (i > 0) out += write_step(d.steps[i - 1]) + "\n";
    out += write_cirquent(d.cirquents[i], "C" + std::to_string(i + 1));
  }
  return out;
}

Derivation read_derivation(const std::string& text) {
  auto lines = lines_of(text);
  Derivation d;
  std::optional<Step> pending;
  std::size_t pending_line = 0;
  std::size_t pos = 0;
  while (pos < lines.size()) {
    auto t = tokens(lines[pos]);
    if (t.empty()) {
      ++pos;
      continue;
    }
    if (t[0] == "step") {
      if (d.cirquents.empty()) throw ParseError(pos + 1, "a step before the first cirquent");
      if (pending) throw ParseError(pos + 1, "two steps without a cirquent between them");
      try {
        pending = read_step(lines[pos]);
      } catch (const ParseError& e) {
        throw ParseError(pos + 1, std::string(e.what()).substr(std::string("line 0: ").size()));
      }
      pending_line = pos + 1;
      ++pos;
      continue;
    }
    if (t[0] != "cirquent") throw ParseError(pos + 1, "expected 'cirquent' or 'step'");
    auto [_, c] = read_block(lines, pos);
    if (!d.cirquents.empty()) {
      if (!pending) throw ParseError(pos, "two cirquents without a step between them");
      d.steps.push_back(std::move(*pending));
      pending.reset();
    }
    d.cirquents.push_back(std::move(c));
  }
  if (pending) throw ParseError(pending_line, "step without a following cirquent");
  if (d.cirquents.empty()) throw ParseError(1, "no cirquents");
  return d;
}

// ---------------------------------------------------------------------------
// G-proofs

namespace {

std::string formula_token(const Formula& f) {
  if (f.is_lit()) return f.negated ? "~" + f.atom : f.atom;
  return "\"" + render(f) + "\"";
}

struct SExpr {
  bool list = false;
  bool quoted = false;
  std::string text;
  std::vector<SExpr> items;
  std::size_t line = 1;
};

class SReader {
 public:
  explicit SReader(const std::string& s) : s_(s) {}

  SExpr read() {
    skip();
    if (i_ >= s_.size()) throw ParseError(line_, "unexpected end of input");
    SExpr e;
    e.line = line_;
    if (s_[i_] == '(') {
      ++i_;
      e.list = true;
      for (;;) {
        skip();
        if (i_ >= s_.size()) throw ParseError(line_, "unclosed '('");
        if (s_[i_] == ')') {
          ++i_;
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (s_[i_] == ')') throw ParseError(line_, "unexpected ')'");
    if (s_[i_] == '"') {
      std::size_t close = s_.find('"', i_ + 1);
      if (close == std::string::npos) throw ParseError(line_, "unclosed string");
      e.quoted = true;
      e.text = s_.substr(i_ + 1, close - i_ - 1);
      i_ = close + 1;
      return e;
    }
    std::size_t b = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')') ++i_;
    e.text = s_.substr(b, i_ - b);
    return e;
  }

  bool at_end() {
    skip();
    return i_ >= s_.size();
  }

 private:
  void skip() {
    while (i_ < s_.size()) {
      if (s_[i_] == '\n') ++line_;
      if (s_[i_] == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
        continue;
      }
      if (!std::isspace(static_cast<unsigned char>(s_[i_]))) break;
      ++i_;
    }
  }

  const std::string& s_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
};

Formula formula_of(const SExpr& e) {
  if (e.list) throw ParseError(e.line, "expected a formula, got a list");
  try {
    return strip_overlines(parse(e.text));
  } catch (const SyntaxError& err) {
    throw ParseError(e.line, "formula '" + e.text + "': " + err.what());
  }
}

GProof gproof_of(const SExpr& e) {
  if (!e.list || e.items.empty() || e.items[0].list || e.items[0].quoted)
    throw ParseError(e.line, "expected (axiom ...), (or ...) or (and ...)");
  const std::string& head = e.items[0].text;
  GProof p;
  if (head == "axiom") {
    p.rule = GProof::Rule::Axiom;
    for (std::size_t k = 1; k < e.items.size(); ++k) p.sequent.insert(formula_of(e.items[k]));
    return p;
  }
  if (head != "or" && head != "and") throw ParseError(e.line, "unknown G rule '" + head + "'");
  if (e.items.size() < 3 || !e.items[1].list) throw ParseError(e.line, "expected (" + head + " (E F ...) premise ...)");
  std::vector<Formula> kids;
  for (const auto& k : e.items[1].items) kids.push_back(formula_of(k));
  const bool is_or = head == "or";
  p.rule = is_or ? GProof::Rule::Or : GProof::Rule::And;
  p.principal = is_or ? Formula::disj(kids) : Formula::conj(kids);
  for (std::size_t k = 2; k < e.items.size(); ++k) p.children.push_back(gproof_of(e.items[k]));
  if (is_or && p.children.size() != 1) throw ParseError(e.line, "or takes exactly one premise");
  if (!is_or && p.children.size() != kids.size())
    throw ParseError(e.line, "and takes one premise per conjunct");
  // The conclusion is what the premises leave once the active formulas are removed.
  if (is_or) {
    p.sequent = p.children[0].sequent;
    for (const auto& k : kids) p.sequent.erase(k);
  } else {
    p.sequent = p.children[0].sequent;
    p.sequent.erase(kids[0]);
  }
  p.sequent.insert(p.principal);
  return p;
}

void write_gnode(const GProof& p, int depth, std::string& out) {
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (p.rule == GProof::Rule::Axiom) {
    out += pad + "(axiom";
    for (const auto& f : p.sequent) out += " " + formula_token(f);
    out += ")";
    return;
  }
  out += pad + (p.rule == GProof::Rule::Or ? "(or (" : "(and (");
  for (std::size_t k = 0; k < p.principal.children.size(); ++k)
    out += (k ? " " : "") + formula_token(p.principal.children[k]);
  out += ")";
  for (const auto& c : p.children) {
    out += "\n";
    write_gnode(c, depth + 1, out);
  }
  out += ")";
}

// Reassigns internal sequents from a known conclusion downwards. Needed when a
// side formula coincides with an active one, which the set-based bottom-up
// reading cannot tell apart. Axiom leaves keep their written sequents.
void assign_from(GProof& p, const Sequent& conclusion) {
  if (p.rule == GProof::Rule::Axiom) return;
  p.sequent = conclusion;
  Sequent rest = conclusion;
  rest.erase(p.principal);
  for (std::size_t k = 0; k < p.children.size(); ++k) {
    Sequent prem = rest;
    if (p.rule == GProof::Rule::Or)
      prem.insert(p.principal.children.begin(), p.principal.children.end());
    else
      prem.insert(p.principal.children[k]);
    assign_from(p.children[k], prem);
  }
}

}  // namespace

std::string write_gproof(const GProof& p) {
  std::string out = "(conclusion";
  for (const auto& f : p.sequent) out += " " + formula_token(f);
  out += ")\n";
  write_gnode(p, 0, out);
  return out + "\n";
}

GProof read_gproof(const std::string& text) {
  SReader r(text);
  SExpr e = r.read();
  std::optional<Sequent> conclusion;
  if (e.list && !e.items.empty() && !e.items[0].list && !e.items[0].quoted && e.items[0].text == "conclusion") {
    conclusion.emplace();
    for (std::size_t k = 1; k < e.items.size(); ++k) conclusion->insert(formula_of(e.items[k]));
    e = r.read();
  }
  if (!r.at_end()) throw ParseError(e.line, "text after the proof");
  GProof p = gproof_of(e);
  if (conclusion) assign_from(p, *conclusion);
  return p;
}

// ---------------------------------------------------------------------------

std::string render_dot(const Cirquent& c, const std::string& name) {
  auto q = [](const std::string& s) { return "\"" + s + "\""; };
  std::string out = "digraph " + q(name) + " {\n  rankdir=BT;\n  edge [dir=none];\n";
  for (const auto& [n, node] : c.nodes()) {
    out += "  " + q(n) + " [";
    if (node.label.is_port())
      out += "shape=box, label=" + q((node.label.negated ? "¬" : "") + node.label.atom);
    else if (node.label.is(Gate::And))
      out += "shape=circle, label=\"\", width=0.2, fixedsize=true";
    else
      out += "shape=circle, label=\"\", width=0.2, fixedsize=true, style=filled, fillcolor=black";
    if (n == c.root()) out += ", xlabel=" + q(n);
    out += "];\n";
  }
  for (const auto& [p, ch] : c.edges()) out += "  " + q(p) + " -> " + q(ch) + ";\n";
  return out + "}\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace cirq
