#include "cirq/formula.hpp"

#include <cctype>
#include <map>
#include <memory>

namespace cirq {

Formula Formula::lit(std::string atom, bool negated) {
  Formula f;
  f.kind = Kind::Lit;
  f.atom = std::move(atom);
  f.negated = negated;
  return f;
}

Formula Formula::conj(std::vector<Formula> kids) {
  Formula f;
  f.kind = Kind::And;
  f.children = std::move(kids);
  return f;
}

Formula Formula::disj(std::vector<Formula> kids) {
  Formula f;
  f.kind = Kind::Or;
  f.children = std::move(kids);
  return f;
}

Formula Formula::overline() const {
  Formula f = *this;
  f.overlined = true;
  return f;
}

std::size_t Formula::size() const {
  std::size_t s = 1;
  for (const auto& c : children) s += c.size();
  return s;
}

bool operator==(const Formula& x, const Formula& y) {
  return x.kind == y.kind && x.atom == y.atom && x.negated == y.negated &&
         x.overlined == y.overlined && x.children == y.children;
}

bool operator<(const Formula& x, const Formula& y) {
  if (x.kind != y.kind) return x.kind < y.kind;
  if (x.atom != y.atom) return x.atom < y.atom;
  if (x.negated != y.negated) return x.negated < y.negated;
  if (x.overlined != y.overlined) return x.overlined < y.overlined;
  return x.children < y.children;
}

SyntaxError::SyntaxError(Kind k, std::size_t pos, const std::string& msg)
    : std::runtime_error("at " + std::to_string(pos) + ": " + msg), kind_(k), pos_(pos) {}

namespace {

enum class Tok { Ident, Not, And, Or, Arrow, LParen, RParen, LBrack, RBrack, LBrace, RBrace, Comma,
                 Top, Bot, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, s.substr(start, i - start), start});
      continue;
    }
    auto one = [&](Tok t) {
      out.push_back({t, std::string(1, ch), start});
      ++i;
    };
    switch (ch) {
      case '~': one(Tok::Not); break;
      case '&': one(Tok::And); break;
      case '|': one(Tok::Or); break;
      case '(': one(Tok::LParen); break;
      case ')': one(Tok::RParen); break;
      case '[': one(Tok::LBrack); break;
      case ']': one(Tok::RBrack); break;
      case '{': one(Tok::LBrace); break;
      case '}': one(Tok::RBrace); break;
      case ',': one(Tok::Comma); break;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          out.push_back({Tok::Arrow, "->", start});
          i += 2;
          break;
        }
        throw SyntaxError(SyntaxError::Kind::Syntax, start, "expected '->'");
      case '#':
        if (i + 1 < s.size() && (s[i + 1] == 't' || s[i + 1] == 'f')) {
          out.push_back({s[i + 1] == 't' ? Tok::Top : Tok::Bot, s.substr(i, 2), start});
          i += 2;
          break;
        }
        throw SyntaxError(SyntaxError::Kind::Syntax, start, "expected #t or #f");
      default:
        throw SyntaxError(SyntaxError::Kind::Syntax, start,
                          std::string("unexpected character '") + ch + "'");
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

// Surface syntax before negations and implications are eliminated.
struct Raw {
  enum class K { Atom, Not, And, Or, Imp, Over, Top, Bot };
  K k;
  std::string atom;
  std::size_t pos = 0;
  std::vector<Raw> kids;
};

class Parser {
 public:
  explicit Parser(const std::string& s) : toks_(lex(s)) {}

  Raw parse_all() {
    Raw r = imp();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return r;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  Token next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(SyntaxError::Kind::Syntax, peek().pos, msg);
  }
  void expect(Tok t, const char* what) {
    if (peek().kind != t) fail(std::string("expected ") + what);
    next();
  }

  Raw imp() {
    Raw lhs = disj();
    if (peek().kind == Tok::Arrow) {
      std::size_t pos = next().pos;
      Raw rhs = imp();
      return Raw{Raw::K::Imp, "", pos, {std::move(lhs), std::move(rhs)}};
    }
    return lhs;
  }

  Raw disj() {
    Raw first = conj();
    if (peek().kind != Tok::Or) return first;
    Raw r{Raw::K::Or, "", first.pos, {}};
    r.kids.push_back(std::move(first));
    while (peek().kind == Tok::Or) {
      next();
      r.kids.push_back(conj());
    }
    return r;
  }

  Raw conj() {
    Raw first = unary();
    if (peek().kind != Tok::And) return first;
    Raw r{Raw::K::And, "", first.pos, {}};
    r.kids.push_back(std::move(first));
    while (peek().kind == Tok::And) {
      next();
      r.kids.push_back(unary());
    }
    return r;
  }

  Raw unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not: {
        std::size_t pos = next().pos;
        return Raw{Raw::K::Not, "", pos, {unary()}};
      }
      case Tok::Ident: {
        Token id = next();
        return Raw{Raw::K::Atom, id.text, id.pos, {}};
      }
      case Tok::Top: return Raw{Raw::K::Top, "", next().pos, {}};
      case Tok::Bot: return Raw{Raw::K::Bot, "", next().pos, {}};
      case Tok::LParen: {
        next();
        Raw r = imp();
        expect(Tok::RParen, "')'");
        return r;
      }
      case Tok::LBrack: {
        std::size_t pos = next().pos;
        Raw r = imp();
        expect(Tok::RBrack, "']'");
        return Raw{Raw::K::Over, "", pos, {std::move(r)}};
      }
      case Tok::And:
      case Tok::Or: {
        Token op = next();
        expect(Tok::LBrace, "'{' after variadic connective");
        Raw r{op.kind == Tok::And ? Raw::K::And : Raw::K::Or, "", op.pos, {}};
        if (peek().kind != Tok::RBrace) {
          r.kids.push_back(imp());
          while (peek().kind == Tok::Comma) {
            next();
            r.kids.push_back(imp());
          }
        }
        expect(Tok::RBrace, "'}'");
        return r;
      }
      default: fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

Formula collapse(Formula::Kind k, std::vector<Formula> kids, std::size_t pos) {
  if (kids.size() == 1) return std::move(kids.front());
  (void)pos;
  Formula f;
  f.kind = k;
  f.children = std::move(kids);
  return f;
}

Formula desugar(const Raw& r, bool neg) {
  using K = Raw::K;
  switch (r.k) {
    case K::Atom: return Formula::lit(r.atom, neg);
    case K::Not: return desugar(r.kids[0], !neg);
    case K::Top: return neg ? Formula::bottom() : Formula::top();
    case K::Bot: return neg ? Formula::top() : Formula::bottom();
    case K::And:
    case K::Or: {
      bool is_and = (r.k == K::And) != neg;
      std::vector<Formula> kids;
      for (const auto& k : r.kids) kids.push_back(desugar(k, neg));
      return collapse(is_and ? Formula::Kind::And : Formula::Kind::Or, std::move(kids), r.pos);
    }
    case K::Imp: {
      std::vector<Formula> kids{desugar(r.kids[0], !neg), desugar(r.kids[1], neg)};
      return collapse(neg ? Formula::Kind::And : Formula::Kind::Or, std::move(kids), r.pos);
    }
    case K::Over: {
      if (neg)
        throw SyntaxError(SyntaxError::Kind::NegatedOverline, r.pos, "overline under negation");
      Formula f = desugar(r.kids[0], false);
      if (f.overlined)
        throw SyntaxError(SyntaxError::Kind::DoubleOverline, r.pos, "double overline");
      f.overlined = true;
      return f;
    }
  }
  return Formula::top();
}

void render_into(const Formula& f, std::string& out, bool in_and, bool in_or) {
  if (f.overlined) {
    out += '[';
    Formula g = f;
    g.overlined = false;
    render_into(g, out, false, false);
    out += ']';
    return;
  }
  switch (f.kind) {
    case Formula::Kind::Lit:
      if (f.negated) out += '~';
      out += f.atom;
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      bool is_and = f.kind == Formula::Kind::And;
      if (f.children.empty()) {
        out += is_and ? "#t" : "#f";
        return;
      }
      if (f.children.size() == 1) {
        out += is_and ? "&{" : "|{";
        render_into(f.children[0], out, false, false);
        out += '}';
        return;
      }
      // Nested same-kind chains and any disjunction under a conjunction keep their parentheses.
      bool paren = in_and || (in_or && !is_and);
      if (paren) out += '(';
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i) out += is_and ? " & " : " | ";
        render_into(f.children[i], out, is_and, !is_and);
      }
      if (paren) out += ')';
      return;
    }
  }
}

std::string plain_key(const Formula& f) {
  std::string s;
  render_into(strip_overlines(f), s, false, false);
  return s;
}

class Translator {
 public:
  Cirquent run(const Hyperformula& h) {
    std::string root = build(h, false);
    g_.root = root;
    return make_cirquent(std::move(g_));
  }

 private:
  std::string build(const Formula& f, bool shared_ctx) {
    bool shareable = shared_ctx || f.overlined;
    std::string key;
    if (shareable) {
      key = plain_key(f);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    std::string name = "n" + std::to_string(counter_++);
    if (f.is_lit())
      g_.add_node(name, Label::port(f.atom, f.negated));
    else
      g_.add_node(name, Label::gate_of(f.kind == Formula::Kind::And ? Gate::And : Gate::Or));
    if (shareable) memo_[key] = name;
    for (const auto& c : f.children) {
      std::string cn = build(c, shareable);
      g_.add_edge(name, cn);
    }
    return name;
  }

  Graph g_;
  std::map<std::string, std::string> memo_;
  std::size_t counter_ = 0;
};

}  // namespace

Hyperformula parse(const std::string& text) {
  Parser p(text);
  return desugar(p.parse_all(), false);
}

std::string render(const Hyperformula& h) {
  std::string s;
  render_into(h, s, false, false);
  return s;
}

Formula dual(const Formula& f) {
  Formula g;
  switch (f.kind) {
    case Formula::Kind::Lit: return Formula::lit(f.atom, !f.negated);
    case Formula::Kind::And: g.kind = Formula::Kind::Or; break;
    case Formula::Kind::Or: g.kind = Formula::Kind::And; break;
  }
  for (const auto& c : f.children) g.children.push_back(dual(c));
  return g;
}

Formula strip_overlines(const Hyperformula& h) {
  Formula f = h;
  f.overlined = false;
  for (auto& c : f.children) c = strip_overlines(c);
  return f;
}

Hyperformula underline(const Formula& f) {
  Formula g = f;
  g.overlined = f.is_lit();
  for (auto& c : g.children) c = underline(c);
  return g;
}

Cirquent to_cirquent(const Hyperformula& h) { return Translator().run(h); }

bool eval(const Formula& f, const std::map<std::string, bool>& atoms) {
  switch (f.kind) {
    case Formula::Kind::Lit: return atoms.at(f.atom) != f.negated;
    case Formula::Kind::And:
      for (const auto& c : f.children)
        if (!eval(c, atoms)) return false;
      return true;
    case Formula::Kind::Or:
      for (const auto& c : f.children)
        if (eval(c, atoms)) return true;
      return false;
  }
  return false;
}

std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  if (f.is_lit()) out.insert(f.atom);
  for (const auto& c : f.children) {
    auto s = atoms_of(c);
    out.insert(s.begin(), s.end());
  }
  return out;
}

}  // namespace cirq
