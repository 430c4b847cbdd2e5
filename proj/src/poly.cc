#include "modpairs/poly.hh"

#include <algorithm>
#include <cctype>

namespace modpairs {

std::string rat_str(const Rat& q) { return q.get_str(); }

Poly Poly::constant(SigPtr sig, Rat c) {
  Poly p(std::move(sig));
  if (c != 0) p.terms_.emplace(Exps(p.sig_->size(), 0), std::move(c));
  return p;
}

Poly Poly::var(SigPtr sig, size_t idx, int exp) {
  require(idx < sig->size(), "variable index out of range");
  Poly p(std::move(sig));
  Exps e(p.sig_->size(), 0);
  e[idx] = exp;
  p.terms_.emplace(std::move(e), Rat(1));
  return p;
}

Poly Poly::term(SigPtr sig, Exps e, Rat c) {
  require(e.size() == sig->size(), "exponent arity mismatch");
  Poly p(std::move(sig));
  if (c != 0) p.terms_.emplace(std::move(e), std::move(c));
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && total_deg(terms_.begin()->first) == 0);
}

std::optional<Rat> Poly::constant_value() const {
  if (terms_.empty()) return Rat(0);
  if (terms_.size() == 1 && total_deg(terms_.begin()->first) == 0)
    return terms_.begin()->second;
  return std::nullopt;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total_deg(e));
  return d;
}

void Poly::add_term(const Exps& e, const Rat& c) {
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (c != 0) terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Poly Poly::operator+(const Poly& o) const {
  require(sig_eq(sig_, o.sig_), "signature mismatch in +");
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  require(sig_eq(sig_, o.sig_), "signature mismatch in -");
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

Poly Poly::operator-() const {
  Poly r(sig_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Poly Poly::scaled(const Rat& c) const {
  Poly r(sig_);
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  require(sig_eq(sig_, o.sig_), "signature mismatch in *");
  Poly r(sig_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) r.add_term(mono_mul(ea, eb), ca * cb);
  return r;
}

Poly Poly::pow(int k) const {
  require(k >= 0, "negative power");
  Poly r = Poly::constant(sig_, 1);
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

std::pair<Exps, Rat> Poly::leading(const MonomialOrder& ord) const {
  require(!terms_.empty(), "leading term of zero polynomial");
  auto best = terms_.begin();
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
    if (ord.cmp(it->first, best->first) > 0) best = it;
  return {best->first, best->second};
}

Poly Poly::rename(SigPtr new_sig, const std::vector<size_t>& var_map) const {
  require(var_map.size() == sig_->size(), "rename map arity mismatch");
  Poly r(std::move(new_sig));
  for (const auto& [e, c] : terms_) {
    Exps ne(r.sig_->size(), 0);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      require(var_map[i] < ne.size(), "rename target out of range");
      ne[var_map[i]] += e[i];
    }
    r.add_term(ne, c);
  }
  return r;
}

std::string Poly::str(const MonomialOrder& ord) const {
  if (terms_.empty()) return "0";
  std::vector<const std::pair<const Exps, Rat>*> ts;
  ts.reserve(terms_.size());
  for (const auto& t : terms_) ts.push_back(&t);
  std::sort(ts.begin(), ts.end(),
            [&](auto* a, auto* b) { return ord.cmp(a->first, b->first) > 0; });
  std::string out;
  bool first = true;
  for (auto* t : ts) {
    const Rat& c = t->second;
    bool neg = c < 0;
    Rat a = neg ? Rat(-c) : c;
    if (first) {
      if (neg) out += "-";
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    std::string mono;
    for (size_t i = 0; i < t->first.size(); ++i) {
      int e = t->first[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += (*sig_)[i];
      if (e != 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += rat_str(a);
    } else {
      if (a != 1) out += rat_str(a) + "*";
      out += mono;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser. Grammar (rationals only as literals; '/' binds integer literals):
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ['^' nat]
//   base   := nat ['/' nat] | var | '(' expr ')' | '-' base

namespace {

struct Lexer {
  const std::string& s;
  size_t pos = 0, line = 1, col = 1;
  explicit Lexer(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(unsigned(s[pos]))) advance();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  void advance() {
    if (pos < s.size() && s[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }
  [[noreturn]] void err(const std::string& msg) {
    throw ParseError(msg, line, col);
  }
};

struct PolyParser {
  Lexer lx;
  const SigPtr& sig;
  PolyParser(const std::string& text, const SigPtr& sig_) : lx(text), sig(sig_) {}

  bool eat(char c) {
    if (lx.peek() == c) {
      lx.advance();
      return true;
    }
    return false;
  }

  std::string read_int() {
    lx.skip_ws();
    std::string d;
    while (lx.pos < lx.s.size() && std::isdigit(unsigned(lx.s[lx.pos]))) {
      d += lx.s[lx.pos];
      lx.advance();
    }
    if (d.empty()) lx.err("expected number");
    return d;
  }

  std::string read_ident() {
    lx.skip_ws();
    std::string w;
    auto ok = [](char c, bool first) {
      return std::isalpha(unsigned(c)) || c == '_' ||
             (!first && std::isdigit(unsigned(c)));
    };
    while (lx.pos < lx.s.size() && ok(lx.s[lx.pos], w.empty())) {
      w += lx.s[lx.pos];
      lx.advance();
    }
    if (w.empty()) lx.err("expected identifier");
    return w;
  }

  Poly base() {
    char c = lx.peek();
    if (c == '-') {
      lx.advance();
      return -base();
    }
    if (c == '(') {
      lx.advance();
      Poly e = expr();
      if (!eat(')')) lx.err("expected ')'");
      return e;
    }
    if (std::isdigit(unsigned(c))) {
      mpz_class num(read_int());
      if (lx.peek() == '/') {
        lx.advance();
        mpz_class den(read_int());
        if (den == 0) lx.err("zero denominator");
        return Poly::constant(sig, Rat(num) / Rat(den));
      }
      return Poly::constant(sig, Rat(num));
    }
    if (std::isalpha(unsigned(c)) || c == '_') {
      size_t l = lx.line, co = lx.col;
      std::string name = read_ident();
      size_t idx = sig_index(*sig, name);
      if (idx == std::string::npos)
        throw ParseError("unknown variable '" + name + "'", l, co);
      return Poly::var(sig, idx);
    }
    lx.err("expected term");
  }

  Poly factor() {
    Poly b = base();
    if (lx.peek() == '^') {
      lx.advance();
      int e = std::stoi(read_int());
      return b.pow(e);
    }
    return b;
  }

  Poly term() {
    Poly p = factor();
    while (lx.peek() == '*') {
      lx.advance();
      p = p * factor();
    }
    return p;
  }

  Poly expr() {
    Poly p(sig);
    bool neg = eat('-');
    Poly t = term();
    p = neg ? -t : t;
    for (;;) {
      char c = lx.peek();
      if (c == '+') {
        lx.advance();
        p = p + term();
      } else if (c == '-') {
        lx.advance();
        p = p - term();
      } else {
        return p;
      }
    }
  }

  Poly run() {
    Poly p = expr();
    if (lx.peek() != '\0') lx.err("trailing input");
    return p;
  }
};

}  // namespace

Poly parse_poly(const std::string& text, const SigPtr& sig) {
  return PolyParser(text, sig).run();
}

}  // namespace modpairs
