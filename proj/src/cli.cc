#include "modpairs/cli.hh"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <set>

#include "modpairs/base.hh"
#include "modpairs/cycles.hh"
#include "modpairs/msch.hh"
#include "modpairs/products.hh"

namespace modpairs::cli {
namespace {

using json = nlohmann::json;

// ---------------------------------------------------------------- lexing

struct Tok {
  enum class K { ident, number, punct, arrow, eof } k = K::eof;
  std::string text;
  size_t line = 1, col = 1, off = 0, end = 0;
};

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

std::vector<Tok> lex(const std::string& src) {
  std::vector<Tok> out;
  size_t line = 1, col = 1;
  const std::string punct = "=;:,{}()[]/^*+-><.";
  for (size_t i = 0; i < src.size();) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    Tok t;
    t.line = line;
    t.col = col;
    t.off = i;
    if (ident_start(c)) {
      size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      t.k = Tok::K::ident;
      t.text = src.substr(i, j - i);
      col += j - i;
      i = j;
    } else if (c >= '0' && c <= '9') {
      size_t j = i;
      while (j < src.size() && src[j] >= '0' && src[j] <= '9') ++j;
      t.k = Tok::K::number;
      t.text = src.substr(i, j - i);
      col += j - i;
      i = j;
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.k = Tok::K::arrow;
      t.text = "->";
      col += 2;
      i += 2;
    } else if (punct.find(c) != std::string::npos) {
      t.k = Tok::K::punct;
      t.text = std::string(1, c);
      ++col;
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line,
                       col);
    }
    t.end = i;
    out.push_back(std::move(t));
  }
  Tok eof;
  eof.line = line;
  eof.col = col;
  eof.off = src.size();
  eof.end = src.size();
  out.push_back(eof);
  return out;
}

// --------------------------------------------------------------- parsing

struct Parser {
  const std::string& src;
  std::vector<Tok> toks;
  size_t pos = 0;

  explicit Parser(const std::string& s) : src(s), toks(lex(s)) {}

  const Tok& cur() const { return toks[pos]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Tok& t = cur();
    std::string got = t.k == Tok::K::eof ? "end of input" : "'" + t.text + "'";
    throw ParseError("expected " + expected + ", found " + got, t.line, t.col);
  }

  bool at_punct(const char* p) const {
    return cur().k == Tok::K::punct && cur().text == p;
  }
  bool at_ident(const char* s) const {
    return cur().k == Tok::K::ident && cur().text == s;
  }
  void eat_punct(const char* p) {
    if (!at_punct(p)) fail(std::string("'") + p + "'");
    ++pos;
  }
  void eat_ident(const char* s) {
    if (!at_ident(s)) fail(std::string("'") + s + "'");
    ++pos;
  }
  std::string name(const char* what) {
    if (cur().k != Tok::K::ident) fail(what);
    return toks[pos++].text;
  }
  SrcLoc here() const { return {cur().line, cur().col}; }

  // raw source span up to a top-level delimiter; parentheses nest
  Span span(const char* what, const std::set<std::string>& stop_punct,
            const std::set<std::string>& stop_ident = {}) {
    int depth = 0;
    SrcLoc loc = here();
    size_t start = cur().off, endoff = start;
    bool any = false;
    while (cur().k != Tok::K::eof) {
      const Tok& t = cur();
      if (depth == 0) {
        if (t.k == Tok::K::punct && stop_punct.count(t.text)) break;
        if (t.k == Tok::K::ident && stop_ident.count(t.text)) break;
      }
      if (t.k == Tok::K::punct && t.text == "(") ++depth;
      if (t.k == Tok::K::punct && t.text == ")") {
        if (depth == 0) break;
        --depth;
      }
      endoff = t.end;
      any = true;
      ++pos;
    }
    if (!any) fail(what);
    std::string text = src.substr(start, endoff - start);
    return {text, loc};
  }

  std::vector<Span> paren_list(const char* what) {
    eat_punct("(");
    std::vector<Span> out;
    if (!at_punct(")")) {
      for (;;) {
        out.push_back(span(what, {",", ")"}));
        if (at_punct(",")) {
          ++pos;
          continue;
        }
        break;
      }
    }
    eat_punct(")");
    return out;
  }

  RingExpr ring_expr() {
    RingExpr re;
    re.loc = here();
    if (at_ident("Q") && pos + 1 < toks.size() &&
        toks[pos + 1].k == Tok::K::punct && toks[pos + 1].text == "[") {
      re.inline_form = true;
      ++pos;
      eat_punct("[");
      if (!at_punct("]")) {
        for (;;) {
          re.vars.push_back(name("a variable name"));
          if (at_punct(",")) {
            ++pos;
            continue;
          }
          break;
        }
      }
      eat_punct("]");
      if (at_punct("/")) {
        ++pos;
        re.rels = paren_list("a defining relation");
      }
      return re;
    }
    re.ref = name("a ring name or Q[...]");
    return re;
  }

  IdealExpr ideal_expr(bool allow_ref) {
    IdealExpr ie;
    ie.loc = here();
    if (cur().k == Tok::K::number && cur().text == "0") {
      ie.kind = IdealExpr::Kind::zero;
      ++pos;
      return ie;
    }
    if (at_punct("(")) {
      ie.kind = IdealExpr::Kind::inline_gens;
      ie.gens = paren_list("an ideal generator");
      return ie;
    }
    if (allow_ref && cur().k == Tok::K::ident) {
      ie.kind = IdealExpr::Kind::ref;
      ie.ref = name("an ideal name");
      return ie;
    }
    fail("0 or a parenthesized generator list");
  }

  std::vector<ArrowLine> arrow_block() {
    eat_punct("{");
    std::vector<ArrowLine> out;
    while (!at_punct("}")) {
      ArrowLine a;
      a.loc = here();
      a.var = name("a variable name");
      if (cur().k != Tok::K::arrow) fail("'->'");
      ++pos;
      a.image = span("an image polynomial", {";"});
      eat_punct(";");
      out.push_back(std::move(a));
    }
    eat_punct("}");
    return out;
  }

  Item parse_item() {
    Item it;
    it.loc = here();
    if (at_ident("ring")) {
      ++pos;
      it.kind = Item::Kind::ring;
      it.name = name("a ring name");
      eat_punct("=");
      it.ring = ring_expr();
      if (!it.ring.inline_form) fail("Q[...] on the right of a ring declaration");
      eat_punct(";");
      return it;
    }
    if (at_ident("ideal")) {
      ++pos;
      it.kind = Item::Kind::ideal;
      it.name = name("an ideal name");
      eat_punct("=");
      it.ideal = ideal_expr(false);
      eat_ident("in");
      it.in_ring = name("a ring name");
      eat_punct(";");
      return it;
    }
    if (at_ident("pair")) {
      ++pos;
      it.kind = Item::Kind::pair;
      it.name = name("a pair name");
      eat_punct("{");
      while (at_ident("chart")) {
        ++pos;
        eat_punct("{");
        ChartDecl ch;
        eat_ident("ring");
        ch.ring = ring_expr();
        eat_punct(";");
        eat_ident("ideal");
        ch.ideal = ideal_expr(true);
        eat_punct(";");
        eat_ident("divisor");
        ch.divisor = span("a divisor polynomial", {";"});
        eat_punct(";");
        eat_punct("}");
        it.charts.push_back(std::move(ch));
      }
      if (it.charts.empty()) fail("'chart'");
      eat_punct("}");
      return it;
    }
    if (at_ident("morphism")) {
      ++pos;
      it.kind = Item::Kind::morphism;
      it.name = name("a morphism name");
      eat_punct(":");
      it.morphism.src = name("a pair name");
      if (cur().k != Tok::K::arrow) fail("'->'");
      ++pos;
      it.morphism.tgt = name("a pair name");
      it.morphism.images = arrow_block();
      return it;
    }
    if (at_ident("roof")) {
      ++pos;
      it.kind = Item::Kind::roof;
      it.name = name("a roof name");
      if (at_ident("from")) {
        ++pos;
        it.roof.from_form = true;
        it.roof.from = name("a morphism name");
        eat_punct(";");
        return it;
      }
      eat_punct("{");
      while (at_ident("sigma")) {
        ++pos;
        SigmaLine sl;
        sl.loc = here();
        sl.mor = name("a morphism name");
        eat_ident("center");
        sl.center = paren_list("a center generator");
        eat_punct(";");
        it.roof.stages.push_back(std::move(sl));
      }
      eat_ident("ambient");
      it.roof.ambient = name("a morphism name");
      eat_punct(";");
      eat_punct("}");
      return it;
    }
    if (at_ident("correspondence")) {
      ++pos;
      it.kind = Item::Kind::correspondence;
      it.name = name("a correspondence name");
      eat_punct(":");
      it.corr.src = name("a pair name");
      if (cur().k != Tok::K::arrow) fail("'->'");
      ++pos;
      it.corr.tgt = name("a pair name");
      eat_punct("{");
      while (at_ident("component")) {
        ++pos;
        eat_punct("{");
        ComponentDecl cd;
        cd.loc = here();
        eat_ident("ideal");
        cd.ideal = ideal_expr(false);
        eat_punct(";");
        eat_ident("multiplicity");
        cd.multiplicity = span("a nonzero integer", {";"});
        eat_punct(";");
        eat_ident("normalization");
        cd.ztilde = ring_expr();
        cd.nu = arrow_block();
        eat_punct("}");
        it.corr.components.push_back(std::move(cd));
      }
      if (it.corr.components.empty()) fail("'component'");
      eat_punct("}");
      return it;
    }

    it.kind = Item::Kind::command;
    CommandDecl& c = it.cmd;
    if (at_ident("verify")) {
      ++pos;
      eat_ident("aisoc");
      c.kind = CommandDecl::Kind::verify_aisoc;
      c.ring = ring_expr();
      c.a = span("a divisor polynomial", {";"});
      eat_punct(";");
      return it;
    }
    if (at_ident("divisor")) {
      ++pos;
      eat_ident("geq");
      c.kind = CommandDecl::Kind::divisor_geq;
      c.a = span("a polynomial", {","});
      eat_punct(",");
      c.b = span("a polynomial", {";"}, {"in"});
      eat_ident("in");
      c.ring.ref = name("a ring name");
      eat_punct(";");
      return it;
    }
    if (at_ident("product")) {
      ++pos;
      c.kind = CommandDecl::Kind::product;
      if (at_ident("ambient") || at_ident("box") || at_ident("fibre")) {
        c.sub = toks[pos++].text;
      } else {
        fail("'ambient', 'box', or 'fibre'");
      }
      c.names.push_back(name("a morphism name"));
      c.names.push_back(name("a morphism name"));
      eat_ident("over");
      c.names.push_back(name("a pair name"));
      eat_punct(";");
      return it;
    }
    if (at_ident("compare")) {
      ++pos;
      eat_ident("box");
      eat_punct("-");
      eat_ident("times");
      c.kind = CommandDecl::Kind::compare_boxtimes;
      c.names.push_back(name("a morphism name"));
      c.names.push_back(name("a morphism name"));
      eat_ident("over");
      c.names.push_back(name("a pair name"));
      eat_punct(";");
      return it;
    }
    if (at_ident("compose") || at_ident("equal")) {
      c.kind = at_ident("compose") ? CommandDecl::Kind::compose
                                   : CommandDecl::Kind::equal;
      ++pos;
      c.names.push_back(name("a roof name"));
      c.names.push_back(name("a roof name"));
      eat_punct(";");
      return it;
    }
    if (at_ident("cycle")) {
      ++pos;
      if (at_ident("graph")) {
        ++pos;
        c.kind = CommandDecl::Kind::cycle_graph;
        c.names.push_back(name("a morphism name"));
      } else if (at_ident("check")) {
        ++pos;
        c.kind = CommandDecl::Kind::cycle_check;
        c.names.push_back(name("a correspondence name"));
      } else {
        fail("'graph' or 'check'");
      }
      eat_punct(";");
      return it;
    }
    if (at_ident("cover")) {
      ++pos;
      eat_ident("zar");
      c.kind = CommandDecl::Kind::cover;
      c.names.push_back(name("a pair name"));
      eat_punct("{");
      while (!at_punct("}")) {
        CoverEntry e;
        e.loc = here();
        e.mor = name("a morphism name");
        eat_punct(":");
        e.open = span("an open polynomial", {";"});
        eat_punct(";");
        c.entries.push_back(std::move(e));
      }
      if (c.entries.empty()) fail("'NAME : polynomial;'");
      eat_punct("}");
      return it;
    }
    fail(
        "one of: ring, ideal, pair, morphism, roof, correspondence, verify, "
        "divisor, product, compare, compose, equal, cycle, cover");
  }

  Script parse_script() {
    Script s;
    while (cur().k != Tok::K::eof) s.items.push_back(parse_item());
    return s;
  }
};

// ------------------------------------------------------ static checking

struct StaticInfo {
  std::map<std::string, Item::Kind> names;
  std::map<std::string, std::vector<std::string>> ring_vars;
  std::map<std::string, std::string> ideal_ring;
  std::map<std::string, std::vector<std::string>> pair_vars;  // chart 0
  std::map<std::string, size_t> pair_charts;
  std::map<std::string, std::pair<std::string, std::string>> mor_ends;
};

[[noreturn]] void at(const SrcLoc& loc, const std::string& msg) {
  throw ParseError(msg, loc.line, loc.col);
}

void check_poly(const Span& sp, const std::vector<std::string>& vars) {
  try {
    parse_poly(sp.text, make_sig(vars));
  } catch (const ParseError& pe) {
    std::string m = pe.what();
    size_t cut = m.rfind(" at ");
    if (cut != std::string::npos) m = m.substr(0, cut);
    size_t line = sp.loc.line, col = sp.loc.col;
    if (pe.line <= 1)
      col += pe.col ? pe.col - 1 : 0;
    else {
      line += pe.line - 1;
      col = pe.col;
    }
    throw ParseError(m, line, col);
  }
}

const std::vector<std::string>& ring_vars_of(const StaticInfo& si,
                                             const RingExpr& re) {
  if (re.inline_form) return re.vars;
  auto f = si.names.find(re.ref);
  if (f == si.names.end() || f->second != Item::Kind::ring)
    at(re.loc, "unknown ring '" + re.ref + "'");
  return si.ring_vars.at(re.ref);
}

void check_ring_expr(const StaticInfo& si, const RingExpr& re) {
  if (re.inline_form) {
    std::set<std::string> seen;
    for (const std::string& v : re.vars)
      if (!seen.insert(v).second) at(re.loc, "repeated variable '" + v + "'");
    for (const Span& g : re.rels) check_poly(g, re.vars);
    return;
  }
  ring_vars_of(si, re);
}

void check_arrows(const std::vector<ArrowLine>& lines,
                  const std::vector<std::string>& lhs_vars,
                  const std::vector<std::string>& rhs_vars, const SrcLoc& loc,
                  const char* what) {
  std::set<std::string> seen;
  for (const ArrowLine& a : lines) {
    if (std::find(lhs_vars.begin(), lhs_vars.end(), a.var) == lhs_vars.end())
      at(a.loc, std::string("'") + a.var + "' is not a variable of the " + what);
    if (!seen.insert(a.var).second)
      at(a.loc, "variable '" + a.var + "' mapped twice");
    check_poly(a.image, rhs_vars);
  }
  if (seen.size() != lhs_vars.size())
    at(loc, std::string("every variable of the ") + what + " needs an image");
}

void expect_kind(const StaticInfo& si, const std::string& n, Item::Kind k,
                 const char* what, const SrcLoc& loc) {
  auto f = si.names.find(n);
  if (f == si.names.end() || f->second != k)
    at(loc, std::string("unknown ") + what + " '" + n + "'");
}

void expect_single_chart(const StaticInfo& si, const std::string& pair,
                         const SrcLoc& loc) {
  if (si.pair_charts.at(pair) != 1)
    at(loc, "pair '" + pair + "' must have a single chart here");
}

void validate(const Script& s) {
  StaticInfo si;
  for (const Item& it : s.items) {
    if (it.kind != Item::Kind::command) {
      if (it.name == "Q") at(it.loc, "'Q' is reserved");
      if (!si.names.emplace(it.name, it.kind).second)
        at(it.loc, "name '" + it.name + "' declared twice");
    }
    switch (it.kind) {
      case Item::Kind::ring: {
        check_ring_expr(si, it.ring);
        si.ring_vars[it.name] = it.ring.vars;
        break;
      }
      case Item::Kind::ideal: {
        expect_kind(si, it.in_ring, Item::Kind::ring, "ring", it.loc);
        const auto& vars = si.ring_vars.at(it.in_ring);
        for (const Span& g : it.ideal.gens) check_poly(g, vars);
        si.ideal_ring[it.name] = it.in_ring;
        break;
      }
      case Item::Kind::pair: {
        for (const ChartDecl& ch : it.charts) {
          check_ring_expr(si, ch.ring);
          const auto& vars = ring_vars_of(si, ch.ring);
          if (ch.ideal.kind == IdealExpr::Kind::ref) {
            expect_kind(si, ch.ideal.ref, Item::Kind::ideal, "ideal",
                        ch.ideal.loc);
            if (ch.ring.inline_form ||
                si.ideal_ring.at(ch.ideal.ref) != ch.ring.ref)
              at(ch.ideal.loc, "ideal '" + ch.ideal.ref +
                                   "' lives on a different ring than the chart");
          }
          for (const Span& g : ch.ideal.gens) check_poly(g, vars);
          check_poly(ch.divisor, vars);
        }
        si.pair_vars[it.name] = ring_vars_of(si, it.charts[0].ring);
        si.pair_charts[it.name] = it.charts.size();
        break;
      }
      case Item::Kind::morphism: {
        expect_kind(si, it.morphism.src, Item::Kind::pair, "pair", it.loc);
        expect_kind(si, it.morphism.tgt, Item::Kind::pair, "pair", it.loc);
        expect_single_chart(si, it.morphism.src, it.loc);
        expect_single_chart(si, it.morphism.tgt, it.loc);
        check_arrows(it.morphism.images, si.pair_vars.at(it.morphism.tgt),
                     si.pair_vars.at(it.morphism.src), it.loc, "target chart");
        si.mor_ends[it.name] = {it.morphism.src, it.morphism.tgt};
        break;
      }
      case Item::Kind::roof: {
        if (it.roof.from_form) {
          expect_kind(si, it.roof.from, Item::Kind::morphism, "morphism",
                      it.loc);
          break;
        }
        for (const SigmaLine& sl : it.roof.stages) {
          expect_kind(si, sl.mor, Item::Kind::morphism, "morphism", sl.loc);
          const auto& tgt = si.mor_ends.at(sl.mor).second;
          for (const Span& g : sl.center)
            check_poly(g, si.pair_vars.at(tgt));
        }
        expect_kind(si, it.roof.ambient, Item::Kind::morphism, "morphism",
                    it.loc);
        break;
      }
      case Item::Kind::correspondence: {
        expect_kind(si, it.corr.src, Item::Kind::pair, "pair", it.loc);
        expect_kind(si, it.corr.tgt, Item::Kind::pair, "pair", it.loc);
        expect_single_chart(si, it.corr.src, it.loc);
        expect_single_chart(si, it.corr.tgt, it.loc);
        std::vector<std::string> big = si.pair_vars.at(it.corr.src);
        for (const std::string& v : si.pair_vars.at(it.corr.tgt)) {
          if (std::find(big.begin(), big.end(), v) != big.end())
            at(it.loc, "the two chart rings share the variable '" + v +
                           "'; correspondences need distinct names");
          big.push_back(v);
        }
        for (const ComponentDecl& cd : it.corr.components) {
          for (const Span& g : cd.ideal.gens) check_poly(g, big);
          const std::string& mt = cd.multiplicity.text;
          bool okint = !mt.empty() && mt != "-" &&
                       mt.find_first_not_of("-0123456789") == std::string::npos &&
                       mt.find('-', 1) == std::string::npos;
          if (!okint || mt == "0" || mt == "-0")
            at(cd.multiplicity.loc, "multiplicity must be a nonzero integer");
          check_ring_expr(si, cd.ztilde);
          check_arrows(cd.nu, big, ring_vars_of(si, cd.ztilde), cd.loc,
                       "product ring");
        }
        break;
      }
      case Item::Kind::command: {
        const CommandDecl& c = it.cmd;
        switch (c.kind) {
          case CommandDecl::Kind::verify_aisoc:
            check_ring_expr(si, c.ring);
            check_poly(c.a, ring_vars_of(si, c.ring));
            break;
          case CommandDecl::Kind::divisor_geq: {
            expect_kind(si, c.ring.ref, Item::Kind::ring, "ring", it.loc);
            const auto& vars = si.ring_vars.at(c.ring.ref);
            check_poly(c.a, vars);
            check_poly(c.b, vars);
            break;
          }
          case CommandDecl::Kind::product:
          case CommandDecl::Kind::compare_boxtimes: {
            expect_kind(si, c.names[0], Item::Kind::morphism, "morphism",
                        it.loc);
            expect_kind(si, c.names[1], Item::Kind::morphism, "morphism",
                        it.loc);
            expect_kind(si, c.names[2], Item::Kind::pair, "pair", it.loc);
            for (int k = 0; k < 2; ++k)
              if (si.mor_ends.at(c.names[k]).second != c.names[2])
                at(it.loc, "morphism '" + c.names[k] +
                               "' does not land in '" + c.names[2] + "'");
            break;
          }
          case CommandDecl::Kind::compose:
          case CommandDecl::Kind::equal:
            expect_kind(si, c.names[0], Item::Kind::roof, "roof", it.loc);
            expect_kind(si, c.names[1], Item::Kind::roof, "roof", it.loc);
            break;
          case CommandDecl::Kind::cycle_graph:
            expect_kind(si, c.names[0], Item::Kind::morphism, "morphism",
                        it.loc);
            break;
          case CommandDecl::Kind::cycle_check:
            expect_kind(si, c.names[0], Item::Kind::correspondence,
                        "correspondence", it.loc);
            break;
          case CommandDecl::Kind::cover: {
            expect_kind(si, c.names[0], Item::Kind::pair, "pair", it.loc);
            for (const CoverEntry& e : c.entries) {
              expect_kind(si, e.mor, Item::Kind::morphism, "morphism", e.loc);
              if (si.mor_ends.at(e.mor).second != c.names[0])
                at(e.loc, "morphism '" + e.mor + "' does not land in '" +
                              c.names[0] + "'");
              check_poly(e.open, si.pair_vars.at(c.names[0]));
            }
            break;
          }
        }
        break;
      }
    }
  }
}

// -------------------------------------------------------------- printing

std::string ring_expr_str(const RingExpr& re) {
  if (!re.inline_form) return re.ref;
  std::string o = "Q[";
  for (size_t i = 0; i < re.vars.size(); ++i) {
    if (i) o += ", ";
    o += re.vars[i];
  }
  o += "]";
  if (!re.rels.empty()) {
    o += " / (";
    for (size_t i = 0; i < re.rels.size(); ++i) {
      if (i) o += ", ";
      o += re.rels[i].text;
    }
    o += ")";
  }
  return o;
}

std::string ideal_expr_str(const IdealExpr& ie) {
  if (ie.kind == IdealExpr::Kind::zero) return "0";
  if (ie.kind == IdealExpr::Kind::ref) return ie.ref;
  std::string o = "(";
  for (size_t i = 0; i < ie.gens.size(); ++i) {
    if (i) o += ", ";
    o += ie.gens[i].text;
  }
  return o + ")";
}

void print_arrows(std::string& o, const std::vector<ArrowLine>& lines,
                  const std::string& ind) {
  for (const ArrowLine& a : lines)
    o += ind + a.var + " -> " + a.image.text + ";\n";
}

std::string command_echo(const CommandDecl& c) {
  switch (c.kind) {
    case CommandDecl::Kind::verify_aisoc:
      return "verify aisoc " + ring_expr_str(c.ring) + " " + c.a.text;
    case CommandDecl::Kind::divisor_geq:
      return "divisor geq " + c.a.text + ", " + c.b.text + " in " + c.ring.ref;
    case CommandDecl::Kind::product:
      return "product " + c.sub + " " + c.names[0] + " " + c.names[1] +
             " over " + c.names[2];
    case CommandDecl::Kind::compare_boxtimes:
      return "compare box-times " + c.names[0] + " " + c.names[1] + " over " +
             c.names[2];
    case CommandDecl::Kind::compose:
      return "compose " + c.names[0] + " " + c.names[1];
    case CommandDecl::Kind::equal:
      return "equal " + c.names[0] + " " + c.names[1];
    case CommandDecl::Kind::cycle_graph:
      return "cycle graph " + c.names[0];
    case CommandDecl::Kind::cycle_check:
      return "cycle check " + c.names[0];
    case CommandDecl::Kind::cover:
      return "cover zar " + c.names[0];
  }
  return "";
}

std::string print_item(const Item& it) {
  std::string o;
  switch (it.kind) {
    case Item::Kind::ring:
      return "ring " + it.name + " = " + ring_expr_str(it.ring) + ";\n";
    case Item::Kind::ideal:
      return "ideal " + it.name + " = " + ideal_expr_str(it.ideal) + " in " +
             it.in_ring + ";\n";
    case Item::Kind::pair:
      o = "pair " + it.name + " {\n";
      for (const ChartDecl& ch : it.charts) {
        o += "  chart {\n";
        o += "    ring " + ring_expr_str(ch.ring) + ";\n";
        o += "    ideal " + ideal_expr_str(ch.ideal) + ";\n";
        o += "    divisor " + ch.divisor.text + ";\n";
        o += "  }\n";
      }
      return o + "}\n";
    case Item::Kind::morphism:
      o = "morphism " + it.name + " : " + it.morphism.src + " -> " +
          it.morphism.tgt + " {\n";
      print_arrows(o, it.morphism.images, "  ");
      return o + "}\n";
    case Item::Kind::roof:
      if (it.roof.from_form)
        return "roof " + it.name + " from " + it.roof.from + ";\n";
      o = "roof " + it.name + " {\n";
      for (const SigmaLine& sl : it.roof.stages) {
        o += "  sigma " + sl.mor + " center (";
        for (size_t i = 0; i < sl.center.size(); ++i) {
          if (i) o += ", ";
          o += sl.center[i].text;
        }
        o += ");\n";
      }
      return o + "  ambient " + it.roof.ambient + ";\n}\n";
    case Item::Kind::correspondence:
      o = "correspondence " + it.name + " : " + it.corr.src + " -> " +
          it.corr.tgt + " {\n";
      for (const ComponentDecl& cd : it.corr.components) {
        o += "  component {\n";
        o += "    ideal " + ideal_expr_str(cd.ideal) + ";\n";
        o += "    multiplicity " + cd.multiplicity.text + ";\n";
        o += "    normalization " + ring_expr_str(cd.ztilde) + " {\n";
        print_arrows(o, cd.nu, "      ");
        o += "    }\n";
        o += "  }\n";
      }
      return o + "}\n";
    case Item::Kind::command:
      if (it.cmd.kind == CommandDecl::Kind::cover) {
        o = command_echo(it.cmd) + " {\n";
        for (const CoverEntry& e : it.cmd.entries)
          o += "  " + e.mor + " : " + e.open.text + ";\n";
        return o + "}\n";
      }
      return command_echo(it.cmd) + ";\n";
  }
  return o;
}

// -------------------------------------------------------------- running

struct ValidationError : std::exception {
  std::string msg;
  explicit ValidationError(std::string m) : msg(std::move(m)) {}
  const char* what() const noexcept override { return msg.c_str(); }
};

struct StoredCorr {
  ModulusPair src, tgt;
  std::vector<CycleComponent> comps;
};

struct Env {
  std::map<std::string, Presentation> rings;
  std::map<std::string, std::pair<std::string, Ideal>> ideals;
  std::map<std::string, ModulusPair> pairs;
  std::map<std::string, AmbientMorphism> morphisms;
  std::map<std::string, Roof> roofs;
  std::map<std::string, StoredCorr> corrs;
};

long total_degree(const Poly& p) {
  long best = 0;
  for (const auto& [e, c] : p.terms())
    best = std::max(best, static_cast<long>(total_deg(e)));
  return best;
}

Poly rparse(const Span& sp, const SigPtr& sig, const RunOptions& opt) {
  Poly p = parse_poly(sp.text, sig);
  if (opt.max_degree && total_degree(p) > *opt.max_degree)
    throw ValidationError("polynomial '" + sp.text + "' exceeds --max-degree " +
                          std::to_string(*opt.max_degree));
  return p;
}

Presentation build_ring(Env& env, const RingExpr& re, const RunOptions& opt) {
  if (!re.inline_form) return env.rings.at(re.ref);
  SigPtr sig = make_sig(re.vars);
  std::vector<Poly> gens;
  for (const Span& g : re.rels) gens.push_back(rparse(g, sig, opt));
  return Presentation(sig, Ideal(sig, std::move(gens)));
}

Ideal build_ideal(Env& env, const IdealExpr& ie, const Presentation& ring,
                  const RunOptions& opt) {
  if (ie.kind == IdealExpr::Kind::zero) return Ideal(ring.sig, {});
  if (ie.kind == IdealExpr::Kind::ref) return env.ideals.at(ie.ref).second;
  std::vector<Poly> gens;
  for (const Span& g : ie.gens) gens.push_back(rparse(g, ring.sig, opt));
  return Ideal(ring.sig, std::move(gens));
}

std::vector<Poly> arrow_images(const std::vector<ArrowLine>& lines,
                               const SigPtr& lhs_sig, const SigPtr& rhs_sig,
                               const RunOptions& opt) {
  std::vector<Poly> out(lhs_sig->size(), Poly());
  for (const ArrowLine& a : lines) {
    size_t i = sig_index(*lhs_sig, a.var);
    out[i] = rparse(a.image, rhs_sig, opt);
  }
  return out;
}

// reinterprets p over a signature extending p's own as a prefix
Poly lift_prefix(const Poly& p, const SigPtr& big) {
  std::vector<size_t> up(p.sig() ? p.sig()->size() : 0);
  for (size_t i = 0; i < up.size(); ++i) up[i] = i;
  return p.rename(big, up);
}

void declare(Env& env, const Item& it, const RunOptions& opt) {
  switch (it.kind) {
    case Item::Kind::ring:
      env.rings.emplace(it.name, build_ring(env, it.ring, opt));
      break;
    case Item::Kind::ideal: {
      const Presentation& r = env.rings.at(it.in_ring);
      env.ideals.emplace(it.name,
                         std::make_pair(it.in_ring,
                                        build_ideal(env, it.ideal, r, opt)));
      break;
    }
    case Item::Kind::pair: {
      std::vector<PairChart> charts;
      for (const ChartDecl& ch : it.charts) {
        Presentation base = build_ring(env, ch.ring, opt);
        Ideal extra = build_ideal(env, ch.ideal, base, opt);
        std::vector<Poly> gens = base.ideal.gens();
        const std::vector<Poly>& eg = extra.gens();
        gens.insert(gens.end(), eg.begin(), eg.end());
        Presentation space(base.sig, Ideal(base.sig, std::move(gens)));
        Poly d = rparse(ch.divisor, base.sig, opt);
        charts.push_back({std::move(space), std::move(d)});
      }
      env.pairs.emplace(it.name, make_pair(std::move(charts)));
      break;
    }
    case Item::Kind::morphism: {
      const ModulusPair& src = env.pairs.at(it.morphism.src);
      const ModulusPair& tgt = env.pairs.at(it.morphism.tgt);
      std::vector<Poly> images =
          arrow_images(it.morphism.images, tgt.charts[0].space.sig,
                       src.charts[0].space.sig, opt);
      RingMap pb(tgt.charts[0].space, src.charts[0].space, std::move(images));
      env.morphisms.emplace(it.name,
                            check_admissible(src, tgt, {{0, std::move(pb)}}));
      break;
    }
    case Item::Kind::roof: {
      if (it.roof.from_form) {
        env.roofs.emplace(it.name,
                          roof_from_ambient(env.morphisms.at(it.roof.from)));
        break;
      }
      std::vector<SigmaStage> stages;
      for (const SigmaLine& sl : it.roof.stages) {
        const AmbientMorphism& m = env.morphisms.at(sl.mor);
        const SigPtr& tsig = m.target.charts[0].space.sig;
        std::vector<Poly> center;
        for (const Span& g : sl.center) center.push_back(rparse(g, tsig, opt));
        SigmaCertificate cert =
            certify_sigma(m, Ideal(tsig, std::move(center)));
        stages.push_back({m, {std::move(cert)}});
      }
      const AmbientMorphism& amb = env.morphisms.at(it.roof.ambient);
      ModulusPair apex = stages.empty() ? amb.source : stages[0].mor.source;
      env.roofs.emplace(it.name,
                        make_roof(std::move(apex), std::move(stages), amb));
      break;
    }
    case Item::Kind::correspondence: {
      const ModulusPair& src = env.pairs.at(it.corr.src);
      const ModulusPair& tgt = env.pairs.at(it.corr.tgt);
      const Presentation& xr = src.charts[0].space;
      const Presentation& yr = tgt.charts[0].space;
      size_t nx = xr.sig->size(), ny = yr.sig->size();
      Sig names = *xr.sig;
      names.insert(names.end(), yr.sig->begin(), yr.sig->end());
      SigPtr big = make_sig(names);
      std::vector<size_t> into_y(ny);
      for (size_t j = 0; j < ny; ++j) into_y[j] = nx + j;
      StoredCorr sc{src, tgt, {}};
      for (const ComponentDecl& cd : it.corr.components) {
        std::vector<Poly> gens;
        const std::vector<Poly>& xg = xr.ideal.gens();
        for (const Poly& q : xg) gens.push_back(lift_prefix(q, big));
        const std::vector<Poly>& yg = yr.ideal.gens();
        for (const Poly& q : yg) gens.push_back(q.rename(big, into_y));
        for (const Span& g : cd.ideal.gens)
          gens.push_back(rparse(g, big, opt));
        Ideal comp(big, std::move(gens));
        Presentation cl(big, comp);
        Presentation zt = build_ring(env, cd.ztilde, opt);
        std::vector<Poly> nu_img = arrow_images(cd.nu, big, zt.sig, opt);
        RingMap nu(cl, zt, std::move(nu_img));
        long mult = std::stol(cd.multiplicity.text);
        sc.comps.push_back({std::move(comp), mult, true,
                            {{}, {}, true},
                            {std::move(zt), std::move(nu), true}});
      }
      env.corrs.emplace(it.name, std::move(sc));
      break;
    }
    case Item::Kind::command:
      break;
  }
}

// one report block; text lines indented under the echo, json mirror beside
struct CmdResult {
  std::vector<std::string> lines;
  json js = json::object();
  bool is_verify = false;
  bool pass = true;
};

template <class F>
std::optional<std::string> checked(F&& f) {
  try {
    f();
    return std::nullopt;
  } catch (const std::logic_error& e) {
    return std::string(e.what());
  } catch (const std::runtime_error& e) {
    return std::string(e.what());
  }
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string o;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) o += sep;
    o += v[i];
  }
  return o;
}

std::vector<std::string> poly_strs(const std::vector<Poly>& v,
                                   const MonomialOrder& ord) {
  std::vector<std::string> o;
  for (const Poly& p : v) o.push_back(p.str(ord));
  return o;
}

std::string cert_str(const SigmaCertificate& c, const MonomialOrder& ord) {
  switch (c.kind) {
    case SigmaCertificate::Kind::blowup_in_divisor: {
      std::string o = "blowup, center (" + join(poly_strs(c.center.gens(), ord), ", ") + "), powers [";
      for (size_t i = 0; i < c.inv_power.size(); ++i) {
        if (i) o += ", ";
        o += std::to_string(c.inv_power[i]);
      }
      return o + "]";
    }
    case SigmaCertificate::Kind::component_closure: {
      std::vector<std::string> parts;
      for (const Ideal& j : c.components)
        parts.push_back("(" + join(poly_strs(j.gens(), ord), ", ") + ")");
      return "component closure, parts " + join(parts, " | ");
    }
    case SigmaCertificate::Kind::composite: {
      std::vector<std::string> parts;
      for (const auto& p : c.parts) parts.push_back(cert_str(*p, ord));
      return "composite of [" + join(parts, " ; ") + "]";
    }
  }
  return "";
}

json cert_json(const SigmaCertificate& c, const MonomialOrder& ord) {
  json j;
  switch (c.kind) {
    case SigmaCertificate::Kind::blowup_in_divisor:
      j["kind"] = "blowup";
      j["center"] = poly_strs(c.center.gens(), ord);
      j["powers"] = c.inv_power;
      break;
    case SigmaCertificate::Kind::component_closure: {
      j["kind"] = "component_closure";
      json parts = json::array();
      for (const Ideal& i : c.components)
        parts.push_back(poly_strs(i.gens(), ord));
      j["parts"] = parts;
      break;
    }
    case SigmaCertificate::Kind::composite: {
      j["kind"] = "composite";
      json parts = json::array();
      for (const auto& p : c.parts) parts.push_back(cert_json(*p, ord));
      j["parts"] = parts;
      break;
    }
  }
  return j;
}

void morphism_lines(CmdResult& r, const char* label, const AmbientMorphism& m,
                    const MonomialOrder& ord) {
  r.lines.push_back(std::string(label) + ":");
  json legs = json::array();
  for (size_t i = 0; i < m.legs.size(); ++i) {
    const MorphismLeg& leg = m.legs[i];
    const Sig& tv = *leg.pullback.src.sig;
    std::vector<std::string> imgs;
    json jimg = json::object();
    for (size_t v = 0; v < tv.size(); ++v) {
      std::string s = leg.pullback.images[v].str(ord);
      imgs.push_back(tv[v] + " -> " + s);
      jimg[tv[v]] = s;
    }
    r.lines.push_back("  leg " + std::to_string(i) + " -> " +
                      std::to_string(leg.target_chart) + ": " +
                      join(imgs, ", "));
    legs.push_back({{"source_chart", i},
                    {"target_chart", leg.target_chart},
                    {"images", jimg}});
  }
  r.js[label] = legs;
}

void roof_lines(CmdResult& r, const Roof& roof, const MonomialOrder& ord) {
  const ModulusPair& apex = roof.apex;
  std::vector<std::string> divs;
  for (const PairChart& c : apex.charts) divs.push_back(c.divisor.str(ord));
  r.lines.push_back("apex: " + std::to_string(apex.charts.size()) +
                    " charts, divisors (" + join(divs, ", ") + ")");
  r.js["apex_charts"] = apex.charts.size();
  r.js["apex_divisors"] = divs;
  morphism_lines(r, "sigma", sigma_morphism(roof), ord);
  if (!roof.sigma.empty()) {
    SigmaCertificate c = sigma_certificate(roof);
    r.lines.push_back("  certificate: " + cert_str(c, ord));
    r.js["certificate"] = cert_json(c, ord);
  }
  morphism_lines(r, "ambient", roof.ambient, ord);
}

CmdResult exec_command(Env& env, const CommandDecl& c, const RunOptions& opt) {
  CmdResult r;
  const MonomialOrder& ord = opt.order;
  switch (c.kind) {
    case CommandDecl::Kind::verify_aisoc: {
      r.is_verify = true;
      Presentation ring = build_ring(env, c.ring, opt);
      Poly f = rparse(c.a, ring.sig, opt);
      LineModelReport lm;
      auto err = checked([&] { lm = compare_line_models(ring, f); });
      r.lines.push_back("ring: " + ring.str());
      r.lines.push_back("divisor: " + f.str(ord));
      r.js["ring"] = ring.str();
      r.js["divisor"] = f.str(ord);
      if (err) {
        r.pass = false;
        r.lines.push_back("detail: " + *err);
        r.js["detail"] = *err;
        break;
      }
      json models = json::object();
      for (const char* side : {"a", "c"}) {
        const auto& charts = side[0] == 'a' ? lm.a_charts : lm.c_charts;
        json jside = json::array();
        for (size_t i = 0; i < charts.size(); ++i) {
          std::string gens = join(poly_strs(charts[i].gens, ord), ", ");
          std::string div = charts[i].divisor.str(ord);
          r.lines.push_back(std::string("model ") + side + " chart " +
                            std::to_string(i) + ": gens (" + gens +
                            "), divisor " + div);
          jside.push_back({{"gens", poly_strs(charts[i].gens, ord)},
                           {"divisor", div}});
        }
        models[side] = jside;
      }
      r.js["models"] = models;
      r.pass = lm.verified;
      if (!lm.verified && !lm.detail.empty()) {
        r.lines.push_back("detail: " + lm.detail);
        r.js["detail"] = lm.detail;
      }
      break;
    }
    case CommandDecl::Kind::divisor_geq: {
      r.is_verify = true;
      const Presentation& ring = env.rings.at(c.ring.ref);
      Poly a = ring.reduce(rparse(c.a, ring.sig, opt));
      Poly b = ring.reduce(rparse(c.b, ring.sig, opt));
      r.lines.push_back("d1: " + a.str(ord));
      r.lines.push_back("d2: " + b.str(ord));
      r.js["d1"] = a.str(ord);
      r.js["d2"] = b.str(ord);
      std::optional<Poly> cof;
      auto err = checked([&] {
        cof = divisor_geq(divisor_on(ring, a), divisor_on(ring, b));
      });
      if (err) {
        r.pass = false;
        r.lines.push_back("detail: " + *err);
        r.js["detail"] = *err;
        break;
      }
      std::vector<Poly> gens = {b};
      const std::vector<Poly>& ig = ring.ideal.gens();
      gens.insert(gens.end(), ig.begin(), ig.end());
      auto basis = poly_strs(Ideal(ring.sig, gens).groebner_basis(ord), ord);
      r.lines.push_back("basis: " + join(basis, ", "));
      r.js["basis"] = basis;
      r.pass = cof.has_value();
      r.lines.push_back("cofactor: " + (cof ? cof->str(ord) : "none"));
      r.js["cofactor"] = cof ? json(cof->str(ord)) : json();
      break;
    }
    case CommandDecl::Kind::product: {
      const AmbientMorphism& f = env.morphisms.at(c.names[0]);
      const AmbientMorphism& g = env.morphisms.at(c.names[1]);
      if (c.sub == "box") {
        BoxProductResult b = box_product(f, g);
        r.lines.push_back("total: " + b.total.str());
        r.js["total"] = b.total.str();
        const std::pair<const char*, const Poly*> fields[] = {
            {"f_t", &b.f_t}, {"f_x", &b.f_x}, {"f_s", &b.f_s},
            {"cofactor", &b.cof}};
        for (const auto& [key, val] : fields) {
          r.lines.push_back(std::string(key) + ": " + val->str(ord));
          r.js[key] = val->str(ord);
        }
        std::vector<std::string> divs;
        for (const PairChart& ch : b.result.charts)
          divs.push_back(ch.divisor.str(ord));
        r.lines.push_back("divisors: (" + join(divs, ", ") + ")");
        r.js["divisors"] = divs;
        break;
      }
      AmbientProductResult p = ambient_product(f, g);
      r.js["blown"] = p.blown;
      if (c.sub == "ambient") {
        r.lines.push_back("total: " + p.total.str());
        r.js["total"] = p.total.str();
        r.lines.push_back(std::string("blown: ") + (p.blown ? "yes" : "no"));
        json charts = json::array();
        for (size_t i = 0; i < p.chart_data.size(); ++i) {
          const ProductChartData& d = p.chart_data[i];
          r.lines.push_back("chart " + std::to_string(i) + ": divisor " +
                            d.divisor.str(ord) + ", pulled (" +
                            d.d_t.str(ord) + ", " + d.d_x.str(ord) +
                            "), exceptional " + d.e.str(ord));
          charts.push_back({{"divisor", d.divisor.str(ord)},
                            {"d_t", d.d_t.str(ord)},
                            {"d_x", d.d_x.str(ord)},
                            {"e", d.e.str(ord)}});
        }
        r.js["charts"] = charts;
      } else {
        json charts = json::array();
        for (size_t i = 0; i < p.result.charts.size(); ++i) {
          const PairChart& ch = p.result.charts[i];
          r.lines.push_back("chart " + std::to_string(i) + ": " +
                            ch.space.str() + ", divisor " +
                            ch.divisor.str(ord));
          charts.push_back({{"space", ch.space.str()},
                            {"divisor", ch.divisor.str(ord)}});
        }
        r.js["charts"] = charts;
        morphism_lines(r, "proj_t", p.proj_t, ord);
        morphism_lines(r, "proj_x", p.proj_x, ord);
      }
      break;
    }
    case CommandDecl::Kind::compare_boxtimes: {
      r.is_verify = true;
      const AmbientMorphism& f = env.morphisms.at(c.names[0]);
      const AmbientMorphism& g = env.morphisms.at(c.names[1]);
      RoofComparison rc;
      auto err = checked([&] { rc = box_to_times(f, g); });
      if (err) {
        r.pass = false;
        r.lines.push_back("detail: " + *err);
        r.js["detail"] = *err;
        break;
      }
      morphism_lines(r, "sigma", rc.sigma_leg, ord);
      r.lines.push_back("  certificate: " + cert_str(rc.cert, ord));
      r.js["certificate"] = cert_json(rc.cert, ord);
      morphism_lines(r, "ambient", rc.ambient_leg, ord);
      break;
    }
    case CommandDecl::Kind::compose: {
      Roof out = compose_roofs(env.roofs.at(c.names[0]),
                               env.roofs.at(c.names[1]));
      roof_lines(r, out, ord);
      break;
    }
    case CommandDecl::Kind::equal: {
      r.is_verify = true;
      bool eq = false;
      auto err = checked([&] {
        eq = roofs_equal(env.roofs.at(c.names[0]), env.roofs.at(c.names[1]));
      });
      if (err) {
        r.pass = false;
        r.lines.push_back("detail: " + *err);
        r.js["detail"] = *err;
        break;
      }
      r.pass = eq;
      break;
    }
    case CommandDecl::Kind::cycle_graph: {
      r.is_verify = true;
      const AmbientMorphism& f = env.morphisms.at(c.names[0]);
      ModulusCorrespondence g;
      auto err = checked([&] { g = graph_cycle(f); });
      if (err) {
        r.pass = false;
        r.lines.push_back("detail: " + *err);
        r.js["detail"] = *err;
        break;
      }
      const CycleComponent& comp = g.components[0];
      auto gens = poly_strs(comp.on_interior.gens(), ord);
      r.lines.push_back("component: (" + join(gens, ", ") + ")");
      r.lines.push_back("multiplicity: " +
                        std::to_string(comp.multiplicity));
      r.js["component"] = gens;
      r.js["multiplicity"] = comp.multiplicity;
      ModulusWitness w = kmsy_witness(comp, g.source, g.target);
      r.lines.push_back("pulled source divisor: " + w.pulled_source.str(ord));
      r.lines.push_back("pulled target divisor: " + w.pulled_target.str(ord));
      r.lines.push_back("modulus cofactor: " +
                        (w.cofactor ? w.cofactor->str(ord) : "none"));
      r.js["pulled_source"] = w.pulled_source.str(ord);
      r.js["pulled_target"] = w.pulled_target.str(ord);
      r.js["modulus_cofactor"] =
          w.cofactor ? json(w.cofactor->str(ord)) : json();
      r.pass = w.cofactor.has_value();
      break;
    }
    case CommandDecl::Kind::cycle_check: {
      r.is_verify = true;
      const StoredCorr& sc = env.corrs.at(c.names[0]);
      json comps = json::array();
      bool all = true;
      for (size_t i = 0; i < sc.comps.size(); ++i) {
        const CycleComponent& comp = sc.comps[i];
        json jc;
        jc["multiplicity"] = comp.multiplicity;
        std::optional<ModulusWitness> w;
        auto err =
            checked([&] { w = kmsy_witness(comp, sc.src, sc.tgt); });
        if (err) {
          all = false;
          r.lines.push_back("component " + std::to_string(i) + ": " + *err);
          jc["detail"] = *err;
          jc["verdict"] = "fail";
          comps.push_back(jc);
          continue;
        }
        bool ok = w->cofactor.has_value();
        all = all && ok;
        r.lines.push_back(
            "component " + std::to_string(i) + ": multiplicity " +
            std::to_string(comp.multiplicity) + ", pulled (" +
            w->pulled_source.str(ord) + " vs " + w->pulled_target.str(ord) +
            "), cofactor " + (ok ? w->cofactor->str(ord) : "none"));
        jc["pulled_source"] = w->pulled_source.str(ord);
        jc["pulled_target"] = w->pulled_target.str(ord);
        jc["cofactor"] = ok ? json(w->cofactor->str(ord)) : json();
        jc["verdict"] = ok ? "pass" : "fail";
        comps.push_back(jc);
      }
      r.js["components"] = comps;
      r.pass = all;
      break;
    }
    case CommandDecl::Kind::cover: {
      r.is_verify = true;
      const ModulusPair& target = env.pairs.at(c.names[0]);
      const Presentation& tr = target.charts[0].space;
      CoverFamily fam;
      fam.kind = CoverKind::zar;
      std::vector<std::string> opens;
      for (const CoverEntry& e : c.entries) {
        fam.legs.push_back(env.morphisms.at(e.mor));
        fam.opens.push_back(rparse(e.open, tr.sig, opt));
        opens.push_back(e.mor + " : " + fam.opens.back().str(ord));
      }
      for (const std::string& o : opens) r.lines.push_back("leg " + o);
      r.js["legs"] = opens;
      auto err = checked([&] { check_cover(target, fam); });
      if (err) {
        r.pass = false;
        r.lines.push_back("detail: " + *err);
        r.js["detail"] = *err;
        break;
      }
      std::vector<Poly> gens = fam.opens;
      const std::vector<Poly>& ig = tr.ideal.gens();
      gens.insert(gens.end(), ig.begin(), ig.end());
      auto wit = Ideal(tr.sig, gens)
                     .membership_with_witness(Poly::constant(tr.sig, 1));
      if (wit) {
        std::vector<std::string> coeffs;
        for (size_t i = 0; i < fam.opens.size(); ++i)
          coeffs.push_back((*wit)[i].str(ord));
        r.lines.push_back("partition witness: (" + join(coeffs, ", ") + ")");
        r.js["partition_witness"] = coeffs;
      }
      break;
    }
  }
  return r;
}

}  // namespace

Script parse(const std::string& text) {
  Parser p(text);
  Script s = p.parse_script();
  validate(s);
  return s;
}

std::string print_script(const Script& s) {
  std::string o;
  bool first = true;
  for (const Item& it : s.items) {
    if (!first) o += "\n";
    first = false;
    o += print_item(it);
  }
  return o;
}

RunResult run(const Script& s, const RunOptions& opt) {
  Env env;
  RunResult out;
  std::string rep;
  json jcmds = json::array();
  std::vector<std::pair<std::string, double>> times;
  bool any_fail = false;
  size_t cmdno = 0, checks = 0, failed = 0;
  for (const Item& it : s.items) {
    std::string ctx = it.kind == Item::Kind::command
                          ? "command " + std::to_string(cmdno + 1) + " (" +
                                command_echo(it.cmd) + ")"
                          : "declaration '" + it.name + "'";
    try {
      if (it.kind != Item::Kind::command) {
        declare(env, it, opt);
        continue;
      }
      ++cmdno;
      auto t0 = std::chrono::steady_clock::now();
      CmdResult c = exec_command(env, it.cmd, opt);
      auto t1 = std::chrono::steady_clock::now();
      double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      std::string echo = command_echo(it.cmd);
      times.emplace_back("[" + std::to_string(cmdno) + "] " + echo, ms);
      rep += "[" + std::to_string(cmdno) + "] " + echo + "\n";
      for (const std::string& l : c.lines) rep += "    " + l + "\n";
      json jc = c.js;
      jc["command"] = echo;
      jc["index"] = cmdno;
      if (c.is_verify) {
        ++checks;
        if (!c.pass) {
          ++failed;
          any_fail = true;
        }
        rep += std::string("    verdict: ") + (c.pass ? "pass" : "fail") +
               "\n";
        jc["verdict"] = c.pass ? "pass" : "fail";
      } else {
        rep += "    verdict: done\n";
        jc["verdict"] = "done";
      }
      jcmds.push_back(std::move(jc));
    } catch (const ValidationError& e) {
      out.exit_code = 2;
      out.report = opt.json ? json({{"commands", jcmds}}).dump(2) + "\n" : rep;
      out.diagnostic = ctx + ": " + e.what();
      return out;
    } catch (const std::exception& e) {
      out.exit_code = 1;
      out.report = opt.json ? json({{"commands", jcmds}}).dump(2) + "\n" : rep;
      out.diagnostic = ctx + ": " + e.what();
      return out;
    }
  }
  std::string result = any_fail ? "fail" : "pass";
  rep += "result: " + result + " (" + std::to_string(checks) + " checks, " +
         std::to_string(failed) + " failed)\n";
  if (opt.json) {
    out.report = json({{"commands", jcmds}, {"result", result}}).dump(2) + "\n";
  } else {
    out.report = rep;
  }
  double total = 0;
  std::string foot = "-- timing --\n";
  for (const auto& [label, ms] : times) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", ms);
    foot += label + ": " + buf + " ms\n";
    total += ms;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", total);
  foot += std::string("total: ") + buf + " ms\n";
  out.timing = foot;
  out.exit_code = any_fail ? 1 : 0;
  return out;
}

}  // namespace modpairs::cli
