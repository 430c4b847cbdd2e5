#pragma once
#include <optional>
#include <string>
#include <vector>

#include "modpairs/mono.hh"

namespace modpairs::cli {

struct SrcLoc {
  size_t line = 1, col = 1;
};

// Polynomial and integer arguments stay as source text until execution,
// when the owning ring is known; locations feed diagnostics.
struct Span {
  std::string text;
  SrcLoc loc;
};

// Either a reference to a declared ring or an inline Q[vars]/(rels) literal.
struct RingExpr {
  bool inline_form = false;
  std::string ref;
  std::vector<std::string> vars;
  std::vector<Span> rels;
  SrcLoc loc;
};

// Zero, a reference to a declared ideal, or an inline generator list.
struct IdealExpr {
  enum class Kind { zero, ref, inline_gens } kind = Kind::zero;
  std::string ref;
  std::vector<Span> gens;
  SrcLoc loc;
};

struct ChartDecl {
  RingExpr ring;
  IdealExpr ideal;
  Span divisor;
};

struct ArrowLine {
  std::string var;
  Span image;
  SrcLoc loc;
};

struct MorphismDecl {
  std::string src, tgt;
  std::vector<ArrowLine> images;
};

struct SigmaLine {
  std::string mor;
  std::vector<Span> center;
  SrcLoc loc;
};

struct RoofDecl {
  bool from_form = false;
  std::string from;
  std::vector<SigmaLine> stages;
  std::string ambient;
};

struct ComponentDecl {
  IdealExpr ideal;
  Span multiplicity;
  RingExpr ztilde;
  std::vector<ArrowLine> nu;
  SrcLoc loc;
};

struct CorrDecl {
  std::string src, tgt;
  std::vector<ComponentDecl> components;
};

struct CoverEntry {
  std::string mor;
  Span open;
  SrcLoc loc;
};

struct CommandDecl {
  enum class Kind {
    verify_aisoc,
    divisor_geq,
    product,
    compare_boxtimes,
    compose,
    equal,
    cycle_graph,
    cycle_check,
    cover
  } kind = Kind::verify_aisoc;
  RingExpr ring;          // verify aisoc; divisor geq (reference form)
  Span a, b;              // polynomial arguments
  std::string sub;        // product flavor: ambient | box | fibre
  std::vector<std::string> names;  // operand object names
  std::vector<CoverEntry> entries;
};

struct Item {
  enum class Kind { ring, ideal, pair, morphism, roof, correspondence, command };
  Kind kind = Kind::command;
  std::string name;  // declarations only
  SrcLoc loc;
  RingExpr ring;
  IdealExpr ideal;
  std::string in_ring;  // ideal declarations
  std::vector<ChartDecl> charts;
  MorphismDecl morphism;
  RoofDecl roof;
  CorrDecl corr;
  CommandDecl cmd;
};

struct Script {
  std::vector<Item> items;
};

// Grammar plus static checks: names unique, references resolve to the right
// kind of object. Throws ParseError with position and an expected-set.
Script parse(const std::string& text);

// Canonical layout; polynomial spans are re-emitted verbatim.
std::string print_script(const Script& s);

struct RunOptions {
  MonomialOrder order = MonomialOrder::Grevlex();
  std::optional<long> max_degree;  // cap on input polynomial degrees
  bool json = false;
};

struct RunResult {
  int exit_code = 0;        // 0 all pass, 1 failure or hard error, 2 misuse
  std::string report;       // canonical text or JSON, per options
  std::string timing;       // non-canonical footer lines
  std::string diagnostic;   // for the error stream; empty when clean
};

RunResult run(const Script& s, const RunOptions& opt);

}  // namespace modpairs::cli
