#pragma once
#include <string>
#include <vector>

namespace modpairs {

// Exponent vector; length always equals the ring's variable count.
using Exps = std::vector<int>;

int total_deg(const Exps& e);
bool mono_divides(const Exps& a, const Exps& b);  // a | b
Exps mono_mul(const Exps& a, const Exps& b);
Exps mono_div(const Exps& a, const Exps& b);  // requires b | a
Exps mono_lcm(const Exps& a, const Exps& b);
bool mono_coprime(const Exps& a, const Exps& b);

// Total, multiplicative well-orders on monomials. block(k) eliminates the
// first k variables: any monomial using them beats any monomial that does not.
struct MonomialOrder {
  enum class Kind { lex, grevlex, block };
  Kind kind = Kind::grevlex;
  int block = 0;

  static MonomialOrder Lex() { return {Kind::lex, 0}; }
  static MonomialOrder Grevlex() { return {Kind::grevlex, 0}; }
  static MonomialOrder Block(int first_block) { return {Kind::block, first_block}; }

  int cmp(const Exps& a, const Exps& b) const;  // <0, 0, >0
  bool less(const Exps& a, const Exps& b) const { return cmp(a, b) < 0; }
  std::string str() const;
  bool operator==(const MonomialOrder&) const = default;
};

}  // namespace modpairs
