#pragma once
#include <vector>

#include "modpairs/poly.hh"

namespace modpairs {

// Multivariate division: f = sum quotients[i]*divisors[i] + remainder,
// no remainder term divisible by any divisor's leading monomial.
struct DivisionResult {
  Poly remainder;
  std::vector<Poly> quotients;
};
DivisionResult divide(const Poly& f, const std::vector<Poly>& divisors,
                      const MonomialOrder& ord);

// Reduced Groebner basis: monic, tails fully reduced, sorted ascending by
// leading monomial. cofactors[i] expresses basis[i] over the input gens.
struct GroebnerResult {
  std::vector<Poly> basis;
  std::vector<std::vector<Poly>> cofactors;
  bool is_unit() const;  // basis == {1}
};
GroebnerResult buchberger(const std::vector<Poly>& gens, const MonomialOrder& ord);

}  // namespace modpairs
