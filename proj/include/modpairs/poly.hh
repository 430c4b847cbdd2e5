#pragma once
#include <gmpxx.h>

#include <map>
#include <optional>
#include <utility>

#include "modpairs/base.hh"
#include "modpairs/mono.hh"

namespace modpairs {

using Rat = mpq_class;

// Multivariate polynomial with exact rational coefficients.
// Invariant: no zero coefficients stored; every exponent vector has
// length sig->size(). Term storage is order-agnostic (keyed by exponent
// vector); order-sensitive views take a MonomialOrder.
class Poly {
 public:
  Poly() = default;  // zero polynomial over the empty signature
  explicit Poly(SigPtr sig) : sig_(std::move(sig)) {}

  static Poly constant(SigPtr sig, Rat c);
  static Poly var(SigPtr sig, size_t idx, int exp = 1);
  static Poly term(SigPtr sig, Exps e, Rat c);

  const SigPtr& sig() const { return sig_; }
  const std::map<Exps, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::optional<Rat> constant_value() const;  // set iff constant (zero gives 0)
  int degree() const;                         // total degree; -1 for zero
  size_t term_count() const { return terms_.size(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(const Rat& c) const;
  Poly pow(int k) const;
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::pair<Exps, Rat> leading(const MonomialOrder& ord) const;  // requires nonzero
  std::string str(const MonomialOrder& ord = MonomialOrder::Grevlex()) const;

  // Reinterprets terms through an index map into a new signature:
  // exponent of new variable var_map[i] = old exponent of variable i.
  Poly rename(SigPtr new_sig, const std::vector<size_t>& var_map) const;

 private:
  SigPtr sig_;
  std::map<Exps, Rat> terms_;
  void add_term(const Exps& e, const Rat& c);  // merging, drops zeros
};

Poly parse_poly(const std::string& text, const SigPtr& sig);  // throws ParseError
std::string rat_str(const Rat& q);

}  // namespace modpairs
