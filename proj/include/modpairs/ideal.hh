#pragma once
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "modpairs/groebner.hh"
#include "modpairs/poly.hh"

namespace modpairs {

// Ideal of Q[sig], kept as the caller's generators plus a lazily filled
// per-order reduced-Groebner-basis cache. Immutable after construction;
// the cache is filled under a mutex (single writer per entry).
class Ideal {
 public:
  Ideal() = default;
  Ideal(SigPtr sig, std::vector<Poly> gens);
  Ideal(const Ideal& o);
  Ideal& operator=(const Ideal& o);

  const SigPtr& sig() const { return sig_; }
  const std::vector<Poly>& gens() const { return gens_; }

  const GroebnerResult& groebner(
      const MonomialOrder& ord = MonomialOrder::Grevlex()) const;
  std::vector<Poly> groebner_basis(const MonomialOrder& ord) const;
  Poly normal_form(const Poly& f,
                   const MonomialOrder& ord = MonomialOrder::Grevlex()) const;
  bool contains(const Poly& f) const;
  // Cofactors over the stored generators when f is a member.
  std::optional<std::vector<Poly>> membership_with_witness(const Poly& f) const;

  Ideal saturation(const Poly& f) const;  // I : f^inf
  Ideal colon(const Poly& f) const;       // I : f
  Ideal intersect(const Ideal& j) const;
  // Drops the named variable positions; result lives on the reduced signature.
  Ideal eliminate(const std::vector<size_t>& drop) const;
  Ideal sum(const Ideal& j) const;
  Ideal product(const Ideal& j) const;
  bool equals(const Ideal& j) const;  // mutual normal-form reduction

  bool is_nonzerodivisor(const Poly& f) const;  // colon(f) == this
  std::optional<unsigned long> vspace_dim() const;  // nullopt = infinite
  bool radical_contains(const Poly& g) const;       // g in sqrt(I)
  bool is_unit() const;                             // 1 in I

  // Same ideal read in another signature of identical length (chart copies).
  Ideal with_sig(const SigPtr& sig) const;

 private:
  SigPtr sig_;
  std::vector<Poly> gens_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::shared_ptr<const GroebnerResult>> cache_;
};

}  // namespace modpairs
