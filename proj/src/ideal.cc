#include "modpairs/ideal.hh"

#include <algorithm>

namespace modpairs {

Ideal::Ideal(SigPtr sig, std::vector<Poly> gens)
    : sig_(std::move(sig)), gens_(std::move(gens)) {
  for (const auto& g : gens_)
    require(sig_eq(g.sig(), sig_), "generator signature mismatch");
}

Ideal::Ideal(const Ideal& o) : sig_(o.sig_), gens_(o.gens_) {
  std::lock_guard<std::mutex> lk(o.mu_);
  cache_ = o.cache_;
}

Ideal& Ideal::operator=(const Ideal& o) {
  if (this == &o) return *this;
  std::scoped_lock lk(mu_, o.mu_);
  sig_ = o.sig_;
  gens_ = o.gens_;
  cache_ = o.cache_;
  return *this;
}

const GroebnerResult& Ideal::groebner(const MonomialOrder& ord) const {
  std::lock_guard<std::mutex> lk(mu_);
  auto key = ord.str();
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    auto res = std::make_shared<GroebnerResult>(
        gens_.empty() ? GroebnerResult{} : buchberger(gens_, ord));
    it = cache_.emplace(key, std::move(res)).first;
  }
  return *it->second;
}

std::vector<Poly> Ideal::groebner_basis(const MonomialOrder& ord) const {
  return groebner(ord).basis;
}

Poly Ideal::normal_form(const Poly& f, const MonomialOrder& ord) const {
  require(sig_eq(f.sig(), sig_), "signature mismatch in normal_form");
  return divide(f, groebner(ord).basis, ord).remainder;
}

bool Ideal::contains(const Poly& f) const { return normal_form(f).is_zero(); }

std::optional<std::vector<Poly>> Ideal::membership_with_witness(
    const Poly& f) const {
  require(sig_eq(f.sig(), sig_), "signature mismatch in membership");
  const auto ord = MonomialOrder::Grevlex();
  const GroebnerResult& g = groebner(ord);
  DivisionResult d = divide(f, g.basis, ord);
  if (!d.remainder.is_zero()) return std::nullopt;
  std::vector<Poly> wit(gens_.size(), Poly(sig_));
  for (size_t m = 0; m < g.basis.size(); ++m) {
    if (d.quotients[m].is_zero()) continue;
    for (size_t k = 0; k < gens_.size(); ++k)
      wit[k] = wit[k] + d.quotients[m] * g.cofactors[m][k];
  }
  return wit;
}

namespace {

// Prepends a fresh variable to the signature; maps old position i to i+1.
struct Extended {
  SigPtr sig;
  std::vector<size_t> up;
  Poly t;
};

Extended extend_sig(const SigPtr& sig, const std::string& base) {
  std::vector<std::string> names;
  names.push_back(fresh_name(*sig, base));
  names.insert(names.end(), sig->begin(), sig->end());
  Extended e;
  e.sig = make_sig(std::move(names));
  e.up.resize(sig->size());
  for (size_t i = 0; i < e.up.size(); ++i) e.up[i] = i + 1;
  e.t = Poly::var(e.sig, 0);
  return e;
}

}  // namespace

Ideal Ideal::saturation(const Poly& f) const {
  require(sig_eq(f.sig(), sig_), "signature mismatch in saturation");
  Extended ex = extend_sig(sig_, "t");
  std::vector<Poly> gens;
  for (const auto& g : gens_) gens.push_back(g.rename(ex.sig, ex.up));
  gens.push_back(Poly::constant(ex.sig, 1) - ex.t * f.rename(ex.sig, ex.up));
  return Ideal(ex.sig, std::move(gens)).eliminate({0}).with_sig(sig_);
}

Ideal Ideal::colon(const Poly& f) const {
  require(sig_eq(f.sig(), sig_), "signature mismatch in colon");
  if (f.is_zero()) return Ideal(sig_, {Poly::constant(sig_, 1)});
  Ideal meet = intersect(Ideal(sig_, {f}));
  const auto ord = MonomialOrder::Grevlex();
  std::vector<Poly> quots;
  for (const auto& g : meet.groebner(ord).basis) {
    DivisionResult d = divide(g, {f}, ord);
    require(d.remainder.is_zero(), "colon witness not divisible");
    quots.push_back(d.quotients[0]);
  }
  return Ideal(sig_, std::move(quots));
}

Ideal Ideal::intersect(const Ideal& j) const {
  require(sig_eq(j.sig_, sig_), "signature mismatch in intersect");
  Extended ex = extend_sig(sig_, "t");
  Poly one = Poly::constant(ex.sig, 1);
  std::vector<Poly> gens;
  for (const auto& g : gens_) gens.push_back(ex.t * g.rename(ex.sig, ex.up));
  for (const auto& h : j.gens_)
    gens.push_back((one - ex.t) * h.rename(ex.sig, ex.up));
  return Ideal(ex.sig, std::move(gens)).eliminate({0}).with_sig(sig_);
}

Ideal Ideal::eliminate(const std::vector<size_t>& drop) const {
  if (drop.empty()) return *this;
  const size_t n = sig_->size();
  std::vector<bool> gone(n, false);
  for (size_t p : drop) {
    require(p < n, "eliminate position out of range");
    require(!gone[p], "duplicate eliminate position");
    gone[p] = true;
  }
  std::vector<std::string> perm_names, kept_names;
  for (size_t i = 0; i < n; ++i)
    if (gone[i]) perm_names.push_back((*sig_)[i]);
  for (size_t i = 0; i < n; ++i)
    if (!gone[i]) {
      perm_names.push_back((*sig_)[i]);
      kept_names.push_back((*sig_)[i]);
    }
  SigPtr perm_sig = make_sig(perm_names);
  SigPtr out_sig = make_sig(kept_names);
  const size_t k = drop.size();

  std::vector<size_t> to_perm(n), perm_to_out(n, 0);
  {
    size_t d = 0, r = k;
    for (size_t i = 0; i < n; ++i) to_perm[i] = gone[i] ? d++ : r++;
    for (size_t i = k; i < n; ++i) perm_to_out[i] = i - k;
  }

  std::vector<Poly> perm_gens;
  for (const auto& g : gens_) perm_gens.push_back(g.rename(perm_sig, to_perm));
  Ideal perm(perm_sig, std::move(perm_gens));
  const auto ord = MonomialOrder::Block(int(k));

  std::vector<Poly> out;
  for (const auto& b : perm.groebner(ord).basis) {
    bool uses_dropped = false;
    for (const auto& [e, c] : b.terms())
      for (size_t i = 0; i < k && !uses_dropped; ++i)
        if (e[i] != 0) uses_dropped = true;
    if (!uses_dropped) out.push_back(b.rename(out_sig, perm_to_out));
  }
  return Ideal(out_sig, std::move(out));
}

Ideal Ideal::sum(const Ideal& j) const {
  require(sig_eq(j.sig_, sig_), "signature mismatch in sum");
  std::vector<Poly> gens = gens_;
  gens.insert(gens.end(), j.gens_.begin(), j.gens_.end());
  return Ideal(sig_, std::move(gens));
}

Ideal Ideal::product(const Ideal& j) const {
  require(sig_eq(j.sig_, sig_), "signature mismatch in product");
  std::vector<Poly> gens;
  for (const auto& g : gens_)
    for (const auto& h : j.gens_) gens.push_back(g * h);
  return Ideal(sig_, std::move(gens));
}

bool Ideal::equals(const Ideal& j) const {
  require(sig_eq(j.sig_, sig_), "signature mismatch in equals");
  return groebner().basis == j.groebner().basis;
}

bool Ideal::is_nonzerodivisor(const Poly& f) const { return colon(f).equals(*this); }

std::optional<unsigned long> Ideal::vspace_dim() const {
  const GroebnerResult& g = groebner();
  if (g.is_unit()) return 0;
  const size_t n = sig_->size();
  if (n == 0) return 1;
  std::vector<Exps> lts;
  for (const auto& b : g.basis) lts.push_back(b.leading(MonomialOrder::Grevlex()).first);
  std::vector<int> bound(n, -1);
  for (const auto& e : lts) {
    size_t support = 0, which = 0;
    for (size_t i = 0; i < n; ++i)
      if (e[i] != 0) {
        ++support;
        which = i;
      }
    if (support == 1 && (bound[which] < 0 || e[which] < bound[which]))
      bound[which] = e[which];
  }
  for (size_t i = 0; i < n; ++i)
    if (bound[i] < 0) return std::nullopt;

  unsigned long count = 0;
  Exps e(n, 0);
  for (;;) {
    bool divisible = false;
    for (const auto& lt : lts)
      if (mono_divides(lt, e)) {
        divisible = true;
        break;
      }
    if (!divisible) ++count;
    size_t i = 0;
    while (i < n) {
      if (++e[i] < bound[i]) break;
      e[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  return count;
}

bool Ideal::radical_contains(const Poly& g) const {
  require(sig_eq(g.sig(), sig_), "signature mismatch in radical_contains");
  Extended ex = extend_sig(sig_, "t");
  std::vector<Poly> gens;
  for (const auto& h : gens_) gens.push_back(h.rename(ex.sig, ex.up));
  gens.push_back(Poly::constant(ex.sig, 1) - ex.t * g.rename(ex.sig, ex.up));
  return Ideal(ex.sig, std::move(gens)).is_unit();
}

bool Ideal::is_unit() const { return groebner().is_unit(); }

Ideal Ideal::with_sig(const SigPtr& sig) const {
  require(sig->size() == sig_->size(), "signature length mismatch");
  std::vector<size_t> id(sig_->size());
  for (size_t i = 0; i < id.size(); ++i) id[i] = i;
  std::vector<Poly> gens;
  for (const auto& g : gens_) gens.push_back(g.rename(sig, id));
  return Ideal(sig, std::move(gens));
}

}  // namespace modpairs
