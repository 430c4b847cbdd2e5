#include "modpairs/groebner.hh"

#include <algorithm>
#include <set>

namespace modpairs {

bool GroebnerResult::is_unit() const {
  return basis.size() == 1 && basis[0].constant_value().has_value() &&
         !basis[0].is_zero();
}

DivisionResult divide(const Poly& f, const std::vector<Poly>& divisors,
                      const MonomialOrder& ord) {
  DivisionResult res{Poly(f.sig()), std::vector<Poly>(divisors.size(), Poly(f.sig()))};
  struct Lead {
    Exps e;
    Rat c;
  };
  std::vector<Lead> leads;
  leads.reserve(divisors.size());
  for (const auto& d : divisors) {
    require(sig_eq(d.sig(), f.sig()), "signature mismatch in divide");
    if (d.is_zero())
      leads.push_back({Exps(), Rat(0)});
    else {
      auto [e, c] = d.leading(ord);
      leads.push_back({e, c});
    }
  }
  Poly p = f;
  while (!p.is_zero()) {
    auto [e, c] = p.leading(ord);
    bool reduced = false;
    for (size_t i = 0; i < divisors.size(); ++i) {
      if (divisors[i].is_zero() || !mono_divides(leads[i].e, e)) continue;
      Poly t = Poly::term(f.sig(), mono_div(e, leads[i].e), c / leads[i].c);
      res.quotients[i] = res.quotients[i] + t;
      p = p - t * divisors[i];
      reduced = true;
      break;
    }
    if (!reduced) {
      Poly t = Poly::term(f.sig(), e, c);
      res.remainder = res.remainder + t;
      p = p - t;
    }
  }
  return res;
}

namespace {

struct Entry {
  Poly f;
  Exps lt;
  Rat lc;
  std::vector<Poly> cof;  // expression of f over the input generators
};

}  // namespace

GroebnerResult buchberger(const std::vector<Poly>& gens,
                          const MonomialOrder& ord) {
  require(!gens.empty(), "buchberger needs at least one generator slot");
  SigPtr sig = gens.front().sig();
  const size_t n = gens.size();
  auto unit_cof = [&](size_t i) {
    std::vector<Poly> c(n, Poly(sig));
    c[i] = Poly::constant(sig, 1);
    return c;
  };

  std::vector<Entry> basis;
  for (size_t i = 0; i < n; ++i) {
    require(sig_eq(gens[i].sig(), sig), "signature mismatch in buchberger");
    if (gens[i].is_zero()) continue;
    auto [e, c] = gens[i].leading(ord);
    basis.push_back({gens[i], e, c, unit_cof(i)});
  }

  // reduce an element against the basis, keeping its input expression exact
  auto reduce_full = [&](Poly p, std::vector<Poly> cof) {
    std::vector<Poly> divs;
    divs.reserve(basis.size());
    for (const auto& b : basis) divs.push_back(b.f);
    DivisionResult d = divide(p, divs, ord);
    for (size_t m = 0; m < basis.size(); ++m) {
      if (d.quotients[m].is_zero()) continue;
      for (size_t k = 0; k < n; ++k)
        cof[k] = cof[k] - d.quotients[m] * basis[m].cof[k];
    }
    return std::make_pair(d.remainder, cof);
  };

  using Pair = std::pair<size_t, size_t>;
  std::set<Pair> pending;
  auto push_pairs = [&](size_t j) {
    for (size_t i = 0; i < j; ++i) pending.insert({i, j});
  };
  for (size_t j = 0; j < basis.size(); ++j) push_pairs(j);

  while (!pending.empty()) {
    // normal selection: smallest lcm of leading terms under the active order
    auto best = pending.begin();
    Exps best_lcm = mono_lcm(basis[best->first].lt, basis[best->second].lt);
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Exps l = mono_lcm(basis[it->first].lt, basis[it->second].lt);
      if (ord.cmp(l, best_lcm) < 0) {
        best = it;
        best_lcm = l;
      }
    }
    auto [i, j] = *best;
    pending.erase(best);

    if (mono_coprime(basis[i].lt, basis[j].lt)) continue;
    bool chained = false;
    for (size_t k = 0; k < basis.size() && !chained; ++k) {
      if (k == i || k == j || !mono_divides(basis[k].lt, best_lcm)) continue;
      Pair ik{std::min(i, k), std::max(i, k)};
      Pair jk{std::min(j, k), std::max(j, k)};
      if (!pending.count(ik) && !pending.count(jk)) chained = true;
    }
    if (chained) continue;

    Poly ti = Poly::term(sig, mono_div(best_lcm, basis[i].lt), Rat(1) / basis[i].lc);
    Poly tj = Poly::term(sig, mono_div(best_lcm, basis[j].lt), Rat(1) / basis[j].lc);
    Poly s = ti * basis[i].f - tj * basis[j].f;
    std::vector<Poly> cof(n, Poly(sig));
    for (size_t k = 0; k < n; ++k)
      cof[k] = ti * basis[i].cof[k] - tj * basis[j].cof[k];
    auto [r, rcof] = reduce_full(s, cof);
    if (r.is_zero()) continue;
    auto [e, c] = r.leading(ord);
    basis.push_back({r, e, c, rcof});
    push_pairs(basis.size() - 1);
  }

  // minimalize: drop entries whose leading term another entry's divides
  std::vector<Entry> kept;
  for (size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      if (!mono_divides(basis[j].lt, basis[i].lt)) continue;
      // on equal leading terms keep the later entry only once
      if (basis[j].lt == basis[i].lt && j > i) continue;
      redundant = true;
    }
    if (!redundant) kept.push_back(basis[i]);
  }

  // tail-reduce each survivor against the others; leading terms are pairwise
  // non-divisible so remainders stay nonzero with the same leading term
  std::vector<Entry> out;
  for (size_t i = 0; i < kept.size(); ++i) {
    std::vector<Poly> divs;
    std::vector<size_t> who;
    for (size_t j = 0; j < kept.size(); ++j)
      if (j != i) {
        divs.push_back(kept[j].f);
        who.push_back(j);
      }
    DivisionResult d = divide(kept[i].f, divs, ord);
    std::vector<Poly> cof = kept[i].cof;
    for (size_t m = 0; m < divs.size(); ++m) {
      if (d.quotients[m].is_zero()) continue;
      for (size_t k = 0; k < n; ++k)
        cof[k] = cof[k] - d.quotients[m] * kept[who[m]].cof[k];
    }
    auto [e, c] = d.remainder.leading(ord);
    Rat inv = Rat(1) / c;
    Entry ent{d.remainder.scaled(inv), e, Rat(1), cof};
    for (auto& q : ent.cof) q = q.scaled(inv);
    out.push_back(std::move(ent));
  }

  std::vector<size_t> perm(out.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](size_t a, size_t b) {
    return ord.cmp(out[a].lt, out[b].lt) < 0;
  });

  GroebnerResult res;
  for (size_t idx : perm) {
    res.basis.push_back(out[idx].f);
    res.cofactors.push_back(out[idx].cof);
  }
  return res;
}

}  // namespace modpairs
