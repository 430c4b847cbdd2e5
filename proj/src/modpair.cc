#include "modpairs/modpair.hh"

namespace modpairs {

DivisorNotCartier::DivisorNotCartier(size_t c)
    : std::runtime_error("divisor generator is a zerodivisor on chart " +
                         std::to_string(c)),
      chart(c) {}

NotAdmissible::NotAdmissible(size_t c, const std::string& detail)
    : std::runtime_error("not admissible on chart " + std::to_string(c) + ": " +
                         detail),
      chart(c) {}

InteriorNotIso::InteriorNotIso(const std::string& detail)
    : std::runtime_error("not an isomorphism over the interior: " + detail) {}

NotPrincipalOpen::NotPrincipalOpen(size_t leg)
    : std::runtime_error("cover leg " + std::to_string(leg) +
                         " is not a principal-open inclusion") {}

MissingIntegralityWitness::MissingIntegralityWitness(const std::string& detail)
    : std::runtime_error("integrality witness missing or invalid: " + detail) {}

namespace {

// f in <g> + I
bool member_mod(const Poly& f, const Poly& g, const Ideal& i) {
  std::vector<Poly> gens = i.gens();
  gens.push_back(g);
  return Ideal(i.sig(), std::move(gens)).contains(f);
}

// cofactor c with f = c*g mod I, when it exists
std::optional<Poly> cofactor_mod(const Poly& f, const Poly& g, const Ideal& i) {
  std::vector<Poly> gens;
  gens.push_back(g);
  for (const auto& q : i.gens()) gens.push_back(q);
  auto w = Ideal(i.sig(), std::move(gens)).membership_with_witness(f);
  if (!w) return std::nullopt;
  return (*w)[0];
}

bool invertible_mod(const Poly& f, const Ideal& i) {
  std::vector<Poly> gens = i.gens();
  gens.push_back(f);
  return Ideal(i.sig(), std::move(gens)).is_unit();
}

bool same_chart(const PairChart& a, const PairChart& b) {
  return sig_eq(a.space.sig, b.space.sig) &&
         a.space.ideal.equals(b.space.ideal) &&
         a.space.reduce(a.divisor - b.divisor).is_zero();
}

bool same_pair(const ModulusPair& a, const ModulusPair& b) {
  if (a.charts.size() != b.charts.size()) return false;
  for (size_t c = 0; c < a.charts.size(); ++c)
    if (!same_chart(a.charts[c], b.charts[c])) return false;
  return true;
}

}  // namespace

ModulusPair make_pair(std::vector<PairChart> charts,
                      std::vector<ChartGlue> glue) {
  require(!charts.empty(), "a modulus pair needs at least one chart");
  for (size_t c = 0; c < charts.size(); ++c) {
    auto& ch = charts[c];
    require(sig_eq(ch.divisor.sig(), ch.space.sig),
            "divisor signature mismatch");
    ch.divisor = ch.space.reduce(ch.divisor);
    if (!ch.space.ideal.is_nonzerodivisor(ch.divisor))
      throw DivisorNotCartier(c);
  }
  for (const auto& g : glue) {
    require(g.i < charts.size() && g.j < charts.size() && g.i != g.j,
            "glue chart indices out of range");
    require(sig_eq(g.to_overlap.src.sig, charts[g.i].space.sig),
            "glue transport source mismatch");
    require(sig_eq(g.overlap.map.src.sig, charts[g.j].space.sig),
            "glue overlap base mismatch");
    const Presentation& L = g.overlap.ring;
    require(invertible_mod(g.to_overlap.apply_raw(g.f_i), L.ideal),
            "glue element does not invert on the overlap");
    Poly di = g.to_overlap.apply_raw(charts[g.i].divisor);
    Poly dj = g.overlap.map.apply_raw(charts[g.j].divisor);
    require(member_mod(di, dj, L.ideal) && member_mod(dj, di, L.ideal),
            "divisors disagree on a chart overlap");
  }
  return ModulusPair{std::move(charts), std::move(glue)};
}

ModulusPair pair_from_blowup(const BlowupChartSet& b,
                             std::vector<Poly> divisors) {
  require(divisors.size() == b.charts.size(),
          "one divisor generator per blow-up chart");
  std::vector<PairChart> charts;
  for (size_t i = 0; i < b.charts.size(); ++i)
    charts.push_back({b.charts[i].ring, divisors[i]});
  std::vector<ChartGlue> glue;
  for (size_t i = 0; i < b.charts.size(); ++i)
    for (size_t j = i + 1; j < b.charts.size(); ++j) {
      if (b.charts[i].empty || b.charts[j].empty) continue;
      GlueTransport t = glue_transport(b, i, j);
      glue.push_back(ChartGlue{i, j, b.gluing[i][j], b.gluing[j][i], t.overlap,
                               t.map});
    }
  return make_pair(std::move(charts), std::move(glue));
}

std::vector<Localization> interior(const ModulusPair& p) {
  std::vector<Localization> out;
  for (const auto& ch : p.charts) out.push_back(localize(ch.space, ch.divisor));
  return out;
}

AmbientMorphism check_admissible(const ModulusPair& src, const ModulusPair& tgt,
                                 std::vector<std::pair<size_t, RingMap>> legs) {
  require(legs.size() == src.charts.size(), "one leg per source chart");
  AmbientMorphism m;
  m.source = src;
  m.target = tgt;
  m.admissible = true;
  m.minimal = true;
  for (size_t c = 0; c < legs.size(); ++c) {
    auto& [tc, pb] = legs[c];
    require(tc < tgt.charts.size(), "leg target chart out of range");
    require(sig_eq(pb.src.sig, tgt.charts[tc].space.sig) &&
                sig_eq(pb.tgt.sig, src.charts[c].space.sig),
            "leg ring map does not connect the stated charts");
    const Presentation& S = src.charts[c].space;
    Poly d = src.charts[c].divisor;
    Poly pulled = S.reduce(pb.apply_raw(tgt.charts[tc].divisor));
    auto adm = cofactor_mod(d, pulled, S.ideal);
    if (!adm)
      throw NotAdmissible(c, "divisor " + d.str() + " not in <" +
                                 pulled.str() + "> plus the chart ideal");
    MorphismLeg leg;
    leg.target_chart = tc;
    leg.pullback = pb;
    leg.adm_witness = *adm;
    auto min = cofactor_mod(pulled, d, S.ideal);
    if (min) {
      leg.min_witness = *min;
    } else {
      m.minimal = false;
      leg.min_witness = Poly(S.sig);
    }
    m.legs.push_back(std::move(leg));
  }
  return m;
}

AmbientMorphism identity_morphism(const ModulusPair& p) {
  std::vector<std::pair<size_t, RingMap>> legs;
  for (size_t c = 0; c < p.charts.size(); ++c)
    legs.push_back({c, RingMap::identity(p.charts[c].space)});
  return check_admissible(p, p, std::move(legs));
}

AmbientMorphism compose(const AmbientMorphism& f, const AmbientMorphism& g) {
  require(same_pair(f.target, g.source),
          "composition needs matching middle pair");
  std::vector<std::pair<size_t, RingMap>> legs;
  for (size_t c = 0; c < f.legs.size(); ++c) {
    size_t mid = f.legs[c].target_chart;
    const MorphismLeg& gl = g.legs[mid];
    legs.push_back({gl.target_chart, gl.pullback.then(f.legs[c].pullback)});
  }
  return check_admissible(f.source, g.target, std::move(legs));
}

bool equal_on_interior(const AmbientMorphism& f, const AmbientMorphism& g) {
  require(same_pair(f.source, g.source) && same_pair(f.target, g.target),
          "interior comparison needs equal endpoints");
  for (size_t c = 0; c < f.legs.size(); ++c) {
    if (f.legs[c].target_chart != g.legs[c].target_chart) return false;
    const PairChart& ch = f.source.charts[c];
    Ideal sat = ch.space.ideal.saturation(ch.divisor);
    for (size_t v = 0; v < f.legs[c].pullback.images.size(); ++v)
      if (!sat.contains(f.legs[c].pullback.images[v] -
                        g.legs[c].pullback.images[v]))
        return false;
  }
  return true;
}

SigmaCertificate certify_sigma(const AmbientMorphism& f, const Ideal& center) {
  require(f.minimal, "sigma certification needs a minimal morphism");
  require(f.target.charts.size() == 1,
          "blow-up certificates need a single-chart target");
  const PairChart& T = f.target.charts[0];
  require(sig_eq(center.sig(), T.space.sig), "center lives off the target");
  const size_t k = center.gens().size(), n = T.space.sig->size();
  require(f.source.charts.size() == k, "one source chart per center generator");

  if (!T.space.ideal.sum(center).radical_contains(T.divisor))
    throw CenterNotInDivisor();

  SigmaCertificate cert;
  cert.kind = SigmaCertificate::Kind::blowup_in_divisor;
  cert.center = center;

  Localization L = localize(T.space, T.divisor);
  std::vector<size_t> up(n);
  for (size_t v = 0; v < n; ++v) up[v] = v;
  Poly u = Poly::var(L.ring.sig, L.inv_var);

  for (size_t i = 0; i < k; ++i) {
    const Presentation& C = f.source.charts[i].space;
    const MorphismLeg& leg = f.legs[i];
    require(leg.target_chart == 0, "blow-up legs land in the single chart");
    if (C.sig->size() != n + k - 1)
      throw InteriorNotIso("source chart " + std::to_string(i) +
                           " is not shaped like a blow-up chart");
    for (size_t v = 0; v < n; ++v)
      if (C.reduce(leg.pullback.images[v] - Poly::var(C.sig, v)).is_zero() ==
          false)
        throw InteriorNotIso("leg " + std::to_string(i) +
                             " moves a base variable");

    // divisor^p = w * a_i mod the target ideal makes a_i interior-invertible
    const Poly& ai = center.gens()[i];
    int power = 0;
    Poly witness(T.space.sig);
    Poly gp = Poly::constant(T.space.sig, 1);
    for (int p = 1; p <= 12 && power == 0; ++p) {
      gp = T.space.reduce(gp * T.divisor);
      if (auto w = cofactor_mod(gp, ai, T.space.ideal)) {
        power = p;
        witness = *w;
      }
    }
    if (power == 0)
      throw InteriorNotIso("center generator " + std::to_string(i) +
                           " never divides a divisor power");
    cert.inv_power.push_back(power);
    cert.inv_witness.push_back(witness);

    // interior inverse chart ring -> localized target
    std::vector<size_t> midx;
    for (size_t m = 0; m < k; ++m)
      if (m != i) midx.push_back(m);
    std::vector<Poly> psi;
    for (size_t v = 0; v < n; ++v) psi.push_back(Poly::var(L.ring.sig, v));
    Poly inv_ai = witness.rename(L.ring.sig, up) * u.pow(power);
    for (size_t t = 0; t < midx.size(); ++t)
      psi.push_back(center.gens()[midx[t]].rename(L.ring.sig, up) * inv_ai);
    RingMap psi_map;
    try {
      psi_map = RingMap(C, L.ring, std::move(psi));
    } catch (const RelationNotPreserved&) {
      throw InteriorNotIso("chart relations do not vanish on the interior");
    }

    // round trip on the target side
    for (size_t v = 0; v < n; ++v)
      if (!L.ring.reduce(psi_map.apply_raw(leg.pullback.images[v]) -
                         Poly::var(L.ring.sig, v))
               .is_zero())
        throw InteriorNotIso("inverse fails on a target variable");

    // round trip on the chart side, after inverting the pulled divisor
    Poly pulled = C.reduce(leg.pullback.apply_raw(T.divisor));
    Localization Lc = localize(C, pulled);
    std::vector<Poly> ext;
    for (size_t v = 0; v < n; ++v) ext.push_back(Poly::var(Lc.ring.sig, v));
    ext.push_back(Poly::var(Lc.ring.sig, Lc.inv_var));
    RingMap phi_ext(L.ring, Lc.ring, std::move(ext));
    for (size_t v = 0; v < C.sig->size(); ++v) {
      Poly back = phi_ext.apply_raw(psi_map.images[v]);
      Poly orig = Lc.map.apply_raw(Poly::var(C.sig, v));
      if (!Lc.ring.reduce(back - orig).is_zero())
        throw InteriorNotIso("inverse fails on a chart variable");
    }
  }
  return cert;
}

SigmaCertificate compose_certificates(SigmaCertificate first,
                                      SigmaCertificate second) {
  SigmaCertificate c;
  c.kind = SigmaCertificate::Kind::composite;
  c.parts.push_back(std::make_shared<SigmaCertificate>(std::move(first)));
  c.parts.push_back(std::make_shared<SigmaCertificate>(std::move(second)));
  return c;
}

void check_cover(const ModulusPair& target, const CoverFamily& fam) {
  require(target.charts.size() == 1, "covers need a single-chart target");
  require(!fam.legs.empty(), "empty covering family");
  const PairChart& T = target.charts[0];
  for (const auto& leg : fam.legs) {
    require(leg.minimal, "covering legs must be minimal");
    require(leg.source.charts.size() == 1, "covering legs need single charts");
    require(same_pair(leg.target, target), "cover leg target mismatch");
  }

  if (fam.kind == CoverKind::zar) {
    require(fam.opens.size() == fam.legs.size(),
            "one inverted element per Zariski leg");
    for (size_t l = 0; l < fam.legs.size(); ++l) {
      const Presentation& S = fam.legs[l].source.charts[0].space;
      Localization loc = localize(T.space, fam.opens[l]);
      if (S.sig->size() != loc.ring.sig->size()) throw NotPrincipalOpen(l);
      if (!S.ideal.equals(loc.ring.ideal.with_sig(S.sig)))
        throw NotPrincipalOpen(l);
      const RingMap& pb = fam.legs[l].legs[0].pullback;
      for (size_t v = 0; v < T.space.sig->size(); ++v)
        if (!S.reduce(pb.images[v] - Poly::var(S.sig, v)).is_zero())
          throw NotPrincipalOpen(l);
    }
    std::vector<Poly> gens = T.space.ideal.gens();
    for (const auto& f : fam.opens) gens.push_back(f);
    if (!Ideal(T.space.sig, std::move(gens)).is_unit())
      throw NotJointlySurjective();
  } else {
    require(fam.integrality.size() == fam.legs.size(),
            "one integrality table per finite leg");
    for (size_t l = 0; l < fam.legs.size(); ++l) {
      const Presentation& S = fam.legs[l].source.charts[0].space;
      const RingMap& pb = fam.legs[l].legs[0].pullback;
      const auto& table = fam.integrality[l];
      if (table.size() != S.sig->size())
        throw MissingIntegralityWitness("leg " + std::to_string(l) +
                                        " covers only part of the variables");
      for (size_t v = 0; v < table.size(); ++v) {
        const auto& coeffs = table[v];
        if (coeffs.empty())
          throw MissingIntegralityWitness("leg " + std::to_string(l) +
                                          " variable " + (*S.sig)[v]);
        Poly x = Poly::var(S.sig, v);
        Poly val = x.pow(int(coeffs.size()));
        for (size_t d = 0; d < coeffs.size(); ++d)
          val = val + pb.apply_raw(coeffs[d]) * x.pow(int(d));
        if (!S.reduce(val).is_zero())
          throw MissingIntegralityWitness(
              "monic dependence fails for " + (*S.sig)[v] + " on leg " +
              std::to_string(l));
      }
    }
    bool have = false;
    Ideal meet;
    for (const auto& leg : fam.legs) {
      Ideal k = kernel(leg.legs[0].pullback);
      meet = have ? meet.intersect(k) : k;
      have = true;
    }
    for (const auto& q : meet.groebner().basis)
      if (!T.space.ideal.radical_contains(q)) throw NotJointlySurjective();
  }

  if (!fam.refine.empty()) {
    require(fam.refine.size() == fam.legs.size(),
            "refinement list must match the family");
    for (size_t l = 0; l < fam.legs.size(); ++l)
      if (fam.refine[l]) check_cover(fam.legs[l].source, *fam.refine[l]);
  }
}

Decomposition decompose_interior(const ModulusPair& p, const Ideal& j1,
                                 const Ideal& j2) {
  require(p.charts.size() == 1, "decomposition needs a single-chart pair");
  const PairChart& C = p.charts[0];
  require(sig_eq(j1.sig(), C.space.sig) && sig_eq(j2.sig(), C.space.sig),
          "component ideals live off the chart");

  // disjointness: the components separate once the divisor is inverted
  Localization L = localize(C.space, C.divisor);
  std::vector<size_t> up(C.space.sig->size());
  for (size_t v = 0; v < up.size(); ++v) up[v] = v;
  std::vector<Poly> loc_gens = L.ring.ideal.gens();
  for (const auto& g : j1.gens()) loc_gens.push_back(g.rename(L.ring.sig, up));
  for (const auto& g : j2.gens()) loc_gens.push_back(g.rename(L.ring.sig, up));
  if (!Ideal(L.ring.sig, std::move(loc_gens)).is_unit())
    throw NotDisjointOnInterior();

  // covering: the union carries the whole interior
  Ideal sat = C.space.ideal.saturation(C.divisor);
  Ideal prod = j1.product(j2);
  for (const auto& q : prod.gens())
    if (!sat.contains(q)) throw NotCoveringInterior();

  Ideal k1 = C.space.ideal.sum(j1).saturation(C.divisor);
  Ideal k2 = C.space.ideal.sum(j2).saturation(C.divisor);
  ModulusPair part1 = make_pair({{Presentation(C.space.sig, k1), C.divisor}});
  ModulusPair part2 = make_pair({{Presentation(C.space.sig, k2), C.divisor}});

  ModulusPair cop = make_pair({part1.charts[0], part2.charts[0]});
  std::vector<std::pair<size_t, RingMap>> legs;
  for (const auto& part : {part1, part2}) {
    std::vector<Poly> ims;
    for (size_t v = 0; v < C.space.sig->size(); ++v)
      ims.push_back(Poly::var(part.charts[0].space.sig, v));
    legs.push_back({0, RingMap(C.space, part.charts[0].space, std::move(ims))});
  }
  AmbientMorphism from = check_admissible(cop, p, std::move(legs));
  require(from.minimal, "component inclusions must be minimal");

  SigmaCertificate cert;
  cert.kind = SigmaCertificate::Kind::component_closure;
  cert.components = {k1, k2};
  return Decomposition{std::move(part1), std::move(part2), std::move(from),
                       std::move(cert)};
}

}  // namespace modpairs
