#include "modpairs/msch.hh"

namespace modpairs {

namespace {

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

// reinterprets p over a signature extending p's own as a prefix
Poly lift_prefix(const Poly& p, const SigPtr& big) {
  std::vector<size_t> up(p.sig() ? p.sig()->size() : 0);
  for (size_t i = 0; i < up.size(); ++i) up[i] = i;
  return p.rename(big, up);
}

// source chart indices of s over each target chart, in leg order
std::vector<std::vector<size_t>> charts_over(const AmbientMorphism& s) {
  std::vector<std::vector<size_t>> over(s.target.charts.size());
  for (size_t j = 0; j < s.legs.size(); ++j)
    over[s.legs[j].target_chart].push_back(j);
  return over;
}

AmbientMorphism fold_stages(const std::vector<SigmaStage>& st,
                            const ModulusPair& fallback) {
  if (st.empty()) return identity_morphism(fallback);
  AmbientMorphism m = st[0].mor;
  for (size_t i = 1; i < st.size(); ++i) m = compose(m, st[i].mor);
  return m;
}

// Legs a into chart gl.i and b into chart gl.j agree on the source interior:
// both transition elements stay invertible there and the images match after
// transporting a's chart through the overlap.
bool agree_via(const ChartGlue& gl, const MorphismLeg& a, const MorphismLeg& b,
               const PairChart& src) {
  const Presentation& sp = src.space;
  if (sp.ideal.saturation(src.divisor).is_unit()) return true;
  Poly afi = a.pullback.apply(gl.f_i);
  Poly bfj = b.pullback.apply(gl.f_j);
  if (!sp.ideal.sum(Ideal(sp.sig, {afi})).saturation(src.divisor).is_unit())
    return false;
  if (!sp.ideal.sum(Ideal(sp.sig, {bfj})).saturation(src.divisor).is_unit())
    return false;

  Localization ls = localize(sp, sp.reduce(src.divisor * bfj));
  Poly u = Poly::var(ls.ring.sig, ls.inv_var);
  std::vector<Poly> ims(gl.overlap.ring.sig->size());
  for (size_t v = 0, w = 0; v < ims.size(); ++v) {
    if (v == gl.overlap.inv_var)
      ims[v] = ls.ring.reduce(u * ls.map.apply(src.divisor));
    else
      ims[v] = ls.map.apply(b.pullback.images[w++]);
  }
  RingMap ext(gl.overlap.ring, ls.ring, std::move(ims));
  for (size_t v = 0; v < a.pullback.images.size(); ++v) {
    Poly lhs = ls.map.apply(a.pullback.images[v]);
    Poly rhs = ext.apply(gl.to_overlap.images[v]);
    if (!ls.ring.reduce(lhs - rhs).is_zero()) return false;
  }
  return true;
}

bool equal_through_glue(const AmbientMorphism& f, const AmbientMorphism& g) {
  require(same_pair(f.source, g.source) && same_pair(f.target, g.target),
          "interior comparison needs equal endpoints");
  for (size_t c = 0; c < f.legs.size(); ++c) {
    const MorphismLeg& a = f.legs[c];
    const MorphismLeg& b = g.legs[c];
    const PairChart& src = f.source.charts[c];
    if (a.target_chart == b.target_chart) {
      Ideal sat = src.space.ideal.saturation(src.divisor);
      for (size_t v = 0; v < a.pullback.images.size(); ++v)
        if (!sat.contains(a.pullback.images[v] - b.pullback.images[v]))
          return false;
      continue;
    }
    bool ok = false, found = false;
    for (const auto& gl : f.target.glue) {
      if (gl.i == a.target_chart && gl.j == b.target_chart) {
        found = true;
        ok = agree_via(gl, a, b, src);
        break;
      }
      if (gl.i == b.target_chart && gl.j == a.target_chart) {
        found = true;
        ok = agree_via(gl, b, a, src);
        break;
      }
    }
    if (!found || !ok) return false;
  }
  return true;
}

}  // namespace

Roof make_roof(ModulusPair apex, std::vector<SigmaStage> sigma,
               AmbientMorphism ambient) {
  require(same_pair(ambient.source, apex), "ambient leg must leave the apex");
  const ModulusPair* cur = &apex;
  for (const auto& st : sigma) {
    require(same_pair(st.mor.source, *cur), "contraction stages must chain");
    require(st.mor.minimal, "contraction stages must be minimal");
    size_t covered = 0;
    for (const auto& grp : charts_over(st.mor))
      if (!grp.empty()) ++covered;
    require(st.certs.size() == covered, "one certificate per covered chart");
    for (const auto& c : st.certs)
      require(c.kind != SigmaCertificate::Kind::composite,
              "stage certificates must be elementary");
    cur = &st.mor.target;
  }
  return Roof{std::move(apex), std::move(sigma), std::move(ambient)};
}

Roof roof_from_ambient(AmbientMorphism f) {
  ModulusPair apex = f.source;
  return make_roof(std::move(apex), {}, std::move(f));
}

Roof identity_roof(const ModulusPair& p) {
  return roof_from_ambient(identity_morphism(p));
}

const ModulusPair& roof_source(const Roof& r) {
  return r.sigma.empty() ? r.apex : r.sigma.back().mor.target;
}

const ModulusPair& roof_target(const Roof& r) { return r.ambient.target; }

AmbientMorphism sigma_morphism(const Roof& r) {
  return fold_stages(r.sigma, r.apex);
}

SigmaCertificate sigma_certificate(const Roof& r) {
  require(!r.sigma.empty(), "an identity contraction carries no certificate");
  auto fold_one = [](const SigmaStage& st) {
    SigmaCertificate c = st.certs[0];
    for (size_t i = 1; i < st.certs.size(); ++i)
      c = compose_certificates(std::move(c), st.certs[i]);
    return c;
  };
  SigmaCertificate acc = fold_one(r.sigma[0]);
  for (size_t i = 1; i < r.sigma.size(); ++i)
    acc = compose_certificates(std::move(acc), fold_one(r.sigma[i]));
  return acc;
}

OreSquare ore_complete(const AmbientMorphism& s,
                       const std::vector<SigmaCertificate>& certs,
                       const AmbientMorphism& f) {
  require(same_pair(s.target, f.target), "completion needs a shared target");
  auto over = charts_over(s);
  std::vector<size_t> cert_of(over.size(), size_t(-1));
  {
    size_t next = 0;
    for (size_t g = 0; g < over.size(); ++g)
      if (!over[g].empty()) cert_of[g] = next++;
    require(next == certs.size(), "one certificate per covered chart");
  }

  std::vector<PairChart> charts;
  std::vector<ChartGlue> glue;
  std::vector<std::pair<size_t, RingMap>> t_legs, fp_legs;
  std::vector<SigmaCertificate> stage_certs;

  for (size_t c = 0; c < f.source.charts.size(); ++c) {
    const PairChart& yc = f.source.charts[c];
    require(!yc.space.ideal.is_unit(), "completion over an empty chart");
    const MorphismLeg& leg = f.legs[c];
    size_t g = leg.target_chart;
    require(cert_of[g] != size_t(-1), "the map lands outside the contraction");
    const SigmaCertificate& cert = certs[cert_of[g]];
    require(cert.kind != SigmaCertificate::Kind::composite,
            "composite certificates complete stage by stage");
    ModulusPair yc_pair = make_pair({yc});
    size_t base = charts.size();

    if (cert.kind == SigmaCertificate::Kind::blowup_in_divisor) {
      const size_t k = cert.center.gens().size();
      require(over[g].size() == k,
              "certificate and contraction charts disagree");
      std::vector<Poly> pk;
      for (const auto& a : cert.center.gens()) {
        Poly pa = leg.pullback.apply(a);
        require(!pa.is_zero(), "a blow-up center generator pulls back to zero");
        pk.push_back(std::move(pa));
      }
      BlowupChartSet b = blowup_charts(yc.space, pk);
      std::vector<Poly> divs;
      for (const auto& ch : b.charts)
        divs.push_back(ch.from_base.apply(yc.divisor));
      ModulusPair local = pair_from_blowup(b, std::move(divs));

      std::vector<std::pair<size_t, RingMap>> down;
      for (size_t i = 0; i < b.charts.size(); ++i)
        down.push_back({0, b.charts[i].from_base});
      AmbientMorphism tc = check_admissible(local, yc_pair, std::move(down));
      stage_certs.push_back(certify_sigma(tc, Ideal(yc.space.sig, pk)));

      const size_t n = yc.space.sig->size();
      for (size_t i = 0; i < b.charts.size(); ++i) {
        const Presentation& ring = local.charts[i].space;
        std::vector<Poly> ims;
        for (const auto& im : leg.pullback.images)
          ims.push_back(lift_prefix(im, ring.sig));
        for (size_t m = 0; m + 1 < k; ++m)
          ims.push_back(Poly::var(ring.sig, n + m));
        fp_legs.push_back(
            {over[g][i],
             RingMap(s.source.charts[over[g][i]].space, ring, std::move(ims))});
        t_legs.push_back({c, b.charts[i].from_base});
        charts.push_back(local.charts[i]);
      }
      for (ChartGlue gl : local.glue) {
        gl.i += base;
        gl.j += base;
        glue.push_back(std::move(gl));
      }
    } else {
      require(cert.components.size() == 2 && over[g].size() == 2,
              "certificate and contraction charts disagree");
      std::vector<Poly> p1, p2;
      for (const auto& q : cert.components[0].gens())
        p1.push_back(leg.pullback.apply(q));
      for (const auto& q : cert.components[1].gens())
        p2.push_back(leg.pullback.apply(q));
      Decomposition d =
          decompose_interior(yc_pair, Ideal(yc.space.sig, std::move(p1)),
                             Ideal(yc.space.sig, std::move(p2)));
      stage_certs.push_back(d.cert);
      const ModulusPair* parts[2] = {&d.part1, &d.part2};
      for (size_t m = 0; m < 2; ++m) {
        const Presentation& pr = parts[m]->charts[0].space;
        std::vector<Poly> down;
        for (size_t v = 0; v < yc.space.sig->size(); ++v)
          down.push_back(Poly::var(pr.sig, v));
        t_legs.push_back({c, RingMap(yc.space, pr, std::move(down))});
        std::vector<Poly> ims = leg.pullback.images;
        fp_legs.push_back(
            {over[g][m],
             RingMap(s.source.charts[over[g][m]].space, pr, std::move(ims))});
        charts.push_back(parts[m]->charts[0]);
      }
    }
  }

  ModulusPair yp = make_pair(std::move(charts), std::move(glue));
  AmbientMorphism t = check_admissible(yp, f.source, std::move(t_legs));
  require(t.minimal, "the contraction of a completion must be minimal");
  AmbientMorphism fp = check_admissible(yp, s.source, std::move(fp_legs));
  require(equal_on_interior(compose(fp, s), compose(t, f)),
          "the completed square breaks on the interior");

  OreSquare out;
  out.t.push_back(SigmaStage{std::move(t), std::move(stage_certs)});
  out.f_prime = std::move(fp);
  return out;
}

OreSquare ore_complete(const std::vector<SigmaStage>& sigma,
                       const AmbientMorphism& f) {
  OreSquare out;
  out.f_prime = f;
  for (size_t i = sigma.size(); i-- > 0;) {
    OreSquare one = ore_complete(sigma[i].mor, sigma[i].certs, out.f_prime);
    out.t.insert(out.t.begin(), one.t.begin(), one.t.end());
    out.f_prime = std::move(one.f_prime);
  }
  return out;
}

Roof compose_roofs(const Roof& r1, const Roof& r2) {
  require(same_pair(r1.ambient.target, roof_source(r2)),
          "roofs do not meet end to end");
  OreSquare q = ore_complete(r2.sigma, r1.ambient);
  ModulusPair apex = q.t.empty() ? r1.apex : q.t.front().mor.source;
  std::vector<SigmaStage> sigma = std::move(q.t);
  sigma.insert(sigma.end(), r1.sigma.begin(), r1.sigma.end());
  return make_roof(std::move(apex), std::move(sigma),
                   compose(q.f_prime, r2.ambient));
}

bool roofs_equal(const Roof& r1, const Roof& r2) {
  require(same_pair(roof_source(r1), roof_source(r2)) &&
              same_pair(roof_target(r1), roof_target(r2)),
          "roof comparison needs equal endpoints");
  OreSquare q = ore_complete(r2.sigma, sigma_morphism(r1));
  AmbientMorphism down = fold_stages(q.t, r1.apex);
  return equal_through_glue(compose(down, r1.ambient),
                            compose(q.f_prime, r2.ambient));
}

}  // namespace modpairs
