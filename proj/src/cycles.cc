#include "modpairs/cycles.hh"

#include <numeric>

namespace modpairs {
namespace {

// reinterprets p over a signature extending p's own as a prefix
Poly lift_prefix(const Poly& p, const SigPtr& big) {
  std::vector<size_t> up(p.sig() ? p.sig()->size() : 0);
  for (size_t i = 0; i < up.size(); ++i) up[i] = i;
  return p.rename(big, up);
}

bool same_ring(const Presentation& a, const Presentation& b) {
  return sig_eq(a.sig, b.sig) && a.ideal.equals(b.ideal);
}

// generator of the intersection <d1, d2> + I, found by mutual division
Poly cartier_generator(const DivisorOnRing& d1, const DivisorOnRing& d2) {
  if (divisor_geq(d1, d2)) return d2.gen;
  if (divisor_geq(d2, d1)) return d1.gen;
  throw IntersectionNotCartier();
}

Ideal principal_plus(const Presentation& r, std::vector<Poly> heads) {
  const std::vector<Poly>& ig = r.ideal.gens();
  heads.insert(heads.end(), ig.begin(), ig.end());
  return Ideal(r.sig, std::move(heads));
}

}  // namespace

DivisorOnRing divisor_on(const Presentation& ring, const Poly& gen) {
  Poly g = ring.reduce(gen);
  require(ring.ideal.is_nonzerodivisor(g),
          "divisor generator is a zerodivisor on the chart");
  return {ring, g};
}

std::optional<Poly> divisor_geq(const DivisorOnRing& d1,
                                const DivisorOnRing& d2) {
  require(same_ring(d1.ring, d2.ring), "divisors live on different rings");
  Ideal j = principal_plus(d1.ring, {d2.gen});
  auto w = j.membership_with_witness(d1.gen);
  if (!w) return std::nullopt;
  return d1.ring.reduce((*w)[0]);
}

RephrasingReport rephrasing_check(const DivisorOnRing& d1,
                                  const DivisorOnRing& d2) {
  RephrasingReport r;
  r.intersection_gen = cartier_generator(d1, d2);
  // the two sides of the equivalence, each computed from scratch
  Ideal both = principal_plus(d1.ring, {d1.gen, d2.gen});
  Ideal second = principal_plus(d1.ring, {d2.gen});
  r.intersection_is_second = both.equals(second);
  r.cofactor = divisor_geq(d1, d2);
  r.equivalent = (r.intersection_is_second == r.cofactor.has_value());
  return r;
}

DdhReport ddh_check(const DivisorOnRing& d1, const DivisorOnRing& d2,
                    const Poly& h) {
  Poly e = cartier_generator(d1, d2);
  const Presentation& r = d1.ring;
  Poly hr = r.reduce(h);
  Ideal lhs = principal_plus(r, {r.reduce(d1.gen * hr), r.reduce(d2.gen * hr)});
  Ideal rhs = principal_plus(r, {r.reduce(e * hr)});
  return {e, lhs.equals(rhs)};
}

ModulusWitness kmsy_witness(const CycleComponent& c, const ModulusPair& x,
                            const ModulusPair& y) {
  require(x.charts.size() == 1 && y.charts.size() == 1,
          "modulus check needs single-chart pairs");
  const PairChart& xc = x.charts[0];
  const PairChart& yc = y.charts[0];
  size_t nx = xc.space.sig->size(), ny = yc.space.sig->size();
  const Presentation& cl = c.normalization.nu.src;
  if (cl.sig->size() != nx + ny)
    throw WitnessInvalid("closure ring does not sit on the product variables");
  if (!sig_eq(c.on_interior.sig(), cl.sig))
    throw WitnessInvalid("component ideal and closure use different variables");
  RingMap nu;
  try {
    nu = RingMap(cl, c.normalization.ztilde, c.normalization.nu.images);
  } catch (const std::exception&) {
    throw WitnessInvalid("map does not respect the closure relations");
  }
  std::vector<size_t> into_x(nx), into_y(ny);
  std::iota(into_x.begin(), into_x.end(), 0);
  std::iota(into_y.begin(), into_y.end(), nx);
  Poly px = nu.apply(xc.divisor.rename(cl.sig, into_x));
  Poly py = nu.apply(yc.divisor.rename(cl.sig, into_y));
  DivisorOnRing up_x, up_y;
  try {
    up_x = divisor_on(c.normalization.ztilde, px);
    up_y = divisor_on(c.normalization.ztilde, py);
  } catch (const std::exception&) {
    throw WitnessInvalid("a pulled-back divisor is a zerodivisor upstairs");
  }
  return {px, py, divisor_geq(up_x, up_y)};
}

bool kmsy_modulus_check(const CycleComponent& c, const ModulusPair& x,
                        const ModulusPair& y) {
  return kmsy_witness(c, x, y).cofactor.has_value();
}

ModulusCorrespondence make_correspondence(ModulusPair source,
                                          ModulusPair target,
                                          std::vector<CycleComponent> comps) {
  require(source.charts.size() == 1 && target.charts.size() == 1,
          "correspondences are formed between single-chart pairs");
  const Presentation& src = source.charts[0].space;
  for (const CycleComponent& c : comps) {
    require(c.multiplicity != 0, "cycle component with zero multiplicity");
    if (!c.properness.asserted) {
      const Presentation& cl = c.properness.closure;
      require(same_ring(cl, c.normalization.nu.src),
              "properness certificate names a different closure");
      require(c.properness.integral_over_source.size() == cl.sig->size(),
              "one monic dependence per closure variable");
      for (size_t v = 0; v < cl.sig->size(); ++v) {
        const std::vector<Poly>& cs = c.properness.integral_over_source[v];
        require(!cs.empty(), "monic dependence of degree zero");
        Poly dep = Poly::var(cl.sig, v).pow(static_cast<int>(cs.size()));
        for (size_t k = 0; k < cs.size(); ++k) {
          require(sig_eq(cs[k].sig(), src.sig),
                  "dependence coefficients must live on the source chart");
          dep = dep + lift_prefix(cs[k], cl.sig) *
                          Poly::var(cl.sig, v).pow(static_cast<int>(k));
        }
        require(cl.reduce(dep).is_zero(),
                "monic dependence fails in the closure ring");
      }
    }
    require(kmsy_modulus_check(c, source, target),
            "component violates the modulus bound");
  }
  return {std::move(source), std::move(target), std::move(comps)};
}

ModulusCorrespondence graph_cycle(const AmbientMorphism& f) {
  require(f.admissible, "graph of a morphism without admissibility witnesses");
  require(f.source.charts.size() == 1 && f.target.charts.size() == 1,
          "graphs are taken over single-chart pairs");
  const Presentation& xr = f.source.charts[0].space;
  const Presentation& yr = f.target.charts[0].space;
  const MorphismLeg& leg = f.legs[0];
  size_t nx = xr.sig->size(), ny = yr.sig->size();

  Sig names = *xr.sig;
  for (size_t j = 0; j < ny; ++j)
    names.push_back(fresh_name(names, (*yr.sig)[j]));
  SigPtr big = make_sig(names);
  std::vector<size_t> into_y(ny);
  std::iota(into_y.begin(), into_y.end(), nx);

  std::vector<Poly> gens;
  const std::vector<Poly>& xg = xr.ideal.gens();
  for (const Poly& q : xg) gens.push_back(lift_prefix(q, big));
  const std::vector<Poly>& yg = yr.ideal.gens();
  for (const Poly& q : yg) gens.push_back(q.rename(big, into_y));
  for (size_t j = 0; j < ny; ++j)
    gens.push_back(Poly::var(big, nx + j) -
                   lift_prefix(leg.pullback.images[j], big));
  Ideal graph(big, std::move(gens));

  // closure of the graph's interior part inside the product
  Poly interior_gen = lift_prefix(f.source.charts[0].divisor, big) *
                      f.target.charts[0].divisor.rename(big, into_y);
  Ideal closed = graph.saturation(interior_gen);
  Presentation cl(big, closed);

  // the graph projects isomorphically onto the source chart, so the source
  // chart itself serves as the normalization
  std::vector<Poly> down;
  for (size_t i = 0; i < nx; ++i) down.push_back(Poly::var(xr.sig, i));
  for (size_t j = 0; j < ny; ++j) down.push_back(leg.pullback.images[j]);
  NormalizationData norm{xr, RingMap(cl, xr, std::move(down)), true};

  // every product variable satisfies a degree-one dependence over the source
  std::vector<std::vector<Poly>> dep;
  for (size_t i = 0; i < nx; ++i) dep.push_back({-Poly::var(xr.sig, i)});
  for (size_t j = 0; j < ny; ++j) dep.push_back({-leg.pullback.images[j]});
  PropernessData prop{cl, std::move(dep), false};

  CycleComponent comp{closed, 1, true, std::move(prop), std::move(norm)};
  return make_correspondence(f.source, f.target, {std::move(comp)});
}

unsigned long pushforward_degree(const Presentation& point,
                                 const Presentation& base_point) {
  auto da = point.ideal.vspace_dim();
  auto db = base_point.ideal.vspace_dim();
  if (!da || !db) return 0;
  require(*db != 0, "base point has an empty residue ring");
  require(*da % *db == 0, "residue dimensions do not divide");
  return *da / *db;
}

unsigned long flat_fiber_multiplicity(const RingMap& f, const Ideal& component,
                                      const Ideal& fiber) {
  const Presentation& total = f.tgt;
  require(sig_eq(fiber.sig(), total.sig) && sig_eq(component.sig(), total.sig),
          "fiber data must live on the family ring");
  Ideal whole = total.ideal.sum(fiber);
  if (!whole.vspace_dim()) throw FiberNotFinite();
  auto rd = whole.sum(component).vspace_dim();
  require(rd && *rd > 0, "component does not cut a point of the fiber");
  // climb powers of the component until the quotient dimension settles; the
  // settled value is the dimension of the local factor at the component
  Ideal mpow = component;
  unsigned long cur = *rd;
  for (;;) {
    mpow = mpow.product(component);
    auto next = whole.sum(mpow).vspace_dim();
    require(next.has_value(), "power quotient lost finiteness");
    if (*next == cur) break;
    cur = *next;
  }
  require(cur % *rd == 0, "local dimension not a multiple of residue degree");
  return cur / *rd;
}

}  // namespace modpairs
