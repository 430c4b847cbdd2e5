#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "modpairs/products.hh"

using namespace modpairs;

namespace {
Ideal mk(const SigPtr& s, std::initializer_list<const char*> gens) {
  std::vector<Poly> g;
  for (const char* t : gens) g.push_back(parse_poly(t, s));
  return Ideal(s, std::move(g));
}

Presentation pres(std::vector<std::string> vars,
                  std::initializer_list<const char*> gens) {
  SigPtr s = make_sig(std::move(vars));
  return Presentation(s, mk(s, gens));
}

ModulusPair simple_pair(Presentation p, const char* divisor) {
  Poly d = p.parse(divisor);
  return make_pair({{std::move(p), d}});
}

RingMap map1(const ModulusPair& src, const ModulusPair& tgt,
             std::initializer_list<const char*> images) {
  std::vector<Poly> ims;
  for (const char* t : images) ims.push_back(src.charts[0].space.parse(t));
  return RingMap(tgt.charts[0].space, src.charts[0].space, std::move(ims));
}

AmbientMorphism mor(const ModulusPair& src, const ModulusPair& tgt,
                    std::initializer_list<const char*> images) {
  return check_admissible(src, tgt, {{0, map1(src, tgt, images)}});
}

std::optional<Poly> cof(const Poly& f, const Poly& g, const Ideal& i) {
  std::vector<Poly> gens;
  gens.push_back(g);
  for (const auto& q : i.gens()) gens.push_back(q);
  auto w = Ideal(i.sig(), std::move(gens)).membership_with_witness(f);
  if (!w) return std::nullopt;
  return (*w)[0];
}

// the two pulled divisors and the exceptional cut out the same subscheme,
// and the residual cofactors are jointly unit
void check_chart_identities(const AmbientProductResult& pr) {
  REQUIRE(pr.chart_data.size() == pr.result.charts.size());
  for (size_t c = 0; c < pr.result.charts.size(); ++c) {
    const Ideal& i = pr.result.charts[c].space.ideal;
    const ProductChartData& d = pr.chart_data[c];
    CHECK(i.sum(Ideal(i.sig(), {d.d_t, d.d_x}))
              .equals(i.sum(Ideal(i.sig(), {d.e}))));
    auto w1 = cof(d.d_t, d.e, i);
    auto w2 = cof(d.d_x, d.e, i);
    REQUIRE(w1.has_value());
    REQUIRE(w2.has_value());
    CHECK(i.sum(Ideal(i.sig(), {*w1, *w2})).is_unit());
  }
}
}  // namespace

TEST_CASE("product of two marked lines blows up the corner") {
  auto s = simple_pair(pres({}, {}), "1");
  auto t = simple_pair(pres({"t"}, {}), "t");
  auto x = simple_pair(pres({"x"}, {}), "x");
  auto f = mor(x, s, {});
  auto g = mor(t, s, {});
  auto pr = ambient_product(f, g);

  CHECK(pr.blown);
  REQUIRE(pr.result.charts.size() == 2);
  const auto& c0 = pr.result.charts[0];
  const auto& c1 = pr.result.charts[1];
  CHECK(c0.space.ideal.equals(mk(c0.space.sig, {"t*z1 - x"})));
  CHECK(c1.space.ideal.equals(mk(c1.space.sig, {"x*z0 - t"})));
  CHECK(c0.space.reduce(c0.divisor - c0.space.parse("x")).is_zero());
  CHECK(c1.space.reduce(c1.divisor - c1.space.parse("t")).is_zero());
  check_chart_identities(pr);

  CHECK(pr.proj_t.admissible);
  CHECK(pr.proj_x.admissible);
  CHECK_FALSE(pr.proj_t.minimal);
  REQUIRE(pr.result.glue.size() == 1);
}

TEST_CASE("interior of a product is the product of the interiors") {
  auto s = simple_pair(pres({}, {}), "1");
  auto t = simple_pair(pres({"t"}, {}), "t");
  auto x = simple_pair(pres({"x"}, {}), "x");
  auto pr = ambient_product(mor(x, s, {}), mor(t, s, {}));
  Localization loc = interior(pr.result)[0];
  const Presentation& a = loc.ring;  // t, x, z1, inverse of x

  Presentation b = pres({"t", "it", "x", "ix"}, {"t*it - 1", "x*ix - 1"});
  RingMap fwd(b, a,
              {a.parse("t"), a.parse("z1*u"), a.parse("x"), a.parse("u")});
  RingMap bwd(a, b,
              {b.parse("t"), b.parse("x"), b.parse("x*it"), b.parse("ix")});
  for (size_t v = 0; v < a.sig->size(); ++v) {
    Poly round = fwd.apply(bwd.apply_raw(Poly::var(a.sig, v)));
    CHECK(a.reduce(round - Poly::var(a.sig, v)).is_zero());
  }
  for (size_t v = 0; v < b.sig->size(); ++v) {
    Poly round = bwd.apply(fwd.apply_raw(Poly::var(b.sig, v)));
    CHECK(b.reduce(round - Poly::var(b.sig, v)).is_zero());
  }
}

TEST_CASE("a minimal factor keeps the product on one chart") {
  auto s = simple_pair(pres({"s"}, {}), "s");
  auto x = simple_pair(pres({"s", "x"}, {}), "s");
  auto f = mor(x, s, {"s"});
  auto pr = ambient_product(f, identity_morphism(s));

  CHECK_FALSE(pr.blown);
  REQUIRE(pr.result.charts.size() == 1);
  CHECK(pr.total.ideal.equals(mk(pr.total.sig, {"s - s0"})));
  CHECK(pr.total.reduce(pr.result.charts[0].divisor - pr.total.parse("s"))
            .is_zero());
  CHECK(pr.proj_t.minimal);
  CHECK(pr.proj_x.minimal);
  check_chart_identities(pr);
}

TEST_CASE("a principal corner leaves the far chart a principal open") {
  auto s = simple_pair(pres({"s"}, {}), "s");
  auto t = simple_pair(pres({"s"}, {}), "s^2");
  auto x = simple_pair(pres({"s", "x"}, {}), "s^2*x");
  auto pr = ambient_product(mor(x, s, {"s"}), mor(t, s, {"s"}));

  CHECK(pr.blown);
  const auto& c0 = pr.result.charts[0];
  const auto& c1 = pr.result.charts[1];
  // the corner ideal is s^2 times (1, x): the first chart collapses back to
  // the base, the second is only a localization away from it
  CHECK(c0.space.ideal.contains(c0.space.parse("z1 - x")));
  CHECK_FALSE(c1.space.is_empty());
  CHECK(c1.space.ideal.contains(c1.space.parse("x*z0 - 1")));
  check_chart_identities(pr);
}

TEST_CASE("box product of marked lines keeps one chart") {
  auto s = simple_pair(pres({}, {}), "1");
  auto t = simple_pair(pres({"t"}, {}), "t");
  auto x = simple_pair(pres({"x"}, {}), "x");
  auto bx = box_product(mor(x, s, {}), mor(t, s, {}));

  REQUIRE(bx.result.charts.size() == 1);
  const auto& ch = bx.result.charts[0];
  CHECK(ch.space.reduce(ch.divisor - ch.space.parse("x*t")).is_zero());
  CHECK(bx.proj_t.admissible);
  CHECK(bx.proj_x.admissible);
  CHECK_FALSE(bx.proj_t.minimal);
}

TEST_CASE("boxing against the base changes nothing") {
  auto s = simple_pair(pres({"s"}, {}), "s");
  auto x = simple_pair(pres({"s", "x"}, {}), "s");
  auto bx = box_product(mor(x, s, {"s"}), identity_morphism(s));

  REQUIRE(bx.result.charts.size() == 1);
  CHECK(bx.total.ideal.equals(mk(bx.total.sig, {"s - s0"})));
  CHECK(bx.total.reduce(bx.result.charts[0].divisor - bx.total.parse("s"))
            .is_zero());
  CHECK(bx.proj_x.minimal);
}

TEST_CASE("box product over a marked base subtracts the base divisor") {
  auto s = simple_pair(pres({"s"}, {}), "s");
  auto t = simple_pair(pres({"s", "t"}, {}), "s*t");
  auto x = simple_pair(pres({"s", "x"}, {}), "s*x");
  auto bx = box_product(mor(x, s, {"s"}), mor(t, s, {"s"}));

  REQUIRE(bx.result.charts.size() == 1);
  const auto& ch = bx.result.charts[0];
  CHECK(ch.space.reduce(bx.cof - ch.space.parse("x")).is_zero());
  CHECK(ch.space.reduce(ch.divisor - ch.space.parse("s*t*x")).is_zero());
  CHECK(ch.space.reduce(ch.divisor * bx.f_s - bx.f_x * bx.f_t).is_zero());
  CHECK(bx.proj_t.admissible);
  CHECK(bx.proj_x.admissible);
}

TEST_CASE("the roof certifies the box against the blown-up product") {
  auto s = simple_pair(pres({}, {}), "1");
  auto t = simple_pair(pres({"t"}, {}), "t");
  auto x = simple_pair(pres({"x"}, {}), "x");
  auto rc = box_to_times(mor(x, s, {}), mor(t, s, {}));

  CHECK(rc.sigma_leg.minimal);
  CHECK(rc.cert.kind == SigmaCertificate::Kind::blowup_in_divisor);
  REQUIRE(rc.cert.inv_power.size() == 2);
  CHECK(rc.cert.inv_power[0] == 1);
  CHECK(rc.cert.inv_power[1] == 1);
  CHECK(rc.ambient_leg.admissible);
  CHECK_FALSE(rc.ambient_leg.minimal);
  REQUIRE(rc.sigma_leg.source.charts.size() == 2);
  // the roof carries the box divisor: x*t on the chart where t divides
  const auto& r0 = rc.sigma_leg.source.charts[0];
  CHECK(r0.space.reduce(r0.divisor - r0.space.parse("x*t")).is_zero());
}

TEST_CASE("with a minimal factor the box and the product agree on the nose") {
  auto s = simple_pair(pres({"s"}, {}), "s");
  auto x = simple_pair(pres({"s", "x"}, {}), "s");
  auto rc = box_to_times(mor(x, s, {"s"}), identity_morphism(s));

  CHECK(rc.sigma_leg.minimal);
  CHECK(rc.sigma_leg.source.charts.size() == 1);
  CHECK(rc.ambient_leg.minimal);
  CHECK(rc.cert.kind == SigmaCertificate::Kind::blowup_in_divisor);
}

TEST_CASE("a common divided image lifts straight to the product") {
  auto s = simple_pair(pres({}, {}), "1");
  auto t = simple_pair(pres({"t"}, {}), "t");
  auto x = simple_pair(pres({"x"}, {}), "x");
  auto f = mor(x, s, {});
  auto g = mor(t, s, {});
  auto pr = ambient_product(f, g);

  auto a = simple_pair(pres({"a"}, {}), "a");
  auto to_t = mor(a, t, {"a"});
  auto to_x = mor(a, x, {"a"});
  auto res = fibre_fill_in(pr, to_t, to_x, f, g);

  CHECK_FALSE(res.sigma.has_value());
  CHECK(res.lift.admissible);
  REQUIRE(res.lift.legs.size() == 1);
  CHECK(res.lift.legs[0].target_chart == 0);
  CHECK(equal_on_interior(compose(res.lift, pr.proj_t), to_t));
  CHECK(equal_on_interior(compose(res.lift, pr.proj_x), to_x));
}

TEST_CASE("the projections themselves fill in to the identity") {
  auto s = simple_pair(pres({}, {}), "1");
  auto t = simple_pair(pres({"t"}, {}), "t");
  auto x = simple_pair(pres({"x"}, {}), "x");
  auto f = mor(x, s, {});
  auto g = mor(t, s, {});
  auto pr = ambient_product(f, g);

  auto res = fibre_fill_in(pr, pr.proj_t, pr.proj_x, f, g);
  CHECK_FALSE(res.sigma.has_value());
  CHECK(res.lift.minimal);
  CHECK(res.lift.legs[0].target_chart == 0);
  CHECK(res.lift.legs[1].target_chart == 1);
  CHECK(equal_on_interior(res.lift, identity_morphism(pr.result)));
}

TEST_CASE("incomparable images force a certified blow-up of the source") {
  auto s = simple_pair(pres({}, {}), "1");
  auto t = simple_pair(pres({"t"}, {}), "t");
  auto x = simple_pair(pres({"x"}, {}), "x");
  auto f = mor(x, s, {});
  auto g = mor(t, s, {});
  auto pr = ambient_product(f, g);

  auto a = simple_pair(pres({"a"}, {}), "a*(a - 1)");
  auto to_t = mor(a, t, {"a"});
  auto to_x = mor(a, x, {"a - 1"});
  auto res = fibre_fill_in(pr, to_t, to_x, f, g);

  REQUIRE(res.sigma.has_value());
  REQUIRE(res.cert.has_value());
  CHECK(res.sigma->minimal);
  CHECK(res.cert->kind == SigmaCertificate::Kind::blowup_in_divisor);
  CHECK(res.cert->center.equals(
      mk(a.charts[0].space.sig, {"a", "a - 1"})));
  CHECK(res.lift.admissible);
  REQUIRE(res.lift.legs.size() == 2);
  CHECK(equal_on_interior(compose(res.lift, pr.proj_t),
                          compose(*res.sigma, to_t)));
}

TEST_CASE("legs that disagree on the interior are rejected") {
  auto s = simple_pair(pres({"s"}, {}), "s");
  auto t = simple_pair(pres({"t"}, {}), "t");
  auto x = simple_pair(pres({"x"}, {}), "x");
  auto f = mor(x, s, {"x"});
  auto g = mor(t, s, {"t"});
  auto pr = ambient_product(f, g);

  auto a = simple_pair(pres({"a"}, {}), "a");
  auto to_t = mor(a, t, {"a"});
  auto to_x = mor(a, x, {"2*a"});
  CHECK_THROWS_AS(fibre_fill_in(pr, to_t, to_x, f, g),
                  SquareDoesNotCommute);
}

TEST_CASE("coproduct concatenates charts and drops empty ones") {
  auto p = simple_pair(pres({"x"}, {}), "x");
  auto q = simple_pair(pres({"y"}, {}), "y");
  auto none = simple_pair(pres({"e"}, {"1"}), "1");

  auto two = coproduct(p, q);
  REQUIRE(two.charts.size() == 2);
  CHECK(interior(two).size() == 2);

  auto same = coproduct(p, none);
  REQUIRE(same.charts.size() == 1);
  CHECK(same.charts[0].space.ideal.equals(p.charts[0].space.ideal));

  // glue inside a factor survives with reindexed endpoints
  auto s = simple_pair(pres({}, {}), "1");
  auto t = simple_pair(pres({"t"}, {}), "t");
  auto x = simple_pair(pres({"x"}, {}), "x");
  auto pr = ambient_product(mor(x, s, {}), mor(t, s, {}));
  auto big = coproduct(pr.result, p);
  REQUIRE(big.charts.size() == 3);
  CHECK(big.glue.size() == pr.result.glue.size());
}

TEST_CASE("the two compactified line models agree chart by chart") {
  auto rep = compare_line_models(pres({"x"}, {}), parse_poly("x", make_sig({"x"})));
  CHECK(rep.verified);
  REQUIRE(rep.a_charts.size() == 3);
  REQUIRE(rep.c_charts.size() == 3);
  const Presentation& amb = rep.ambient;
  CHECK(amb.reduce(rep.a_charts[0].divisor - amb.parse("x")).is_zero());
  CHECK(amb.reduce(rep.a_charts[1].divisor - amb.parse("x")).is_zero());
  CHECK(amb.reduce(rep.a_charts[2].divisor - amb.parse("u")).is_zero());
}

TEST_CASE("the line models agree over a cuspidal base") {
  auto r = pres({"x", "y"}, {"y^2 - x^3"});
  auto rep = compare_line_models(r, r.parse("x"));
  CHECK(rep.verified);
}

TEST_CASE("a unit twist gives the untwisted line on both sides") {
  auto r = pres({"x"}, {});
  auto rep = compare_line_models(r, r.parse("1"));
  CHECK(rep.verified);
}

TEST_CASE("a zerodivisor twist is rejected") {
  auto r = pres({"x", "y"}, {"x*y"});
  CHECK_THROWS_AS(compare_line_models(r, r.parse("x")), DivisorIsZero);
}

TEST_CASE("boxing commutes with trivial-modulus fibre products") {
  auto s = simple_pair(pres({}, {}), "1");
  auto x = simple_pair(pres({"x"}, {}), "1");
  auto y = simple_pair(pres({"x", "y"}, {}), "1");
  auto z = simple_pair(pres({"x2"}, {}), "1");
  auto t = simple_pair(pres({"t"}, {}), "1");
  auto u = mor(y, x, {"x"});
  auto v = mor(z, x, {"x2"});
  auto f = mor(x, s, {});
  auto g = mor(t, s, {});

  auto rep = box_fibre_exchange(u, v, f, g);
  CHECK(rep.ok);
  CHECK_FALSE(rep.rhs.blown);
  REQUIRE(rep.charts.size() == 1);
  CHECK(rep.charts[0].holds);
}

TEST_CASE("boxing a product of identities reproduces the box") {
  auto s = simple_pair(pres({"s"}, {}), "s");
  auto x = simple_pair(pres({"s", "x"}, {}), "s");
  auto t = simple_pair(pres({"s", "t"}, {}), "s*t");
  auto f = mor(x, s, {"s"});
  auto g = mor(t, s, {"s"});
  auto u = identity_morphism(x);
  auto v = identity_morphism(x);

  auto rep = box_fibre_exchange(u, v, f, g);
  CHECK(rep.ok);
  CHECK(rep.comparison.minimal);
  REQUIRE(rep.charts.size() == 1);
}

TEST_CASE("boxing commutes with a genuine corner blow-up") {
  auto s = simple_pair(pres({"s"}, {}), "s");
  auto x = simple_pair(pres({"s"}, {}), "s");
  auto y = simple_pair(pres({"s", "y"}, {}), "s*y");
  auto z = simple_pair(pres({"s", "z"}, {}), "s*z");
  auto t = simple_pair(pres({"s", "t"}, {}), "s*t");
  auto u = mor(y, x, {"s"});
  auto v = mor(z, x, {"s"});
  auto f = mor(x, s, {"s"});
  auto g = mor(t, s, {"s"});

  auto rep = box_fibre_exchange(u, v, f, g);
  CHECK(rep.inner.blown);
  CHECK(rep.rhs.blown);
  REQUIRE(rep.charts.size() == 2);
  CHECK(rep.charts[0].holds);
  CHECK(rep.charts[1].holds);
  // the center is a genuine corner: the pulled divisors differ by the
  // blow-up coordinate on each chart
  const Ideal& i0 = rep.lhs[0].space.ideal;
  CHECK_FALSE(i0.sum(Ideal(i0.sig(), {rep.charts[0].d1h}))
                  .equals(i0.sum(Ideal(i0.sig(), {rep.charts[0].d2h}))));
  CHECK(rep.comparison.minimal);
  CHECK(rep.ok);
}

TEST_CASE("a shared coordinate collapses the exchange corner") {
  auto s = simple_pair(pres({"s"}, {}), "s");
  auto x = simple_pair(pres({"s", "x"}, {}), "s");
  auto y = simple_pair(pres({"s", "y"}, {}), "s*y");
  auto z = simple_pair(pres({"s", "z"}, {}), "s*z");
  auto t = simple_pair(pres({"s", "t"}, {}), "s*t");

  // both legs identify their marking with the shared coordinate, so the
  // fibre product glues them and the corner becomes principal
  auto rep = box_fibre_exchange(mor(y, x, {"s", "y"}), mor(z, x, {"s", "z"}),
                                mor(x, s, {"s"}), mor(t, s, {"s"}));
  CHECK(rep.inner.blown);
  CHECK(rep.rhs.blown);
  REQUIRE(rep.charts.size() == 2);
  CHECK(rep.ok);
}

TEST_CASE("chart-wise products of a certified blow-up certify again") {
  // blow up the marked plane at the corner of its divisor
  Presentation plane = pres({"a", "b"}, {});
  Poly corner_div = plane.parse("a*b");
  BlowupChartSet bt = blowup_charts(plane, {plane.parse("a"), plane.parse("b")});
  std::vector<Poly> divs;
  for (const auto& ch : bt.charts)
    divs.push_back(ch.ring.reduce(ch.from_base.apply_raw(corner_div)));
  ModulusPair tt = pair_from_blowup(bt, divs);
  ModulusPair tbase = simple_pair(plane, "a*b");

  auto s = simple_pair(pres({}, {}), "1");
  auto line = simple_pair(pres({"x"}, {}), "1");
  auto gx = mor(line, s, {});
  auto base_over_s = mor(tbase, s, {});
  auto p = ambient_product(base_over_s, gx);
  REQUIRE(p.result.charts.size() == 1);

  // product of each blow-up chart with the same minimal factor
  std::vector<PairChart> up_charts;
  std::vector<std::pair<size_t, RingMap>> legs;
  for (size_t j = 0; j < 2; ++j) {
    ModulusPair piece = make_pair({tt.charts[j]});
    auto pj = ambient_product(mor(piece, s, {}), gx);
    REQUIRE(pj.result.charts.size() == 1);
    up_charts.push_back(pj.result.charts[0]);
  }
  ModulusPair up = make_pair(up_charts);
  for (size_t j = 0; j < 2; ++j) {
    const Presentation& cj = up.charts[j].space;
    std::vector<Poly> ims;
    for (size_t v = 0; v < p.total.sig->size(); ++v)
      ims.push_back(Poly::var(cj.sig, v));
    legs.push_back({0, RingMap(p.result.charts[0].space, cj, std::move(ims))});
  }
  auto m = check_admissible(up, p.result, std::move(legs));
  CHECK(m.minimal);
  auto cert = certify_sigma(
      m, Ideal(p.total.sig, {p.total.parse("a"), p.total.parse("b")}));
  CHECK(cert.kind == SigmaCertificate::Kind::blowup_in_divisor);
  REQUIRE(cert.inv_power.size() == 2);
}
