#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "modpairs/modpair.hh"

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
}  // namespace

TEST_CASE("pairs verify the Cartier condition chart-wise") {
  CHECK_NOTHROW(simple_pair(pres({"x"}, {}), "x"));
  CHECK_NOTHROW(simple_pair(pres({"x", "y"}, {"x*y"}), "x + y"));
  try {
    simple_pair(pres({"x", "y"}, {"x*y"}), "x");
    FAIL("expected DivisorNotCartier");
  } catch (const DivisorNotCartier& e) {
    CHECK(e.chart == 0);
  }
  // unit divisor marks an empty modulus and is allowed
  CHECK_NOTHROW(simple_pair(pres({"x"}, {}), "1"));
}

TEST_CASE("interior localizes each chart at its divisor") {
  auto p = simple_pair(pres({"x"}, {}), "x");
  auto in = interior(p);
  REQUIRE(in.size() == 1);
  CHECK(in[0].ring.sig->size() == 2);

  auto cross = simple_pair(pres({"x", "y"}, {"x*y"}), "x + y");
  auto lc = interior(cross)[0];
  Poly e = Poly::var(lc.ring.sig, lc.inv_var) *
           lc.map.apply_raw(cross.charts[0].space.parse("x"));
  CHECK(lc.ring.reduce(e * e - e).is_zero());
}

TEST_CASE("admissibility tests divisor membership after pullback") {
  auto tgt = simple_pair(pres({"y"}, {}), "y");

  auto src_sq = simple_pair(pres({"x"}, {}), "x^2");
  auto f = check_admissible(src_sq, tgt, {{0, map1(src_sq, tgt, {"x^2"})}});
  CHECK(f.admissible);
  CHECK(f.minimal);
  CHECK(f.source.charts[0].space.reduce(f.legs[0].adm_witness -
                                        f.source.charts[0].space.parse("1"))
            .is_zero());

  auto src_lin = simple_pair(pres({"x"}, {}), "x");
  try {
    check_admissible(src_lin, tgt, {{0, map1(src_lin, tgt, {"x^2"})}});
    FAIL("expected NotAdmissible");
  } catch (const NotAdmissible& e) {
    CHECK(e.chart == 0);
  }

  auto g = check_admissible(src_sq, tgt, {{0, map1(src_sq, tgt, {"x"})}});
  CHECK(g.admissible);
  CHECK_FALSE(g.minimal);
}

TEST_CASE("admissibility is invariant under unit rescaling of divisors") {
  auto tgt = simple_pair(pres({"y"}, {}), "y");
  auto tgt3 = simple_pair(pres({"y"}, {}), "3*y");
  auto src = simple_pair(pres({"x"}, {}), "x^2");
  auto src2 = simple_pair(pres({"x"}, {}), "1/2*x^2");
  auto f = check_admissible(src, tgt, {{0, map1(src, tgt, {"x^2"})}});
  auto g = check_admissible(src2, tgt3, {{0, map1(src2, tgt3, {"x^2"})}});
  CHECK(f.minimal == g.minimal);
}

TEST_CASE("composition preserves admissibility and minimality") {
  auto X = simple_pair(pres({"x"}, {}), "x^4");
  auto Y = simple_pair(pres({"y"}, {}), "y^2");
  auto Z = simple_pair(pres({"z"}, {}), "z");
  auto f = check_admissible(X, Y, {{0, map1(X, Y, {"x^2"})}});
  auto g = check_admissible(Y, Z, {{0, map1(Y, Z, {"y^2"})}});
  REQUIRE(f.minimal);
  REQUIRE(g.minimal);
  auto h = compose(f, g);
  CHECK(h.admissible);
  CHECK(h.minimal);
  CHECK(h.legs[0].pullback.images[0] ==
        X.charts[0].space.parse("x^4"));

  // minimal after admissible-only stays admissible
  auto Y2 = simple_pair(pres({"y"}, {}), "y");
  auto k = check_admissible(X, Y2, {{0, map1(X, Y2, {"x^2"})}});
  CHECK_FALSE(k.minimal);
  auto kk = compose(k, check_admissible(Y2, Z, {{0, map1(Y2, Z, {"y"})}}));
  CHECK(kk.admissible);
}

TEST_CASE("interior equality ignores divisor-supported differences") {
  auto src = simple_pair(pres({"x", "y"}, {"x*y"}), "x + y");
  auto tgt = simple_pair(pres({"t"}, {}), "1");
  auto f = check_admissible(src, tgt, {{0, map1(src, tgt, {"x"})}});
  auto g = check_admissible(src, tgt, {{0, map1(src, tgt, {"x + y"})}});
  auto h = check_admissible(src, tgt, {{0, map1(src, tgt, {"x + x*y"})}});
  CHECK(equal_on_interior(f, f));
  CHECK_FALSE(equal_on_interior(f, g));
  CHECK(equal_on_interior(f, h));
  CHECK(equal_on_interior(h, f));
}

TEST_CASE("blow-up in the divisor earns a sigma certificate") {
  auto base = pres({"x", "t"}, {});
  auto P = simple_pair(base, "x*t");
  auto b = blowup_charts(base, {base.parse("x"), base.parse("t")});
  std::vector<Poly> divs;
  std::vector<std::pair<size_t, RingMap>> legs;
  for (const auto& ch : b.charts) {
    divs.push_back(ch.ring.reduce(ch.from_base.apply_raw(P.charts[0].divisor)));
    legs.push_back({0, ch.from_base});
  }
  auto cover = pair_from_blowup(b, divs);
  auto f = check_admissible(cover, P, std::move(legs));
  REQUIRE(f.minimal);
  auto cert = certify_sigma(f, mk(base.sig, {"x", "t"}));
  CHECK(cert.kind == SigmaCertificate::Kind::blowup_in_divisor);
  REQUIRE(cert.inv_power.size() == 2);
  CHECK(cert.inv_power[0] == 1);
  CHECK(cert.inv_power[1] == 1);
}

TEST_CASE("the identity is a trivial blow-up") {
  auto P = simple_pair(pres({"x"}, {}), "x");
  auto id = identity_morphism(P);
  REQUIRE(id.minimal);
  auto cert = certify_sigma(id, mk(P.charts[0].space.sig, {"x"}));
  CHECK(cert.inv_power[0] == 1);
}

TEST_CASE("a center outside the divisor is rejected") {
  auto base = pres({"x", "t"}, {});
  auto P = simple_pair(base, "t");
  auto b = blowup_charts(base, {base.parse("x")});
  auto cover = pair_from_blowup(
      b, {b.charts[0].ring.reduce(b.charts[0].from_base.apply_raw(P.charts[0].divisor))});
  auto f = check_admissible(cover, P, {{0, b.charts[0].from_base}});
  REQUIRE(f.minimal);
  CHECK_THROWS_AS(certify_sigma(f, mk(base.sig, {"x"})), CenterNotInDivisor);
}

TEST_CASE("certified morphisms re-verify as minimal") {
  auto base = pres({"x", "t"}, {});
  auto P = simple_pair(base, "x*t");
  auto b = blowup_charts(base, {base.parse("x"), base.parse("t")});
  std::vector<Poly> divs;
  std::vector<std::pair<size_t, RingMap>> legs;
  for (const auto& ch : b.charts) {
    divs.push_back(ch.ring.reduce(ch.from_base.apply_raw(P.charts[0].divisor)));
    legs.push_back({0, ch.from_base});
  }
  auto f = check_admissible(pair_from_blowup(b, divs), P, std::move(legs));
  CHECK(f.admissible);
  CHECK(f.minimal);
}

TEST_CASE("zariski covers need joint surjectivity") {
  auto T = simple_pair(pres({"x"}, {}), "1");
  auto mk_leg = [&](const char* f) {
    auto loc = localize(T.charts[0].space, T.charts[0].space.parse(f));
    auto U = make_pair({{loc.ring, Poly::constant(loc.ring.sig, 1)}});
    return check_admissible(U, T, {{0, loc.map}});
  };
  CoverFamily fam;
  fam.kind = CoverKind::zar;
  fam.legs = {mk_leg("x"), mk_leg("1 - x")};
  fam.opens = {T.charts[0].space.parse("x"), T.charts[0].space.parse("1 - x")};
  CHECK_NOTHROW(check_cover(T, fam));

  CoverFamily one;
  one.kind = CoverKind::zar;
  one.legs = {mk_leg("x")};
  one.opens = {T.charts[0].space.parse("x")};
  CHECK_THROWS_AS(check_cover(T, one), NotJointlySurjective);
}

TEST_CASE("zariski covers reject non-localization shapes") {
  auto T = simple_pair(pres({"x"}, {}), "1");
  auto odd = simple_pair(pres({"x", "u"}, {"u*x^2 - 1"}), "1");
  auto leg = check_admissible(
      odd, T, {{0, RingMap(T.charts[0].space, odd.charts[0].space,
                           {odd.charts[0].space.parse("x")})}});
  CoverFamily fam;
  fam.kind = CoverKind::zar;
  fam.legs = {leg};
  fam.opens = {T.charts[0].space.parse("x")};
  CHECK_THROWS_AS(check_cover(T, fam), NotPrincipalOpen);
}

TEST_CASE("finite covers verify monic dependencies and surjectivity") {
  auto T = simple_pair(pres({"y"}, {}), "1");
  auto U = simple_pair(pres({"x"}, {}), "1");
  auto leg = check_admissible(U, T, {{0, map1(U, T, {"x^2"})}});
  CoverFamily fam;
  fam.kind = CoverKind::fin;
  fam.legs = {leg};
  fam.integrality = {{{T.charts[0].space.parse("-y"),
                       T.charts[0].space.parse("0")}}};
  CHECK_NOTHROW(check_cover(T, fam));

  CoverFamily missing;
  missing.kind = CoverKind::fin;
  missing.legs = {leg};
  missing.integrality = {{{}}};
  CHECK_THROWS_AS(check_cover(T, missing), MissingIntegralityWitness);
}

TEST_CASE("a finite-then-zariski tree verifies as one cover") {
  auto T = simple_pair(pres({"y"}, {}), "1");
  auto U = simple_pair(pres({"x"}, {}), "1");
  auto leg = check_admissible(U, T, {{0, map1(U, T, {"x^2"})}});
  CoverFamily top;
  top.kind = CoverKind::fin;
  top.legs = {leg};
  top.integrality = {{{T.charts[0].space.parse("-y"),
                       T.charts[0].space.parse("0")}}};

  auto mk_leg = [&](const char* f) {
    auto loc = localize(U.charts[0].space, U.charts[0].space.parse(f));
    auto V = make_pair({{loc.ring, Poly::constant(loc.ring.sig, 1)}});
    return check_admissible(V, U, {{0, loc.map}});
  };
  auto sub = std::make_shared<CoverFamily>();
  sub->kind = CoverKind::zar;
  sub->legs = {mk_leg("x"), mk_leg("1 - x")};
  sub->opens = {U.charts[0].space.parse("x"),
                U.charts[0].space.parse("1 - x")};
  top.refine = {sub};
  CHECK_NOTHROW(check_cover(T, top));
}

TEST_CASE("interior decomposition splits the coordinate cross") {
  auto cross = pres({"x", "y"}, {"x*y"});
  auto P = simple_pair(cross, "x + y");
  auto d = decompose_interior(P, mk(cross.sig, {"x"}), mk(cross.sig, {"y"}));
  CHECK(d.part1.charts[0].space.ideal.equals(mk(cross.sig, {"x"})));
  CHECK(d.part1.charts[0].divisor == d.part1.charts[0].space.reduce(cross.parse("y")));
  CHECK(d.part2.charts[0].space.ideal.equals(mk(cross.sig, {"y"})));
  CHECK(d.part2.charts[0].divisor == d.part2.charts[0].space.reduce(cross.parse("x")));
  CHECK(d.from_coproduct.minimal);
  CHECK(d.cert.kind == SigmaCertificate::Kind::component_closure);
}

TEST_CASE("trivial decomposition returns the pair and an empty part") {
  auto line = pres({"x"}, {});
  auto P = simple_pair(line, "x");
  auto d = decompose_interior(P, mk(line.sig, {}), mk(line.sig, {"1"}));
  CHECK(d.part1.charts[0].space.ideal.equals(P.charts[0].space.ideal));
  CHECK(d.part2.charts[0].space.is_empty());
}

TEST_CASE("overlapping components are rejected") {
  auto line = pres({"x"}, {});
  auto P = simple_pair(line, "1");
  CHECK_THROWS_AS(
      decompose_interior(P, mk(line.sig, {"x"}), mk(line.sig, {"x"})),
      NotDisjointOnInterior);
}
