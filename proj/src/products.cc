#include "modpairs/products.hh"

namespace modpairs {

namespace {

// cofactor c with f = c*g mod I, when it exists
std::optional<Poly> cofactor_mod(const Poly& f, const Poly& g, const Ideal& i) {
  std::vector<Poly> gens;
  gens.push_back(g);
  for (const auto& q : i.gens()) gens.push_back(q);
  auto w = Ideal(i.sig(), std::move(gens)).membership_with_witness(f);
  if (!w) return std::nullopt;
  return (*w)[0];
}

// index of the one variable in a monic degree-one monomial
size_t var_index(const Poly& p) {
  require(p.term_count() == 1, "expected a bare variable");
  const auto& [e, c] = *p.terms().begin();
  require(c == Rat(1), "expected a bare variable");
  size_t idx = 0;
  int total = 0;
  for (size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) {
      idx = i;
      total += e[i];
    }
  require(total == 1, "expected a bare variable");
  return idx;
}

// reinterprets p over a signature extending p's own as a prefix
Poly lift_prefix(const Poly& p, const SigPtr& big) {
  std::vector<size_t> up(p.sig() ? p.sig()->size() : 0);
  for (size_t i = 0; i < up.size(); ++i) up[i] = i;
  return p.rename(big, up);
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

void check_factor(const AmbientMorphism& m, const char* role) {
  require(m.admissible, std::string(role) + " factor must be admissible");
  require(m.source.charts.size() == 1 && m.target.charts.size() == 1,
          std::string(role) +
              " factor must be single-chart; take products chart-pair-wise");
}

// shared construction: closure of the interior product inside the tensor
// ring, with the three divisor images reduced on it
struct ProductBase {
  Presentation total;
  RingMap co_t, co_x;
  Poly f_t, f_x, f_s;
};

ProductBase product_base(const AmbientMorphism& f, const AmbientMorphism& g) {
  check_factor(f, "right");
  check_factor(g, "left");
  require(same_pair(f.target, g.target), "factors must share the base pair");
  const PairChart& sc = f.target.charts[0];
  const PairChart& tc = g.source.charts[0];
  const PairChart& xc = f.source.charts[0];
  TensorProduct tp =
      tensor_over(sc.space, g.legs[0].pullback, f.legs[0].pullback);
  Poly ft_pre = tp.left_co.apply_raw(tc.divisor);
  Poly fx_pre = tp.right_co.apply_raw(xc.divisor);
  Presentation total(tp.ring.sig,
                     tp.ring.ideal.saturation(ft_pre * fx_pre));
  ProductBase out;
  out.f_t = total.reduce(ft_pre);
  out.f_x = total.reduce(fx_pre);
  out.f_s = total.reduce(tp.left_co.apply_raw(
      g.legs[0].pullback.apply_raw(sc.divisor)));
  out.co_t = RingMap(tc.space, total, tp.left_co.images);
  out.co_x = RingMap(xc.space, total, tp.right_co.images);
  out.total = std::move(total);
  require(out.total.ideal.is_nonzerodivisor(out.f_t) &&
              out.total.ideal.is_nonzerodivisor(out.f_x),
          "pulled divisors degenerate on the closure");
  return out;
}

}  // namespace

AmbientProductResult ambient_product(const AmbientMorphism& f,
                                     const AmbientMorphism& g) {
  ProductBase pb = product_base(f, g);
  AmbientProductResult out;
  out.total = pb.total;
  out.co_t = pb.co_t;
  out.co_x = pb.co_x;
  out.f_t = pb.f_t;
  out.f_x = pb.f_x;
  out.f_s = pb.f_s;
  if (g.minimal || out.total.is_empty()) {
    out.blown = false;
    out.result = make_pair({{out.total, out.f_x}});
    out.chart_data = {{out.f_t, out.f_x, out.f_t, out.f_x}};
    out.proj_t =
        check_admissible(out.result, g.source, {{0, out.co_t}});
    out.proj_x =
        check_admissible(out.result, f.source, {{0, out.co_x}});
    return out;
  }
  BlowupChartSet b = blowup_charts(out.total, {out.f_t, out.f_x});
  std::vector<Poly> divisors(2);
  // where f_t generates the exceptional, the divisor is the image of f_x,
  // and symmetrically
  divisors[0] = b.charts[0].ring.reduce(b.charts[0].from_base.apply_raw(out.f_x));
  divisors[1] = b.charts[1].ring.reduce(b.charts[1].from_base.apply_raw(out.f_t));
  out.blown = true;
  out.result = pair_from_blowup(b, divisors);
  for (size_t c = 0; c < 2; ++c) {
    const BlowupChart& ch = b.charts[c];
    out.chart_data.push_back({ch.ring.reduce(ch.from_base.apply_raw(out.f_t)),
                              ch.ring.reduce(ch.from_base.apply_raw(out.f_x)),
                              ch.ring.reduce(ch.exceptional), divisors[c]});
  }
  std::vector<std::pair<size_t, RingMap>> legs_t, legs_x;
  for (size_t c = 0; c < 2; ++c) {
    legs_t.push_back({0, out.co_t.then(b.charts[c].from_base)});
    legs_x.push_back({0, out.co_x.then(b.charts[c].from_base)});
  }
  out.proj_t = check_admissible(out.result, g.source, std::move(legs_t));
  out.proj_x = check_admissible(out.result, f.source, std::move(legs_x));
  out.blowup = std::move(b);
  return out;
}

BoxProductResult box_product(const AmbientMorphism& f,
                             const AmbientMorphism& g) {
  ProductBase pb = product_base(f, g);
  BoxProductResult out;
  out.total = pb.total;
  out.co_t = pb.co_t;
  out.co_x = pb.co_x;
  out.f_t = pb.f_t;
  out.f_x = pb.f_x;
  out.f_s = pb.f_s;
  auto h = cofactor_mod(out.f_x, out.f_s, out.total.ideal);
  require(h.has_value(), "no cofactor against the base divisor on the closure");
  out.cof = out.total.reduce(*h);
  Poly divisor = out.total.reduce(out.cof * out.f_t);
  require(out.total.reduce(divisor * out.f_s - out.f_x * out.f_t).is_zero(),
          "box divisor fails its defining relation");
  out.result = make_pair({{out.total, divisor}});
  out.proj_t = check_admissible(out.result, g.source, {{0, out.co_t}});
  out.proj_x = check_admissible(out.result, f.source, {{0, out.co_x}});
  return out;
}

RoofComparison box_to_times(const AmbientMorphism& f,
                            const AmbientMorphism& g) {
  AmbientProductResult amb = ambient_product(f, g);
  BoxProductResult box = box_product(f, g);
  RoofComparison out;
  if (!amb.blown) {
    out.sigma_leg = identity_morphism(box.result);
    out.cert = certify_sigma(out.sigma_leg,
                             Ideal(box.total.sig, {box.f_t}));
    RingMap ident = RingMap::identity(box.total);
    ident = RingMap(amb.result.charts[0].space, box.total, ident.images);
    out.ambient_leg =
        check_admissible(box.result, amb.result, {{0, std::move(ident)}});
    return out;
  }
  const BlowupChartSet& b = *amb.blowup;
  Poly box_div = box.result.charts[0].divisor;
  std::vector<Poly> divisors;
  for (const BlowupChart& ch : b.charts)
    divisors.push_back(ch.ring.reduce(ch.from_base.apply_raw(box_div)));
  ModulusPair roof = pair_from_blowup(b, std::move(divisors));
  std::vector<std::pair<size_t, RingMap>> legs;
  for (const BlowupChart& ch : b.charts)
    legs.push_back({0, RingMap(box.total, ch.ring, ch.from_base.images)});
  out.sigma_leg = check_admissible(roof, box.result, std::move(legs));
  require(out.sigma_leg.minimal, "roof must pull the box divisor exactly");
  out.cert = certify_sigma(out.sigma_leg,
                           Ideal(box.total.sig, {amb.f_t, amb.f_x}));
  std::vector<std::pair<size_t, RingMap>> up;
  for (size_t c = 0; c < roof.charts.size(); ++c)
    up.push_back({c, RingMap::identity(roof.charts[c].space)});
  for (auto& [tc, m] : up)
    m = RingMap(amb.result.charts[tc].space, roof.charts[tc].space, m.images);
  out.ambient_leg = check_admissible(roof, amb.result, std::move(up));
  return out;
}

FillInResult fibre_fill_in(const AmbientProductResult& prod,
                           const AmbientMorphism& to_t,
                           const AmbientMorphism& to_x,
                           const AmbientMorphism& f,
                           const AmbientMorphism& g) {
  require(to_t.admissible && to_x.admissible, "legs must be admissible");
  require(same_pair(to_t.source, to_x.source),
          "legs must share their source pair");
  if (!equal_on_interior(compose(to_t, g), compose(to_x, f)))
    throw SquareDoesNotCommute();
  const ModulusPair& a = to_t.source;
  size_t n_t = to_t.legs[0].pullback.src.sig->size();
  size_t n_x = to_x.legs[0].pullback.src.sig->size();

  // per source chart: the map of the closure into the chart, plus the two
  // pulled center generators
  std::vector<RingMap> c0(a.charts.size());
  std::vector<Poly> p1(a.charts.size()), p2(a.charts.size());
  for (size_t c = 0; c < a.charts.size(); ++c) {
    require(to_t.legs[c].target_chart == 0 && to_x.legs[c].target_chart == 0,
            "product factors are single-chart");
    const Presentation& ac = a.charts[c].space;
    std::vector<Poly> img(prod.total.sig->size());
    for (size_t i = 0; i < n_t; ++i)
      img[var_index(prod.co_t.images[i])] = to_t.legs[c].pullback.images[i];
    for (size_t i = 0; i < n_x; ++i)
      img[var_index(prod.co_x.images[i])] = to_x.legs[c].pullback.images[i];
    c0[c] = RingMap(prod.total, ac, std::move(img));
    p1[c] = ac.reduce(c0[c].apply_raw(prod.f_t));
    p2[c] = ac.reduce(c0[c].apply_raw(prod.f_x));
  }

  std::vector<std::pair<size_t, RingMap>> legs;
  bool all_direct = true;
  for (size_t c = 0; c < a.charts.size(); ++c) {
    const Presentation& ac = a.charts[c].space;
    if (!prod.blown) {
      legs.push_back({0, c0[c]});
      continue;
    }
    // a direct lift lands in the chart whose exceptional generator divides
    // the other pulled one
    if (auto w = cofactor_mod(p2[c], p1[c], ac.ideal)) {
      std::vector<Poly> img = c0[c].images;
      img.push_back(ac.reduce(*w));
      legs.push_back({0, RingMap(prod.result.charts[0].space, ac, img)});
    } else if (auto w2 = cofactor_mod(p1[c], p2[c], ac.ideal)) {
      std::vector<Poly> img = c0[c].images;
      img.push_back(ac.reduce(*w2));
      legs.push_back({1, RingMap(prod.result.charts[1].space, ac, img)});
    } else {
      all_direct = false;
      break;
    }
  }

  FillInResult out;
  if (all_direct) {
    out.lift = check_admissible(a, prod.result, std::move(legs));
    require(equal_on_interior(compose(out.lift, prod.proj_t), to_t) &&
                equal_on_interior(compose(out.lift, prod.proj_x), to_x),
            "fill-in disagrees with its defining legs");
    return out;
  }

  require(a.charts.size() == 1,
          "blow-up fill-in needs a single-chart source");
  const Presentation& ac = a.charts[0].space;
  BlowupChartSet ba = blowup_charts(ac, {p1[0], p2[0]});
  std::vector<Poly> divisors;
  for (const BlowupChart& ch : ba.charts)
    divisors.push_back(ch.ring.reduce(ch.from_base.apply_raw(a.charts[0].divisor)));
  ModulusPair ap = pair_from_blowup(ba, std::move(divisors));
  std::vector<std::pair<size_t, RingMap>> down;
  for (const BlowupChart& ch : ba.charts)
    down.push_back({0, RingMap(ac, ch.ring, ch.from_base.images)});
  AmbientMorphism sigma = check_admissible(ap, a, std::move(down));
  require(sigma.minimal, "source blow-up must pull the divisor exactly");
  SigmaCertificate cert =
      certify_sigma(sigma, Ideal(ac.sig, {p1[0], p2[0]}));
  std::vector<std::pair<size_t, RingMap>> lifted;
  for (size_t c = 0; c < ba.charts.size(); ++c) {
    const Presentation& cr = ba.charts[c].ring;
    std::vector<Poly> img;
    for (const Poly& q : c0[0].images) img.push_back(lift_prefix(q, cr.sig));
    img.push_back(Poly::var(cr.sig, cr.sig->size() - 1));
    lifted.push_back({c, RingMap(prod.result.charts[c].space, cr, img)});
  }
  out.lift = check_admissible(ap, prod.result, std::move(lifted));
  require(equal_on_interior(compose(out.lift, prod.proj_t),
                            compose(sigma, to_t)) &&
              equal_on_interior(compose(out.lift, prod.proj_x),
                                compose(sigma, to_x)),
          "fill-in disagrees with its defining legs");
  out.sigma = std::move(sigma);
  out.cert = std::move(cert);
  return out;
}

ModulusPair coproduct(const ModulusPair& p, const ModulusPair& q) {
  require(!p.charts.empty() && !q.charts.empty(),
          "coproduct factors must be built pairs");
  std::vector<PairChart> charts;
  std::vector<ChartGlue> glue;
  constexpr size_t dropped = static_cast<size_t>(-1);
  auto take = [&](const ModulusPair& m) {
    std::vector<size_t> remap(m.charts.size(), dropped);
    for (size_t c = 0; c < m.charts.size(); ++c) {
      if (m.charts[c].space.is_empty()) continue;
      remap[c] = charts.size();
      charts.push_back(m.charts[c]);
    }
    for (const auto& gl : m.glue) {
      if (remap[gl.i] == dropped || remap[gl.j] == dropped) continue;
      ChartGlue g2 = gl;
      g2.i = remap[gl.i];
      g2.j = remap[gl.j];
      glue.push_back(std::move(g2));
    }
  };
  take(p);
  take(q);
  if (charts.empty()) charts.push_back(p.charts[0]);
  return make_pair(std::move(charts), std::move(glue));
}

namespace {

// membership of g in the subalgebra generated by hs inside amb: tag each
// generator, then eliminate the ambient variables
struct SubalgebraTester {
  Presentation amb;
  size_t n;
  Ideal graph;
  SigPtr big;

  SubalgebraTester(const Presentation& a, const std::vector<Poly>& hs)
      : amb(a), n(a.sig->size()) {
    Sig names = *amb.sig;
    std::vector<std::string> tags;
    for (size_t j = 0; j < hs.size(); ++j) {
      std::string t = fresh_name(names, "y");
      names.push_back(t);
      tags.push_back(t);
    }
    big = make_sig(names);
    std::vector<Poly> gens;
    for (const Poly& q : amb.ideal.gens()) gens.push_back(lift_prefix(q, big));
    for (size_t j = 0; j < hs.size(); ++j)
      gens.push_back(Poly::var(big, n + j) - lift_prefix(hs[j], big));
    graph = Ideal(big, std::move(gens));
  }

  bool contains(const Poly& g) const {
    Poly nf = graph.normal_form(lift_prefix(g, big),
                                MonomialOrder::Block(n));
    for (const auto& [e, c] : nf.terms())
      for (size_t i = 0; i < n; ++i)
        if (e[i] != 0) return false;
    return true;
  }
};

}  // namespace

LineModelReport compare_line_models(const Presentation& r, const Poly& f) {
  Poly fr = r.reduce(f);
  if (!r.ideal.is_nonzerodivisor(fr)) throw DivisorIsZero();
  Sig names = *r.sig;
  size_t n = names.size();
  std::string tn = fresh_name(names, "t");
  names.push_back(tn);
  std::string un = fresh_name(names, "u");
  names.push_back(un);
  std::string wn = fresh_name(names, "w");
  names.push_back(wn);
  SigPtr big = make_sig(names);
  Poly t = Poly::var(big, n), u = Poly::var(big, n + 1),
       w = Poly::var(big, n + 2);
  Poly fb = lift_prefix(fr, big);
  std::vector<Poly> gens;
  for (const Poly& q : r.ideal.gens()) gens.push_back(lift_prefix(q, big));
  gens.push_back(t * u - Poly::constant(big, 1));
  gens.push_back(fb * w - Poly::constant(big, 1));
  LineModelReport out;
  out.ambient = Presentation(big, Ideal(big, std::move(gens)));

  std::vector<Poly> base;
  for (size_t i = 0; i < n; ++i) base.push_back(Poly::var(big, i));
  auto with = [&](std::initializer_list<Poly> extra) {
    std::vector<Poly> v = base;
    for (const Poly& q : extra) v.push_back(q);
    return v;
  };
  out.a_charts = {{with({t}), fb},
                  {with({u, t * fb}), fb},
                  {with({u, w * u}), u}};
  out.c_charts = {{with({fb * t, t}), fb},
                  {with({fb * t, u}), fb},
                  {with({w * u}), u}};

  out.verified = true;
  for (size_t c = 0; c < 3 && out.verified; ++c) {
    const SubringChart& ac = out.a_charts[c];
    const SubringChart& cc = out.c_charts[c];
    if (!out.ambient.reduce(ac.divisor - cc.divisor).is_zero()) {
      out.verified = false;
      out.detail = "divisors differ on chart " + std::to_string(c);
      break;
    }
    SubalgebraTester in_c(out.ambient, cc.gens);
    SubalgebraTester in_a(out.ambient, ac.gens);
    for (const Poly& q : ac.gens)
      if (!in_c.contains(q)) {
        out.verified = false;
        out.detail = "first model escapes the second on chart " +
                     std::to_string(c);
      }
    for (const Poly& q : cc.gens)
      if (out.verified && !in_a.contains(q)) {
        out.verified = false;
        out.detail = "second model escapes the first on chart " +
                     std::to_string(c);
      }
  }
  return out;
}

ExchangeReport box_fibre_exchange(const AmbientMorphism& u,
                                  const AmbientMorphism& v,
                                  const AmbientMorphism& f,
                                  const AmbientMorphism& g) {
  check_factor(u, "left");
  check_factor(v, "right");
  check_factor(f, "base");
  check_factor(g, "box");
  require(same_pair(u.target, f.source) && same_pair(v.target, f.source),
          "legs must land in the base of f");
  require(same_pair(f.target, g.target), "f and g must share their target");

  ExchangeReport out;
  out.inner = ambient_product(v, u);
  AmbientMorphism y_over_s = compose(u, f);
  AmbientMorphism z_over_s = compose(v, f);
  BoxProductResult by = box_product(y_over_s, g);
  BoxProductResult bz = box_product(z_over_s, g);
  BoxProductResult bx = box_product(f, g);

  // the boxed morphisms covering u and v
  auto boxed = [&](const BoxProductResult& top,
                   const AmbientMorphism& leg) {
    std::vector<Poly> img(bx.total.sig->size());
    size_t nt = g.source.charts[0].space.sig->size();
    size_t nx = f.source.charts[0].space.sig->size();
    for (size_t i = 0; i < nt; ++i)
      img[var_index(bx.co_t.images[i])] = top.co_t.images[i];
    for (size_t i = 0; i < nx; ++i)
      img[var_index(bx.co_x.images[i])] =
          top.co_x.apply(leg.legs[0].pullback.images[i]);
    return check_admissible(top.result, bx.result,
                            {{0, RingMap(bx.total, top.total, img)}});
  };
  AmbientMorphism mu = boxed(by, u);
  AmbientMorphism mv = boxed(bz, v);
  out.rhs = ambient_product(mv, mu);
  require(out.inner.result.charts.size() == out.rhs.result.charts.size(),
          "product charts fail to correspond");

  const PairChart& sc = f.target.charts[0];
  const PairChart& tc = g.source.charts[0];
  size_t nt = tc.space.sig->size();
  size_t ny = u.source.charts[0].space.sig->size();
  size_t nz = v.source.charts[0].space.sig->size();
  std::vector<PairChart> lhs;
  std::vector<std::pair<size_t, RingMap>> legs;
  for (size_t c = 0; c < out.inner.result.charts.size(); ++c) {
    const PairChart& wc = out.inner.result.charts[c];
    RingMap s_to_w =
        y_over_s.legs[0].pullback.then(out.inner.proj_t.legs[c].pullback);
    TensorProduct tp = tensor_over(sc.space, g.legs[0].pullback, s_to_w);
    Poly tau = tp.left_co.apply_raw(tc.divisor);
    Poly dw = tp.right_co.apply_raw(wc.divisor);
    Presentation li(tp.ring.sig, tp.ring.ideal.saturation(tau * dw));
    tau = li.reduce(tau);
    dw = li.reduce(dw);
    Poly sbar = li.reduce(tp.left_co.apply_raw(
        g.legs[0].pullback.apply_raw(sc.divisor)));
    auto h = cofactor_mod(tau, sbar, li.ideal);
    require(h.has_value(), "no base cofactor on the boxed chart");
    Poly hh = li.reduce(*h);
    lhs.push_back({li, li.reduce(hh * dw)});

    ExchangeChart ec;
    Poly d1 = li.reduce(tp.right_co.apply_raw(out.inner.chart_data[c].d_t));
    Poly d2 = li.reduce(tp.right_co.apply_raw(out.inner.chart_data[c].d_x));
    Poly e = li.reduce(tp.right_co.apply_raw(out.inner.chart_data[c].e));
    ec.d1h = li.reduce(d1 * hh);
    ec.d2h = li.reduce(d2 * hh);
    ec.eh = li.reduce(e * hh);
    ec.holds = li.ideal.sum(Ideal(li.sig, {ec.d1h, ec.d2h}))
                   .equals(li.ideal.sum(Ideal(li.sig, {ec.eh})));
    out.charts.push_back(ec);

    // comparison pullback: boxed-product chart ring into li
    std::vector<Poly> phi_y(by.total.sig->size());
    for (size_t i = 0; i < nt; ++i)
      phi_y[var_index(by.co_t.images[i])] = tp.left_co.images[i];
    for (size_t i = 0; i < ny; ++i)
      phi_y[var_index(by.co_x.images[i])] = tp.right_co.apply_raw(
          out.inner.proj_t.legs[c].pullback.images[i]);
    std::vector<Poly> phi_z(bz.total.sig->size());
    for (size_t i = 0; i < nt; ++i)
      phi_z[var_index(bz.co_t.images[i])] = tp.left_co.images[i];
    for (size_t i = 0; i < nz; ++i)
      phi_z[var_index(bz.co_x.images[i])] = tp.right_co.apply_raw(
          out.inner.proj_x.legs[c].pullback.images[i]);
    const Presentation& rc = out.rhs.result.charts[c].space;
    std::vector<Poly> img(rc.sig->size());
    for (size_t m = 0; m < by.total.sig->size(); ++m)
      img[var_index(out.rhs.co_t.images[m])] = phi_y[m];
    for (size_t m = 0; m < bz.total.sig->size(); ++m)
      img[var_index(out.rhs.co_x.images[m])] = phi_z[m];
    if (out.rhs.blown) {
      size_t wz = out.inner.total.sig->size();
      img[rc.sig->size() - 1] = tp.right_co.images[wz];
    }
    legs.push_back({c, RingMap(rc, li, std::move(img))});
  }
  ModulusPair lhs_pair = make_pair(lhs);
  out.lhs = std::move(lhs);
  out.comparison = check_admissible(lhs_pair, out.rhs.result, std::move(legs));
  bool all = out.comparison.minimal;
  for (const ExchangeChart& ec : out.charts) all = all && ec.holds;
  out.ok = all;
  return out;
}

}  // namespace modpairs
