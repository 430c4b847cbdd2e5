#include "modpairs/affine.hh"

namespace modpairs {

Presentation::Presentation(SigPtr s, Ideal i) : sig(std::move(s)), ideal(std::move(i)) {
  require(sig_eq(ideal.sig(), sig), "presentation ideal signature mismatch");
}

Presentation Presentation::free_ring(std::vector<std::string> vars) {
  SigPtr s = make_sig(std::move(vars));
  return Presentation(s, Ideal(s, {}));
}

std::string Presentation::str() const {
  std::string out = "Q[";
  for (size_t i = 0; i < sig->size(); ++i) {
    if (i) out += ",";
    out += (*sig)[i];
  }
  out += "]";
  if (!ideal.gens().empty()) {
    out += "/<";
    bool first = true;
    for (const auto& g : ideal.gens()) {
      if (!first) out += ", ";
      first = false;
      out += g.str();
    }
    out += ">";
  }
  return out;
}

RelationNotPreserved::RelationNotPreserved(size_t i)
    : std::runtime_error("relation " + std::to_string(i) +
                         " not preserved by ring map"),
      index(i) {}

RingMap::RingMap(Presentation src_, Presentation tgt_, std::vector<Poly> images_)
    : src(std::move(src_)), tgt(std::move(tgt_)), images(std::move(images_)) {
  require(images.size() == src.sig->size(), "ring map arity mismatch");
  for (const auto& im : images)
    require(sig_eq(im.sig(), tgt.sig), "ring map image signature mismatch");
  const auto& gens = src.ideal.gens();
  for (size_t i = 0; i < gens.size(); ++i)
    if (!tgt.reduce(apply_raw(gens[i])).is_zero()) throw RelationNotPreserved(i);
}

Poly RingMap::apply_raw(const Poly& f) const {
  Poly out(tgt.sig);
  for (const auto& [e, c] : f.terms()) {
    Poly t = Poly::constant(tgt.sig, c);
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t = t * images[i].pow(e[i]);
    out = out + t;
  }
  return out;
}

Poly RingMap::apply(const Poly& f) const { return tgt.reduce(apply_raw(f)); }

RingMap RingMap::then(const RingMap& g) const {
  require(sig_eq(tgt.sig, g.src.sig), "composition signature mismatch");
  std::vector<Poly> comp;
  comp.reserve(images.size());
  for (const auto& im : images) comp.push_back(g.apply(im));
  return RingMap(src, g.tgt, std::move(comp));
}

RingMap RingMap::identity(const Presentation& p) {
  std::vector<Poly> ims;
  for (size_t i = 0; i < p.sig->size(); ++i) ims.push_back(Poly::var(p.sig, i));
  return RingMap(p, p, std::move(ims));
}

Localization localize(const Presentation& p, const Poly& f) {
  require(sig_eq(f.sig(), p.sig), "localize signature mismatch");
  if (p.reduce(f).is_zero() && !p.is_empty()) throw DivisorIsZero();
  std::vector<std::string> names(p.sig->begin(), p.sig->end());
  names.push_back(fresh_name(*p.sig, "u"));
  SigPtr s = make_sig(std::move(names));
  std::vector<size_t> up(p.sig->size());
  for (size_t i = 0; i < up.size(); ++i) up[i] = i;
  std::vector<Poly> gens;
  for (const auto& g : p.ideal.gens()) gens.push_back(g.rename(s, up));
  size_t inv = s->size() - 1;
  gens.push_back(Poly::var(s, inv) * f.rename(s, up) - Poly::constant(s, 1));
  Presentation ring(s, Ideal(s, std::move(gens)));
  std::vector<Poly> ims;
  for (size_t i = 0; i < p.sig->size(); ++i) ims.push_back(Poly::var(s, i));
  return Localization{ring, RingMap(p, ring, std::move(ims)), inv};
}

TensorProduct tensor_over(const Presentation& base, const RingMap& left,
                          const RingMap& right) {
  require(sig_eq(left.src.sig, base.sig) && sig_eq(right.src.sig, base.sig),
          "tensor factors must share the base as source");
  const Presentation& X = left.tgt;
  const Presentation& Y = right.tgt;
  std::vector<std::string> names(X.sig->begin(), X.sig->end());
  std::vector<size_t> xpos(X.sig->size()), ypos(Y.sig->size());
  for (size_t i = 0; i < xpos.size(); ++i) xpos[i] = i;
  for (size_t i = 0; i < Y.sig->size(); ++i) {
    Sig cur(names);
    names.push_back(fresh_name(cur, (*Y.sig)[i]));
    ypos[i] = names.size() - 1;
  }
  SigPtr s = make_sig(std::move(names));
  std::vector<Poly> gens;
  for (const auto& g : X.ideal.gens()) gens.push_back(g.rename(s, xpos));
  for (const auto& g : Y.ideal.gens()) gens.push_back(g.rename(s, ypos));
  for (size_t v = 0; v < base.sig->size(); ++v)
    gens.push_back(left.images[v].rename(s, xpos) -
                   right.images[v].rename(s, ypos));
  Presentation ring(s, Ideal(s, std::move(gens)));
  std::vector<Poly> xi, yi;
  for (size_t i = 0; i < X.sig->size(); ++i) xi.push_back(Poly::var(s, xpos[i]));
  for (size_t i = 0; i < Y.sig->size(); ++i) yi.push_back(Poly::var(s, ypos[i]));
  return TensorProduct{ring, RingMap(X, ring, std::move(xi)),
                       RingMap(Y, ring, std::move(yi))};
}

Ideal kernel(const RingMap& f) {
  const size_t m = f.tgt.sig->size(), n = f.src.sig->size();
  std::vector<std::string> names(f.tgt.sig->begin(), f.tgt.sig->end());
  std::vector<size_t> spos(n);
  for (size_t i = 0; i < n; ++i) {
    Sig cur(names);
    names.push_back(fresh_name(cur, (*f.src.sig)[i]));
    spos[i] = names.size() - 1;
  }
  SigPtr s = make_sig(std::move(names));
  std::vector<size_t> tpos(m);
  for (size_t i = 0; i < m; ++i) tpos[i] = i;
  std::vector<Poly> gens;
  for (const auto& g : f.tgt.ideal.gens()) gens.push_back(g.rename(s, tpos));
  for (size_t i = 0; i < n; ++i)
    gens.push_back(Poly::var(s, spos[i]) - f.images[i].rename(s, tpos));
  std::vector<size_t> drop(m);
  for (size_t i = 0; i < m; ++i) drop[i] = i;
  return Ideal(s, std::move(gens)).eliminate(drop).with_sig(f.src.sig);
}

Presentation closure_of_principal_open(const Presentation& p, const Poly& f) {
  return Presentation(p.sig, p.ideal.saturation(f));
}

BlowupChartSet blowup_charts(const Presentation& p,
                             const std::vector<Poly>& center) {
  std::vector<Poly> red;
  for (const auto& a : center) red.push_back(p.reduce(a));
  bool any = false;
  for (const auto& a : red) any = any || !a.is_zero();
  if (red.empty() || !any) throw EmptyCenter();

  const size_t k = red.size(), n = p.sig->size();
  BlowupChartSet out;
  out.base = p;
  out.center = red;

  // chart-local variable name for center generator j
  std::vector<std::string> zname(k);
  {
    Sig cur(*p.sig);
    for (size_t j = 0; j < k; ++j) {
      zname[j] = fresh_name(cur, "z" + std::to_string(j));
      cur.push_back(zname[j]);
    }
  }

  std::vector<std::vector<size_t>> zpos(k, std::vector<size_t>(k, size_t(-1)));
  for (size_t i = 0; i < k; ++i) {
    std::vector<std::string> names(p.sig->begin(), p.sig->end());
    for (size_t j = 0; j < k; ++j)
      if (j != i) {
        zpos[i][j] = names.size();
        names.push_back(zname[j]);
      }
    SigPtr s = make_sig(std::move(names));
    std::vector<size_t> up(n);
    for (size_t v = 0; v < n; ++v) up[v] = v;
    std::vector<Poly> gens;
    for (const auto& g : p.ideal.gens()) gens.push_back(g.rename(s, up));
    Poly ai = red[i].rename(s, up);
    for (size_t j = 0; j < k; ++j)
      if (j != i)
        gens.push_back(ai * Poly::var(s, zpos[i][j]) - red[j].rename(s, up));
    Ideal chart_ideal = Ideal(s, std::move(gens)).saturation(ai);
    Presentation ring(s, chart_ideal);
    std::vector<Poly> ims;
    for (size_t v = 0; v < n; ++v) ims.push_back(Poly::var(s, v));
    BlowupChart ch{ring, ring.reduce(ai), RingMap(p, ring, std::move(ims)),
                   ring.is_empty()};
    out.charts.push_back(std::move(ch));
  }

  out.gluing.assign(k, std::vector<Poly>(k));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      out.gluing[i][j] = Poly::var(out.charts[i].ring.sig, zpos[i][j]);
    }
  return out;
}

GlueTransport glue_transport(const BlowupChartSet& b, size_t i, size_t j) {
  require(i < b.charts.size() && j < b.charts.size() && i != j,
          "glue_transport needs two distinct charts");
  const size_t n = b.base.sig->size(), k = b.center.size();
  GlueTransport t;
  // overlap: chart j with its z_i inverted; u = a_j/a_i there
  t.overlap = localize(b.charts[j].ring, b.gluing[j][i]);
  const Presentation& L = t.overlap.ring;
  Poly u = Poly::var(L.sig, t.overlap.inv_var);

  // chart i's tail variables name the center generators other than i, in order
  std::vector<size_t> midx;
  for (size_t m = 0; m < k; ++m)
    if (m != i) midx.push_back(m);

  std::vector<Poly> ims;
  for (size_t v = 0; v < n; ++v) ims.push_back(Poly::var(L.sig, v));
  for (size_t pos = n; pos < b.charts[i].ring.sig->size(); ++pos) {
    size_t m = midx[pos - n];
    if (m == j) {
      // a_j/a_i inverts the overlap's localized variable
      ims.push_back(u);
      continue;
    }
    size_t lp = sig_index(*L.sig, (*b.charts[i].ring.sig)[pos]);
    require(lp != std::string::npos, "gluing variable missing in overlap");
    ims.push_back(Poly::var(L.sig, lp) * u);  // a_m/a_i = (a_m/a_j)(a_j/a_i)
  }
  t.map = RingMap(b.charts[i].ring, L, std::move(ims));
  return t;
}

std::vector<Ideal> strict_transform(const BlowupChartSet& b, const Ideal& j) {
  require(sig_eq(j.sig(), b.base.sig), "strict transform ideal off base");
  std::vector<Ideal> out;
  for (const auto& ch : b.charts) {
    std::vector<Poly> gens = ch.ring.ideal.gens();
    for (const auto& g : j.gens()) gens.push_back(ch.from_base.apply_raw(g));
    out.push_back(Ideal(ch.ring.sig, std::move(gens)).saturation(ch.exceptional));
  }
  return out;
}

}  // namespace modpairs
