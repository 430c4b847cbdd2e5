#pragma once
#include <optional>

#include "modpairs/modpair.hh"

namespace modpairs {

struct SquareDoesNotCommute : std::runtime_error {
  SquareDoesNotCommute()
      : std::runtime_error("the two legs disagree on the interior") {}
};

// Per-chart divisor bookkeeping for a fibre product: the two pulled divisor
// generators, the exceptional generator, and the chart's divisor.
struct ProductChartData {
  Poly d_t, d_x, e, divisor;
};

// Fibre product of admissible f: X -> S and g: T -> S, taken on the closure
// of the interior product and corrected by a blow-up at the intersection of
// the pulled divisors. When g is minimal no blow-up is needed.
struct AmbientProductResult {
  Presentation total;  // closure of the interior product in the tensor ring
  RingMap co_t, co_x;  // coprojections of the two factors into `total`
  Poly f_t, f_x, f_s;  // divisor generator images on `total`
  bool blown = false;
  std::optional<BlowupChartSet> blowup;  // set iff blown
  ModulusPair result;
  AmbientMorphism proj_t, proj_x;
  std::vector<ProductChartData> chart_data;  // one entry per result chart
};

AmbientProductResult ambient_product(const AmbientMorphism& f,
                                     const AmbientMorphism& g);

// Product carrying the smaller divisor T-side + X-side - base on the same
// closure, with no blow-up. cof realizes f_x = cof * f_s; the divisor
// generator is cof * f_t.
struct BoxProductResult {
  Presentation total;
  RingMap co_t, co_x;
  Poly f_t, f_x, f_s, cof;
  ModulusPair result;
  AmbientMorphism proj_t, proj_x;
};

BoxProductResult box_product(const AmbientMorphism& f,
                             const AmbientMorphism& g);

// Roof connecting the two products: a certified blow-up leg onto the box
// product and an ambient leg onto the fibre product, sharing one source.
struct RoofComparison {
  AmbientMorphism sigma_leg;
  SigmaCertificate cert;
  AmbientMorphism ambient_leg;
};

RoofComparison box_to_times(const AmbientMorphism& f, const AmbientMorphism& g);

// Universal fill-in of a commuting square through the fibre product. The
// lift starts at the original source when a pulled center generator divides
// the other on every chart, and otherwise at a certified blow-up of it.
struct FillInResult {
  std::optional<AmbientMorphism> sigma;  // blow-up of the source, when needed
  std::optional<SigmaCertificate> cert;
  AmbientMorphism lift;
};

FillInResult fibre_fill_in(const AmbientProductResult& prod,
                           const AmbientMorphism& to_t,
                           const AmbientMorphism& to_x,
                           const AmbientMorphism& f, const AmbientMorphism& g);

// Disjoint union: the nonempty charts of both pairs side by side.
ModulusPair coproduct(const ModulusPair& p, const ModulusPair& q);

// A chart presented as a subalgebra of a shared ambient ring.
struct SubringChart {
  std::vector<Poly> gens;
  Poly divisor;
};

// Two three-chart models of the f-twisted compactified line over r, both
// inside r with f and the fibre coordinate inverted; `verified` states that
// the models agree chart-wise as subalgebras with equal divisors.
struct LineModelReport {
  Presentation ambient;
  std::vector<SubringChart> a_charts, c_charts;
  bool verified = false;
  std::string detail;
};

LineModelReport compare_line_models(const Presentation& r, const Poly& f);

// Verifies that boxing with T -> S commutes with the fibre product of
// u: Y -> X and v: Z -> X: per chart, the blow-up center of the boxed
// product equals the exceptional times the T-over-S cofactor as ideals, and
// the chart-wise comparison onto the boxed fibre product is minimal.
struct ExchangeChart {
  Poly d1h, d2h, eh;
  bool holds = false;
};
struct ExchangeReport {
  AmbientProductResult inner;  // fibre product of u and v over X
  std::vector<PairChart> lhs;  // inner charts boxed with T
  AmbientProductResult rhs;    // fibre product of the boxed morphisms
  std::vector<ExchangeChart> charts;
  AmbientMorphism comparison;  // lhs -> rhs, chart by chart
  bool ok = false;
};

ExchangeReport box_fibre_exchange(const AmbientMorphism& u,
                                  const AmbientMorphism& v,
                                  const AmbientMorphism& f,
                                  const AmbientMorphism& g);

}  // namespace modpairs
