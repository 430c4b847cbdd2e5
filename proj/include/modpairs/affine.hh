#pragma once
#include <vector>

#include "modpairs/ideal.hh"

namespace modpairs {

// Q[vars]/I. The unit ideal is allowed and marks the empty scheme.
struct Presentation {
  SigPtr sig;
  Ideal ideal;

  Presentation() = default;
  Presentation(SigPtr s, Ideal i);
  static Presentation free_ring(std::vector<std::string> vars);

  bool is_empty() const { return ideal.is_unit(); }
  Poly reduce(const Poly& f) const { return ideal.normal_form(f); }
  Poly parse(const std::string& text) const { return parse_poly(text, sig); }
  std::string str() const;
};

struct RelationNotPreserved : std::runtime_error {
  size_t index;
  explicit RelationNotPreserved(size_t i);
};
struct DivisorIsZero : std::runtime_error {
  DivisorIsZero() : std::runtime_error("divisor is zero in the chart ring") {}
};
struct EmptyCenter : std::runtime_error {
  EmptyCenter() : std::runtime_error("blow-up center has no nonzero generator") {}
};

// Ring homomorphism src -> tgt given by one target image per source variable.
// Construction verifies every defining relation of src dies in tgt.
struct RingMap {
  Presentation src, tgt;
  std::vector<Poly> images;

  RingMap() = default;
  RingMap(Presentation src, Presentation tgt, std::vector<Poly> images);

  Poly apply(const Poly& f) const;  // substitute, then reduce mod tgt ideal
  Poly apply_raw(const Poly& f) const;  // substitute only
  RingMap then(const RingMap& g) const;
  static RingMap identity(const Presentation& p);
};

struct Localization {
  Presentation ring;  // source variables plus one inverse variable
  RingMap map;
  size_t inv_var;  // position of the inverse variable in ring.sig
};
// adds u with u*f = 1; rejects f that is zero modulo the ideal
Localization localize(const Presentation& p, const Poly& f);

struct TensorProduct {
  Presentation ring;
  RingMap left_co, right_co;  // coprojections from left.tgt and right.tgt
};
// pushout of left.tgt <- base -> right.tgt; identifies both base images
TensorProduct tensor_over(const Presentation& base, const RingMap& left,
                          const RingMap& right);

// contraction of the target ideal: all source polynomials mapping into it
Ideal kernel(const RingMap& f);

// scheme-theoretic closure of D(f): replaces I by I : f^inf
Presentation closure_of_principal_open(const Presentation& p, const Poly& f);

struct BlowupChart {
  Presentation ring;  // base variables plus z_j for the other center gens
  Poly exceptional;   // image of the chart's own center generator
  RingMap from_base;
  bool empty = false;
};

struct BlowupChartSet {
  Presentation base;
  std::vector<Poly> center;
  std::vector<BlowupChart> charts;  // one per center generator, input order
  // gluing[i][j] (i != j): element of chart i to invert to reach chart j
  std::vector<std::vector<Poly>> gluing;
};

// chart i presents A[center/a_i]: ideal ((I + <a_i z_j - a_j>) : a_i^inf)
BlowupChartSet blowup_charts(const Presentation& p,
                             const std::vector<Poly>& center);

// chart i of the blow-up localized at gluing[i][j], together with the
// transport of chart j into that localization (z'_m = z_m / z_j there)
struct GlueTransport {
  Localization overlap;  // chart j localized at gluing[j][i]
  RingMap map;           // chart i -> overlap ring
};
GlueTransport glue_transport(const BlowupChartSet& b, size_t i, size_t j);

// chart-wise (J.chart + chart ideal) : exceptional^inf
std::vector<Ideal> strict_transform(const BlowupChartSet& b, const Ideal& j);

}  // namespace modpairs
