#pragma once
#include <memory>
#include <vector>

#include "modpairs/affine.hh"

namespace modpairs {

struct DivisorNotCartier : std::runtime_error {
  size_t chart;
  explicit DivisorNotCartier(size_t c);
};
struct NotAdmissible : std::runtime_error {
  size_t chart;
  NotAdmissible(size_t c, const std::string& detail);
};
struct CenterNotInDivisor : std::runtime_error {
  CenterNotInDivisor() : std::runtime_error("blow-up center not inside the divisor") {}
};
struct InteriorNotIso : std::runtime_error {
  explicit InteriorNotIso(const std::string& detail);
};
struct NotJointlySurjective : std::runtime_error {
  NotJointlySurjective() : std::runtime_error("cover misses part of the target") {}
};
struct NotPrincipalOpen : std::runtime_error {
  explicit NotPrincipalOpen(size_t leg);
};
struct MissingIntegralityWitness : std::runtime_error {
  explicit MissingIntegralityWitness(const std::string& detail);
};
struct NotDisjointOnInterior : std::runtime_error {
  NotDisjointOnInterior() : std::runtime_error("components meet on the interior") {}
};
struct NotCoveringInterior : std::runtime_error {
  NotCoveringInterior() : std::runtime_error("components do not cover the interior") {}
};

// One chart of a modulus pair: a presented total space plus the local
// generator of the divisor. A unit generator marks an empty modulus there.
struct PairChart {
  Presentation space;
  Poly divisor;
};

// Identifies D(f_i) in chart i with D(f_j) in chart j via a ring map of
// chart i into chart j's localization at f_j.
struct ChartGlue {
  size_t i = 0, j = 0;
  Poly f_i, f_j;
  Localization overlap;  // chart j localized at f_j
  RingMap to_overlap;    // chart i -> overlap ring; sends f_i to a unit
};

struct ModulusPair {
  std::vector<PairChart> charts;
  std::vector<ChartGlue> glue;
};

// verifies: every divisor generator is a nonzerodivisor on its chart, f_i
// becomes a unit on each overlap, and the two divisors mutually divide there
ModulusPair make_pair(std::vector<PairChart> charts,
                      std::vector<ChartGlue> glue = {});

// assembles the blow-up cover of a pair as a pair: chart-wise divisors with
// gluing derived from the chart set
ModulusPair pair_from_blowup(const BlowupChartSet& b,
                             std::vector<Poly> divisors);

// chart-wise localization at the divisor generator
std::vector<Localization> interior(const ModulusPair& p);

// Morphism of pairs: per source chart, a target chart and the pullback ring
// map (target chart ring -> source chart ring).
struct MorphismLeg {
  size_t target_chart = 0;
  RingMap pullback;
  Poly adm_witness;  // g_src = adm_witness * pullback(g_tgt) mod I_src
  Poly min_witness;  // pullback(g_tgt) = min_witness * g_src mod I_src, if minimal
};

struct AmbientMorphism {
  ModulusPair source, target;
  std::vector<MorphismLeg> legs;
  bool admissible = false;
  bool minimal = false;
};

// throws NotAdmissible(chart); a returned morphism is always admissible and
// carries the minimality verdict
AmbientMorphism check_admissible(const ModulusPair& src, const ModulusPair& tgt,
                                 std::vector<std::pair<size_t, RingMap>> legs);

AmbientMorphism identity_morphism(const ModulusPair& p);
// f: X -> Y then g: Y -> Z, re-verified end to end
AmbientMorphism compose(const AmbientMorphism& f, const AmbientMorphism& g);

// per chart, per variable: image difference dies after inverting the divisor
bool equal_on_interior(const AmbientMorphism& f, const AmbientMorphism& g);

struct SigmaCertificate {
  enum class Kind { blowup_in_divisor, component_closure, composite };
  Kind kind = Kind::blowup_in_divisor;
  // blowup_in_divisor: per source chart i, divisor^power = witness * center_i
  Ideal center;
  std::vector<int> inv_power;
  std::vector<Poly> inv_witness;
  // component_closure
  std::vector<Ideal> components;
  // composite
  std::vector<std::shared_ptr<SigmaCertificate>> parts;
};

// certifies f (minimal, legs fixing base variables) as the blow-up of its
// single-chart target along center, an isomorphism over the interior
SigmaCertificate certify_sigma(const AmbientMorphism& f, const Ideal& center);

SigmaCertificate compose_certificates(SigmaCertificate first,
                                      SigmaCertificate second);

enum class CoverKind { zar, fin };

// A covering family; a nonempty refine[i] turns the composite into an
// rqfh-style tree (each refinement covers legs[i]'s source).
struct CoverFamily {
  CoverKind kind = CoverKind::zar;
  std::vector<AmbientMorphism> legs;
  std::vector<Poly> opens;  // zar: the inverted element per leg, on the target
  // fin: per leg, per source variable, ascending coefficients c_0..c_{d-1}
  // of a monic dependence v^d + sum c_k v^k = 0 with c_k on the target
  std::vector<std::vector<std::vector<Poly>>> integrality;
  std::vector<std::shared_ptr<CoverFamily>> refine;
};

// throws NotPrincipalOpen / MissingIntegralityWitness / NotJointlySurjective
void check_cover(const ModulusPair& target, const CoverFamily& fam);

struct Decomposition {
  ModulusPair part1, part2;
  AmbientMorphism from_coproduct;  // (part1 | part2) -> original, minimal
  SigmaCertificate cert;
};

// splits a single-chart pair along complementary component ideals
Decomposition decompose_interior(const ModulusPair& p, const Ideal& j1,
                                 const Ideal& j2);

}  // namespace modpairs
