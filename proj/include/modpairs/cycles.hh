#pragma once
#include <optional>
#include <vector>

#include "modpairs/modpair.hh"

namespace modpairs {

struct IntersectionNotCartier : std::runtime_error {
  IntersectionNotCartier()
      : std::runtime_error("neither divisor divides the other, so their "
                           "intersection has no principal generator") {}
};
struct WitnessInvalid : std::runtime_error {
  explicit WitnessInvalid(const std::string& detail)
      : std::runtime_error("normalization witness rejected: " + detail) {}
};
struct FiberNotFinite : std::runtime_error {
  FiberNotFinite() : std::runtime_error("fiber ring has infinite dimension") {}
};

// Effective Cartier divisor on one chart: a principal ideal with a
// nonzerodivisor generator.
struct DivisorOnRing {
  Presentation ring;
  Poly gen;
};

// reduces gen and verifies it is a nonzerodivisor on the chart
DivisorOnRing divisor_on(const Presentation& ring, const Poly& gen);

// cofactor c with d1 = c * d2 modulo the chart ideal, when one exists;
// a value means D1 >= D2 as divisors
std::optional<Poly> divisor_geq(const DivisorOnRing& d1,
                                const DivisorOnRing& d2);

struct RephrasingReport {
  Poly intersection_gen;        // e with <d1, d2> + I = <e> + I
  bool intersection_is_second;  // <e> + I equals <d2> + I, by ideal equality
  std::optional<Poly> cofactor;  // divisor_geq(d1, d2)
  bool equivalent;  // the two verdicts above agree; expected always true
};

// throws IntersectionNotCartier when neither generator divides the other
RephrasingReport rephrasing_check(const DivisorOnRing& d1,
                                  const DivisorOnRing& d2);

struct DdhReport {
  Poly intersection_gen;
  bool holds;  // <d1 h, d2 h> + I equals <e h> + I
};

DdhReport ddh_check(const DivisorOnRing& d1, const DivisorOnRing& d2,
                    const Poly& h);

// Finiteness data for the projection of the closure onto the first factor:
// per closure variable, ascending coefficients of a monic dependence with
// coefficients in the first-factor chart ring. `asserted` records a claim
// made without witnesses.
struct PropernessData {
  Presentation closure;
  std::vector<std::vector<Poly>> integral_over_source;
  bool asserted = false;
};

// Normalization of the closure: the map nu reads closure elements in the
// coordinate ring of ztilde. Normality of ztilde is the caller's claim and
// is only recorded.
struct NormalizationData {
  Presentation ztilde;
  RingMap nu;
  bool normality_asserted = true;
};

// One prime component of a cycle on the interior of a product of two charts.
// The component ideal lives on the source chart variables followed by the
// target chart variables; primality is the caller's claim and is recorded.
struct CycleComponent {
  Ideal on_interior;
  long multiplicity = 1;
  bool primality_asserted = true;
  PropernessData properness;
  NormalizationData normalization;
};

struct ModulusCorrespondence {
  ModulusPair source, target;
  std::vector<CycleComponent> components;
};

// Pulls both divisor generators to ztilde through the product coordinates
// and nu, then asks divisor_geq(pullback of the source divisor, pullback of
// the target divisor). Both pairs must be single-chart. Throws
// WitnessInvalid when the witness does not fit the charts or fails to
// validate as a ring map, or when a pulled generator is a zerodivisor.
struct ModulusWitness {
  Poly pulled_source, pulled_target;
  std::optional<Poly> cofactor;  // set iff the bound holds
};
ModulusWitness kmsy_witness(const CycleComponent& c, const ModulusPair& x,
                            const ModulusPair& y);
bool kmsy_modulus_check(const CycleComponent& c, const ModulusPair& x,
                        const ModulusPair& y);

// verifies multiplicities are nonzero, properness witnesses check out, and
// every component passes kmsy_modulus_check
ModulusCorrespondence make_correspondence(ModulusPair source,
                                          ModulusPair target,
                                          std::vector<CycleComponent> comps);

// graph of an admissible single-chart morphism as a correspondence with one
// component of multiplicity one; the modulus bound is rechecked and holds
// whenever the morphism is admissible
ModulusCorrespondence graph_cycle(const AmbientMorphism& f);

// degree of the residue extension k(point) over k(base_point) as a ratio of
// dimensions over Q; zero when either quotient is infinite-dimensional
unsigned long pushforward_degree(const Presentation& point,
                                 const Presentation& base_point);

// length of the fiber ring localized at the component, divided by the
// residue degree of the component point; throws FiberNotFinite when the
// whole fiber has infinite dimension
unsigned long flat_fiber_multiplicity(const RingMap& f, const Ideal& component,
                                      const Ideal& fiber);

}  // namespace modpairs
