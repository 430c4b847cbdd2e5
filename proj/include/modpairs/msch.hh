#pragma once
#include <vector>

#include "modpairs/modpair.hh"

namespace modpairs {

// One certified contraction hop. certs[k] certifies the restriction of mor
// over the k-th target chart its legs cover, in ascending chart order.
struct SigmaStage {
  AmbientMorphism mor;
  std::vector<SigmaCertificate> certs;
};

// Span with a certified contraction toward the source and a plain admissible
// leg toward the target. An empty stage list is the identity contraction, so
// roof_source is the apex itself in that case.
struct Roof {
  ModulusPair apex;
  std::vector<SigmaStage> sigma;  // stage 0 leaves the apex
  AmbientMorphism ambient;
};

// validates the stage chain, stage minimality, and leg endpoints
Roof make_roof(ModulusPair apex, std::vector<SigmaStage> sigma,
               AmbientMorphism ambient);
Roof roof_from_ambient(AmbientMorphism f);
Roof identity_roof(const ModulusPair& p);

const ModulusPair& roof_source(const Roof& r);
const ModulusPair& roof_target(const Roof& r);

// composite of the stage morphisms; the identity for an empty stage list
AmbientMorphism sigma_morphism(const Roof& r);
// stage certificates folded into one; rejects an empty stage list
SigmaCertificate sigma_certificate(const Roof& r);

// Completion of f against the contraction s: t contracts a refinement of f's
// source and f_prime lifts f through s, with s after f_prime agreeing with f
// after t on interiors.
struct OreSquare {
  std::vector<SigmaStage> t;
  AmbientMorphism f_prime;
};

OreSquare ore_complete(const AmbientMorphism& s,
                       const std::vector<SigmaCertificate>& certs,
                       const AmbientMorphism& f);
OreSquare ore_complete(const std::vector<SigmaStage>& sigma,
                       const AmbientMorphism& f);

// completes r2's contraction against r1's ambient leg and splices the spans
Roof compose_roofs(const Roof& r1, const Roof& r2);

// equality of the induced interior maps, compared on a common refinement;
// legs landing in different target charts are compared through the glue
bool roofs_equal(const Roof& r1, const Roof& r2);

}  // namespace modpairs
