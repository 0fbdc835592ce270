#pragma once

#include "gerbecalc/atlas.hpp"

namespace gerbecalc {

// A 2-cocycle: a 2-groupoid presheaf with a point-collapsing left leg and a
// strict map into a materialized atlas of group sheaves.
struct Cocycle {
  TwoGroupoidPresheaf a;
  MaterializedAtlas f;
  TwoGroupoidMap k;
};

Cocycle as_cocycle(const CanonicalCocycle& c);

// Same underlying presheaf mapped onward into a larger atlas through the
// cellwise inclusion.
Cocycle retarget(const Cocycle& c, const MaterializedAtlas& super);

// a validates, k is a strict map into the atlas presheaf, and a collapses
// to the point through a local weak equivalence.
std::vector<Violation> validate_cocycle(const Cocycle& c);

// theta: c -> d commuting with both maps on the nose.
std::vector<Violation> validate_cocycle_morphism(const Cocycle& c,
                                                 const Cocycle& d,
                                                 const TwoGroupoidMap& theta);

// Group coefficients for the Grothendieck construction: per section object
// a group presheaf on the slice, 1-cells acting by sectionwise data maps,
// 2-cells by distinguished conjugating global sections of the target.
struct SectionCoefficients {
  std::map<Id, std::map<Id, GroupPresheaf>> groups;
  std::map<Id, std::map<Id, GroupPresheafMap>> action;
  std::map<Id, std::map<Id, Id>> conjugator;
};

// Actions are functorial isomorphism data, each 2-cell's conjugator carries
// its source action to its target action, both layers respect vertical and
// horizontal composition, and everything restricts on the nose.
std::vector<Violation> validate_coefficients(const TwoGroupoidPresheaf& a,
                                             const SectionCoefficients& co);

// Coefficients read off the atlas entries along k.
SectionCoefficients cocycle_coefficients(const Cocycle& c);

// Automorphism presheaves of g as coefficients on resolution(g): 1-cells
// act by conjugation, the 2-cell f>h conjugates by h o f^{-1}.
SectionCoefficients aut_coefficients(const GroupoidPresheaf& g);

// The Grothendieck construction: sectionwise objects of a, arrows the
// classes [(f,alpha)] of pairs glued along 2-cells, composed by
// [(g,beta)][(f,alpha)] = [(g . beta(f), beta o alpha)]. p projects onto
// the path component groupoid of a.
struct GrothResult {
  GroupoidPresheaf e;
  GroupoidPresheaf pi;
  GroupoidMap p;
  std::map<Id, std::map<std::pair<Id, Id>, Id>> cls;
  std::map<Id, std::map<Id, std::pair<Id, Id>>> reps;
};

GrothResult grothendieck_sections(const TwoGroupoidPresheaf& a,
                                  const SectionCoefficients& co);
GrothResult grothendieck(const Cocycle& c);

// Arrow class of the pair (f, alpha) over u; throws gc_error when the pair
// is not a listed representative pair.
const Id& eak_class(const GrothResult& er, const Id& u, const Id& f,
                    const Id& alpha);

// The fibrewise comparison with the Grothendieck construction of the
// automorphism coefficients: identity on objects, [(f,alpha)] -> f o alpha.
struct PsiResult {
  GrothResult groth;
  GroupoidMap map;
};

PsiResult psi(const GroupoidPresheaf& g);

// The group map f -> [(f, 1_i)] from the coefficient group of (u, i) to the
// automorphism presheaf of i in the construction, with its sheafified
// isomorphism certificate.
struct GammaResult {
  GroupPresheaf source;
  GroupPresheaf target;
  GroupPresheafMap map;
  CheckResult local_iso;
};

GammaResult gamma(const TwoGroupoidPresheaf& a, const SectionCoefficients& co,
                  const GrothResult& er, const Id& u, const Id& i);
GammaResult gamma(const Cocycle& c, const GrothResult& er, const Id& u,
                  const Id& i);

// The functor [(f,alpha)] -> [(f, theta(alpha))] induced by a cocycle
// morphism, with its local weak equivalence certificate.
struct InducedMap {
  GroupoidMap map;
  CheckResult lwe;
};

InducedMap induced_map(const GrothResult& ea, const GrothResult& eb,
                       const TwoGroupoidMap& theta);

// Identity on objects, alpha -> [(e, alpha)], 2-cells to the spanning
// 2-cells of the resolution.
TwoGroupoidMap omega(const TwoGroupoidPresheaf& a, const SectionCoefficients& co,
                     const GrothResult& er);
TwoGroupoidMap omega(const Cocycle& c, const GrothResult& er);

// a x I for the walking isomorphism I with objects 0, 1 and 1-cells id0,
// id1, up, dn; cells are named (cell,t).
TwoGroupoidPresheaf cylinder(const TwoGroupoidPresheaf& a);

// End inclusion into the cylinder at 0 or 1.
TwoGroupoidMap cylinder_end(const TwoGroupoidPresheaf& a, bool one);

// The cylinder cocycle conjugating k by an object-indexed family tau of
// atlas isomorphisms: tau[u][x] is a 1-cell of the atlas out of the entry
// of x, natural in u. The ends of the cylinder are k itself and the
// shifted cocycle tau k tau^{-1}, included by i0 and i1.
struct CylinderShift {
  Cocycle cyl;
  Cocycle shifted;
  TwoGroupoidMap i0;
  TwoGroupoidMap i1;
};

CylinderShift conjugation_cylinder(const TwoGroupoidPresheaf& a,
                                   const MaterializedAtlas& f,
                                   const TwoGroupoidMap& k,
                                   const std::map<Id, std::map<Id, Id>>& tau);

// The zig-zag of cocycle morphisms from k to the conjugation cocycle of
// the construction: k -> gamma-cylinder <- shifted -> resolved, all over
// the atlas of c, which must already contain the automorphism sheaves of
// the construction (precondition_error otherwise).
struct HomotopyPath {
  GrothResult e;
  Cocycle cyl;
  Cocycle shifted;
  Cocycle resolved;
  TwoGroupoidMap i0;
  TwoGroupoidMap i1;
  TwoGroupoidMap w;
};

HomotopyPath homotopy_path(const Cocycle& c);

}  // namespace gerbecalc
