#pragma once

#include "gerbecalc/gpd.hpp"
#include "gerbecalc/two_groupoid.hpp"

namespace gerbecalc {

// Presheaf of 2-groupoids on a fixed finite site: a 2-groupoid per object
// and a strict 2-functor per morphism, contravariantly functorial on all
// three layers.
class TwoGroupoidPresheaf {
 public:
  TwoGroupoidPresheaf() = default;
  TwoGroupoidPresheaf(std::shared_ptr<const FiniteSite> site,
                      std::map<Id, TwoGroupoid> sections,
                      std::map<Id, TwoGroupoidHom> restriction);

  const std::shared_ptr<const FiniteSite>& site() const { return site_; }
  const TwoGroupoid& at(const Id& u) const;
  const TwoGroupoidHom& restrict(const Id& phi) const;

  const std::map<Id, TwoGroupoid>& section_tables() const { return sections_; }
  const std::map<Id, TwoGroupoidHom>& restriction_tables() const {
    return restriction_;
  }

  // The set presheaves underlying the three layers.
  Presheaf ob_presheaf() const;
  Presheaf ar_presheaf() const;
  Presheaf two_presheaf() const;

  // Inner 2-groupoid and 2-functor violations carry the offending object or
  // morphism id; cross-section functoriality failures carry an ob/ar/two
  // layer tag instead.
  std::vector<Violation> validate() const;

  bool operator==(const TwoGroupoidPresheaf& o) const {
    return sections_ == o.sections_ && restriction_ == o.restriction_;
  }
  bool operator!=(const TwoGroupoidPresheaf& o) const { return !(*this == o); }

 private:
  std::shared_ptr<const FiniteSite> site_;
  std::map<Id, TwoGroupoid> sections_;
  std::map<Id, TwoGroupoidHom> restriction_;
};

// Map of 2-groupoid presheaves: a strict 2-functor per section, natural
// over the site.
struct TwoGroupoidMap {
  std::map<Id, TwoGroupoidHom> at;

  bool operator==(const TwoGroupoidMap&) const = default;
};

std::vector<Violation> validate_two_map(const TwoGroupoidPresheaf& g,
                                        const TwoGroupoidPresheaf& h,
                                        const TwoGroupoidMap& f);

TwoGroupoidMap identity_two_map(const TwoGroupoidPresheaf& g);
TwoGroupoidMap compose_two_maps(const TwoGroupoidMap& g, const TwoGroupoidMap& f);

// Same 2-groupoid everywhere, identity restrictions.
TwoGroupoidPresheaf constant_two_groupoid_presheaf(
    std::shared_ptr<const FiniteSite> site, const TwoGroupoid& t);

// The objects and 1-cells, forgetting the 2-cells.
GroupoidPresheaf base_presheaf(const TwoGroupoidPresheaf& h);

// Sections of g with identity 2-cells only.
TwoGroupoidPresheaf discrete_two_presheaf(const GroupoidPresheaf& g);

// Exactly one 2-cell between every parallel pair of 1-cells, sectionwise.
TwoGroupoidPresheaf resolution(const GroupoidPresheaf& g);

// One object pt with identities only, and the unique map into it.
TwoGroupoidPresheaf point_two_presheaf(std::shared_ptr<const FiniteSite> site);
TwoGroupoidMap map_to_point(const TwoGroupoidPresheaf& g);

// Path component groupoid presheaf: the same objects, with the 2-cell
// connectivity classes of 1-cells as arrows; eta is the quotient of h onto
// its discrete 2-groupoid presheaf.
struct PiGroupoidResult {
  GroupoidPresheaf pi;
  TwoGroupoidMap eta;
};

PiGroupoidResult pi_groupoid(const TwoGroupoidPresheaf& h);

// The functor on path component groupoid presheaves induced by f.
GroupoidMap pi_groupoid_map(const TwoGroupoidPresheaf& g,
                            const TwoGroupoidPresheaf& h, const TwoGroupoidMap& f);

// Group presheaf on slice(u) of the 2-cells on the identity 1-cell of x,
// under vertical composition; throws when that composition fails to commute
// or disagrees with horizontal composition there.
GroupPresheaf pi2_presheaf(const TwoGroupoidPresheaf& h, const Id& u, const Id& x);

// Groupoid presheaf on slice(u) of the 1-cells x -> y and the 2-cells
// between them.
GroupoidPresheaf hom_two_presheaf(const TwoGroupoidPresheaf& h, const Id& u,
                                  const Id& x, const Id& y);

// Sheafified path components, the automorphism sheaves of the path
// component groupoid, and the sheafified 2-cell groups at identities, per
// basepoint (u, x).
struct HomotopySheaves {
  GroupoidPresheaf pi;
  SheafifyResult pi0;
  std::map<std::pair<Id, Id>, std::shared_ptr<const GroupPlusResult>> pi1;
  std::map<std::pair<Id, Id>, std::shared_ptr<const GroupPlusResult>> pi2;
};

HomotopySheaves homotopy_sheaves(const TwoGroupoidPresheaf& h);

// f induces isomorphisms on all three homotopy sheaves; evaluated in the
// order pi0, pi1, pi2 with witnesses named accordingly.
CheckResult is_lwe2(const TwoGroupoidPresheaf& g, const TwoGroupoidPresheaf& h,
                    const TwoGroupoidMap& f);

// Both sides of an equivalence, evaluated independently.
struct LemmaCheck {
  bool left = false;
  bool right = false;
  std::string left_witness;
  std::string right_witness;

  bool agree() const { return left == right; }
};

// Left: the quotient onto the path component groupoid presheaf is a local
// weak equivalence. Right: every hom groupoid presheaf is a Cech object.
LemmaCheck check_lemma6(const TwoGroupoidPresheaf& h);

// Left: the collapse onto the path components is a local weak equivalence.
// Right: every hom groupoid presheaf and the path component groupoid
// presheaf are Cech objects.
LemmaCheck check_lemma8(const TwoGroupoidPresheaf& a);

}  // namespace gerbecalc
