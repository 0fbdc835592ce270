#pragma once

#include "gerbecalc/groupoid.hpp"

namespace gerbecalc {

// Presheaf of groupoids on a fixed finite site: a groupoid per object and a
// functor per morphism, contravariantly functorial on both layers.
class GroupoidPresheaf {
 public:
  GroupoidPresheaf() = default;
  GroupoidPresheaf(std::shared_ptr<const FiniteSite> site,
                   std::map<Id, FiniteGroupoid> sections,
                   std::map<Id, GroupoidHom> restriction);

  const std::shared_ptr<const FiniteSite>& site() const { return site_; }
  const FiniteGroupoid& at(const Id& u) const;
  const GroupoidHom& restrict(const Id& phi) const;

  const std::map<Id, FiniteGroupoid>& section_tables() const { return sections_; }
  const std::map<Id, GroupoidHom>& restriction_tables() const { return restriction_; }

  // The set presheaves underlying the two layers.
  Presheaf ob_presheaf() const;
  Presheaf ar_presheaf() const;

  // Inner groupoid and functor violations are reported verbatim with the
  // offending object or morphism id prepended to the detail; cross-section
  // functoriality failures carry an ob/ar layer tag instead.
  std::vector<Violation> validate() const;

  // Sheafification of aut_presheaf(*this, u, x), memoized per (u, x);
  // safe to call concurrently.
  std::shared_ptr<const GroupPlusResult> aut_sheaf(const Id& u, const Id& x) const;

  bool operator==(const GroupoidPresheaf& o) const {
    return sections_ == o.sections_ && restriction_ == o.restriction_;
  }
  bool operator!=(const GroupoidPresheaf& o) const { return !(*this == o); }

 private:
  struct Cache;
  std::shared_ptr<const FiniteSite> site_;
  std::map<Id, FiniteGroupoid> sections_;
  std::map<Id, GroupoidHom> restriction_;
  std::shared_ptr<Cache> cache_;
};

// Map of groupoid presheaves: a functor per section, natural over the site.
struct GroupoidMap {
  std::map<Id, GroupoidHom> at;

  bool operator==(const GroupoidMap&) const = default;
};

std::vector<Violation> validate_groupoid_map(const GroupoidPresheaf& g,
                                             const GroupoidPresheaf& h,
                                             const GroupoidMap& f);

GroupoidMap identity_groupoid_map(const GroupoidPresheaf& g);
GroupoidMap compose_groupoid_maps(const GroupoidMap& g, const GroupoidMap& f);

// Same groupoid everywhere, identity restrictions.
GroupoidPresheaf constant_groupoid_presheaf(std::shared_ptr<const FiniteSite> site,
                                            const FiniteGroupoid& g);

// One-object groupoids whose automorphisms are the sections of g.
GroupoidPresheaf group_presheaf_as_groupoid(const GroupPresheaf& g, const Id& object);

// Sections of x as discrete groupoids.
GroupoidPresheaf discrete_groupoid_presheaf(const Presheaf& x);

// Path components, sectionwise; a class is named by its least member.
Presheaf pi0(const GroupoidPresheaf& g);

// The map on path components induced by f.
PresheafMap pi0_map(const GroupoidPresheaf& g, const GroupoidPresheaf& h,
                    const GroupoidMap& f);

// The quotient of g onto discrete_groupoid_presheaf(pi0(g)).
GroupoidMap pi0_quotient_map(const GroupoidPresheaf& g);

// Cech groupoid of p out of x: objects are the sections of x, with exactly
// one arrow a>b whenever p takes the same value on a and b.
GroupoidPresheaf cech_groupoid(const Presheaf& x, const PresheafMap& p);

// Presheaf on slice(u) whose sections over psi are the arrows
// restrict(psi)(x) -> restrict(psi)(y).
Presheaf hom_presheaf(const GroupoidPresheaf& g, const Id& u, const Id& x,
                      const Id& y);

// hom_presheaf at y = x, with composition as the group operation.
GroupPresheaf aut_presheaf(const GroupoidPresheaf& g, const Id& u, const Id& x);

// Parallel arrows agree along a covering sieve; computed in sieve form and
// cross-checked against the path-component quotient being a local weak
// equivalence. Throws if the two characterizations disagree.
CheckResult is_cech(const GroupoidPresheaf& g);

// Objects exist locally, and two objects over a common section are locally
// connected.
CheckResult is_gerbe(const GroupoidPresheaf& g);

// Sheafified path components biject sectionwise, and every automorphism
// presheaf maps across by a local isomorphism.
CheckResult is_lwe(const GroupoidPresheaf& g, const GroupoidPresheaf& h,
                   const GroupoidMap& f);

}  // namespace gerbecalc
