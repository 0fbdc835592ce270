#pragma once

#include "gerbecalc/group.hpp"

namespace gerbecalc {

// Finite groupoid: a finite category whose arrows all carry recorded
// two-sided inverses.
class FiniteGroupoid {
 public:
  FiniteGroupoid() = default;
  FiniteGroupoid(FiniteCategory cat, std::map<Id, Id> inverse);

  const FiniteCategory& cat() const { return cat_; }
  const std::vector<Id>& objects() const { return cat_.objects(); }
  const std::vector<MorphismData>& arrows() const { return cat_.morphisms(); }
  bool has_object(const Id& x) const { return cat_.has_object(x); }
  bool has_arrow(const Id& f) const { return cat_.has_morphism(f); }
  const Id& src(const Id& f) const { return cat_.src(f); }
  const Id& tgt(const Id& f) const { return cat_.tgt(f); }
  const Id& identity_of(const Id& x) const { return cat_.identity_of(x); }
  const Id& compose(const Id& g, const Id& f) const { return cat_.compose(g, f); }
  const Id& inverse(const Id& f) const;
  const std::map<Id, Id>& inverse_table() const { return inverse_; }

  // Arrows x -> y, sorted by id.
  std::vector<Id> arrows_between(const Id& x, const Id& y) const;

  std::vector<Violation> validate() const;

  bool operator==(const FiniteGroupoid&) const = default;

 private:
  FiniteCategory cat_;
  std::map<Id, Id> inverse_;
};

// Identity arrows only, named x>x.
FiniteGroupoid discrete_groupoid(const std::vector<Id>& objects);

// Exactly one arrow x>y for every ordered pair of objects.
FiniteGroupoid codiscrete_groupoid(const std::vector<Id>& objects);

// One object whose automorphisms are the given group, with
// compose(a, b) = a * b.
FiniteGroupoid group_as_groupoid(const FiniteGroup& g, const Id& object);

// Objects (a,b) and arrows (f,g), all structure componentwise.
FiniteGroupoid product_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b);

// Side-by-side union; object and arrow ids must not clash.
FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b);

// The largest subgroupoid on the given subset of objects.
FiniteGroupoid full_subgroupoid(const FiniteGroupoid& g, const std::set<Id>& objects);

// Functor between finite groupoids, as object and arrow tables.
struct GroupoidHom {
  std::map<Id, Id> ob;
  std::map<Id, Id> ar;

  bool operator==(const GroupoidHom&) const = default;
};

// Functor axioms for f: g -> h, robust against broken inputs.
std::vector<Violation> validate_groupoid_hom(const FiniteGroupoid& g,
                                             const FiniteGroupoid& h,
                                             const GroupoidHom& f);

GroupoidHom identity_hom(const FiniteGroupoid& g);

// g after f, on both layers.
GroupoidHom compose_homs(const GroupoidHom& g, const GroupoidHom& f);

}  // namespace gerbecalc
