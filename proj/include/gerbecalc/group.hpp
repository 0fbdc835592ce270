#pragma once

#include "gerbecalc/presheaf.hpp"

namespace gerbecalc {

// Finite group given by a full multiplication table over element ids.
class FiniteGroup {
 public:
  FiniteGroup() = default;
  FiniteGroup(Id name, std::vector<Id> elements, Id unit,
              std::map<std::pair<Id, Id>, Id> mul);

  const Id& name() const { return name_; }
  const std::vector<Id>& elements() const { return elements_; }
  const Id& unit() const { return unit_; }
  size_t order() const { return elements_.size(); }

  const Id& mul(const Id& a, const Id& b) const;
  const Id& inv(const Id& a) const;
  Id conj(const Id& k, const Id& a) const;  // k a k^{-1}

  const std::map<std::pair<Id, Id>, Id>& mul_table() const { return mul_; }

  std::vector<Violation> validate() const;

  // Same elements, unit and table; names are labels and do not count.
  bool operator==(const FiniteGroup& o) const {
    return elements_ == o.elements_ && unit_ == o.unit_ && mul_ == o.mul_;
  }
  bool operator!=(const FiniteGroup& o) const { return !(*this == o); }

 private:
  Id name_;
  std::vector<Id> elements_;
  Id unit_;
  std::map<std::pair<Id, Id>, Id> mul_;
};

FiniteGroup trivial_group();
FiniteGroup cyclic_group(size_t n);  // elements e, r1, ..., r(n-1)
FiniteGroup klein_group();           // elements e, i, j, k
FiniteGroup symmetric_group_3();     // elements e, r1, r2, s0, s1, s2

// One representative per isomorphism class of order <= max_order (max 6).
std::vector<FiniteGroup> group_catalog(size_t max_order);

// All homomorphisms / isomorphisms g -> h as element maps, brute force.
std::vector<std::map<Id, Id>> group_homs(const FiniteGroup& g, const FiniteGroup& h);
std::vector<std::map<Id, Id>> group_isos(const FiniteGroup& g, const FiniteGroup& h);
std::vector<std::map<Id, Id>> group_autos(const FiniteGroup& g);

// Presheaf of finite groups: a set-valued presheaf whose section sets carry
// group structure and whose restrictions are homomorphisms.
class GroupPresheaf {
 public:
  GroupPresheaf() = default;
  GroupPresheaf(Presheaf underlying, std::map<Id, FiniteGroup> groups);

  const Presheaf& underlying() const { return underlying_; }
  const std::shared_ptr<const FiniteSite>& site() const { return underlying_.site(); }
  const FiniteGroup& group_at(const Id& u) const;

  const Id& mul(const Id& u, const Id& a, const Id& b) const;
  const Id& inv(const Id& u, const Id& a) const;
  const Id& unit(const Id& u) const;

  std::vector<Violation> validate() const;

  bool operator==(const GroupPresheaf& o) const;
  bool operator!=(const GroupPresheaf& o) const { return !(*this == o); }

 private:
  Presheaf underlying_;
  std::map<Id, FiniteGroup> groups_;
};

GroupPresheaf constant_group_presheaf(std::shared_ptr<const FiniteSite> site,
                                      const FiniteGroup& g);

// Plus construction with the induced sectionwise group structure
// (pointwise multiplication of matching families).
struct GroupPlusResult {
  GroupPresheaf plus;
  std::map<Id, std::map<Id, Id>> unit_map;
};

GroupPlusResult plus_group(const GroupPresheaf& g);
GroupPlusResult sheafify_group(const GroupPresheaf& g);

CheckResult is_group_sheaf(const GroupPresheaf& g);

// Sectionwise group maps commuting with restriction.
using GroupPresheafMap = std::map<Id, std::map<Id, Id>>;

std::vector<Violation> validate_group_map(const GroupPresheaf& g,
                                          const GroupPresheaf& h,
                                          const GroupPresheafMap& f);

// All natural sectionwise isomorphisms g -> h, brute force with pruning.
std::vector<GroupPresheafMap> group_presheaf_isos(const GroupPresheaf& g,
                                                  const GroupPresheaf& h);

// Structure-preserving analogue of restrict_to_slice.
GroupPresheaf restrict_group_to_slice(const GroupPresheaf& h, const FiniteSite& base,
                                      const Id& phi);

}  // namespace gerbecalc
