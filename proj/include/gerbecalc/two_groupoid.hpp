#pragma once

#include "gerbecalc/groupoid.hpp"

namespace gerbecalc {

// Endpoints of a 2-cell: a parallel pair of 1-cells.
struct TwoCellData {
  Id src;
  Id tgt;

  bool operator==(const TwoCellData&) const = default;
};

// Finite strict 2-groupoid: a groupoid enriched in groupoids. The base
// groupoid holds the objects and 1-cells; 2-cells connect parallel 1-cells
// and compose vertically within a hom groupoid and horizontally across
// objects, subject to interchange.
class TwoGroupoid {
 public:
  TwoGroupoid() = default;
  TwoGroupoid(FiniteGroupoid base, std::map<Id, TwoCellData> two_cells,
              std::map<Id, Id> vid, std::map<std::pair<Id, Id>, Id> vcompose,
              std::map<Id, Id> vinverse, std::map<std::pair<Id, Id>, Id> hcompose);

  const FiniteGroupoid& base() const { return base_; }
  const std::vector<Id>& objects() const { return base_.objects(); }
  const std::vector<MorphismData>& one_cells() const { return base_.arrows(); }
  const std::map<Id, TwoCellData>& two_cells() const { return two_cells_; }

  bool has_two_cell(const Id& a) const { return two_cells_.count(a) > 0; }
  const TwoCellData& two_cell(const Id& a) const;
  const Id& src2(const Id& a) const { return two_cell(a).src; }
  const Id& tgt2(const Id& a) const { return two_cell(a).tgt; }

  // The identity 2-cell on a 1-cell.
  const Id& vid(const Id& f) const;

  // b after a, within a hom groupoid and across objects respectively.
  const Id& vcompose(const Id& b, const Id& a) const;
  const Id& hcompose(const Id& b, const Id& a) const;
  const Id& vinverse(const Id& a) const;

  const std::map<Id, Id>& vid_table() const { return vid_; }
  const std::map<std::pair<Id, Id>, Id>& vcompose_table() const { return vcompose_; }
  const std::map<Id, Id>& vinverse_table() const { return vinverse_; }
  const std::map<std::pair<Id, Id>, Id>& hcompose_table() const { return hcompose_; }

  // 2-cells f -> g, sorted by id.
  std::vector<Id> two_cells_between(const Id& f, const Id& g) const;

  // The groupoid of 1-cells x -> y and the 2-cells between them.
  FiniteGroupoid hom_groupoid(const Id& x, const Id& y) const;

  std::vector<Violation> validate() const;

  bool operator==(const TwoGroupoid&) const = default;

 private:
  FiniteGroupoid base_;
  std::map<Id, TwoCellData> two_cells_;
  std::map<Id, Id> vid_;
  std::map<std::pair<Id, Id>, Id> vcompose_;
  std::map<Id, Id> vinverse_;
  std::map<std::pair<Id, Id>, Id> hcompose_;
};

// Identity 2-cells only, one per 1-cell, named f>f.
TwoGroupoid discrete_two_groupoid(const FiniteGroupoid& g);

// Same objects and 1-cells as g, with exactly one 2-cell f>g between every
// parallel pair of 1-cells.
TwoGroupoid resolution_two_groupoid(const FiniteGroupoid& g);

// One object, one 1-cell, and the elements of an abelian group as 2-cells
// under both compositions.
TwoGroupoid suspension_two_groupoid(const FiniteGroup& k, const Id& object);

// One object, the group q as 1-cells, and a 2-cell (a,k): a -> ka for every
// member k of a normal subgroup; horizontal composition twists the subgroup
// part by conjugation.
TwoGroupoid crossed_module_two_groupoid(const FiniteGroup& q,
                                        const std::set<Id>& normal_subgroup,
                                        const Id& object);

// Strict 2-functor between finite 2-groupoids, as three tables.
struct TwoGroupoidHom {
  std::map<Id, Id> ob;
  std::map<Id, Id> ar;
  std::map<Id, Id> two;

  bool operator==(const TwoGroupoidHom&) const = default;
};

// Functor axioms on all three layers for f: g -> h, robust against broken
// inputs.
std::vector<Violation> validate_two_hom(const TwoGroupoid& g, const TwoGroupoid& h,
                                        const TwoGroupoidHom& f);

TwoGroupoidHom identity_two_hom(const TwoGroupoid& g);

// g after f, on all three layers.
TwoGroupoidHom compose_two_homs(const TwoGroupoidHom& g, const TwoGroupoidHom& f);

// Least 1-cell in the 2-cell connectivity class of each 1-cell.
std::map<Id, Id> one_cell_classes(const TwoGroupoid& g);

// Groupoid with the same objects whose arrows are the 2-cell connectivity
// classes of 1-cells, named by their least members.
FiniteGroupoid component_groupoid(const TwoGroupoid& g);

}  // namespace gerbecalc
