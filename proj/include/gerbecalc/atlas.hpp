#pragma once

#include <optional>

#include "gerbecalc/two_gpd.hpp"

namespace gerbecalc {

// Finite stand-in for the 2-groupoid presheaf of sheaves of groups: per
// site object a named list of group sheaves on the slice, with object
// restriction data matching slice pullback on the nose. Isomorphisms and
// conjugation 2-cells are generated by materialize, so fullness holds by
// construction; tests recount both layers with an independent oracle.
class GroupSheafAtlas {
 public:
  GroupSheafAtlas() = default;
  GroupSheafAtlas(std::shared_ptr<const FiniteSite> site,
                  std::map<Id, std::map<Id, GroupPresheaf>> sheaves,
                  std::map<Id, std::map<Id, Id>> restriction);

  const std::shared_ptr<const FiniteSite>& site() const { return site_; }
  const std::map<Id, GroupPresheaf>& sheaves_at(const Id& u) const;
  bool has_sheaf(const Id& u, const Id& i) const;
  const GroupPresheaf& sheaf(const Id& u, const Id& i) const;

  // The entry over src(phi) that the entry i over tgt(phi) pulls back to.
  const Id& restrict_object(const Id& phi, const Id& i) const;

  const std::map<Id, std::map<Id, GroupPresheaf>>& sheaf_tables() const {
    return sheaves_;
  }
  const std::map<Id, std::map<Id, Id>>& restriction_tables() const {
    return restriction_;
  }

  // Every entry is a sheaf, restriction data is total and functorial, and
  // each pullback equals its listed entry on the nose.
  std::vector<Violation> validate() const;

  bool operator==(const GroupSheafAtlas& o) const {
    return sheaves_ == o.sheaves_ && restriction_ == o.restriction_;
  }
  bool operator!=(const GroupSheafAtlas& o) const { return !(*this == o); }

 private:
  std::shared_ptr<const FiniteSite> site_;
  std::map<Id, std::map<Id, GroupPresheaf>> sheaves_;
  std::map<Id, std::map<Id, Id>> restriction_;
};

// Pullback of a group sheaf on slice(tgt(phi)) to slice(src(phi)), section
// ids kept verbatim.
GroupPresheaf pullback_sheaf(const GroupPresheaf& s, const FiniteSite& base,
                             const Id& phi);

// Close the given per-object entries under pullback along every morphism.
// A pullback reuses an existing entry when the tables coincide and is
// otherwise added under the minted name (i,phi).
GroupSheafAtlas saturate_atlas(
    std::shared_ptr<const FiniteSite> site,
    const std::map<Id, std::map<Id, GroupPresheaf>>& generators);

// Sheafified constant presheaf of each group at every object, named by the
// group's name.
GroupSheafAtlas constant_atlas(std::shared_ptr<const FiniteSite> site,
                               const std::vector<FiniteGroup>& groups);

// Union keeping f's names; entries of g equal to an entry of f fold in,
// fresh ones keep their name, suffixed (name,2), (name,3), ... on clashes.
GroupSheafAtlas extend_atlas(const GroupSheafAtlas& f, const GroupSheafAtlas& g);

// Name of the entry at u whose tables equal s, if any.
std::optional<Id> find_sheaf(const GroupSheafAtlas& f, const Id& u,
                             const GroupPresheaf& s);

// Sections renamed s0, s1, ... per slice object in sorted order,
// consistently through restriction and multiplication tables.
GroupPresheaf canonical_rename(const GroupPresheaf& s);

// The 2-groupoid presheaf generated by an atlas. Objects over u are the
// listed entries; 1-cells are all isomorphisms between them, named
// (i>j,n) with n the position in group_presheaf_isos order; 2-cells are
// one per pair (iso f, global section k of the target sheaf), named
// (f,k): f -> c_k o f. iso_data and conjugator index the generated cells.
struct MaterializedAtlas {
  GroupSheafAtlas atlas;
  TwoGroupoidPresheaf two;
  std::map<Id, std::map<Id, GroupPresheafMap>> iso_data;
  std::map<Id, std::map<Id, Id>> conjugator;
};

MaterializedAtlas materialize(const GroupSheafAtlas& f);

// Iso id over u with the given endpoints and sectionwise data; throws
// gc_error when absent.
const Id& find_iso(const MaterializedAtlas& m, const Id& u, const Id& src,
                   const Id& tgt, const GroupPresheafMap& data);

// Cellwise inclusion of the materialization of one atlas into another that
// contains every entry of the first up to renaming; matches sheaves by
// data, 1-cells by data and 2-cells by conjugator. Throws gc_error when an
// entry of sub has no data-equal entry in super.
TwoGroupoidMap atlas_inclusion(const MaterializedAtlas& sub,
                               const MaterializedAtlas& super);

// The atlas of sheafified automorphism sheaves of g, one object per
// (section object, groupoid object), together with its materialization,
// the 2-groupoid presheaf G_*. nu records the object correspondence
// x -> G~_x, here the identity table.
struct GStarResult {
  GroupSheafAtlas atlas;
  MaterializedAtlas mat;
  std::map<Id, std::map<Id, Id>> nu;
};

GStarResult g_star(const GroupoidPresheaf& g);

// Sectionwise data of the sheafified conjugation by the arrow alpha of
// g(u), between the sheafified automorphism presheaves of its endpoints.
GroupPresheafMap sheafified_conjugation(const GroupoidPresheaf& g, const Id& u,
                                        const Id& alpha);

// Strict map resolution(g) -> the materialized atlas, sending the object x
// over u to entry.at(u).at(x), an arrow to its sheafified conjugation iso
// and the 2-cell f>h to conjugation by the unit image of h o f^{-1}. Each
// named entry must carry data equal to the sheafified automorphism sheaf
// of its object.
TwoGroupoidMap conjugation_cocycle(const GroupoidPresheaf& g,
                                   const MaterializedAtlas& f,
                                   const std::map<Id, std::map<Id, Id>>& entry);

// The conjugation cocycle of a gerbe: the resolution of g with the strict
// map into the materialized g_star(g) sending a 1-cell alpha to the
// sheafified conjugation by alpha and a 2-cell f>h to conjugation by the
// unit image of h o f^{-1}. Throws precondition_error when g is not a
// gerbe.
struct CanonicalCocycle {
  TwoGroupoidPresheaf a;
  GStarResult star;
  TwoGroupoidMap k;
};

CanonicalCocycle canonical_cocycle(const GroupoidPresheaf& g);

}  // namespace gerbecalc
