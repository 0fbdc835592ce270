#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gerbecalc/ids.hpp"

namespace gerbecalc {

struct MorphismData {
  Id id;
  Id src;
  Id tgt;

  bool operator==(const MorphismData&) const = default;
};

// A reported axiom failure. `axiom` is a short slug, `detail` names the
// offending ids in a fixed order so reports are stable.
struct Violation {
  std::string axiom;
  std::string detail;
};

// Finite category with a total composition table on composable pairs.
// All ids are canonical strings; iteration order is id order throughout.
class FiniteCategory {
 public:
  FiniteCategory() = default;
  FiniteCategory(std::vector<Id> objects, std::vector<MorphismData> morphisms,
                 std::map<Id, Id> identity,
                 std::map<std::pair<Id, Id>, Id> compose);

  const std::vector<Id>& objects() const { return objects_; }
  const std::vector<MorphismData>& morphisms() const { return morphisms_; }

  bool has_object(const Id& u) const;
  bool has_morphism(const Id& f) const;
  const MorphismData& morphism(const Id& f) const;
  const Id& src(const Id& f) const { return morphism(f).src; }
  const Id& tgt(const Id& f) const { return morphism(f).tgt; }
  const Id& identity_of(const Id& u) const;

  // g after f; requires tgt(f) == src(g).
  const Id& compose(const Id& g, const Id& f) const;
  std::optional<Id> try_compose(const Id& g, const Id& f) const;

  // Morphisms with target u, sorted by id.
  const std::vector<Id>& morphisms_into(const Id& u) const;

  const std::map<Id, Id>& identity_table() const { return identity_; }
  const std::map<std::pair<Id, Id>, Id>& compose_table() const { return compose_; }

  std::vector<Violation> validate() const;

  bool operator==(const FiniteCategory&) const = default;

 private:
  std::vector<Id> objects_;
  std::vector<MorphismData> morphisms_;
  std::map<Id, MorphismData> by_id_;
  std::map<Id, Id> identity_;
  std::map<std::pair<Id, Id>, Id> compose_;
  std::map<Id, std::vector<Id>> into_;
};

// Convenience builder for finite posets: `leq` lists the generating relations
// (a <= b); identities, transitive closure and composites are derived. The
// morphism a -> b is named "a2b" unless a == b.
FiniteCategory poset_category(const std::vector<Id>& elements,
                              const std::vector<std::pair<Id, Id>>& leq);

}  // namespace gerbecalc
