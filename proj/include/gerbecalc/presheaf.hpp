#pragma once

#include <memory>

#include "gerbecalc/site.hpp"

namespace gerbecalc {

// Verdict of a yes/no check; `witness` names the first offending ids (in
// iteration order, so lexicographically least) when the answer is no.
struct CheckResult {
  bool ok = true;
  std::string witness;
};

// Set-valued presheaf on a fixed finite site. Sections are id strings; the
// restriction table of a morphism phi: V -> U sends sections over U to
// sections over V.
class Presheaf {
 public:
  Presheaf() = default;
  Presheaf(std::shared_ptr<const FiniteSite> site,
           std::map<Id, std::vector<Id>> sections,
           std::map<Id, std::map<Id, Id>> restriction);

  const std::shared_ptr<const FiniteSite>& site() const { return site_; }
  const std::vector<Id>& sections(const Id& u) const;
  bool has_section(const Id& u, const Id& x) const;
  const Id& restrict(const Id& phi, const Id& x) const;

  const std::map<Id, std::vector<Id>>& section_tables() const { return sections_; }
  const std::map<Id, std::map<Id, Id>>& restriction_tables() const {
    return restriction_;
  }

  std::vector<Violation> validate() const;

  // Structural equality of the tables; the site is not compared.
  bool operator==(const Presheaf& o) const {
    return sections_ == o.sections_ && restriction_ == o.restriction_;
  }
  bool operator!=(const Presheaf& o) const { return !(*this == o); }

 private:
  std::shared_ptr<const FiniteSite> site_;
  std::map<Id, std::vector<Id>> sections_;
  std::map<Id, std::map<Id, Id>> restriction_;
};

// A matching family on a sieve assigns to each member phi a section over
// dom(phi), compatibly with restriction.
using Family = std::map<Id, Id>;

std::string format_family(const Family& fam);

bool is_matching_family(const Presheaf& x, const Id& u, const std::set<Id>& sieve,
                        const Family& fam);

// All matching families on the given sieve, sorted by format_family.
std::vector<Family> matching_families(const Presheaf& x, const Id& u,
                                      const std::set<Id>& sieve);

// The sieve on u of morphisms equalizing two sections over u.
std::set<Id> agreement_sieve(const Presheaf& x, const Id& u, const Id& a, const Id& b);

// Plus construction. Sections of `plus` over u are the matching families on
// the minimal covering sieve of u, named f0, f1, ... in format_family order;
// `unit` is the canonical map X -> X^+ by restriction.
struct PlusResult {
  Presheaf plus;
  std::map<Id, std::map<Id, Family>> families;
  std::map<Id, std::map<Id, Id>> unit;

  const Family& family_of(const Id& u, const Id& plus_id) const;
};

PlusResult plus_construction(const Presheaf& x);

// Plus applied twice, with the composite unit.
struct SheafifyResult {
  Presheaf sheaf;
  std::map<Id, std::map<Id, Id>> unit;
};

SheafifyResult sheafify(const Presheaf& x);

CheckResult is_separated(const Presheaf& x);
CheckResult is_sheaf(const Presheaf& x);

// Map of presheaves over a common site: at[u] sends sections of the source
// over u to sections of the target.
struct PresheafMap {
  std::map<Id, std::map<Id, Id>> at;

  const Id& apply(const Id& u, const Id& x) const;
};

std::vector<Violation> validate_presheaf_map(const Presheaf& x, const Presheaf& y,
                                             const PresheafMap& f);

// The induced map X^+ -> Y^+, acting on families memberwise.
PresheafMap plus_map(const PlusResult& px, const PlusResult& py, const PresheafMap& f);

// f is a local epimorphism when every section of the target restricts into
// the image of f along a covering sieve; a local monomorphism when any two
// sections identified by f agree along a covering sieve.
CheckResult is_local_epi(const Presheaf& x, const Presheaf& y, const PresheafMap& f);
CheckResult is_local_mono(const Presheaf& x, const Presheaf& y, const PresheafMap& f);
CheckResult is_local_iso(const Presheaf& x, const Presheaf& y, const PresheafMap& f);

Presheaf constant_presheaf(std::shared_ptr<const FiniteSite> site,
                           const std::vector<Id>& elements);

// Restriction of a presheaf living on base.slice(tgt(phi)) along the
// postcomposition functor base.slice(src(phi)) -> base.slice(tgt(phi)).
// Section ids are reused verbatim.
Presheaf restrict_to_slice(const Presheaf& h, const FiniteSite& base, const Id& phi);

// The subpresheaf of y spanned by the values of f; closed under restriction
// by naturality.
Presheaf image_presheaf(const Presheaf& x, const Presheaf& y, const PresheafMap& f);

}  // namespace gerbecalc
