#pragma once

#include <memory>
#include <mutex>

#include "gerbecalc/category.hpp"

namespace gerbecalc {

// A sieve on U is stored as its member set: morphisms with target U closed
// under precomposition. Coverings are materialized explicitly and kept
// upward-closed, so "is this sieve covering" is a set lookup.
class FiniteSite {
 public:
  FiniteSite(FiniteCategory cat, std::map<Id, std::set<std::set<Id>>> covering);

  // Smallest topology containing the generators: adds maximal sieves, then
  // closes under upward containment, pullback stability and transitivity.
  static std::shared_ptr<const FiniteSite> make_saturated(
      FiniteCategory cat, const std::map<Id, std::vector<std::set<Id>>>& generators);

  const FiniteCategory& cat() const { return cat_; }
  const std::map<Id, std::set<std::set<Id>>>& covering() const { return covering_; }
  const std::set<std::set<Id>>& covering_on(const Id& u) const;

  bool is_covering(const Id& u, const std::set<Id>& members) const;
  bool is_sieve(const Id& u, const std::set<Id>& members) const;
  std::set<Id> maximal_sieve(const Id& u) const;
  std::set<Id> generated_sieve(const Id& u, const std::vector<Id>& gens) const;

  // Pullback of the sieve R (on tgt(phi)) along phi: the sieve of morphisms g
  // into src(phi) with phi o g in R.
  std::set<Id> pullback_sieve(const Id& phi, const std::set<Id>& members) const;

  // Every sieve on u, sorted. Enumerated once and cached.
  const std::vector<std::set<Id>>& sieves_on(const Id& u) const;

  // Intersection of all covering sieves on u; itself covering in a valid
  // site, and the index of the canonical matching family of a plus section.
  const std::set<Id>& t_min(const Id& u) const;

  std::vector<Violation> validate() const;

  // Slice site over u. Objects are the morphisms into u (their base ids);
  // the morphism with base g into the slice object psi has id g@psi. A sieve
  // on psi is covering iff its set of base morphisms covers dom(psi).
  std::shared_ptr<const FiniteSite> slice(const Id& u) const;

 private:
  FiniteCategory cat_;
  std::map<Id, std::set<std::set<Id>>> covering_;

  mutable std::mutex mu_;
  mutable std::map<Id, std::vector<std::set<Id>>> sieves_cache_;
  mutable std::map<Id, std::set<Id>> t_min_cache_;
  mutable std::map<Id, std::shared_ptr<const FiniteSite>> slice_cache_;
};

std::string format_sieve(const std::set<Id>& members);

// One object, identity morphism, maximal sieve only.
std::shared_ptr<const FiniteSite> terminal_site();

// Maximal sieves only.
std::shared_ptr<const FiniteSite> trivial_site(FiniteCategory cat);

// Poset of opens of a finite space, ordered by inclusion, with the topology
// generated by unions: a family of opens inside u covers u iff its union is
// u. The empty open is covered by the empty family.
std::shared_ptr<const FiniteSite> opens_site(
    const std::vector<std::pair<Id, std::set<Id>>>& opens);

}  // namespace gerbecalc
