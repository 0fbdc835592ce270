#pragma once

#include "gerbecalc/groth.hpp"

namespace gerbecalc {

// Scope of an enumeration: sections may carry at most max_objects objects
// and vertex groups of order at most max_aut_order; budget caps the number
// of candidates an enumeration may examine before it throws budget_error.
struct Bounds {
  size_t max_objects = 0;
  size_t max_aut_order = 0;
  size_t budget = 0;
};

// A finite slice of the classification problem: the site, the enumeration
// bounds and the atlas of coefficient sheaves.
struct Corpus {
  std::shared_ptr<const FiniteSite> site;
  Bounds bounds;
  GroupSheafAtlas atlas;
};

// Every groupoid with at most max_objects objects and vertex groups of
// order at most max_aut_order, one per isomorphism class, built from
// disjoint blocks with objects x0, x1, ... and arrows ai_j_g. The empty
// groupoid is included.
std::vector<FiniteGroupoid> groupoid_catalog(const Bounds& b);

// All functors s -> t, enumerated blockwise through spanning trees and
// vertex group homomorphisms; deterministic order with the sectionwise
// isomorphisms listed first.
std::vector<GroupoidHom> all_functors(const FiniteGroupoid& s,
                                      const FiniteGroupoid& t);

// The arrows x -> x of g as a group under composition.
FiniteGroup vertex_group(const FiniteGroupoid& g, const Id& x);

// Presheaves of groupoids assembled from the catalog over every choice of
// restriction along the covering generators, filtered to the gerbes whose
// sheafified automorphism presheaves match atlas entries. examined counts
// the assembled candidates; budget_error reports an overrun up front.
struct GerbePool {
  std::vector<GroupoidPresheaf> items;
  size_t examined = 0;
};

GerbePool enumerate_gerbes(const Corpus& c, size_t jobs = 1);

// Cocycles (A, K) with A the resolution of an enumerated gerbe and K any
// strict map into the materialized atlas; A presheaves are shared through
// base indices. examined counts the candidate maps tried.
struct CocyclePool {
  MaterializedAtlas f;
  std::vector<TwoGroupoidPresheaf> bases;
  struct Item {
    size_t base;
    TwoGroupoidMap k;
  };
  std::vector<Item> items;
  size_t examined = 0;

  Cocycle cocycle(size_t i) const;
};

CocyclePool enumerate_cocycles(const Corpus& c, size_t jobs = 1);

// Path components of an enumerated corpus: nodes in enumeration order,
// each mapped to the least node of its zig-zag class. Connectivity is
// searched within the bounds, so classes may be finer than the unbounded
// ones; counts are scoped by the reported bounds.
struct Pi0Classes {
  std::vector<Id> nodes;
  std::map<Id, Id> cls;
  std::vector<Id> reps;
  size_t examined = 0;
};

// Classes of enumerated gerbes under single local weak equivalence steps
// in both directions.
Pi0Classes pi0_gerbes(const Corpus& c, size_t jobs = 1);

// Classes of enumerated cocycles under cocycle morphisms in both
// directions, conjugation cylinders and the homotopy path of each node.
Pi0Classes pi0_cocycles(const Corpus& c, size_t jobs = 1);

// The canonical cocycle of a gerbe retargeted into the atlas. Throws
// precondition_error when g is not a gerbe or the atlas lacks one of its
// automorphism sheaves, naming the missing entries.
Cocycle phi(const GroupoidPresheaf& g, const MaterializedAtlas& f);

// The Grothendieck construction of a cocycle with its gerbe certificate.
struct PsiClassResult {
  GrothResult groth;
  CheckResult gerbe;
};

PsiClassResult psi_class(const Cocycle& c);

// Both class sets, the class maps induced by phi and the construction, and
// the verdict that they are mutually inverse bijections. witnesses lists
// every failed check.
struct Pi0Report {
  Bounds bounds;
  Pi0Classes gerbes;
  Pi0Classes cocycles;
  std::map<Id, Id> phi_classes;
  std::map<Id, Id> psi_classes;
  bool bijection = false;
  std::vector<std::string> witnesses;
};

Pi0Report verify_theorem20(const Corpus& c, size_t jobs = 1);

// Comparison of a corpus against an enlarged atlas: the inclusion is a
// local weak equivalence of 2-groupoid presheaves, retargeting induces a
// bijection on cocycle classes, and the construction induces a bijection
// from cocycle classes to gerbe classes. Hypothesis failures (entries
// missing from the enlargement, or enlargement entries not isomorphic to
// any small entry) throw precondition_error.
struct Theorem23Report {
  Bounds bounds;
  CheckResult inclusion_lwe2;
  bool retarget_bijective = false;
  bool groth_bijective = false;
  size_t small_classes = 0;
  size_t large_classes = 0;
  size_t gerbe_classes = 0;
  std::vector<std::string> witnesses;
  bool ok = false;
};

Theorem23Report verify_theorem23(const Corpus& c, const GroupSheafAtlas& fprime,
                                 size_t jobs = 1);

// Stable line-oriented renderings with a versioned header, identical
// across runs on identical inputs.
std::string format_report(const Pi0Report& r);
std::string format_report(const Theorem23Report& r);

}  // namespace gerbecalc
