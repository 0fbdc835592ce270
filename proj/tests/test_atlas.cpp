#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "gerbecalc/atlas.hpp"
#include "oracle.hpp"

using namespace gerbecalc;

namespace {

std::shared_ptr<const FiniteSite> two_point_space() {
  return opens_site({{"e", {}}, {"a", {"x"}}, {"b", {"y"}}, {"ab", {"x", "y"}}});
}

// Unit-preserving multiplicative bijections found by raw permutation search.
std::vector<std::map<Id, Id>> raw_group_isos(const FiniteGroup& a,
                                             const FiniteGroup& b) {
  std::vector<std::map<Id, Id>> out;
  const std::vector<Id>& ae = a.elements();
  std::vector<Id> be = b.elements();
  if (ae.size() != be.size()) return out;
  std::sort(be.begin(), be.end());
  do {
    std::map<Id, Id> f;
    for (size_t i = 0; i < ae.size(); ++i) f[ae[i]] = be[i];
    bool ok = f.at(a.unit()) == b.unit();
    for (const Id& x : ae)
      for (const Id& y : ae)
        ok = ok && f.at(a.mul(x, y)) == b.mul(f.at(x), f.at(y));
    if (ok) out.push_back(f);
  } while (std::next_permutation(be.begin(), be.end()));
  return out;
}

// Natural families of sectionwise group isomorphisms, counted by filtering
// the full product of raw candidates rather than by pruned backtracking.
size_t natural_iso_count(const GroupPresheaf& s, const GroupPresheaf& t) {
  const auto& cat = s.site()->cat();
  const std::vector<Id>& obj = cat.objects();
  std::vector<std::vector<std::map<Id, Id>>> candidates;
  for (const Id& psi : obj) {
    candidates.push_back(raw_group_isos(s.group_at(psi), t.group_at(psi)));
    if (candidates.back().empty()) return 0;
  }
  std::map<Id, size_t> slot;
  for (size_t i = 0; i < obj.size(); ++i) slot[obj[i]] = i;

  size_t count = 0;
  std::vector<size_t> pick(obj.size(), 0);
  while (true) {
    bool natural = true;
    for (const auto& m : cat.morphisms()) {
      const auto& up = candidates[slot.at(m.tgt)][pick[slot.at(m.tgt)]];
      const auto& down = candidates[slot.at(m.src)][pick[slot.at(m.src)]];
      for (const Id& x : s.underlying().sections(m.tgt))
        if (t.underlying().restrict(m.id, up.at(x)) !=
            down.at(s.underlying().restrict(m.id, x))) {
          natural = false;
          break;
        }
      if (!natural) break;
    }
    if (natural) ++count;
    size_t i = 0;
    while (i < pick.size() && ++pick[i] == candidates[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return count;
}

GroupPresheaf constant_sheaf(std::shared_ptr<const FiniteSite> site, const Id& u,
                             const FiniteGroup& g) {
  return sheafify_group(constant_group_presheaf(site->slice(u), g)).plus;
}

size_t cells_between(const TwoGroupoid& t, const Id& f, const Id& g) {
  return t.two_cells_between(f, g).size();
}

}  // namespace

TEST_CASE("constant atlases validate and pin the sheafified section counts") {
  auto site = two_point_space();
  GroupSheafAtlas f = constant_atlas(site, {cyclic_group(2)});
  CHECK(f.validate().empty());
  CHECK(f.sheaves_at("ab").size() == 1);
  CHECK(f.has_sheaf("a", "c2"));
  CHECK(f.restrict_object("a2ab", "c2") == "c2");

  // Independent colimit recount of the sheafification over ab.
  Presheaf raw = constant_group_presheaf(site->slice("ab"), cyclic_group(2))
                     .underlying();
  Presheaf twice = oracle::plus(oracle::plus(raw).plus).plus;
  const GroupPresheaf& s = f.sheaf("ab", "c2");
  for (const Id& psi : site->slice("ab")->cat().objects())
    CHECK(s.underlying().sections(psi).size() == twice.sections(psi).size());
  CHECK(s.underlying().sections("1ab").size() == 4);
  CHECK(s.underlying().sections("a2ab").size() == 2);
  CHECK(s.underlying().sections("e2ab").size() == 1);
}

TEST_CASE("materializing the cyclic atlas lists each automorphism and conjugator") {
  auto site = terminal_site();
  GroupSheafAtlas f = constant_atlas(site, {cyclic_group(3)});
  MaterializedAtlas m = materialize(f);
  CHECK(m.two.validate().empty());

  const TwoGroupoid& t = m.two.at("pt");
  CHECK(t.objects() == std::vector<Id>{"c3"});
  CHECK(raw_group_isos(f.sheaf("pt", "c3").group_at("1pt"),
                       f.sheaf("pt", "c3").group_at("1pt"))
            .size() == 2);
  CHECK(t.one_cells().size() == 2);
  CHECK(m.iso_data.at("pt").count("(c3>c3,0)") == 1);
  CHECK(m.iso_data.at("pt").count("(c3>c3,1)") == 1);

  // One 2-cell per conjugator, all endo since the group is abelian.
  CHECK(t.two_cells().size() == 6);
  for (const auto& [id, d] : t.two_cells()) CHECK(d.src == d.tgt);
  const Id& one = t.base().identity_of("c3");
  CHECK(cells_between(t, one, one) == 3);

  // The identity 2-cell conjugates by the unit.
  const GroupPresheaf& s = f.sheaf("pt", "c3");
  CHECK(m.conjugator.at("pt").at(t.vid(one)) == s.unit("1pt"));

  // Inversion survives in the path component groupoid.
  PiGroupoidResult pi = pi_groupoid(m.two);
  CHECK(pi.pi.at("pt").arrows_between("c3", "c3").size() == 2);
}

TEST_CASE("materializing the symmetric atlas pins one conjugator per iso pair") {
  auto site = terminal_site();
  GroupSheafAtlas f = constant_atlas(site, {symmetric_group_3()});
  MaterializedAtlas m = materialize(f);
  CHECK(m.two.validate().empty());

  const TwoGroupoid& t = m.two.at("pt");
  CHECK(raw_group_isos(f.sheaf("pt", "s3").group_at("1pt"),
                       f.sheaf("pt", "s3").group_at("1pt"))
            .size() == 6);
  CHECK(t.one_cells().size() == 6);
  CHECK(t.two_cells().size() == 36);

  // Trivial center: each ordered pair of isos is linked by exactly one cell.
  for (const auto& a : t.one_cells())
    for (const auto& b : t.one_cells()) CHECK(cells_between(t, a.id, b.id) == 1);

  PiGroupoidResult pi = pi_groupoid(m.two);
  CHECK(pi.pi.at("pt").arrows_between("s3", "s3").size() == 1);
}

TEST_CASE("the two point constant atlas materializes with natural isos only") {
  auto site = two_point_space();
  GroupSheafAtlas f = constant_atlas(site, {cyclic_group(2)});
  MaterializedAtlas m = materialize(f);
  CHECK(m.two.validate().empty());

  for (const Id& u : site->cat().objects()) {
    const GroupPresheaf& s = f.sheaf(u, "c2");
    CHECK(m.two.at(u).one_cells().size() == natural_iso_count(s, s));
  }
  // Factor swapping is unnatural, so only the identity survives over ab.
  CHECK(m.two.at("ab").one_cells().size() == 1);
  CHECK(m.two.at("ab").two_cells().size() == 4);
  CHECK(m.two.at("e").two_cells().size() == 1);
}

TEST_CASE("saturation closes a single generator under pullback") {
  auto site = two_point_space();
  GroupPresheaf s = constant_sheaf(site, "ab", cyclic_group(2));
  GroupSheafAtlas f = saturate_atlas(site, {{"ab", {{"c", s}}}});
  CHECK(f.validate().empty());

  CHECK(f.sheaves_at("ab").size() == 1);
  CHECK(f.sheaves_at("a").size() == 1);
  CHECK(f.sheaves_at("e").size() == 1);
  CHECK(f.has_sheaf("a", "(c,a2ab)"));
  CHECK(f.has_sheaf("b", "(c,b2ab)"));
  CHECK(f.has_sheaf("e", "(c,e2ab)"));

  // The two routes down to the empty open reuse one entry.
  CHECK(f.restrict_object("e2a", "(c,a2ab)") == "(c,e2ab)");
  CHECK(f.restrict_object("e2b", "(c,b2ab)") == "(c,e2ab)");
  CHECK(f.sheaf("a", "(c,a2ab)") == pullback_sheaf(s, *site, "a2ab"));
}

TEST_CASE("extension folds equal entries and suffixes clashing names") {
  auto site = terminal_site();
  GroupSheafAtlas f = constant_atlas(site, {cyclic_group(2)});
  GroupSheafAtlas g = constant_atlas(site, {cyclic_group(2), cyclic_group(3)});
  GroupSheafAtlas both = extend_atlas(f, g);
  CHECK(both.validate().empty());
  CHECK(both.sheaves_at("pt").size() == 2);
  CHECK(both.has_sheaf("pt", "c2"));
  CHECK(both.has_sheaf("pt", "c3"));

  // A fresh entry arriving under a taken name is suffixed.
  GroupSheafAtlas clash(site, {{"pt", {{"c2", constant_sheaf(site, "pt", cyclic_group(3))}}}},
                        {{"1pt", {{"c2", "c2"}}}});
  CHECK(clash.validate().empty());
  GroupSheafAtlas merged = extend_atlas(f, clash);
  CHECK(merged.sheaves_at("pt").size() == 2);
  CHECK(merged.has_sheaf("pt", "(c2,2)"));
  CHECK(merged.restrict_object("1pt", "(c2,2)") == "(c2,2)");

  CHECK(find_sheaf(merged, "pt", constant_sheaf(site, "pt", cyclic_group(3))) ==
        Id("(c2,2)"));
  CHECK(find_sheaf(merged, "pt", constant_sheaf(site, "pt", klein_group())) ==
        std::nullopt);
}

TEST_CASE("canonical renaming is idempotent and keeps the group laws") {
  auto site = terminal_site();
  GroupPresheaf s = constant_sheaf(site, "pt", cyclic_group(3));
  GroupPresheaf r = canonical_rename(s);
  CHECK(r.underlying().sections("1pt") == std::vector<Id>{"s0", "s1", "s2"});
  CHECK(is_group_sheaf(r).ok);
  CHECK(canonical_rename(r) == r);
  CHECK(r != s);
  CHECK(natural_iso_count(s, r) == 2);
}

TEST_CASE("inclusions of saturated subatlases are local weak equivalences") {
  auto site = terminal_site();
  GroupPresheaf s = constant_sheaf(site, "pt", cyclic_group(3));
  GroupPresheaf r = canonical_rename(s);
  GroupSheafAtlas sub = constant_atlas(site, {cyclic_group(3)});
  GroupSheafAtlas super(site, {{"pt", {{"c3", s}, {"copy", r}}}},
                        {{"1pt", {{"c3", "c3"}, {"copy", "copy"}}}});
  CHECK(super.validate().empty());

  MaterializedAtlas msub = materialize(sub);
  MaterializedAtlas msuper = materialize(super);
  CHECK(msuper.two.validate().empty());
  CHECK(msuper.two.at("pt").one_cells().size() == 8);
  CHECK(msuper.two.at("pt").two_cells().size() == 24);

  TwoGroupoidMap inc = atlas_inclusion(msub, msuper);
  CHECK(validate_two_map(msub.two, msuper.two, inc).empty());
  CHECK(is_lwe2(msub.two, msuper.two, inc).ok);

  // Both entries collapse to one path component with the same automorphisms.
  PiGroupoidResult pi = pi_groupoid(msuper.two);
  CHECK(pi.pi.at("pt").arrows_between("c3", "copy").size() == 2);
}

TEST_CASE("g star of a constant gerbe recovers the constant atlas") {
  auto site = two_point_space();
  GroupoidPresheaf g = constant_groupoid_presheaf(
      site, group_as_groupoid(cyclic_group(2), "o"));
  REQUIRE(is_gerbe(g).ok);

  GStarResult star = g_star(g);
  CHECK(star.atlas.validate().empty());
  CHECK(star.nu.at("ab").at("o") == "o");

  GroupSheafAtlas constant = constant_atlas(site, {cyclic_group(2)});
  for (const Id& u : site->cat().objects())
    CHECK(star.atlas.sheaf(u, "o") == constant.sheaf(u, "c2"));
  CHECK(star.mat.two.at("ab").one_cells().size() == 1);
  CHECK(star.mat.two.at("ab").two_cells().size() == 4);
}

TEST_CASE("the canonical cocycle is a strict map into g star") {
  auto site = terminal_site();
  GroupoidPresheaf g = constant_groupoid_presheaf(
      site, group_as_groupoid(cyclic_group(3), "o"));
  CanonicalCocycle c = canonical_cocycle(g);
  CHECK(validate_two_map(c.a, c.star.mat.two, c.k).empty());
  CHECK(is_lwe2(c.a, point_two_presheaf(site), map_to_point(c.a)).ok);

  // Conjugation in an abelian group sheafifies to the identity iso.
  const TwoGroupoid& t = c.star.mat.two.at("pt");
  const Id& one = t.base().identity_of("o");
  for (const auto& a : g.at("pt").arrows())
    CHECK(c.k.at.at("pt").ar.at(a.id) == one);

  // Sheafified unit sends e, r1, r2 to f0, f1, f2 in sorted family order, so
  // the 2-cell e>r1 conjugates by f1.
  CHECK(g.aut_sheaf("pt", "o")->unit_map.at("1pt").at("r1") == "f1");
  CHECK(c.k.at.at("pt").two.at("e>r1") == mint_product(one, "f1"));
}

TEST_CASE("the nonabelian canonical cocycle conjugates units by units") {
  auto site = terminal_site();
  FiniteGroup s3 = symmetric_group_3();
  GroupoidPresheaf g =
      constant_groupoid_presheaf(site, group_as_groupoid(s3, "o"));
  CanonicalCocycle c = canonical_cocycle(g);
  CHECK(validate_two_map(c.a, c.star.mat.two, c.k).empty());

  const auto& unit = g.aut_sheaf("pt", "o")->unit_map.at("1pt");
  for (const auto& a : g.at("pt").arrows()) {
    const GroupPresheafMap& data = c.star.mat.iso_data.at("pt").at(
        c.k.at.at("pt").ar.at(a.id));
    for (const Id& x : s3.elements())
      CHECK(data.at("1pt").at(unit.at(x)) == unit.at(s3.conj(a.id, x)));
  }
}

TEST_CASE("the canonical cocycle of a two point gerbe resolves to the point") {
  auto site = two_point_space();
  GroupoidPresheaf g = constant_groupoid_presheaf(
      site, group_as_groupoid(cyclic_group(2), "o"));
  CanonicalCocycle c = canonical_cocycle(g);
  CHECK(validate_two_map(c.a, c.star.mat.two, c.k).empty());
  CHECK(is_lwe2(c.a, point_two_presheaf(site), map_to_point(c.a)).ok);

  GroupoidPresheaf split = constant_groupoid_presheaf(
      site, discrete_groupoid({"x", "y"}));
  CHECK_FALSE(is_gerbe(split).ok);
  CHECK_THROWS_AS(canonical_cocycle(split), precondition_error);
}

TEST_CASE("atlas validation localizes each failure") {
  auto site = two_point_space();
  GroupPresheaf s = constant_sheaf(site, "ab", cyclic_group(2));

  GroupSheafAtlas missing(site, {{"ab", {{"c", s}}}}, {});
  auto v = missing.validate();
  REQUIRE_FALSE(v.empty());
  CHECK(v.front().axiom == "atlas-restrict-missing");

  GroupSheafAtlas unknown(site, {{"ab", {{"c", s}}}},
                          {{"1ab", {{"c", "c"}}},
                           {"a2ab", {{"c", "ghost"}}},
                           {"b2ab", {{"c", "ghost"}}},
                           {"e2ab", {{"c", "ghost"}}}});
  v = unknown.validate();
  REQUIRE_FALSE(v.empty());
  CHECK(v.front().axiom == "atlas-restrict-unknown");

  // A raw constant presheaf over ab is separated but not a sheaf.
  GroupSheafAtlas unsheafed(
      site, {{"ab", {{"c", constant_group_presheaf(site->slice("ab"),
                                                   cyclic_group(2))}}}},
      {{"1ab", {{"c", "c"}}}});
  v = unsheafed.validate();
  REQUIRE_FALSE(v.empty());
  CHECK(v.front().axiom == "atlas-not-sheaf");

  GroupSheafAtlas twisted(
      terminal_site(),
      {{"pt",
        {{"c2", constant_sheaf(terminal_site(), "pt", cyclic_group(2))},
         {"c3", constant_sheaf(terminal_site(), "pt", cyclic_group(3))}}}},
      {{"1pt", {{"c2", "c3"}, {"c3", "c2"}}}});
  v = twisted.validate();
  REQUIRE_FALSE(v.empty());
  CHECK(v.front().axiom == "atlas-restrict-closure");

  MaterializedAtlas m = materialize(constant_atlas(terminal_site(), {cyclic_group(2)}));
  CHECK_THROWS_AS(find_iso(m, "pt", "c2", "ghost", {}), gc_error);
  CHECK_THROWS_AS(m.atlas.sheaf("pt", "ghost"), gc_error);
}
