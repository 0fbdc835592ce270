#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <memory>

#include "gerbecalc/site.hpp"

using namespace gerbecalc;

namespace {

// Opens of the discrete two-point space {x,y}.
std::shared_ptr<const FiniteSite> two_point_space() {
  return opens_site({{"e", {}}, {"a", {"x"}}, {"b", {"y"}}, {"ab", {"x", "y"}}});
}

// One object, morphisms {1pt, s} with s*s = 1pt.
FiniteCategory cyclic2_category() {
  return FiniteCategory({"pt"}, {{"1pt", "pt", "pt"}, {"s", "pt", "pt"}},
                        {{"pt", "1pt"}},
                        {{{"1pt", "1pt"}, "1pt"},
                         {{"1pt", "s"}, "s"},
                         {{"s", "1pt"}, "s"},
                         {{"s", "s"}, "1pt"}});
}

bool has_axiom(const std::vector<Violation>& vs, const std::string& axiom) {
  return std::any_of(vs.begin(), vs.end(),
                     [&](const Violation& v) { return v.axiom == axiom; });
}

}  // namespace

TEST_CASE("ids: reserved characters are rejected for user ids") {
  CHECK(valid_user_id("ab"));
  CHECK(valid_user_id("a2b"));
  CHECK_FALSE(valid_user_id(""));
  CHECK_FALSE(valid_user_id("a b"));
  CHECK_FALSE(valid_user_id("g@psi"));
  CHECK_FALSE(valid_user_id("x>y"));
  CHECK_FALSE(valid_user_id("[f|a]"));
  CHECK_THROWS_AS(require_user_id("bad id", "test"), std::invalid_argument);

  CHECK(mint_slice_morphism("g", "psi") == "g@psi");
  CHECK(mint_span("x", "y") == "x>y");
  CHECK(mint_pair_class("f", "al") == "[f|al]");
  CHECK(mint_product("p", "q") == "(p,q)");
}

TEST_CASE("poset category: closure, identities, composition") {
  auto cat = poset_category({"v", "w", "u"}, {{"v", "w"}, {"w", "u"}});
  CHECK(cat.validate().empty());
  CHECK(cat.objects().size() == 3);
  // 3 identities + v<w, w<u and the transitive v<u.
  CHECK(cat.morphisms().size() == 6);
  CHECK(cat.has_morphism("v2u"));
  CHECK(cat.compose("w2u", "v2w") == "v2u");
  CHECK(cat.compose("v2u", "1v") == "v2u");
  CHECK(cat.identity_of("w") == "1w");
  CHECK(cat.morphisms_into("u") == std::vector<Id>{"1u", "v2u", "w2u"});
  CHECK_FALSE(cat.try_compose("v2w", "w2u").has_value());
  CHECK_THROWS_AS(cat.compose("v2w", "w2u"), gc_error);
}

TEST_CASE("category validation: broken tables are pinpointed") {
  SUBCASE("missing and spurious composites") {
    FiniteCategory cat({"p", "q"},
                       {{"1p", "p", "p"}, {"1q", "q", "q"}, {"f", "p", "q"}},
                       {{"p", "1p"}, {"q", "1q"}},
                       {{{"1p", "1p"}, "1p"},
                        {{"1q", "1q"}, "1q"},
                        {{"1q", "f"}, "f"},
                        {{"f", "f"}, "f"}});  // (f,1p) missing, (f,f) spurious
    auto vs = cat.validate();
    CHECK(has_axiom(vs, "compose-missing"));
    CHECK(has_axiom(vs, "compose-spurious"));
  }
  SUBCASE("identity absent from an object") {
    FiniteCategory cat({"p"}, {{"1p", "p", "p"}}, {}, {{{"1p", "1p"}, "1p"}});
    CHECK(has_axiom(cat.validate(), "identity-missing"));
  }
  SUBCASE("wrong unit law") {
    // e is declared the identity but e*e = z while z*e = e: unit fails.
    FiniteCategory cat({"p"}, {{"e", "p", "p"}, {"z", "p", "p"}}, {{"p", "e"}},
                       {{{"e", "e"}, "z"},
                        {{"e", "z"}, "z"},
                        {{"z", "e"}, "e"},
                        {{"z", "z"}, "z"}});
    auto vs = cat.validate();
    CHECK(has_axiom(vs, "unit-right"));
  }
}

TEST_CASE("terminal site: one object, maximal cover only") {
  auto site = terminal_site();
  CHECK(site->validate().empty());
  CHECK(site->covering_on("pt") == std::set<std::set<Id>>{{"1pt"}});
  CHECK(site->t_min("pt") == std::set<Id>{"1pt"});
}

TEST_CASE("opens site of the two-point space") {
  auto site = two_point_space();
  REQUIRE(site->validate().empty());

  SUBCASE("covering sieves are exactly the families with full union") {
    // On ab: the maximal sieve and the sieve generated by the two points.
    std::set<Id> s3 = {"a2ab", "b2ab", "e2ab"};
    CHECK(site->covering_on("ab").size() == 2);
    CHECK(site->is_covering("ab", s3));
    CHECK(site->is_covering("ab", site->maximal_sieve("ab")));
    CHECK_FALSE(site->is_covering("ab", {"a2ab", "e2ab"}));
    // On a point: only the maximal sieve; the empty open does not help.
    CHECK(site->covering_on("a") == std::set<std::set<Id>>{{"1a", "e2a"}});
    CHECK_FALSE(site->is_covering("a", {"e2a"}));
    // The empty open is covered by the empty sieve.
    CHECK(site->is_covering("e", {}));
    CHECK(site->covering_on("e").size() == 2);
  }

  SUBCASE("t_min is the smallest covering sieve and is itself covering") {
    CHECK(site->t_min("ab") == std::set<Id>{"a2ab", "b2ab", "e2ab"});
    CHECK(site->t_min("e") == std::set<Id>{});
    for (const auto& u : site->cat().objects())
      CHECK(site->is_covering(u, site->t_min(u)));
  }

  SUBCASE("sieve recognition and generation") {
    CHECK(site->is_sieve("ab", {}));
    CHECK(site->is_sieve("ab", {"a2ab", "e2ab"}));
    CHECK_FALSE(site->is_sieve("ab", {"a2ab"}));     // not closed under e -> a
    CHECK_FALSE(site->is_sieve("a", {"a2ab"}));      // wrong target
    CHECK(site->generated_sieve("ab", {"a2ab"}) == std::set<Id>{"a2ab", "e2ab"});
    CHECK(site->sieves_on("ab").size() == 6);
  }
}

TEST_CASE("pullback sieves: unit, composition, and absorption") {
  auto site = two_point_space();
  const auto& cat = site->cat();
  for (const auto& u : cat.objects())
    for (const auto& s : site->sieves_on(u))
      for (const auto& phi : cat.morphisms_into(u)) {
        auto pb = site->pullback_sieve(phi, s);
        CHECK(site->is_sieve(cat.src(phi), pb));
        // Identity pullback changes nothing.
        if (phi == cat.identity_of(u)) CHECK(pb == s);
        // Members pull the sieve back to everything.
        if (s.count(phi)) CHECK(pb == site->maximal_sieve(cat.src(phi)));
        // Contravariant composition: (phi o psi)^* = psi^* o phi^*.
        for (const auto& psi : cat.morphisms_into(cat.src(phi))) {
          auto two_step = site->pullback_sieve(psi, pb);
          auto one_step = site->pullback_sieve(cat.compose(phi, psi), s);
          CHECK(two_step == one_step);
        }
      }
}

TEST_CASE("validation catches a stability failure with its witness") {
  // v < u, where the empty sieve covers u but its pullback to v is missing.
  auto cat = poset_category({"v", "u"}, {{"v", "u"}});
  std::map<Id, std::set<std::set<Id>>> cov;
  cov["v"] = {{"1v"}};
  cov["u"] = {{}, {"v2u"}, {"1u", "v2u"}};
  FiniteSite site(cat, cov);
  auto vs = site.validate();
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].axiom == "stability");
  CHECK(vs[0].detail == "u {} v2u");
}

TEST_CASE("validation catches a transitivity failure") {
  // {v2u} covers u and the empty sieve covers v, so the empty sieve on u
  // has covering pullbacks along every member of {v2u} yet is not covering.
  auto cat = poset_category({"v", "u"}, {{"v", "u"}});
  std::map<Id, std::set<std::set<Id>>> cov;
  cov["v"] = {{}, {"1v"}};
  cov["u"] = {{"v2u"}, {"1u", "v2u"}};
  FiniteSite site(cat, cov);
  auto vs = site.validate();
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].axiom == "transitivity");
  CHECK(vs[0].detail == "u {v2u} {}");
}

TEST_CASE("validation catches missing maximal sieve and upward closure") {
  auto cat = poset_category({"v", "u"}, {{"v", "u"}});
  std::map<Id, std::set<std::set<Id>>> cov;
  cov["v"] = {{"1v"}};
  cov["u"] = {{"v2u"}};
  FiniteSite site(cat, cov);
  auto vs = site.validate();
  CHECK(has_axiom(vs, "maximal-sieve"));
  CHECK(has_axiom(vs, "upward-closure"));
}

TEST_CASE("saturation closes generators under the site axioms") {
  // Declaring the empty sieve a cover of u forces every sieve everywhere
  // below u to be covering.
  auto cat = poset_category({"v", "u"}, {{"v", "u"}});
  auto site = FiniteSite::make_saturated(cat, {{"u", {{}}}});
  CHECK(site->validate().empty());
  CHECK(site->covering_on("u").size() == 3);
  CHECK(site->covering_on("v").size() == 2);
  CHECK(site->t_min("u").empty());
  CHECK(site->t_min("v").empty());
}

TEST_CASE("three-open chain: no proper cover of the top") {
  auto site = opens_site({{"e", {}}, {"a", {"x"}}, {"ab", {"x", "y"}}});
  REQUIRE(site->validate().empty());
  // Nothing below ab unions to ab, so only the maximal sieve covers it.
  CHECK(site->covering_on("ab").size() == 1);
  CHECK(site->t_min("ab") == site->maximal_sieve("ab"));
  CHECK(site->t_min("a") == site->maximal_sieve("a"));
  CHECK(site->t_min("e").empty());
}

TEST_CASE("slice over the top open recovers the whole poset") {
  auto site = two_point_space();
  auto slice = site->slice("ab");
  REQUIRE(slice->validate().empty());
  CHECK(slice->cat().objects().size() == 4);
  CHECK(slice->cat().morphisms().size() == 9);

  // Slice objects are the morphisms into ab; domains match up.
  CHECK(slice->cat().has_object("a2ab"));
  CHECK(slice->cat().identity_of("a2ab") == "1a@a2ab");

  // Covering transfers along the domain functor.
  CHECK(slice->covering_on("a2ab") ==
        std::set<std::set<Id>>{{"1a@a2ab", "e2a@a2ab"}});
  std::set<Id> expected;
  for (const auto& g : site->t_min("ab")) expected.insert(g + "@1ab");
  CHECK(slice->t_min("1ab") == expected);
}

TEST_CASE("slice of a one-object group category is codiscrete") {
  auto site = trivial_site(cyclic2_category());
  REQUIRE(site->validate().empty());
  auto slice = site->slice("pt");
  REQUIRE(slice->validate().empty());
  CHECK(slice->cat().objects() == std::vector<Id>{"1pt", "s"});
  CHECK(slice->cat().morphisms().size() == 4);
  for (const auto& x : slice->cat().objects())
    for (const auto& y : slice->cat().objects()) {
      int count = 0;
      for (const auto& m : slice->cat().morphisms())
        if (m.src == x && m.tgt == y) ++count;
      CHECK(count == 1);
    }
  // The nonidentity base arrow glues the two slice objects together.
  CHECK(slice->cat().compose("s@s", "s@1pt") == "1pt@s");
}

TEST_CASE("every slice of a valid site is a valid site") {
  auto site = two_point_space();
  for (const auto& u : site->cat().objects()) {
    auto slice = site->slice(u);
    CHECK(slice->validate().empty());
    CHECK(slice->cat().objects().size() == site->cat().morphisms_into(u).size());
  }
}
