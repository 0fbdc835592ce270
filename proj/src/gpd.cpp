#include "gerbecalc/gpd.hpp"

#include <algorithm>

#include "gerbecalc/partition.hpp"

namespace gerbecalc {

namespace {

// Least object id in each path component.
std::map<Id, Id> component_reps(const FiniteGroupoid& g) {
  std::vector<std::pair<Id, Id>> edges;
  for (const auto& m : g.arrows()) edges.push_back({m.src, m.tgt});
  return least_representatives(g.objects(), edges);
}

std::vector<Id> sorted_objects(const FiniteSite& site) {
  std::vector<Id> obs = site.cat().objects();
  std::sort(obs.begin(), obs.end());
  return obs;
}

}  // namespace

struct GroupoidPresheaf::Cache {
  std::mutex mu;
  std::map<std::pair<Id, Id>, std::shared_ptr<const GroupPlusResult>> aut;
};

GroupoidPresheaf::GroupoidPresheaf(std::shared_ptr<const FiniteSite> site,
                                   std::map<Id, FiniteGroupoid> sections,
                                   std::map<Id, GroupoidHom> restriction)
    : site_(std::move(site)),
      sections_(std::move(sections)),
      restriction_(std::move(restriction)),
      cache_(std::make_shared<Cache>()) {}

const FiniteGroupoid& GroupoidPresheaf::at(const Id& u) const {
  auto it = sections_.find(u);
  if (it == sections_.end()) throw gc_error("no groupoid over '" + u + "'");
  return it->second;
}

const GroupoidHom& GroupoidPresheaf::restrict(const Id& phi) const {
  auto it = restriction_.find(phi);
  if (it == restriction_.end()) throw gc_error("no restriction along '" + phi + "'");
  return it->second;
}

Presheaf GroupoidPresheaf::ob_presheaf() const {
  std::map<Id, std::vector<Id>> sections;
  std::map<Id, std::map<Id, Id>> restriction;
  for (const auto& [u, gu] : sections_) sections[u] = gu.objects();
  for (const auto& [m, hom] : restriction_) restriction[m] = hom.ob;
  return Presheaf(site_, std::move(sections), std::move(restriction));
}

Presheaf GroupoidPresheaf::ar_presheaf() const {
  std::map<Id, std::vector<Id>> sections;
  std::map<Id, std::map<Id, Id>> restriction;
  for (const auto& [u, gu] : sections_) {
    std::vector<Id> arrs;
    for (const auto& a : gu.arrows()) arrs.push_back(a.id);
    sections[u] = arrs;
  }
  for (const auto& [m, hom] : restriction_) restriction[m] = hom.ar;
  return Presheaf(site_, std::move(sections), std::move(restriction));
}

std::vector<Violation> GroupoidPresheaf::validate() const {
  std::vector<Violation> out;
  const auto& cat = site_->cat();
  for (const auto& u : cat.objects())
    if (!sections_.count(u)) out.push_back({"section-missing", u});
  for (const auto& [u, gu] : sections_)
    if (!cat.has_object(u)) out.push_back({"section-spurious", u});
  for (const auto& m : cat.morphisms())
    if (!restriction_.count(m.id)) out.push_back({"restriction-missing", m.id});
  for (const auto& [m, hom] : restriction_)
    if (!cat.has_morphism(m)) out.push_back({"restriction-spurious", m});
  if (!out.empty()) return out;

  for (const auto& [u, gu] : sections_)
    for (const auto& v : gu.validate())
      out.push_back({v.axiom, v.detail.empty() ? u : u + " " + v.detail});
  for (const auto& m : cat.morphisms())
    for (const auto& v :
         validate_groupoid_hom(at(m.tgt), at(m.src), restriction_.at(m.id)))
      out.push_back({v.axiom, m.id + " " + v.detail});
  if (!out.empty()) return out;

  for (const auto& v : ob_presheaf().validate())
    out.push_back({v.axiom, "ob " + v.detail});
  for (const auto& v : ar_presheaf().validate())
    out.push_back({v.axiom, "ar " + v.detail});
  return out;
}

std::shared_ptr<const GroupPlusResult> GroupoidPresheaf::aut_sheaf(
    const Id& u, const Id& x) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->aut.find({u, x});
    if (it != cache_->aut.end()) return it->second;
  }
  auto fresh = std::make_shared<const GroupPlusResult>(
      sheafify_group(aut_presheaf(*this, u, x)));
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache_->aut.emplace(std::make_pair(u, x), fresh).first->second;
}

std::vector<Violation> validate_groupoid_map(const GroupoidPresheaf& g,
                                             const GroupoidPresheaf& h,
                                             const GroupoidMap& f) {
  std::vector<Violation> out;
  const auto& cat = g.site()->cat();
  for (const auto& u : cat.objects())
    if (!f.at.count(u)) out.push_back({"map-missing", u});
  if (!out.empty()) return out;
  for (const auto& u : cat.objects())
    for (const auto& v : validate_groupoid_hom(g.at(u), h.at(u), f.at.at(u)))
      out.push_back({v.axiom, u + " " + v.detail});
  if (!out.empty()) return out;
  for (const auto& m : cat.morphisms()) {
    const auto& fu = f.at.at(m.tgt);
    const auto& fv = f.at.at(m.src);
    for (const Id& x : g.at(m.tgt).objects())
      if (h.restrict(m.id).ob.at(fu.ob.at(x)) !=
          fv.ob.at(g.restrict(m.id).ob.at(x)))
        out.push_back({"map-naturality", m.id + " ob " + x});
    for (const auto& a : g.at(m.tgt).arrows())
      if (h.restrict(m.id).ar.at(fu.ar.at(a.id)) !=
          fv.ar.at(g.restrict(m.id).ar.at(a.id)))
        out.push_back({"map-naturality", m.id + " ar " + a.id});
  }
  return out;
}

GroupoidMap identity_groupoid_map(const GroupoidPresheaf& g) {
  GroupoidMap out;
  for (const auto& [u, gu] : g.section_tables()) out.at[u] = identity_hom(gu);
  return out;
}

GroupoidMap compose_groupoid_maps(const GroupoidMap& g, const GroupoidMap& f) {
  GroupoidMap out;
  for (const auto& [u, hom] : f.at) out.at[u] = compose_homs(g.at.at(u), hom);
  return out;
}

GroupoidPresheaf constant_groupoid_presheaf(std::shared_ptr<const FiniteSite> site,
                                            const FiniteGroupoid& g) {
  std::map<Id, FiniteGroupoid> sections;
  std::map<Id, GroupoidHom> restriction;
  for (const auto& u : site->cat().objects()) sections[u] = g;
  for (const auto& m : site->cat().morphisms()) restriction[m.id] = identity_hom(g);
  return GroupoidPresheaf(std::move(site), std::move(sections), std::move(restriction));
}

GroupoidPresheaf group_presheaf_as_groupoid(const GroupPresheaf& g, const Id& object) {
  std::map<Id, FiniteGroupoid> sections;
  std::map<Id, GroupoidHom> restriction;
  for (const auto& u : g.site()->cat().objects())
    sections[u] = group_as_groupoid(g.group_at(u), object);
  for (const auto& m : g.site()->cat().morphisms()) {
    GroupoidHom hom;
    hom.ob[object] = object;
    hom.ar = g.underlying().restriction_tables().at(m.id);
    restriction[m.id] = std::move(hom);
  }
  return GroupoidPresheaf(g.site(), std::move(sections), std::move(restriction));
}

GroupoidPresheaf discrete_groupoid_presheaf(const Presheaf& x) {
  std::map<Id, FiniteGroupoid> sections;
  std::map<Id, GroupoidHom> restriction;
  for (const auto& u : x.site()->cat().objects())
    sections[u] = discrete_groupoid(x.sections(u));
  for (const auto& m : x.site()->cat().morphisms()) {
    GroupoidHom hom;
    for (const auto& s : x.sections(m.tgt)) {
      const Id& im = x.restrict(m.id, s);
      hom.ob[s] = im;
      hom.ar[mint_span(s, s)] = mint_span(im, im);
    }
    restriction[m.id] = std::move(hom);
  }
  return GroupoidPresheaf(x.site(), std::move(sections), std::move(restriction));
}

Presheaf pi0(const GroupoidPresheaf& g) {
  std::map<Id, std::map<Id, Id>> reps;
  std::map<Id, std::vector<Id>> sections;
  for (const auto& [u, gu] : g.section_tables()) {
    reps[u] = component_reps(gu);
    std::set<Id> classes;
    for (const auto& [x, r] : reps[u]) classes.insert(r);
    sections[u] = std::vector<Id>(classes.begin(), classes.end());
  }
  std::map<Id, std::map<Id, Id>> restriction;
  for (const auto& m : g.site()->cat().morphisms()) {
    auto& tab = restriction[m.id];
    for (const Id& c : sections[m.tgt])
      tab[c] = reps.at(m.src).at(g.restrict(m.id).ob.at(c));
  }
  return Presheaf(g.site(), std::move(sections), std::move(restriction));
}

PresheafMap pi0_map(const GroupoidPresheaf& g, const GroupoidPresheaf& h,
                    const GroupoidMap& f) {
  PresheafMap out;
  for (const auto& [u, gu] : g.section_tables()) {
    auto rg = component_reps(gu);
    auto rh = component_reps(h.at(u));
    auto& tab = out.at[u];
    for (const auto& [x, r] : rg)
      if (x == r) tab[r] = rh.at(f.at.at(u).ob.at(r));
  }
  return out;
}

GroupoidMap pi0_quotient_map(const GroupoidPresheaf& g) {
  GroupoidMap out;
  for (const auto& [u, gu] : g.section_tables()) {
    auto reps = component_reps(gu);
    GroupoidHom hom;
    for (const auto& [x, r] : reps) hom.ob[x] = r;
    for (const auto& m : gu.arrows()) {
      const Id& r = reps.at(m.src);
      hom.ar[m.id] = mint_span(r, r);
    }
    out.at[u] = std::move(hom);
  }
  return out;
}

GroupoidPresheaf cech_groupoid(const Presheaf& x, const PresheafMap& p) {
  const auto& cat = x.site()->cat();
  std::map<Id, FiniteGroupoid> sections;
  std::map<Id, GroupoidHom> restriction;
  for (const auto& u : cat.objects()) {
    const auto& xs = x.sections(u);
    std::vector<MorphismData> arrows;
    std::map<Id, Id> identity;
    std::map<Id, Id> inverse;
    for (const auto& a : xs)
      for (const auto& b : xs)
        if (p.apply(u, a) == p.apply(u, b)) {
          arrows.push_back({mint_span(a, b), a, b});
          inverse[mint_span(a, b)] = mint_span(b, a);
        }
    for (const auto& a : xs) identity[a] = mint_span(a, a);
    std::map<std::pair<Id, Id>, Id> compose;
    for (const auto& f : arrows)
      for (const auto& g : arrows)
        if (g.src == f.tgt) compose[{g.id, f.id}] = mint_span(f.src, g.tgt);
    sections[u] =
        FiniteGroupoid(FiniteCategory(xs, arrows, identity, compose), inverse);
  }
  for (const auto& m : cat.morphisms()) {
    GroupoidHom hom;
    for (const auto& a : x.sections(m.tgt)) hom.ob[a] = x.restrict(m.id, a);
    for (const auto& f : sections[m.tgt].arrows())
      hom.ar[f.id] = mint_span(x.restrict(m.id, f.src), x.restrict(m.id, f.tgt));
    restriction[m.id] = std::move(hom);
  }
  return GroupoidPresheaf(x.site(), std::move(sections), std::move(restriction));
}

Presheaf hom_presheaf(const GroupoidPresheaf& g, const Id& u, const Id& x,
                      const Id& y) {
  if (!g.at(u).has_object(x))
    throw precondition_error("not an object over '" + u + "': " + x);
  if (!g.at(u).has_object(y))
    throw precondition_error("not an object over '" + u + "': " + y);
  const auto& cat = g.site()->cat();
  auto slice = g.site()->slice(u);
  std::map<Id, std::vector<Id>> sections;
  std::map<Id, std::map<Id, Id>> restriction;
  for (const Id& psi : cat.morphisms_into(u)) {
    const auto& hom = g.restrict(psi);
    sections[psi] =
        g.at(cat.src(psi)).arrows_between(hom.ob.at(x), hom.ob.at(y));
  }
  for (const Id& psi : cat.morphisms_into(u))
    for (const Id& m : cat.morphisms_into(cat.src(psi))) {
      auto& tab = restriction[mint_slice_morphism(m, psi)];
      for (const Id& a : sections[psi]) tab[a] = g.restrict(m).ar.at(a);
    }
  return Presheaf(std::move(slice), std::move(sections), std::move(restriction));
}

GroupPresheaf aut_presheaf(const GroupoidPresheaf& g, const Id& u, const Id& x) {
  Presheaf under = hom_presheaf(g, u, x, x);
  const auto& cat = g.site()->cat();
  std::map<Id, FiniteGroup> groups;
  for (const Id& psi : cat.morphisms_into(u)) {
    const Id& v = cat.src(psi);
    const Id& xv = g.restrict(psi).ob.at(x);
    const auto& elems = under.sections(psi);
    std::map<std::pair<Id, Id>, Id> mul;
    for (const auto& a : elems)
      for (const auto& b : elems) mul[{a, b}] = g.at(v).compose(a, b);
    groups[psi] = FiniteGroup("aut", elems, g.at(v).identity_of(xv), std::move(mul));
  }
  return GroupPresheaf(std::move(under), std::move(groups));
}

CheckResult is_lwe(const GroupoidPresheaf& g, const GroupoidPresheaf& h,
                   const GroupoidMap& f) {
  const auto& cat = g.site()->cat();
  const auto obs = sorted_objects(*g.site());

  Presheaf p0g = pi0(g);
  Presheaf p0h = pi0(h);
  PresheafMap pm = pi0_map(g, h, f);
  auto pg1 = plus_construction(p0g);
  auto ph1 = plus_construction(p0h);
  auto f1 = plus_map(pg1, ph1, pm);
  auto pg2 = plus_construction(pg1.plus);
  auto ph2 = plus_construction(ph1.plus);
  auto f2 = plus_map(pg2, ph2, f1);
  for (const Id& u : obs) {
    std::set<Id> image;
    bool ok = true;
    for (const auto& s : pg2.plus.sections(u))
      if (!image.insert(f2.apply(u, s)).second) {
        ok = false;
        break;
      }
    if (ok && image.size() != ph2.plus.sections(u).size()) ok = false;
    if (!ok) return {false, "pi0 " + u};
  }

  for (const Id& u : obs) {
    std::vector<Id> xs = g.at(u).objects();
    std::sort(xs.begin(), xs.end());
    for (const Id& x : xs) {
      GroupPresheaf ax = aut_presheaf(g, u, x);
      GroupPresheaf ay = aut_presheaf(h, u, f.at.at(u).ob.at(x));
      PresheafMap am;
      for (const Id& psi : cat.morphisms_into(u)) {
        auto& row = am.at[psi];
        for (const Id& a : ax.underlying().sections(psi))
          row[a] = f.at.at(cat.src(psi)).ar.at(a);
      }
      if (!is_local_iso(ax.underlying(), ay.underlying(), am).ok)
        return {false, "aut " + u + " " + x};
    }
  }
  return {};
}

CheckResult is_cech(const GroupoidPresheaf& g) {
  const FiniteSite& site = *g.site();
  CheckResult sieve_form = [&]() -> CheckResult {
    for (const Id& u : sorted_objects(site)) {
      std::vector<MorphismData> arrs = g.at(u).arrows();
      std::sort(arrs.begin(), arrs.end(),
                [](const MorphismData& a, const MorphismData& b) { return a.id < b.id; });
      for (size_t i = 0; i < arrs.size(); ++i)
        for (size_t j = i + 1; j < arrs.size(); ++j) {
          if (arrs[i].src != arrs[j].src || arrs[i].tgt != arrs[j].tgt) continue;
          std::set<Id> members;
          for (const Id& phi : site.cat().morphisms_into(u)) {
            const auto& ar = g.restrict(phi).ar;
            if (ar.at(arrs[i].id) == ar.at(arrs[j].id)) members.insert(phi);
          }
          if (!site.is_covering(u, members))
            return {false, u + " " + arrs[i].id + " " + arrs[j].id};
        }
    }
    return {};
  }();

  GroupoidPresheaf disc = discrete_groupoid_presheaf(pi0(g));
  CheckResult via_quotient = is_lwe(g, disc, pi0_quotient_map(g));
  if (sieve_form.ok != via_quotient.ok)
    throw gc_error("cech characterizations disagree");
  return sieve_form;
}

CheckResult is_gerbe(const GroupoidPresheaf& g) {
  const FiniteSite& site = *g.site();
  const auto obs = sorted_objects(site);
  for (const Id& u : obs) {
    std::vector<Id> xs = g.at(u).objects();
    std::sort(xs.begin(), xs.end());
    for (size_t i = 0; i < xs.size(); ++i)
      for (size_t j = i + 1; j < xs.size(); ++j) {
        std::set<Id> members;
        for (const Id& phi : site.cat().morphisms_into(u)) {
          const auto& hom = g.restrict(phi);
          if (!g.at(site.cat().src(phi))
                   .arrows_between(hom.ob.at(xs[i]), hom.ob.at(xs[j]))
                   .empty())
            members.insert(phi);
        }
        if (!site.is_covering(u, members))
          return {false, u + " " + xs[i] + " " + xs[j]};
      }
  }
  for (const Id& u : obs) {
    std::set<Id> members;
    for (const Id& phi : site.cat().morphisms_into(u))
      if (!g.at(site.cat().src(phi)).objects().empty()) members.insert(phi);
    if (!site.is_covering(u, members)) return {false, u + " objects"};
  }
  return {};
}

}  // namespace gerbecalc
