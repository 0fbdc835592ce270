#include "gerbecalc/groth.hpp"

#include <algorithm>

#include "gerbecalc/partition.hpp"

namespace gerbecalc {

namespace {

struct IntervalCell {
  Id id;
  Id src;
  Id tgt;
};

const std::vector<IntervalCell>& interval_cells() {
  static const std::vector<IntervalCell> cells = {
      {"id0", "0", "0"}, {"id1", "1", "1"}, {"up", "0", "1"}, {"dn", "1", "0"}};
  return cells;
}

const Id& interval_compose(const Id& b, const Id& a) {
  static const std::map<std::pair<Id, Id>, Id> table = {
      {{"id0", "id0"}, "id0"}, {{"id1", "id1"}, "id1"}, {{"up", "id0"}, "up"},
      {{"id1", "up"}, "up"},   {{"dn", "id1"}, "dn"},   {{"id0", "dn"}, "dn"},
      {{"dn", "up"}, "id0"},   {{"up", "dn"}, "id1"}};
  return table.at({b, a});
}

const Id& interval_inverse(const Id& s) {
  static const std::map<Id, Id> table = {
      {"id0", "id0"}, {"id1", "id1"}, {"up", "dn"}, {"dn", "up"}};
  return table.at(s);
}

GroupPresheafMap pulled_action(const GroupPresheafMap& d, const FiniteCategory& cat,
                               const Id& phi) {
  GroupPresheafMap out;
  for (const Id& psi : cat.morphisms_into(cat.src(phi)))
    out[psi] = d.at(cat.compose(phi, psi));
  return out;
}

}  // namespace

Cocycle as_cocycle(const CanonicalCocycle& c) { return {c.a, c.star.mat, c.k}; }

Cocycle retarget(const Cocycle& c, const MaterializedAtlas& super) {
  return {c.a, super, compose_two_maps(atlas_inclusion(c.f, super), c.k)};
}

std::vector<Violation> validate_cocycle(const Cocycle& c) {
  std::vector<Violation> out = c.a.validate();
  if (!out.empty()) return out;
  out = validate_two_map(c.a, c.f.two, c.k);
  if (!out.empty()) return out;
  CheckResult leg =
      is_lwe2(c.a, point_two_presheaf(c.a.site()), map_to_point(c.a));
  if (!leg.ok) out.push_back({"cocycle-leg", leg.witness});
  return out;
}

std::vector<Violation> validate_cocycle_morphism(const Cocycle& c,
                                                 const Cocycle& d,
                                                 const TwoGroupoidMap& theta) {
  std::vector<Violation> out;
  if (c.f.atlas != d.f.atlas) {
    out.push_back({"cocycle-target", "the two cocycles use different atlases"});
    return out;
  }
  out = validate_two_map(c.a, d.a, theta);
  if (!out.empty()) return out;
  if (compose_two_maps(d.k, theta) != c.k)
    out.push_back({"cocycle-triangle", "the maps into the atlas differ"});
  return out;
}

SectionCoefficients cocycle_coefficients(const Cocycle& c) {
  SectionCoefficients co;
  for (const auto& [u, t] : c.a.section_tables()) {
    const TwoGroupoidHom& ku = c.k.at.at(u);
    auto& groups = co.groups[u];
    for (const Id& x : t.objects())
      groups.emplace(x, c.f.atlas.sheaf(u, ku.ob.at(x)));
    auto& action = co.action[u];
    for (const auto& m : t.one_cells())
      action.emplace(m.id, c.f.iso_data.at(u).at(ku.ar.at(m.id)));
    auto& conj = co.conjugator[u];
    for (const auto& [h, d] : t.two_cells())
      conj.emplace(h, c.f.conjugator.at(u).at(ku.two.at(h)));
  }
  return co;
}

SectionCoefficients aut_coefficients(const GroupoidPresheaf& g) {
  SectionCoefficients co;
  const auto& cat = g.site()->cat();
  for (const auto& u : cat.objects()) {
    const FiniteGroupoid& gu = g.at(u);
    auto& groups = co.groups[u];
    for (const Id& x : gu.objects()) groups.emplace(x, aut_presheaf(g, u, x));
    auto& action = co.action[u];
    for (const auto& m : gu.arrows()) {
      GroupPresheafMap d;
      for (const Id& psi : cat.morphisms_into(u)) {
        const FiniteGroupoid& gv = g.at(cat.src(psi));
        const Id& mpsi = g.restrict(psi).ar.at(m.id);
        auto& row = d[psi];
        for (const Id& q : groups.at(m.src).underlying().sections(psi))
          row[q] = gv.compose(gv.compose(mpsi, q), gv.inverse(mpsi));
      }
      action.emplace(m.id, std::move(d));
    }
    auto& conj = co.conjugator[u];
    for (const auto& a : gu.arrows())
      for (const auto& b : gu.arrows())
        if (a.src == b.src && a.tgt == b.tgt)
          conj.emplace(mint_span(a.id, b.id),
                       gu.compose(b.id, gu.inverse(a.id)));
  }
  return co;
}

std::vector<Violation> validate_coefficients(const TwoGroupoidPresheaf& a,
                                             const SectionCoefficients& co) {
  std::vector<Violation> out;
  const auto& cat = a.site()->cat();

  for (const auto& u : cat.objects()) {
    const TwoGroupoid& t = a.at(u);
    auto gu = co.groups.find(u);
    for (const Id& x : t.objects())
      if (gu == co.groups.end() || !gu->second.count(x))
        out.push_back({"coeff-group", u + " " + x});
    auto au = co.action.find(u);
    for (const auto& m : t.one_cells())
      if (au == co.action.end() || !au->second.count(m.id))
        out.push_back({"coeff-action", u + " " + m.id});
    auto cu = co.conjugator.find(u);
    for (const auto& [h, d] : t.two_cells())
      if (cu == co.conjugator.end() || !cu->second.count(h))
        out.push_back({"coeff-conjugator", u + " " + h});
  }
  if (!out.empty()) return out;

  for (const auto& u : cat.objects()) {
    const Id& one = cat.identity_of(u);
    const TwoGroupoid& t = a.at(u);
    const auto& groups = co.groups.at(u);
    const auto& action = co.action.at(u);
    const auto& conj = co.conjugator.at(u);

    // actions are sectionwise homomorphisms and strictly functorial
    for (const auto& m : t.one_cells()) {
      const GroupPresheafMap& d = action.at(m.id);
      for (const auto& [psi, row] : d) {
        const FiniteGroup& gs = groups.at(m.src).group_at(psi);
        const FiniteGroup& gt = groups.at(m.tgt).group_at(psi);
        for (const Id& x : gs.elements())
          for (const Id& y : gs.elements())
            if (row.at(gs.mul(x, y)) != gt.mul(row.at(x), row.at(y))) {
              out.push_back({"coeff-action-hom", u + " " + m.id + " " + psi});
              break;
            }
      }
    }
    for (const Id& x : t.objects()) {
      const GroupPresheafMap& d = action.at(t.base().identity_of(x));
      for (const auto& [psi, row] : d)
        for (const auto& [p, q] : row)
          if (p != q) {
            out.push_back({"coeff-action-identity", u + " " + x});
            break;
          }
    }
    for (const auto& m2 : t.one_cells())
      for (const auto& m1 : t.one_cells()) {
        if (m1.tgt != m2.src) continue;
        const GroupPresheafMap& d2 = action.at(m2.id);
        const GroupPresheafMap& d1 = action.at(m1.id);
        const GroupPresheafMap& dc = action.at(t.base().compose(m2.id, m1.id));
        for (const auto& [psi, row] : d1)
          for (const auto& [x, y] : row)
            if (dc.at(psi).at(x) != d2.at(psi).at(y))
              out.push_back(
                  {"coeff-action-compose", u + " " + m2.id + " " + m1.id});
      }

    // conjugators carry source action to target action
    for (const auto& [h, d] : t.two_cells()) {
      const Id& j = t.base().tgt(d.src);
      const Id& k = conj.at(h);
      const GroupPresheaf& sj = groups.at(j);
      const std::vector<Id>& els = sj.group_at(one).elements();
      if (std::find(els.begin(), els.end(), k) == els.end()) {
        out.push_back({"coeff-conjugator", u + " " + h + " " + k});
        continue;
      }
      const GroupPresheafMap& ds = action.at(d.src);
      const GroupPresheafMap& dt = action.at(d.tgt);
      for (const auto& [psi, row] : ds) {
        const Id& kpsi =
            sj.underlying().restrict(mint_slice_morphism(psi, one), k);
        const FiniteGroup& gt = sj.group_at(psi);
        for (const auto& [x, y] : row)
          if (dt.at(psi).at(x) != gt.conj(kpsi, y)) {
            out.push_back({"coeff-conjugate", u + " " + h + " " + psi});
            break;
          }
      }
    }

    // conjugators respect both 2-cell compositions
    for (const auto& m : t.one_cells()) {
      const Id& j = t.base().tgt(m.id);
      if (conj.at(t.vid(m.id)) != groups.at(j).unit(one))
        out.push_back({"coeff-vid", u + " " + m.id});
    }
    for (const auto& [h2, d2] : t.two_cells())
      for (const auto& [h1, d1] : t.two_cells()) {
        const Id& j = t.base().tgt(d1.src);
        if (d1.tgt == d2.src) {
          const FiniteGroup& grp = groups.at(j).group_at(one);
          if (conj.at(t.vcompose(h2, h1)) !=
              grp.mul(conj.at(h2), conj.at(h1)))
            out.push_back({"coeff-vcomp", u + " " + h2 + " " + h1});
        }
        if (t.base().src(d2.src) == t.base().tgt(d1.src)) {
          const Id& l = t.base().tgt(d2.src);
          const FiniteGroup& grp = groups.at(l).group_at(one);
          const Id& carried = action.at(d2.src).at(one).at(conj.at(h1));
          if (conj.at(t.hcompose(h2, h1)) != grp.mul(conj.at(h2), carried))
            out.push_back({"coeff-hcomp", u + " " + h2 + " " + h1});
        }
      }
  }
  if (!out.empty()) return out;

  // everything restricts on the nose
  for (const auto& m : cat.morphisms()) {
    const Id& u = m.tgt;
    const Id& v = m.src;
    const Id& one = cat.identity_of(u);
    const TwoGroupoidHom& r = a.restrict(m.id);
    for (const Id& x : a.at(u).objects())
      if (co.groups.at(v).at(r.ob.at(x)) !=
          pullback_sheaf(co.groups.at(u).at(x), *a.site(), m.id))
        out.push_back({"coeff-restrict-group", m.id + " " + x});
    for (const auto& mm : a.at(u).one_cells())
      if (co.action.at(v).at(r.ar.at(mm.id)) !=
          pulled_action(co.action.at(u).at(mm.id), cat, m.id))
        out.push_back({"coeff-restrict-action", m.id + " " + mm.id});
    for (const auto& [h, d] : a.at(u).two_cells()) {
      const Id& j = a.at(u).base().tgt(d.src);
      const Id& k = co.conjugator.at(u).at(h);
      if (co.conjugator.at(v).at(r.two.at(h)) !=
          co.groups.at(u).at(j).underlying().restrict(
              mint_slice_morphism(m.id, one), k))
        out.push_back({"coeff-restrict-conjugator", m.id + " " + h});
    }
  }
  return out;
}

GrothResult grothendieck_sections(const TwoGroupoidPresheaf& a,
                                  const SectionCoefficients& co) {
  GrothResult out;
  auto site = a.site();
  const auto& cat = site->cat();
  PiGroupoidResult pg = pi_groupoid(a);
  out.pi = pg.pi;

  std::map<Id, FiniteGroupoid> sections;
  std::map<Id, GroupoidHom> restriction;

  for (const auto& u : cat.objects()) {
    const Id& one = cat.identity_of(u);
    const TwoGroupoid& t = a.at(u);
    const auto& groups = co.groups.at(u);
    const auto& action = co.action.at(u);
    const auto& conj = co.conjugator.at(u);

    // glue the raw pairs along the 2-cells
    std::vector<Id> nodes;
    std::map<Id, std::pair<Id, Id>> decode;
    for (const auto& m : t.one_cells())
      for (const Id& f : groups.at(m.tgt).underlying().sections(one)) {
        Id n = mint_pair_class(f, m.id);
        nodes.push_back(n);
        decode.emplace(std::move(n), std::pair<Id, Id>{f, m.id});
      }
    std::vector<std::pair<Id, Id>> edges;
    for (const auto& [h, d] : t.two_cells()) {
      const Id& j = t.base().tgt(d.src);
      const FiniteGroup& grp = groups.at(j).group_at(one);
      const Id kinv = grp.inv(conj.at(h));
      for (const Id& f : groups.at(j).underlying().sections(one))
        edges.push_back({mint_pair_class(f, d.src),
                         mint_pair_class(grp.mul(f, kinv), d.tgt)});
    }
    std::map<Id, Id> rep = least_representatives(nodes, edges);

    auto& cls_u = out.cls[u];
    auto& reps_u = out.reps[u];
    for (const Id& n : nodes) {
      const Id& c = rep.at(n);
      cls_u[decode.at(n)] = c;
      if (c == n) reps_u[c] = decode.at(n);
    }

    std::vector<MorphismData> arrows;
    for (const auto& [c, fa] : reps_u)
      arrows.push_back({c, t.base().src(fa.second), t.base().tgt(fa.second)});
    std::map<Id, Id> identity;
    for (const Id& i : t.objects())
      identity[i] = cls_u.at({groups.at(i).unit(one), t.base().identity_of(i)});
    std::map<std::pair<Id, Id>, Id> compose;
    for (const auto& [cb, gb] : reps_u)
      for (const auto& [ca, fa] : reps_u) {
        if (t.base().src(gb.second) != t.base().tgt(fa.second)) continue;
        const Id& l = t.base().tgt(gb.second);
        const Id& moved = action.at(gb.second).at(one).at(fa.first);
        compose[{cb, ca}] =
            cls_u.at({groups.at(l).group_at(one).mul(gb.first, moved),
                      t.base().compose(gb.second, fa.second)});
      }
    std::map<Id, Id> inverse;
    for (const auto& [c, fa] : reps_u) {
      const Id& ainv = t.base().inverse(fa.second);
      const Id& finv =
          groups.at(t.base().tgt(fa.second)).group_at(one).inv(fa.first);
      inverse[c] = cls_u.at({action.at(ainv).at(one).at(finv), ainv});
    }
    sections.emplace(u, FiniteGroupoid(FiniteCategory(t.objects(), arrows,
                                                      std::move(identity),
                                                      std::move(compose)),
                                       std::move(inverse)));
  }

  for (const auto& m : cat.morphisms()) {
    const Id& u = m.tgt;
    const Id& one = cat.identity_of(u);
    const TwoGroupoidHom& r = a.restrict(m.id);
    GroupoidHom h;
    h.ob = r.ob;
    for (const auto& [c, fa] : out.reps.at(u)) {
      const Id& j = a.at(u).base().tgt(fa.second);
      const Id& fv = co.groups.at(u).at(j).underlying().restrict(
          mint_slice_morphism(m.id, one), fa.first);
      h.ar[c] = out.cls.at(m.src).at({fv, r.ar.at(fa.second)});
    }
    restriction.emplace(m.id, std::move(h));
  }

  out.e = GroupoidPresheaf(site, std::move(sections), std::move(restriction));
  auto ev = out.e.validate();
  if (!ev.empty())
    throw gc_error("grothendieck sections broke " + ev.front().axiom + ": " +
                   ev.front().detail);

  for (const auto& u : cat.objects()) {
    GroupoidHom h;
    for (const Id& x : a.at(u).objects()) h.ob[x] = x;
    for (const auto& [c, fa] : out.reps.at(u))
      h.ar[c] = pg.eta.at.at(u).ar.at(fa.second);
    out.p.at[u] = std::move(h);
  }
  return out;
}

GrothResult grothendieck(const Cocycle& c) {
  return grothendieck_sections(c.a, cocycle_coefficients(c));
}

const Id& eak_class(const GrothResult& er, const Id& u, const Id& f,
                    const Id& alpha) {
  auto cu = er.cls.find(u);
  if (cu != er.cls.end()) {
    auto it = cu->second.find({f, alpha});
    if (it != cu->second.end()) return it->second;
  }
  throw gc_error("no arrow class [(" + f + "," + alpha + ")] over '" + u + "'");
}

PsiResult psi(const GroupoidPresheaf& g) {
  CheckResult gerbe = is_gerbe(g);
  if (!gerbe.ok) throw precondition_error("psi needs a gerbe: " + gerbe.witness);
  PsiResult out;
  out.groth = grothendieck_sections(resolution(g), aut_coefficients(g));
  for (const auto& [u, gu] : g.section_tables()) {
    GroupoidHom h;
    for (const Id& x : gu.objects()) h.ob[x] = x;
    for (const auto& [c, fa] : out.groth.reps.at(u))
      h.ar[c] = gu.compose(fa.first, fa.second);
    out.map.at[u] = std::move(h);
  }
  return out;
}

GammaResult gamma(const TwoGroupoidPresheaf& a, const SectionCoefficients& co,
                  const GrothResult& er, const Id& u, const Id& i) {
  GammaResult out;
  out.source = co.groups.at(u).at(i);
  out.target = aut_presheaf(er.e, u, i);
  const auto& cat = a.site()->cat();
  for (const Id& psi : cat.morphisms_into(u)) {
    const Id& v = cat.src(psi);
    const Id& iv = a.restrict(psi).ob.at(i);
    const Id& idv = a.at(v).base().identity_of(iv);
    auto& row = out.map[psi];
    for (const Id& f : out.source.underlying().sections(psi))
      row[f] = er.cls.at(v).at({f, idv});
  }
  PresheafMap pm;
  pm.at = out.map;
  out.local_iso =
      is_local_iso(out.source.underlying(), out.target.underlying(), pm);
  return out;
}

GammaResult gamma(const Cocycle& c, const GrothResult& er, const Id& u,
                  const Id& i) {
  return gamma(c.a, cocycle_coefficients(c), er, u, i);
}

InducedMap induced_map(const GrothResult& ea, const GrothResult& eb,
                       const TwoGroupoidMap& theta) {
  InducedMap out;
  for (const auto& [u, reps_u] : ea.reps) {
    const TwoGroupoidHom& th = theta.at.at(u);
    GroupoidHom h;
    h.ob = th.ob;
    for (const auto& [c, fa] : reps_u)
      h.ar[c] = eb.cls.at(u).at({fa.first, th.ar.at(fa.second)});
    out.map.at[u] = std::move(h);
  }
  out.lwe = is_lwe(ea.e, eb.e, out.map);
  return out;
}

TwoGroupoidMap omega(const TwoGroupoidPresheaf& a, const SectionCoefficients& co,
                     const GrothResult& er) {
  TwoGroupoidMap out;
  const auto& cat = a.site()->cat();
  for (const auto& u : cat.objects()) {
    const Id& one = cat.identity_of(u);
    const TwoGroupoid& t = a.at(u);
    TwoGroupoidHom h;
    for (const Id& x : t.objects()) h.ob[x] = x;
    for (const auto& m : t.one_cells())
      h.ar[m.id] =
          er.cls.at(u).at({co.groups.at(u).at(m.tgt).unit(one), m.id});
    for (const auto& [hid, d] : t.two_cells())
      h.two[hid] = mint_span(h.ar.at(d.src), h.ar.at(d.tgt));
    out.at[u] = std::move(h);
  }
  return out;
}

TwoGroupoidMap omega(const Cocycle& c, const GrothResult& er) {
  return omega(c.a, cocycle_coefficients(c), er);
}

TwoGroupoidPresheaf cylinder(const TwoGroupoidPresheaf& a) {
  std::map<Id, TwoGroupoid> sections;
  std::map<Id, TwoGroupoidHom> restriction;
  const auto& cat = a.site()->cat();

  for (const auto& u : cat.objects()) {
    const TwoGroupoid& t = a.at(u);
    std::vector<Id> objects;
    for (const Id& x : t.objects()) {
      objects.push_back(mint_product(x, "0"));
      objects.push_back(mint_product(x, "1"));
    }
    std::vector<MorphismData> arrows;
    for (const auto& m : t.one_cells())
      for (const auto& s : interval_cells())
        arrows.push_back({mint_product(m.id, s.id), mint_product(m.src, s.src),
                          mint_product(m.tgt, s.tgt)});
    std::map<Id, Id> identity;
    for (const Id& x : t.objects()) {
      identity[mint_product(x, "0")] =
          mint_product(t.base().identity_of(x), "id0");
      identity[mint_product(x, "1")] =
          mint_product(t.base().identity_of(x), "id1");
    }
    std::map<std::pair<Id, Id>, Id> compose;
    for (const auto& m2 : t.one_cells())
      for (const auto& s2 : interval_cells())
        for (const auto& m1 : t.one_cells())
          for (const auto& s1 : interval_cells()) {
            if (m1.tgt != m2.src || s1.tgt != s2.src) continue;
            compose[{mint_product(m2.id, s2.id), mint_product(m1.id, s1.id)}] =
                mint_product(t.base().compose(m2.id, m1.id),
                             interval_compose(s2.id, s1.id));
          }
    std::map<Id, Id> inverse;
    for (const auto& m : t.one_cells())
      for (const auto& s : interval_cells())
        inverse[mint_product(m.id, s.id)] =
            mint_product(t.base().inverse(m.id), interval_inverse(s.id));

    std::map<Id, TwoCellData> cells;
    std::map<Id, Id> vid;
    std::map<std::pair<Id, Id>, Id> vcomp;
    std::map<Id, Id> vinv;
    std::map<std::pair<Id, Id>, Id> hcomp;
    for (const auto& [h, d] : t.two_cells())
      for (const auto& s : interval_cells()) {
        cells.emplace(mint_product(h, s.id),
                      TwoCellData{mint_product(d.src, s.id),
                                  mint_product(d.tgt, s.id)});
        vinv[mint_product(h, s.id)] = mint_product(t.vinverse(h), s.id);
      }
    for (const auto& m : t.one_cells())
      for (const auto& s : interval_cells())
        vid[mint_product(m.id, s.id)] = mint_product(t.vid(m.id), s.id);
    for (const auto& [h2, d2] : t.two_cells())
      for (const auto& [h1, d1] : t.two_cells()) {
        if (d1.tgt == d2.src)
          for (const auto& s : interval_cells())
            vcomp[{mint_product(h2, s.id), mint_product(h1, s.id)}] =
                mint_product(t.vcompose(h2, h1), s.id);
        if (t.base().src(d2.src) == t.base().tgt(d1.src))
          for (const auto& s2 : interval_cells())
            for (const auto& s1 : interval_cells()) {
              if (s1.tgt != s2.src) continue;
              hcomp[{mint_product(h2, s2.id), mint_product(h1, s1.id)}] =
                  mint_product(t.hcompose(h2, h1),
                               interval_compose(s2.id, s1.id));
            }
      }
    sections.emplace(
        u, TwoGroupoid(FiniteGroupoid(FiniteCategory(objects, arrows,
                                                     std::move(identity),
                                                     std::move(compose)),
                                      std::move(inverse)),
                       std::move(cells), std::move(vid), std::move(vcomp),
                       std::move(vinv), std::move(hcomp)));
  }

  for (const auto& m : cat.morphisms()) {
    const TwoGroupoidHom& r = a.restrict(m.id);
    TwoGroupoidHom h;
    for (const auto& [x, y] : r.ob) {
      h.ob[mint_product(x, "0")] = mint_product(y, "0");
      h.ob[mint_product(x, "1")] = mint_product(y, "1");
    }
    for (const auto& [f, g] : r.ar)
      for (const auto& s : interval_cells())
        h.ar[mint_product(f, s.id)] = mint_product(g, s.id);
    for (const auto& [c, d] : r.two)
      for (const auto& s : interval_cells())
        h.two[mint_product(c, s.id)] = mint_product(d, s.id);
    restriction.emplace(m.id, std::move(h));
  }
  return TwoGroupoidPresheaf(a.site(), std::move(sections),
                             std::move(restriction));
}

TwoGroupoidMap cylinder_end(const TwoGroupoidPresheaf& a, bool one) {
  const Id e = one ? "1" : "0";
  const Id s = one ? "id1" : "id0";
  TwoGroupoidMap out;
  for (const auto& [u, t] : a.section_tables()) {
    TwoGroupoidHom h;
    for (const Id& x : t.objects()) h.ob[x] = mint_product(x, e);
    for (const auto& m : t.one_cells()) h.ar[m.id] = mint_product(m.id, s);
    for (const auto& [c, d] : t.two_cells()) h.two[c] = mint_product(c, s);
    out.at[u] = std::move(h);
  }
  return out;
}

CylinderShift conjugation_cylinder(const TwoGroupoidPresheaf& a,
                                   const MaterializedAtlas& f,
                                   const TwoGroupoidMap& k,
                                   const std::map<Id, std::map<Id, Id>>& tau) {
  CylinderShift out;
  const auto& cat = a.site()->cat();

  TwoGroupoidMap shifted;
  TwoGroupoidMap gam;
  for (const auto& u : cat.objects()) {
    const Id& one = cat.identity_of(u);
    const TwoGroupoid& t = a.at(u);
    const FiniteGroupoid& fb = f.two.at(u).base();
    const TwoGroupoidHom& ku = k.at.at(u);
    const auto& tu = tau.at(u);
    TwoGroupoidHom h;
    TwoGroupoidHom sh;

    for (const Id& x : t.objects()) {
      h.ob[mint_product(x, "0")] = ku.ob.at(x);
      const Id& moved = fb.tgt(tu.at(x));
      h.ob[mint_product(x, "1")] = moved;
      sh.ob[x] = moved;
    }
    for (const auto& m : t.one_cells()) {
      const Id& kf = ku.ar.at(m.id);
      const Id up = fb.compose(tu.at(m.tgt), kf);
      h.ar[mint_product(m.id, "id0")] = kf;
      h.ar[mint_product(m.id, "up")] = up;
      h.ar[mint_product(m.id, "id1")] =
          fb.compose(up, fb.inverse(tu.at(m.src)));
      h.ar[mint_product(m.id, "dn")] =
          fb.compose(kf, fb.inverse(tu.at(m.src)));
      sh.ar[m.id] = h.ar.at(mint_product(m.id, "id1"));
    }
    for (const auto& [hid, d] : t.two_cells()) {
      const Id& kh = f.conjugator.at(u).at(ku.two.at(hid));
      const Id& j = t.base().tgt(d.src);
      const Id& moved_kh = f.iso_data.at(u).at(tu.at(j)).at(one).at(kh);
      h.two[mint_product(hid, "id0")] = ku.two.at(hid);
      h.two[mint_product(hid, "up")] =
          mint_product(h.ar.at(mint_product(d.src, "up")), moved_kh);
      h.two[mint_product(hid, "id1")] =
          mint_product(sh.ar.at(d.src), moved_kh);
      h.two[mint_product(hid, "dn")] =
          mint_product(h.ar.at(mint_product(d.src, "dn")), kh);
      sh.two[hid] = h.two.at(mint_product(hid, "id1"));
    }
    gam.at[u] = std::move(h);
    shifted.at[u] = std::move(sh);
  }

  out.cyl = {cylinder(a), f, std::move(gam)};
  out.shifted = {a, f, std::move(shifted)};
  out.i0 = cylinder_end(a, false);
  out.i1 = cylinder_end(a, true);
  return out;
}

HomotopyPath homotopy_path(const Cocycle& c) {
  HomotopyPath out;
  out.e = grothendieck(c);
  const GroupoidPresheaf& e = out.e.e;
  const auto& cat = c.a.site()->cat();

  std::map<Id, std::map<Id, Id>> entry;
  for (const auto& u : cat.objects()) {
    auto& row = entry[u];
    for (const Id& x : e.at(u).objects()) {
      auto found = find_sheaf(c.f.atlas, u, e.aut_sheaf(u, x)->plus);
      if (!found)
        throw precondition_error(
            "the atlas is missing the automorphism sheaf of '" + x +
            "' over '" + u + "'");
      row[x] = *found;
    }
  }

  TwoGroupoidMap fe = conjugation_cocycle(e, c.f, entry);
  out.resolved = {resolution(e), c.f, fe};

  SectionCoefficients co = cocycle_coefficients(c);
  out.w = omega(c.a, co, out.e);
  out.shifted = {c.a, c.f, compose_two_maps(fe, out.w)};

  TwoGroupoidMap gam;
  for (const auto& u : cat.objects()) {
    const Id& one = cat.identity_of(u);
    const TwoGroupoid& t = c.a.at(u);
    const FiniteGroupoid& fb = c.f.two.at(u).base();
    const TwoGroupoidHom& ku = c.k.at.at(u);
    const TwoGroupoidHom& feu = fe.at.at(u);
    const TwoGroupoidHom& wu = out.w.at.at(u);
    TwoGroupoidHom h;

    for (const Id& x : t.objects()) {
      h.ob[mint_product(x, "0")] = ku.ob.at(x);
      h.ob[mint_product(x, "1")] = entry.at(u).at(x);
    }

    // the sheafified comparison iso K(x) -> E~_x per object
    std::map<Id, Id> gam1;
    for (const Id& x : t.objects()) {
      GroupPresheafMap data;
      const auto& unit = e.aut_sheaf(u, x)->unit_map;
      for (const Id& psi : cat.morphisms_into(u)) {
        const Id& v = cat.src(psi);
        const Id& xv = c.a.restrict(psi).ob.at(x);
        const Id& idv = c.a.at(v).base().identity_of(xv);
        auto& row = data[psi];
        for (const Id& f : co.groups.at(u).at(x).underlying().sections(psi))
          row[f] = unit.at(psi).at(out.e.cls.at(v).at({f, idv}));
      }
      gam1[x] = find_iso(c.f, u, ku.ob.at(x), entry.at(u).at(x), data);
    }

    for (const auto& m : t.one_cells()) {
      h.ar[mint_product(m.id, "id0")] = ku.ar.at(m.id);
      h.ar[mint_product(m.id, "id1")] = feu.ar.at(wu.ar.at(m.id));
      h.ar[mint_product(m.id, "up")] =
          fb.compose(gam1.at(m.tgt), ku.ar.at(m.id));
      h.ar[mint_product(m.id, "dn")] =
          fb.compose(ku.ar.at(m.id), fb.inverse(gam1.at(m.src)));
    }

    for (const auto& [hid, d] : t.two_cells()) {
      const Id& kh = c.f.conjugator.at(u).at(ku.two.at(hid));
      const Id& j = t.base().tgt(d.src);
      h.two[mint_product(hid, "id0")] = ku.two.at(hid);
      h.two[mint_product(hid, "id1")] = feu.two.at(wu.two.at(hid));
      h.two[mint_product(hid, "up")] = mint_product(
          h.ar.at(mint_product(d.src, "up")),
          c.f.iso_data.at(u).at(gam1.at(j)).at(one).at(kh));
      h.two[mint_product(hid, "dn")] =
          mint_product(h.ar.at(mint_product(d.src, "dn")), kh);
    }
    gam.at[u] = std::move(h);
  }

  out.cyl = {cylinder(c.a), c.f, std::move(gam)};
  out.i0 = cylinder_end(c.a, false);
  out.i1 = cylinder_end(c.a, true);
  return out;
}

}  // namespace gerbecalc
