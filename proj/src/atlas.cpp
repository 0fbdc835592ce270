#include "gerbecalc/atlas.hpp"

#include <algorithm>

namespace gerbecalc {

namespace {

GroupPresheafMap identity_data(const GroupPresheaf& s) {
  GroupPresheafMap out;
  for (const auto& [psi, secs] : s.underlying().section_tables()) {
    auto& row = out[psi];
    for (const Id& x : secs) row[x] = x;
  }
  return out;
}

GroupPresheafMap compose_data(const GroupPresheafMap& b, const GroupPresheafMap& a) {
  GroupPresheafMap out;
  for (const auto& [psi, tab] : a) {
    auto& row = out[psi];
    const auto& bt = b.at(psi);
    for (const auto& [x, y] : tab) row[x] = bt.at(y);
  }
  return out;
}

GroupPresheafMap inverse_data(const GroupPresheafMap& a) {
  GroupPresheafMap out;
  for (const auto& [psi, tab] : a) {
    auto& row = out[psi];
    for (const auto& [x, y] : tab) row[y] = x;
  }
  return out;
}

}  // namespace

GroupSheafAtlas::GroupSheafAtlas(std::shared_ptr<const FiniteSite> site,
                                 std::map<Id, std::map<Id, GroupPresheaf>> sheaves,
                                 std::map<Id, std::map<Id, Id>> restriction)
    : site_(std::move(site)),
      sheaves_(std::move(sheaves)),
      restriction_(std::move(restriction)) {}

const std::map<Id, GroupPresheaf>& GroupSheafAtlas::sheaves_at(const Id& u) const {
  static const std::map<Id, GroupPresheaf> empty;
  auto it = sheaves_.find(u);
  return it == sheaves_.end() ? empty : it->second;
}

bool GroupSheafAtlas::has_sheaf(const Id& u, const Id& i) const {
  auto it = sheaves_.find(u);
  return it != sheaves_.end() && it->second.count(i) > 0;
}

const GroupPresheaf& GroupSheafAtlas::sheaf(const Id& u, const Id& i) const {
  auto it = sheaves_.find(u);
  if (it == sheaves_.end() || !it->second.count(i))
    throw gc_error("no atlas entry '" + i + "' over '" + u + "'");
  return it->second.at(i);
}

const Id& GroupSheafAtlas::restrict_object(const Id& phi, const Id& i) const {
  auto it = restriction_.find(phi);
  if (it == restriction_.end() || !it->second.count(i))
    throw gc_error("no atlas restriction of '" + i + "' along '" + phi + "'");
  return it->second.at(i);
}

std::vector<Violation> GroupSheafAtlas::validate() const {
  std::vector<Violation> out;
  if (!site_) return {{"atlas-site", ""}};
  const auto& cat = site_->cat();
  for (const auto& [u, table] : sheaves_)
    if (!cat.has_object(u)) out.push_back({"atlas-object", u});
  if (!out.empty()) return out;

  for (const auto& u : cat.objects())
    for (const auto& [i, s] : sheaves_at(u)) {
      auto sv = s.validate();
      if (!sv.empty()) {
        out.push_back({"atlas-presheaf", u + " " + i + " " + sv.front().axiom});
        continue;
      }
      CheckResult cr = is_group_sheaf(s);
      if (!cr.ok) out.push_back({"atlas-not-sheaf", u + " " + i + " " + cr.witness});
    }
  if (!out.empty()) return out;

  // Restriction data: total, landing on a listed entry, pullback on the nose.
  for (const auto& m : cat.morphisms())
    for (const auto& [i, s] : sheaves_at(m.tgt)) {
      auto rt = restriction_.find(m.id);
      auto it = rt == restriction_.end() ? decltype(rt->second.begin())()
                                         : rt->second.find(i);
      if (rt == restriction_.end() || it == rt->second.end()) {
        out.push_back({"atlas-restrict-missing", m.id + " " + i});
        continue;
      }
      if (!has_sheaf(m.src, it->second)) {
        out.push_back({"atlas-restrict-unknown", m.id + " " + i});
        continue;
      }
      if (sheaf(m.src, it->second) != pullback_sheaf(s, *site_, m.id))
        out.push_back({"atlas-restrict-closure", m.id + " " + i});
    }
  if (!out.empty()) return out;

  for (const auto& u : cat.objects())
    for (const auto& [i, s] : sheaves_at(u))
      if (restrict_object(cat.identity_of(u), i) != i)
        out.push_back({"atlas-restrict-identity", u + " " + i});
  for (const auto& m : cat.morphisms())
    for (const auto& n : cat.morphisms()) {
      auto comp = cat.try_compose(m.id, n.id);
      if (!comp) continue;
      for (const auto& [i, s] : sheaves_at(m.tgt))
        if (restrict_object(*comp, i) !=
            restrict_object(n.id, restrict_object(m.id, i)))
          out.push_back({"atlas-restrict-compose", m.id + " " + n.id + " " + i});
    }
  return out;
}

GroupPresheaf pullback_sheaf(const GroupPresheaf& s, const FiniteSite& base,
                             const Id& phi) {
  return restrict_group_to_slice(s, base, phi);
}

GroupSheafAtlas saturate_atlas(
    std::shared_ptr<const FiniteSite> site,
    const std::map<Id, std::map<Id, GroupPresheaf>>& generators) {
  const auto& cat = site->cat();
  std::map<Id, std::map<Id, GroupPresheaf>> sheaves = generators;
  std::map<Id, std::map<Id, Id>> restriction;
  for (const auto& u : cat.objects()) sheaves[u];

  std::vector<std::pair<Id, Id>> work;
  for (const auto& [u, table] : sheaves)
    for (const auto& [i, s] : table) work.push_back({u, i});

  auto intern = [&](const Id& v, const GroupPresheaf& data, const Id& hint) -> Id {
    for (const auto& [j, s] : sheaves[v])
      if (s == data) return j;
    Id name = hint;
    for (int n = 2; sheaves[v].count(name); ++n)
      name = mint_product(hint, std::to_string(n));
    sheaves[v].emplace(name, data);
    work.push_back({v, name});
    return name;
  };

  for (size_t w = 0; w < work.size(); ++w) {
    const auto [u, i] = work[w];
    const GroupPresheaf data = sheaves.at(u).at(i);
    for (const Id& m : cat.morphisms_into(u)) {
      if (m == cat.identity_of(u)) {
        restriction[m][i] = i;
        continue;
      }
      restriction[m][i] =
          intern(cat.src(m), pullback_sheaf(data, *site, m), mint_product(i, m));
    }
  }
  return GroupSheafAtlas(std::move(site), std::move(sheaves), std::move(restriction));
}

GroupSheafAtlas constant_atlas(std::shared_ptr<const FiniteSite> site,
                               const std::vector<FiniteGroup>& groups) {
  const auto& cat = site->cat();
  std::map<Id, std::map<Id, GroupPresheaf>> sheaves;
  std::map<Id, std::map<Id, Id>> restriction;
  for (const auto& u : cat.objects())
    for (const auto& g : groups)
      sheaves[u].emplace(
          g.name(),
          sheafify_group(constant_group_presheaf(site->slice(u), g)).plus);
  for (const auto& m : cat.morphisms())
    for (const auto& g : groups) restriction[m.id][g.name()] = g.name();
  return GroupSheafAtlas(std::move(site), std::move(sheaves), std::move(restriction));
}

GroupSheafAtlas extend_atlas(const GroupSheafAtlas& f, const GroupSheafAtlas& g) {
  const auto& cat = f.site()->cat();
  std::map<Id, std::map<Id, GroupPresheaf>> sheaves = f.sheaf_tables();
  std::map<Id, std::map<Id, Id>> restriction = f.restriction_tables();

  std::map<Id, std::map<Id, Id>> rename;
  for (const auto& [u, table] : g.sheaf_tables())
    for (const auto& [i, s] : table) {
      Id chosen;
      bool found = false;
      for (const auto& [j, t] : sheaves[u])
        if (t == s) {
          chosen = j;
          found = true;
          break;
        }
      if (!found) {
        chosen = i;
        for (int n = 2; sheaves[u].count(chosen); ++n)
          chosen = mint_product(i, std::to_string(n));
        sheaves[u].emplace(chosen, s);
      }
      rename[u][i] = chosen;
    }
  for (const auto& [phi, table] : g.restriction_tables()) {
    const Id& u = cat.tgt(phi);
    const Id& v = cat.src(phi);
    for (const auto& [i, j] : table) {
      const Id& from = rename.at(u).at(i);
      if (!restriction[phi].count(from))
        restriction[phi][from] = rename.at(v).at(j);
    }
  }
  return GroupSheafAtlas(f.site(), std::move(sheaves), std::move(restriction));
}

std::optional<Id> find_sheaf(const GroupSheafAtlas& f, const Id& u,
                             const GroupPresheaf& s) {
  for (const auto& [i, t] : f.sheaves_at(u))
    if (t == s) return i;
  return std::nullopt;
}

GroupPresheaf canonical_rename(const GroupPresheaf& s) {
  std::map<Id, std::map<Id, Id>> ren;
  std::map<Id, std::vector<Id>> sections;
  for (const auto& [psi, secs] : s.underlying().section_tables()) {
    std::vector<Id> sorted = secs;
    std::sort(sorted.begin(), sorted.end());
    auto& row = ren[psi];
    size_t n = 0;
    for (const Id& x : sorted) row[x] = "s" + std::to_string(n++);
    auto& named = sections[psi];
    for (const Id& x : sorted) named.push_back(row.at(x));
  }
  const auto& cat = s.site()->cat();
  std::map<Id, std::map<Id, Id>> restriction;
  for (const auto& [m, tab] : s.underlying().restriction_tables()) {
    auto& row = restriction[m];
    const auto& up = ren.at(cat.tgt(m));
    const auto& down = ren.at(cat.src(m));
    for (const auto& [x, y] : tab) row[up.at(x)] = down.at(y);
  }
  std::map<Id, FiniteGroup> groups;
  for (const auto& [psi, grp] : sections) {
    const auto& row = ren.at(psi);
    const FiniteGroup& src = s.group_at(psi);
    std::map<std::pair<Id, Id>, Id> mul;
    for (const auto& [ab, c] : src.mul_table())
      mul[{row.at(ab.first), row.at(ab.second)}] = row.at(c);
    groups.emplace(psi, FiniteGroup(src.name(), grp, row.at(src.unit()),
                                    std::move(mul)));
  }
  return GroupPresheaf(
      Presheaf(s.site(), std::move(sections), std::move(restriction)),
      std::move(groups));
}

MaterializedAtlas materialize(const GroupSheafAtlas& f) {
  MaterializedAtlas out;
  out.atlas = f;
  auto site = f.site();
  const auto& cat = site->cat();
  std::map<Id, TwoGroupoid> sections;
  std::map<Id, TwoGroupoidHom> restriction;

  for (const auto& u : cat.objects()) {
    const Id& one = cat.identity_of(u);
    const auto& entries = f.sheaves_at(u);
    auto& iso_u = out.iso_data[u];
    auto& conj_u = out.conjugator[u];

    std::vector<Id> objects;
    std::vector<MorphismData> arrows;
    for (const auto& [i, si] : entries) objects.push_back(i);
    for (const auto& [i, si] : entries)
      for (const auto& [j, sj] : entries) {
        auto isos = group_presheaf_isos(si, sj);
        for (size_t n = 0; n < isos.size(); ++n) {
          Id id = mint_product(mint_span(i, j), std::to_string(n));
          arrows.push_back({id, i, j});
          iso_u.emplace(std::move(id), std::move(isos[n]));
        }
      }

    std::map<std::pair<Id, Id>, std::vector<Id>> by_pair;
    for (const auto& a : arrows) by_pair[{a.src, a.tgt}].push_back(a.id);
    auto lookup = [&](const Id& i, const Id& j,
                      const GroupPresheafMap& d) -> const Id& {
      for (const Id& c : by_pair[{i, j}])
        if (iso_u.at(c) == d) return c;
      throw gc_error("materialize: iso " + i + " -> " + j + " over '" + u +
                     "' left the table");
    };

    std::map<Id, Id> identity;
    for (const auto& [i, si] : entries)
      identity[i] = lookup(i, i, identity_data(si));
    std::map<std::pair<Id, Id>, Id> compose;
    for (const auto& a : arrows)
      for (const auto& b : arrows)
        if (b.src == a.tgt)
          compose[{b.id, a.id}] =
              lookup(a.src, b.tgt, compose_data(iso_u.at(b.id), iso_u.at(a.id)));
    std::map<Id, Id> inverse;
    for (const auto& a : arrows)
      inverse[a.id] = lookup(a.tgt, a.src, inverse_data(iso_u.at(a.id)));
    FiniteGroupoid base(FiniteCategory(objects, arrows, std::move(identity),
                                       std::move(compose)),
                        std::move(inverse));

    // One 2-cell (f,k): f -> c_k o f per iso f and global section k of the
    // target sheaf; every valid conjugator is its own 2-cell.
    std::map<Id, TwoCellData> cells;
    for (const auto& a : arrows) {
      const GroupPresheaf& sj = entries.at(a.tgt);
      for (const Id& k : sj.underlying().sections(one)) {
        GroupPresheafMap td;
        for (const auto& [psi, tab] : iso_u.at(a.id)) {
          const Id& kpsi =
              sj.underlying().restrict(mint_slice_morphism(psi, one), k);
          const FiniteGroup& grp = sj.group_at(psi);
          auto& row = td[psi];
          for (const auto& [x, y] : tab) row[x] = grp.conj(kpsi, y);
        }
        Id id = mint_product(a.id, k);
        cells.emplace(id, TwoCellData{a.id, lookup(a.src, a.tgt, td)});
        conj_u.emplace(std::move(id), k);
      }
    }

    std::map<Id, Id> vid;
    for (const auto& a : arrows)
      vid[a.id] = mint_product(a.id, entries.at(a.tgt).unit(one));
    std::map<std::pair<Id, Id>, Id> vcomp;
    std::map<Id, Id> vinv;
    for (const auto& [aid, d] : cells) {
      const FiniteGroup& grp = entries.at(base.tgt(d.src)).group_at(one);
      const Id& k1 = conj_u.at(aid);
      for (const Id& k2 : grp.elements())
        vcomp[{mint_product(d.tgt, k2), aid}] =
            mint_product(d.src, grp.mul(k2, k1));
      vinv[aid] = mint_product(d.tgt, grp.inv(k1));
    }
    std::map<std::pair<Id, Id>, Id> hcomp;
    for (const auto& [aid, da] : cells)
      for (const auto& [bid, db] : cells) {
        if (base.src(db.src) != base.tgt(da.src)) continue;
        const FiniteGroup& grp = entries.at(base.tgt(db.src)).group_at(one);
        const Id& carried = iso_u.at(db.src).at(one).at(conj_u.at(aid));
        hcomp[{bid, aid}] = mint_product(base.compose(db.src, da.src),
                                         grp.mul(conj_u.at(bid), carried));
      }

    sections.emplace(u, TwoGroupoid(std::move(base), std::move(cells),
                                    std::move(vid), std::move(vcomp),
                                    std::move(vinv), std::move(hcomp)));
  }

  for (const auto& m : cat.morphisms()) {
    const Id& u = m.tgt;
    const Id& v = m.src;
    const Id& one_u = cat.identity_of(u);
    const TwoGroupoid& tu = sections.at(u);
    const TwoGroupoid& tv = sections.at(v);
    TwoGroupoidHom h;
    for (const auto& [i, si] : f.sheaves_at(u))
      h.ob[i] = f.restrict_object(m.id, i);
    for (const auto& [aid, d] : out.iso_data.at(u)) {
      GroupPresheafMap pulled;
      for (const Id& psi : cat.morphisms_into(v))
        pulled[psi] = d.at(cat.compose(m.id, psi));
      const Id& i = h.ob.at(tu.base().src(aid));
      const Id& j = h.ob.at(tu.base().tgt(aid));
      bool placed = false;
      for (const auto& [cid, cd] : out.iso_data.at(v)) {
        if (tv.base().src(cid) != i || tv.base().tgt(cid) != j) continue;
        if (cd == pulled) {
          h.ar[aid] = cid;
          placed = true;
          break;
        }
      }
      if (!placed)
        throw gc_error("materialize: pullback of iso '" + aid + "' along '" +
                       m.id + "' left the table");
    }
    for (const auto& [cid, k] : out.conjugator.at(u)) {
      const Id& fid = tu.two_cell(cid).src;
      const GroupPresheaf& sj = f.sheaf(u, tu.base().tgt(fid));
      const Id& kv =
          sj.underlying().restrict(mint_slice_morphism(m.id, one_u), k);
      h.two[cid] = mint_product(h.ar.at(fid), kv);
    }
    restriction.emplace(m.id, std::move(h));
  }

  out.two = TwoGroupoidPresheaf(std::move(site), std::move(sections),
                                std::move(restriction));
  return out;
}

const Id& find_iso(const MaterializedAtlas& m, const Id& u, const Id& src,
                   const Id& tgt, const GroupPresheafMap& data) {
  const FiniteGroupoid& base = m.two.at(u).base();
  for (const auto& [id, d] : m.iso_data.at(u))
    if (base.src(id) == src && base.tgt(id) == tgt && d == data) return id;
  throw gc_error("no listed iso " + src + " -> " + tgt + " over '" + u + "'");
}

TwoGroupoidMap atlas_inclusion(const MaterializedAtlas& sub,
                               const MaterializedAtlas& super) {
  TwoGroupoidMap out;
  const auto& cat = sub.atlas.site()->cat();
  for (const auto& u : cat.objects()) {
    TwoGroupoidHom h;
    for (const auto& [i, s] : sub.atlas.sheaf_tables().at(u)) {
      auto j = find_sheaf(super.atlas, u, s);
      if (!j)
        throw gc_error("atlas inclusion: no entry over '" + u +
                       "' matching '" + i + "'");
      h.ob[i] = *j;
    }
    const FiniteGroupoid& base = sub.two.at(u).base();
    for (const auto& [aid, d] : sub.iso_data.at(u))
      h.ar[aid] =
          find_iso(super, u, h.ob.at(base.src(aid)), h.ob.at(base.tgt(aid)), d);
    for (const auto& [cid, k] : sub.conjugator.at(u))
      h.two[cid] = mint_product(h.ar.at(sub.two.at(u).two_cell(cid).src), k);
    out.at[u] = std::move(h);
  }
  return out;
}

GStarResult g_star(const GroupoidPresheaf& g) {
  GStarResult out;
  auto site = g.site();
  const auto& cat = site->cat();
  std::map<Id, std::map<Id, GroupPresheaf>> sheaves;
  std::map<Id, std::map<Id, Id>> restriction;
  for (const auto& u : cat.objects()) {
    auto& table = sheaves[u];
    for (const Id& x : g.at(u).objects()) {
      table.emplace(x, g.aut_sheaf(u, x)->plus);
      out.nu[u][x] = x;
    }
  }
  for (const auto& m : cat.morphisms()) {
    auto& row = restriction[m.id];
    for (const Id& x : g.at(m.tgt).objects()) row[x] = g.restrict(m.id).ob.at(x);
  }
  out.atlas =
      GroupSheafAtlas(std::move(site), std::move(sheaves), std::move(restriction));
  out.mat = materialize(out.atlas);
  return out;
}

GroupPresheafMap sheafified_conjugation(const GroupoidPresheaf& g, const Id& u,
                                        const Id& alpha) {
  const auto& cat = g.site()->cat();
  const FiniteGroupoid& gu = g.at(u);
  Presheaf ax = aut_presheaf(g, u, gu.src(alpha)).underlying();
  Presheaf ay = aut_presheaf(g, u, gu.tgt(alpha)).underlying();
  PresheafMap pre;
  for (const Id& psi : cat.morphisms_into(u)) {
    const FiniteGroupoid& gv = g.at(cat.src(psi));
    const Id& apsi = g.restrict(psi).ar.at(alpha);
    auto& row = pre.at[psi];
    for (const Id& a : ax.sections(psi))
      row[a] = gv.compose(gv.compose(apsi, a), gv.inverse(apsi));
  }
  PlusResult p1x = plus_construction(ax);
  PlusResult p1y = plus_construction(ay);
  PresheafMap f1 = plus_map(p1x, p1y, pre);
  PlusResult p2x = plus_construction(p1x.plus);
  PlusResult p2y = plus_construction(p1y.plus);
  return plus_map(p2x, p2y, f1).at;
}

TwoGroupoidMap conjugation_cocycle(const GroupoidPresheaf& g,
                                   const MaterializedAtlas& f,
                                   const std::map<Id, std::map<Id, Id>>& entry) {
  TwoGroupoidMap out;
  const auto& cat = g.site()->cat();

  for (const auto& u : cat.objects()) {
    const Id& one = cat.identity_of(u);
    const FiniteGroupoid& gu = g.at(u);
    const auto& names = entry.at(u);
    TwoGroupoidHom h;
    for (const Id& x : gu.objects()) h.ob[x] = names.at(x);

    // Sheafify each conjugation with the plus stages memoized per object.
    struct Stages {
      Presheaf aut;
      PlusResult p1;
      PlusResult p2;
    };
    std::map<Id, Stages> memo;
    auto stages = [&](const Id& x) -> const Stages& {
      auto it = memo.find(x);
      if (it != memo.end()) return it->second;
      Stages s;
      s.aut = aut_presheaf(g, u, x).underlying();
      s.p1 = plus_construction(s.aut);
      s.p2 = plus_construction(s.p1.plus);
      return memo.emplace(x, std::move(s)).first->second;
    };

    for (const auto& a : gu.arrows()) {
      const Stages& sx = stages(a.src);
      const Stages& sy = stages(a.tgt);
      PresheafMap pre;
      for (const Id& psi : cat.morphisms_into(u)) {
        const FiniteGroupoid& gv = g.at(cat.src(psi));
        const Id& apsi = g.restrict(psi).ar.at(a.id);
        auto& row = pre.at[psi];
        for (const Id& arr : sx.aut.sections(psi))
          row[arr] = gv.compose(gv.compose(apsi, arr), gv.inverse(apsi));
      }
      PresheafMap f1 = plus_map(sx.p1, sy.p1, pre);
      PresheafMap f2 = plus_map(sx.p2, sy.p2, f1);
      h.ar[a.id] = find_iso(f, u, names.at(a.src), names.at(a.tgt), f2.at);
    }

    for (const auto& a : gu.arrows())
      for (const auto& b : gu.arrows()) {
        if (a.src != b.src || a.tgt != b.tgt) continue;
        const Id& k = g.aut_sheaf(u, a.tgt)->unit_map.at(one).at(
            gu.compose(b.id, gu.inverse(a.id)));
        h.two[mint_span(a.id, b.id)] = mint_product(h.ar.at(a.id), k);
      }
    out.at[u] = std::move(h);
  }
  return out;
}

CanonicalCocycle canonical_cocycle(const GroupoidPresheaf& g) {
  CheckResult gerbe = is_gerbe(g);
  if (!gerbe.ok)
    throw precondition_error("canonical cocycle needs a gerbe: " + gerbe.witness);
  CanonicalCocycle out;
  out.a = resolution(g);
  out.star = g_star(g);
  out.k = conjugation_cocycle(g, out.star.mat, out.star.nu);
  return out;
}

}  // namespace gerbecalc
