#include "gerbecalc/groupoid.hpp"

#include <algorithm>

namespace gerbecalc {

FiniteGroupoid::FiniteGroupoid(FiniteCategory cat, std::map<Id, Id> inverse)
    : cat_(std::move(cat)), inverse_(std::move(inverse)) {}

const Id& FiniteGroupoid::inverse(const Id& f) const {
  auto it = inverse_.find(f);
  if (it == inverse_.end()) throw gc_error("no inverse recorded for: " + f);
  return it->second;
}

std::vector<Id> FiniteGroupoid::arrows_between(const Id& x, const Id& y) const {
  std::vector<Id> out;
  for (const auto& m : cat_.morphisms())
    if (m.src == x && m.tgt == y) out.push_back(m.id);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Violation> FiniteGroupoid::validate() const {
  std::vector<Violation> out = cat_.validate();
  for (const auto& m : cat_.morphisms()) {
    auto it = inverse_.find(m.id);
    if (it == inverse_.end()) {
      out.push_back({"inverse-missing", m.id});
      continue;
    }
    if (!cat_.has_morphism(it->second)) {
      out.push_back({"inverse-unknown", m.id});
      continue;
    }
    auto left = cat_.try_compose(it->second, m.id);
    auto idsrc = cat_.identity_table().find(m.src);
    if (!left || idsrc == cat_.identity_table().end() || *left != idsrc->second)
      out.push_back({"inverse-left", m.id});
    auto right = cat_.try_compose(m.id, it->second);
    auto idtgt = cat_.identity_table().find(m.tgt);
    if (!right || idtgt == cat_.identity_table().end() || *right != idtgt->second)
      out.push_back({"inverse-right", m.id});
  }
  for (const auto& [f, g] : inverse_)
    if (!cat_.has_morphism(f)) out.push_back({"inverse-spurious", f + " " + g});
  return out;
}

FiniteGroupoid discrete_groupoid(const std::vector<Id>& objects) {
  std::vector<MorphismData> arrows;
  std::map<Id, Id> identity;
  std::map<std::pair<Id, Id>, Id> compose;
  std::map<Id, Id> inverse;
  for (const Id& x : objects) {
    Id i = mint_span(x, x);
    arrows.push_back({i, x, x});
    identity[x] = i;
    compose[{i, i}] = i;
    inverse[i] = i;
  }
  return FiniteGroupoid(FiniteCategory(objects, arrows, identity, compose), inverse);
}

FiniteGroupoid codiscrete_groupoid(const std::vector<Id>& objects) {
  std::vector<MorphismData> arrows;
  std::map<Id, Id> identity;
  std::map<std::pair<Id, Id>, Id> compose;
  std::map<Id, Id> inverse;
  for (const Id& x : objects)
    for (const Id& y : objects) {
      arrows.push_back({mint_span(x, y), x, y});
      inverse[mint_span(x, y)] = mint_span(y, x);
    }
  for (const Id& x : objects) identity[x] = mint_span(x, x);
  for (const Id& x : objects)
    for (const Id& y : objects)
      for (const Id& z : objects)
        compose[{mint_span(y, z), mint_span(x, y)}] = mint_span(x, z);
  return FiniteGroupoid(FiniteCategory(objects, arrows, identity, compose), inverse);
}

FiniteGroupoid group_as_groupoid(const FiniteGroup& g, const Id& object) {
  std::vector<MorphismData> arrows;
  std::map<std::pair<Id, Id>, Id> compose;
  std::map<Id, Id> inverse;
  for (const Id& a : g.elements()) {
    arrows.push_back({a, object, object});
    inverse[a] = g.inv(a);
    for (const Id& b : g.elements()) compose[{a, b}] = g.mul(a, b);
  }
  return FiniteGroupoid(
      FiniteCategory({object}, arrows, {{object, g.unit()}}, compose), inverse);
}

FiniteGroupoid product_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  std::vector<Id> objects;
  for (const Id& x : a.objects())
    for (const Id& y : b.objects()) objects.push_back(mint_product(x, y));
  std::vector<MorphismData> arrows;
  std::map<Id, Id> identity;
  std::map<std::pair<Id, Id>, Id> compose;
  std::map<Id, Id> inverse;
  for (const auto& f : a.arrows())
    for (const auto& g : b.arrows()) {
      arrows.push_back({mint_product(f.id, g.id), mint_product(f.src, g.src),
                        mint_product(f.tgt, g.tgt)});
      inverse[mint_product(f.id, g.id)] =
          mint_product(a.inverse(f.id), b.inverse(g.id));
    }
  for (const Id& x : a.objects())
    for (const Id& y : b.objects())
      identity[mint_product(x, y)] =
          mint_product(a.identity_of(x), b.identity_of(y));
  for (const auto& [fa, ha] : a.cat().compose_table())
    for (const auto& [fb, hb] : b.cat().compose_table())
      compose[{mint_product(fa.first, fb.first),
               mint_product(fa.second, fb.second)}] = mint_product(ha, hb);
  return FiniteGroupoid(FiniteCategory(objects, arrows, identity, compose), inverse);
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  std::set<Id> seen(a.objects().begin(), a.objects().end());
  for (const Id& x : b.objects())
    if (seen.count(x)) throw precondition_error("duplicate object in union: " + x);
  std::set<Id> arrs;
  for (const auto& m : a.arrows()) arrs.insert(m.id);
  for (const auto& m : b.arrows())
    if (arrs.count(m.id)) throw precondition_error("duplicate arrow in union: " + m.id);

  std::vector<Id> objects = a.objects();
  objects.insert(objects.end(), b.objects().begin(), b.objects().end());
  std::vector<MorphismData> arrows = a.arrows();
  arrows.insert(arrows.end(), b.arrows().begin(), b.arrows().end());
  std::map<Id, Id> identity = a.cat().identity_table();
  identity.insert(b.cat().identity_table().begin(), b.cat().identity_table().end());
  std::map<std::pair<Id, Id>, Id> compose = a.cat().compose_table();
  compose.insert(b.cat().compose_table().begin(), b.cat().compose_table().end());
  std::map<Id, Id> inverse = a.inverse_table();
  inverse.insert(b.inverse_table().begin(), b.inverse_table().end());
  return FiniteGroupoid(FiniteCategory(objects, arrows, identity, compose), inverse);
}

FiniteGroupoid full_subgroupoid(const FiniteGroupoid& g, const std::set<Id>& objects) {
  std::vector<Id> obs;
  for (const Id& x : g.objects())
    if (objects.count(x)) obs.push_back(x);
  std::vector<MorphismData> arrows;
  std::set<Id> keep;
  for (const auto& m : g.arrows())
    if (objects.count(m.src) && objects.count(m.tgt)) {
      arrows.push_back(m);
      keep.insert(m.id);
    }
  std::map<Id, Id> identity;
  for (const Id& x : obs) identity[x] = g.identity_of(x);
  std::map<std::pair<Id, Id>, Id> compose;
  for (const auto& [pair, h] : g.cat().compose_table())
    if (keep.count(pair.first) && keep.count(pair.second)) compose[pair] = h;
  std::map<Id, Id> inverse;
  for (const Id& f : keep) inverse[f] = g.inverse(f);
  return FiniteGroupoid(FiniteCategory(obs, arrows, identity, compose), inverse);
}

std::vector<Violation> validate_groupoid_hom(const FiniteGroupoid& g,
                                             const FiniteGroupoid& h,
                                             const GroupoidHom& f) {
  std::vector<Violation> out;
  for (const Id& x : g.objects()) {
    auto it = f.ob.find(x);
    if (it == f.ob.end())
      out.push_back({"hom-object-missing", x});
    else if (!h.has_object(it->second))
      out.push_back({"hom-object-image", x});
  }
  for (const auto& m : g.arrows()) {
    auto it = f.ar.find(m.id);
    if (it == f.ar.end()) {
      out.push_back({"hom-arrow-missing", m.id});
      continue;
    }
    if (!h.has_arrow(it->second)) {
      out.push_back({"hom-arrow-image", m.id});
      continue;
    }
    auto s = f.ob.find(m.src);
    auto t = f.ob.find(m.tgt);
    if (s == f.ob.end() || t == f.ob.end() || h.src(it->second) != s->second ||
        h.tgt(it->second) != t->second)
      out.push_back({"hom-endpoints", m.id});
  }
  for (const auto& [x, i] : g.cat().identity_table()) {
    auto ix = f.ob.find(x);
    auto ii = f.ar.find(i);
    if (ix == f.ob.end() || ii == f.ar.end()) continue;
    auto want = h.cat().identity_table().find(ix->second);
    if (want == h.cat().identity_table().end() || ii->second != want->second)
      out.push_back({"hom-identity", x});
  }
  for (const auto& [pair, k] : g.cat().compose_table()) {
    auto ia = f.ar.find(pair.first);
    auto ib = f.ar.find(pair.second);
    auto ik = f.ar.find(k);
    if (ia == f.ar.end() || ib == f.ar.end() || ik == f.ar.end()) continue;
    if (!h.has_arrow(ia->second) || !h.has_arrow(ib->second)) continue;
    auto got = h.cat().try_compose(ia->second, ib->second);
    if (!got || *got != ik->second)
      out.push_back({"hom-compose", pair.first + " " + pair.second});
  }
  return out;
}

GroupoidHom identity_hom(const FiniteGroupoid& g) {
  GroupoidHom out;
  for (const Id& x : g.objects()) out.ob[x] = x;
  for (const auto& m : g.arrows()) out.ar[m.id] = m.id;
  return out;
}

GroupoidHom compose_homs(const GroupoidHom& g, const GroupoidHom& f) {
  GroupoidHom out;
  for (const auto& [x, y] : f.ob) out.ob[x] = g.ob.at(y);
  for (const auto& [a, b] : f.ar) out.ar[a] = g.ar.at(b);
  return out;
}

}  // namespace gerbecalc
