#include "gerbecalc/group.hpp"

#include <algorithm>
#include <functional>

namespace gerbecalc {

FiniteGroup::FiniteGroup(Id name, std::vector<Id> elements, Id unit,
                         std::map<std::pair<Id, Id>, Id> mul)
    : name_(std::move(name)),
      elements_(std::move(elements)),
      unit_(std::move(unit)),
      mul_(std::move(mul)) {
  std::sort(elements_.begin(), elements_.end());
}

const Id& FiniteGroup::mul(const Id& a, const Id& b) const {
  auto it = mul_.find({a, b});
  if (it == mul_.end())
    throw gc_error("group '" + name_ + "': product " + a + "*" + b + " undefined");
  return it->second;
}

const Id& FiniteGroup::inv(const Id& a) const {
  for (const auto& b : elements_)
    if (mul(a, b) == unit_) return b;
  throw gc_error("group '" + name_ + "': no inverse for " + a);
}

Id FiniteGroup::conj(const Id& k, const Id& a) const { return mul(mul(k, a), inv(k)); }

std::vector<Violation> FiniteGroup::validate() const {
  std::vector<Violation> out;
  std::set<Id> elems(elements_.begin(), elements_.end());
  if (elems.size() != elements_.size()) out.push_back({"group-elements", name_});
  if (!elems.count(unit_)) out.push_back({"group-unit-element", name_ + " " + unit_});
  for (const auto& a : elements_)
    for (const auto& b : elements_) {
      auto it = mul_.find({a, b});
      if (it == mul_.end())
        out.push_back({"group-closure", name_ + " " + a + " " + b});
      else if (!elems.count(it->second))
        out.push_back({"group-closure", name_ + " " + a + " " + b});
    }
  for (const auto& [key, v] : mul_)
    if (!elems.count(key.first) || !elems.count(key.second))
      out.push_back({"group-spurious", name_ + " " + key.first + " " + key.second});
  if (!out.empty()) return out;
  for (const auto& a : elements_) {
    if (mul(unit_, a) != a || mul(a, unit_) != a)
      out.push_back({"group-unit", name_ + " " + a});
    bool has_inv = false;
    for (const auto& b : elements_) has_inv = has_inv || mul(a, b) == unit_;
    if (!has_inv) out.push_back({"group-inverse", name_ + " " + a});
  }
  for (const auto& a : elements_)
    for (const auto& b : elements_)
      for (const auto& c : elements_)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          out.push_back({"group-assoc", name_ + " " + a + " " + b + " " + c});
  return out;
}

FiniteGroup trivial_group() { return cyclic_group(1); }

FiniteGroup cyclic_group(size_t n) {
  if (n == 0) throw gc_error("cyclic group of order 0");
  auto name_of = [](size_t i) { return i == 0 ? Id("e") : "r" + std::to_string(i); };
  std::vector<Id> elements;
  std::map<std::pair<Id, Id>, Id> mul;
  for (size_t i = 0; i < n; ++i) elements.push_back(name_of(i));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) mul[{name_of(i), name_of(j)}] = name_of((i + j) % n);
  return FiniteGroup("c" + std::to_string(n), elements, "e", mul);
}

FiniteGroup klein_group() {
  std::vector<Id> elements = {"e", "i", "j", "k"};
  std::map<std::pair<Id, Id>, Id> mul;
  auto set = [&](const Id& a, const Id& b, const Id& c) {
    mul[{a, b}] = c;
    mul[{b, a}] = c;
  };
  for (const auto& a : elements) set("e", a, a);
  for (const auto& a : {"i", "j", "k"}) mul[{a, a}] = "e";
  set("i", "j", "k");
  set("j", "k", "i");
  set("k", "i", "j");
  return FiniteGroup("v4", elements, "e", mul);
}

FiniteGroup symmetric_group_3() {
  // r^a for a=0,1,2 named e,r1,r2; r^a s named s0,s1,s2; s r s = r^2.
  auto name_of = [](size_t a, size_t b) {
    if (b == 0) return a == 0 ? Id("e") : "r" + std::to_string(a);
    return "s" + std::to_string(a);
  };
  std::vector<Id> elements;
  std::map<std::pair<Id, Id>, Id> mul;
  for (size_t b = 0; b < 2; ++b)
    for (size_t a = 0; a < 3; ++a) elements.push_back(name_of(a, b));
  for (size_t b1 = 0; b1 < 2; ++b1)
    for (size_t a1 = 0; a1 < 3; ++a1)
      for (size_t b2 = 0; b2 < 2; ++b2)
        for (size_t a2 = 0; a2 < 3; ++a2) {
          size_t a = b1 == 0 ? (a1 + a2) % 3 : (a1 + 3 - a2) % 3;
          mul[{name_of(a1, b1), name_of(a2, b2)}] = name_of(a, (b1 + b2) % 2);
        }
  return FiniteGroup("s3", elements, "e", mul);
}

std::vector<FiniteGroup> group_catalog(size_t max_order) {
  std::vector<FiniteGroup> out;
  for (size_t n = 1; n <= max_order && n <= 6; ++n) {
    out.push_back(cyclic_group(n));
    if (n == 4) out.push_back(klein_group());
    if (n == 6) out.push_back(symmetric_group_3());
  }
  return out;
}

std::vector<std::map<Id, Id>> group_homs(const FiniteGroup& g, const FiniteGroup& h) {
  const auto& ge = g.elements();
  std::vector<std::map<Id, Id>> out;
  std::map<Id, Id> f;

  // Every product with all three of p, q, p*q assigned must be respected.
  auto consistent = [&]() {
    for (const auto& [p, fp] : f)
      for (const auto& [q, fq] : f) {
        auto it = f.find(g.mul(p, q));
        if (it != f.end() && it->second != h.mul(fp, fq)) return false;
      }
    return true;
  };

  std::function<void(size_t)> place = [&](size_t i) {
    if (i == ge.size()) {
      out.push_back(f);
      return;
    }
    const Id& a = ge[i];
    for (const auto& img : h.elements()) {
      if (a == g.unit() && img != h.unit()) continue;
      f[a] = img;
      if (consistent()) place(i + 1);
      f.erase(a);
    }
  };
  place(0);
  return out;
}

std::vector<std::map<Id, Id>> group_isos(const FiniteGroup& g, const FiniteGroup& h) {
  std::vector<std::map<Id, Id>> out;
  if (g.order() != h.order()) return out;
  for (auto& f : group_homs(g, h)) {
    std::set<Id> image;
    for (const auto& [a, b] : f) image.insert(b);
    if (image.size() == g.order()) out.push_back(std::move(f));
  }
  return out;
}

std::vector<std::map<Id, Id>> group_autos(const FiniteGroup& g) {
  return group_isos(g, g);
}

GroupPresheaf::GroupPresheaf(Presheaf underlying, std::map<Id, FiniteGroup> groups)
    : underlying_(std::move(underlying)), groups_(std::move(groups)) {}

const FiniteGroup& GroupPresheaf::group_at(const Id& u) const {
  auto it = groups_.find(u);
  if (it == groups_.end()) throw gc_error("no group structure over '" + u + "'");
  return it->second;
}

const Id& GroupPresheaf::mul(const Id& u, const Id& a, const Id& b) const {
  return group_at(u).mul(a, b);
}

const Id& GroupPresheaf::inv(const Id& u, const Id& a) const {
  return group_at(u).inv(a);
}

const Id& GroupPresheaf::unit(const Id& u) const { return group_at(u).unit(); }

std::vector<Violation> GroupPresheaf::validate() const {
  std::vector<Violation> out = underlying_.validate();
  const auto& cat = underlying_.site()->cat();
  for (const auto& u : cat.objects()) {
    auto it = groups_.find(u);
    if (it == groups_.end()) {
      out.push_back({"group-missing", u});
      continue;
    }
    auto gv = it->second.validate();
    out.insert(out.end(), gv.begin(), gv.end());
    if (it->second.elements() != underlying_.sections(u))
      out.push_back({"group-carrier", u});
  }
  if (!out.empty()) return out;
  // Restrictions must be homomorphisms.
  for (const auto& m : cat.morphisms()) {
    const auto& gu = group_at(m.tgt);
    const auto& gv = group_at(m.src);
    for (const auto& a : gu.elements())
      for (const auto& b : gu.elements())
        if (underlying_.restrict(m.id, gu.mul(a, b)) !=
            gv.mul(underlying_.restrict(m.id, a), underlying_.restrict(m.id, b)))
          out.push_back({"restriction-hom", m.id + " " + a + " " + b});
  }
  return out;
}

bool GroupPresheaf::operator==(const GroupPresheaf& o) const {
  return underlying_ == o.underlying_ && groups_ == o.groups_;
}

GroupPresheaf constant_group_presheaf(std::shared_ptr<const FiniteSite> site,
                                      const FiniteGroup& g) {
  Presheaf u = constant_presheaf(site, g.elements());
  std::map<Id, FiniteGroup> groups;
  for (const auto& obj : site->cat().objects()) groups.emplace(obj, g);
  return GroupPresheaf(std::move(u), std::move(groups));
}

GroupPlusResult plus_group(const GroupPresheaf& g) {
  PlusResult pr = plus_construction(g.underlying());
  const auto& cat = g.site()->cat();

  std::map<Id, FiniteGroup> groups;
  for (const auto& u : cat.objects()) {
    std::map<std::string, Id> by_key;
    for (const auto& [id, fam] : pr.families.at(u)) by_key[format_family(fam)] = id;
    std::map<std::pair<Id, Id>, Id> mul;
    for (const auto& [ida, fa] : pr.families.at(u))
      for (const auto& [idb, fb] : pr.families.at(u)) {
        Family prod;
        for (const auto& [phi, va] : fa)
          prod[phi] = g.mul(cat.src(phi), va, fb.at(phi));
        auto it = by_key.find(format_family(prod));
        if (it == by_key.end())
          throw gc_error("pointwise product left the family table over '" + u + "'");
        mul[{ida, idb}] = it->second;
      }
    groups.emplace(u, FiniteGroup(g.group_at(u).name(), pr.plus.sections(u),
                                  pr.unit.at(u).at(g.unit(u)), std::move(mul)));
  }
  return {GroupPresheaf(std::move(pr.plus), std::move(groups)), std::move(pr.unit)};
}

GroupPlusResult sheafify_group(const GroupPresheaf& g) {
  GroupPlusResult once = plus_group(g);
  GroupPlusResult twice = plus_group(once.plus);
  GroupPlusResult out;
  out.plus = std::move(twice.plus);
  for (const auto& [u, table] : once.unit_map)
    for (const auto& [sec, mid] : table)
      out.unit_map[u][sec] = twice.unit_map.at(u).at(mid);
  return out;
}

CheckResult is_group_sheaf(const GroupPresheaf& g) { return is_sheaf(g.underlying()); }

std::vector<Violation> validate_group_map(const GroupPresheaf& g,
                                          const GroupPresheaf& h,
                                          const GroupPresheafMap& f) {
  PresheafMap pf{f};
  std::vector<Violation> out = validate_presheaf_map(g.underlying(), h.underlying(), pf);
  if (!out.empty()) return out;
  for (const auto& u : g.site()->cat().objects())
    for (const auto& a : g.underlying().sections(u))
      for (const auto& b : g.underlying().sections(u))
        if (pf.apply(u, g.mul(u, a, b)) !=
            h.mul(u, pf.apply(u, a), pf.apply(u, b)))
          out.push_back({"map-hom", u + " " + a + " " + b});
  return out;
}

std::vector<GroupPresheafMap> group_presheaf_isos(const GroupPresheaf& g,
                                                  const GroupPresheaf& h) {
  const auto& cat = g.site()->cat();
  const auto& objects = cat.objects();
  std::vector<GroupPresheafMap> out;
  GroupPresheafMap cur;

  // Naturality against every morphism with both endpoints assigned.
  auto natural_so_far = [&]() {
    for (const auto& m : cat.morphisms()) {
      auto su = cur.find(m.tgt);
      auto sv = cur.find(m.src);
      if (su == cur.end() || sv == cur.end()) continue;
      for (const auto& a : g.underlying().sections(m.tgt))
        if (sv->second.at(g.underlying().restrict(m.id, a)) !=
            h.underlying().restrict(m.id, su->second.at(a)))
          return false;
    }
    return true;
  };

  std::function<void(size_t)> place = [&](size_t i) {
    if (i == objects.size()) {
      out.push_back(cur);
      return;
    }
    const Id& u = objects[i];
    for (auto& iso : group_isos(g.group_at(u), h.group_at(u))) {
      cur[u] = iso;
      if (natural_so_far()) place(i + 1);
      cur.erase(u);
    }
  };
  place(0);
  return out;
}

GroupPresheaf restrict_group_to_slice(const GroupPresheaf& h, const FiniteSite& base,
                                      const Id& phi) {
  Presheaf under = restrict_to_slice(h.underlying(), base, phi);
  const auto& cat = base.cat();
  std::map<Id, FiniteGroup> groups;
  for (const auto& chi : base.slice(cat.src(phi))->cat().objects())
    groups.emplace(chi, h.group_at(cat.compose(phi, chi)));
  return GroupPresheaf(std::move(under), std::move(groups));
}

}  // namespace gerbecalc
