#include "gerbecalc/presheaf.hpp"

#include <algorithm>
#include <functional>

namespace gerbecalc {

Presheaf::Presheaf(std::shared_ptr<const FiniteSite> site,
                   std::map<Id, std::vector<Id>> sections,
                   std::map<Id, std::map<Id, Id>> restriction)
    : site_(std::move(site)),
      sections_(std::move(sections)),
      restriction_(std::move(restriction)) {
  for (const auto& u : site_->cat().objects()) sections_.try_emplace(u);
  for (const auto& m : site_->cat().morphisms()) restriction_.try_emplace(m.id);
  for (auto& [u, xs] : sections_) std::sort(xs.begin(), xs.end());
}

const std::vector<Id>& Presheaf::sections(const Id& u) const {
  auto it = sections_.find(u);
  if (it == sections_.end()) throw gc_error("no sections entry for '" + u + "'");
  return it->second;
}

bool Presheaf::has_section(const Id& u, const Id& x) const {
  const auto& xs = sections(u);
  return std::binary_search(xs.begin(), xs.end(), x);
}

const Id& Presheaf::restrict(const Id& phi, const Id& x) const {
  auto it = restriction_.find(phi);
  if (it == restriction_.end()) throw gc_error("no restriction table for '" + phi + "'");
  auto jt = it->second.find(x);
  if (jt == it->second.end())
    throw gc_error("restriction along '" + phi + "' undefined on '" + x + "'");
  return jt->second;
}

std::vector<Violation> Presheaf::validate() const {
  std::vector<Violation> out;
  const auto& cat = site_->cat();
  for (const auto& [u, xs] : sections_) {
    if (!cat.has_object(u)) {
      out.push_back({"section-object", u});
      continue;
    }
    for (size_t i = 0; i + 1 < xs.size(); ++i)
      if (xs[i] == xs[i + 1]) out.push_back({"section-duplicate", u + " " + xs[i]});
  }
  for (const auto& [phi, table] : restriction_) {
    if (!cat.has_morphism(phi)) {
      out.push_back({"restriction-morphism", phi});
      continue;
    }
    const Id& u = cat.tgt(phi);
    const Id& v = cat.src(phi);
    for (const auto& x : sections(u)) {
      auto it = table.find(x);
      if (it == table.end())
        out.push_back({"restriction-missing", phi + " " + x});
      else if (!has_section(v, it->second))
        out.push_back({"restriction-image", phi + " " + x});
    }
    for (const auto& [x, y] : table)
      if (!has_section(u, x)) out.push_back({"restriction-spurious", phi + " " + x});
  }
  if (!out.empty()) return out;
  for (const auto& u : cat.objects())
    for (const auto& x : sections(u))
      if (restrict(cat.identity_of(u), x) != x)
        out.push_back({"restriction-identity", u + " " + x});
  for (const auto& m : cat.morphisms())
    for (const auto& psi : cat.morphisms_into(cat.src(m.id)))
      for (const auto& x : sections(m.tgt))
        if (restrict(psi, restrict(m.id, x)) != restrict(cat.compose(m.id, psi), x))
          out.push_back({"restriction-compose", m.id + " " + psi + " " + x});
  return out;
}

std::string format_family(const Family& fam) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : fam) {
    if (!first) out += ";";
    out += k + "=" + v;
    first = false;
  }
  return out + "}";
}

bool is_matching_family(const Presheaf& x, const Id& u, const std::set<Id>& sieve,
                        const Family& fam) {
  const auto& cat = x.site()->cat();
  if (fam.size() != sieve.size()) return false;
  for (const auto& [phi, val] : fam) {
    if (!sieve.count(phi)) return false;
    if (!x.has_section(cat.src(phi), val)) return false;
  }
  for (const auto& phi : sieve)
    for (const auto& g : cat.morphisms_into(cat.src(phi)))
      if (fam.at(cat.compose(phi, g)) != x.restrict(g, fam.at(phi))) return false;
  return true;
}

std::vector<Family> matching_families(const Presheaf& x, const Id& u,
                                      const std::set<Id>& sieve) {
  const auto& cat = x.site()->cat();
  std::vector<Id> members(sieve.begin(), sieve.end());
  std::vector<Family> out;
  Family fam;

  // A candidate value for `phi` must agree with everything already placed:
  // with values it forces and with values that force it.
  auto consistent = [&](const Id& phi, const Id& val) {
    for (const auto& g : cat.morphisms_into(cat.src(phi))) {
      auto it = fam.find(cat.compose(phi, g));
      if (it != fam.end() && it->second != x.restrict(g, val)) return false;
    }
    for (const auto& [psi, pval] : fam)
      for (const auto& g : cat.morphisms_into(cat.src(psi)))
        if (cat.compose(psi, g) == phi && x.restrict(g, pval) != val) return false;
    return true;
  };

  std::function<void(size_t)> place = [&](size_t i) {
    if (i == members.size()) {
      out.push_back(fam);
      return;
    }
    const Id& phi = members[i];
    for (const auto& val : x.sections(cat.src(phi))) {
      if (!consistent(phi, val)) continue;
      fam[phi] = val;
      place(i + 1);
      fam.erase(phi);
    }
  };
  place(0);

  std::sort(out.begin(), out.end(), [](const Family& a, const Family& b) {
    return format_family(a) < format_family(b);
  });
  return out;
}

std::set<Id> agreement_sieve(const Presheaf& x, const Id& u, const Id& a, const Id& b) {
  std::set<Id> out;
  for (const auto& phi : x.site()->cat().morphisms_into(u))
    if (x.restrict(phi, a) == x.restrict(phi, b)) out.insert(phi);
  return out;
}

const Family& PlusResult::family_of(const Id& u, const Id& plus_id) const {
  auto it = families.find(u);
  if (it == families.end()) throw gc_error("no plus families over '" + u + "'");
  auto jt = it->second.find(plus_id);
  if (jt == it->second.end())
    throw gc_error("no plus family '" + plus_id + "' over '" + u + "'");
  return jt->second;
}

PlusResult plus_construction(const Presheaf& x) {
  const auto& site = *x.site();
  const auto& cat = site.cat();

  PlusResult res;
  std::map<Id, std::map<std::string, Id>> id_by_key;
  std::map<Id, std::vector<Id>> sections;
  for (const auto& u : cat.objects()) {
    sections[u];
    res.families[u];
    auto fams = matching_families(x, u, site.t_min(u));
    for (size_t i = 0; i < fams.size(); ++i) {
      Id id = "f" + std::to_string(i);
      id_by_key[u][format_family(fams[i])] = id;
      res.families[u][id] = fams[i];
      sections[u].push_back(id);
    }
  }

  std::map<Id, std::map<Id, Id>> restriction;
  for (const auto& m : cat.morphisms()) {
    const Id& u = m.tgt;
    const Id& v = m.src;
    restriction[m.id];
    for (const auto& [id, fam] : res.families[u]) {
      Family down;
      for (const auto& g : site.t_min(v)) down[g] = fam.at(cat.compose(m.id, g));
      auto it = id_by_key[v].find(format_family(down));
      if (it == id_by_key[v].end())
        throw gc_error("plus restriction along '" + m.id + "' left the family table");
      restriction[m.id][id] = it->second;
    }
  }

  for (const auto& u : cat.objects())
    for (const auto& sec : x.sections(u)) {
      Family germ;
      for (const auto& g : site.t_min(u)) germ[g] = x.restrict(g, sec);
      res.unit[u][sec] = id_by_key[u].at(format_family(germ));
    }

  res.plus = Presheaf(x.site(), std::move(sections), std::move(restriction));
  return res;
}

SheafifyResult sheafify(const Presheaf& x) {
  PlusResult once = plus_construction(x);
  PlusResult twice = plus_construction(once.plus);
  SheafifyResult res;
  res.sheaf = std::move(twice.plus);
  for (const auto& [u, table] : once.unit)
    for (const auto& [sec, mid] : table) res.unit[u][sec] = twice.unit.at(u).at(mid);
  return res;
}

CheckResult is_separated(const Presheaf& x) {
  const auto& site = *x.site();
  for (const auto& u : site.cat().objects()) {
    const auto& xs = x.sections(u);
    for (size_t i = 0; i < xs.size(); ++i)
      for (size_t j = i + 1; j < xs.size(); ++j) {
        bool agree = true;
        for (const auto& g : site.t_min(u))
          if (x.restrict(g, xs[i]) != x.restrict(g, xs[j])) {
            agree = false;
            break;
          }
        if (agree) return {false, u + " " + xs[i] + " " + xs[j]};
      }
  }
  return {};
}

CheckResult is_sheaf(const Presheaf& x) {
  const auto& site = *x.site();
  for (const auto& u : site.cat().objects())
    for (const auto& r : site.covering_on(u))
      for (const auto& fam : matching_families(x, u, r)) {
        int count = 0;
        for (const auto& sec : x.sections(u)) {
          bool glues = true;
          for (const auto& phi : r)
            if (x.restrict(phi, sec) != fam.at(phi)) {
              glues = false;
              break;
            }
          if (glues) ++count;
        }
        if (count != 1)
          return {false, u + " " + format_sieve(r) + " " + format_family(fam) +
                             (count == 0 ? " none" : " many")};
      }
  return {};
}

const Id& PresheafMap::apply(const Id& u, const Id& x) const {
  auto it = at.find(u);
  if (it == at.end()) throw gc_error("presheaf map has no component at '" + u + "'");
  auto jt = it->second.find(x);
  if (jt == it->second.end())
    throw gc_error("presheaf map undefined on '" + x + "' at '" + u + "'");
  return jt->second;
}

std::vector<Violation> validate_presheaf_map(const Presheaf& x, const Presheaf& y,
                                             const PresheafMap& f) {
  std::vector<Violation> out;
  const auto& cat = x.site()->cat();
  for (const auto& u : cat.objects()) {
    auto it = f.at.find(u);
    for (const auto& sec : x.sections(u)) {
      if (it == f.at.end() || !it->second.count(sec)) {
        out.push_back({"map-missing", u + " " + sec});
        continue;
      }
      if (!y.has_section(u, it->second.at(sec)))
        out.push_back({"map-image", u + " " + sec});
    }
  }
  if (!out.empty()) return out;
  for (const auto& m : cat.morphisms())
    for (const auto& sec : x.sections(m.tgt))
      if (f.apply(m.src, x.restrict(m.id, sec)) != y.restrict(m.id, f.apply(m.tgt, sec)))
        out.push_back({"map-naturality", m.id + " " + sec});
  return out;
}

PresheafMap plus_map(const PlusResult& px, const PlusResult& py, const PresheafMap& f) {
  PresheafMap out;
  const auto& cat = px.plus.site()->cat();
  std::map<Id, std::map<std::string, Id>> y_by_key;
  for (const auto& [u, table] : py.families)
    for (const auto& [id, fam] : table) y_by_key[u][format_family(fam)] = id;
  for (const auto& u : cat.objects())
    for (const auto& [id, fam] : px.families.at(u)) {
      Family image;
      for (const auto& [phi, val] : fam) image[phi] = f.apply(cat.src(phi), val);
      auto it = y_by_key[u].find(format_family(image));
      if (it == y_by_key[u].end())
        throw gc_error("image family over '" + u + "' is not matching for the target");
      out.at[u][id] = it->second;
    }
  return out;
}

CheckResult is_local_epi(const Presheaf& x, const Presheaf& y, const PresheafMap& f) {
  const auto& site = *x.site();
  const auto& cat = site.cat();
  for (const auto& u : cat.objects())
    for (const auto& sec : y.sections(u)) {
      std::set<Id> hit;
      for (const auto& phi : cat.morphisms_into(u)) {
        const Id& down = y.restrict(phi, sec);
        for (const auto& xs : x.sections(cat.src(phi)))
          if (f.apply(cat.src(phi), xs) == down) {
            hit.insert(phi);
            break;
          }
      }
      if (!site.is_covering(u, hit)) return {false, u + " " + sec};
    }
  return {};
}

CheckResult is_local_mono(const Presheaf& x, const Presheaf& y, const PresheafMap& f) {
  const auto& site = *x.site();
  for (const auto& u : site.cat().objects()) {
    const auto& xs = x.sections(u);
    for (size_t i = 0; i < xs.size(); ++i)
      for (size_t j = i + 1; j < xs.size(); ++j) {
        if (f.apply(u, xs[i]) != f.apply(u, xs[j])) continue;
        if (!site.is_covering(u, agreement_sieve(x, u, xs[i], xs[j])))
          return {false, u + " " + xs[i] + " " + xs[j]};
      }
  }
  return {};
}

CheckResult is_local_iso(const Presheaf& x, const Presheaf& y, const PresheafMap& f) {
  // Route 1: the sheafified map is a sectionwise bijection.
  PlusResult px1 = plus_construction(x);
  PlusResult py1 = plus_construction(y);
  PresheafMap f1 = plus_map(px1, py1, f);
  PlusResult px2 = plus_construction(px1.plus);
  PlusResult py2 = plus_construction(py1.plus);
  PresheafMap f2 = plus_map(px2, py2, f1);
  bool bijective = true;
  for (const auto& u : x.site()->cat().objects()) {
    std::set<Id> image;
    for (const auto& s : px2.plus.sections(u)) image.insert(f2.apply(u, s));
    if (image.size() != px2.plus.sections(u).size() ||
        image.size() != py2.plus.sections(u).size()) {
      bijective = false;
      break;
    }
  }
  // Route 2: local epi and local mono; the two must agree.
  CheckResult epi = is_local_epi(x, y, f);
  CheckResult mono = is_local_mono(x, y, f);
  if (bijective != (epi.ok && mono.ok))
    throw gc_error("local-iso characterizations disagree");
  if (!epi.ok) return {false, "epi " + epi.witness};
  if (!mono.ok) return {false, "mono " + mono.witness};
  return {};
}

Presheaf constant_presheaf(std::shared_ptr<const FiniteSite> site,
                           const std::vector<Id>& elements) {
  std::map<Id, std::vector<Id>> sections;
  std::map<Id, std::map<Id, Id>> restriction;
  for (const auto& u : site->cat().objects()) sections[u] = elements;
  for (const auto& m : site->cat().morphisms())
    for (const auto& e : elements) restriction[m.id][e] = e;
  return Presheaf(std::move(site), std::move(sections), std::move(restriction));
}

Presheaf restrict_to_slice(const Presheaf& h, const FiniteSite& base, const Id& phi) {
  const auto& cat = base.cat();
  auto target = base.slice(cat.src(phi));
  std::map<Id, std::vector<Id>> sections;
  std::map<Id, std::map<Id, Id>> restriction;
  for (const auto& chi : target->cat().objects()) {
    const Id up = cat.compose(phi, chi);
    sections[chi] = h.sections(up);
    for (const auto& g : cat.morphisms_into(cat.src(chi)))
      restriction[mint_slice_morphism(g, chi)] =
          h.restriction_tables().at(mint_slice_morphism(g, up));
  }
  return Presheaf(target, std::move(sections), std::move(restriction));
}

Presheaf image_presheaf(const Presheaf& x, const Presheaf& y, const PresheafMap& f) {
  std::map<Id, std::vector<Id>> sections;
  std::map<Id, std::map<Id, Id>> restriction;
  for (const auto& u : y.site()->cat().objects()) {
    std::set<Id> vals;
    for (const auto& s : x.sections(u)) vals.insert(f.apply(u, s));
    sections[u] = std::vector<Id>(vals.begin(), vals.end());
  }
  for (const auto& m : y.site()->cat().morphisms())
    for (const auto& s : sections[m.tgt]) restriction[m.id][s] = y.restrict(m.id, s);
  return Presheaf(y.site(), std::move(sections), std::move(restriction));
}

}  // namespace gerbecalc
