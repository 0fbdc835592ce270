#include "gerbecalc/site.hpp"

#include <algorithm>

namespace gerbecalc {

namespace {
constexpr size_t kMaxSieveBase = 20;  // 2^20 subsets is the enumeration cap
}

FiniteSite::FiniteSite(FiniteCategory cat, std::map<Id, std::set<std::set<Id>>> covering)
    : cat_(std::move(cat)), covering_(std::move(covering)) {
  for (const auto& u : cat_.objects())
    covering_.try_emplace(u);  // every object gets an entry, possibly empty
}

const std::set<std::set<Id>>& FiniteSite::covering_on(const Id& u) const {
  auto it = covering_.find(u);
  if (it == covering_.end()) throw gc_error("no covering entry for '" + u + "'");
  return it->second;
}

bool FiniteSite::is_covering(const Id& u, const std::set<Id>& members) const {
  return covering_on(u).count(members) > 0;
}

bool FiniteSite::is_sieve(const Id& u, const std::set<Id>& members) const {
  for (const auto& f : members) {
    if (!cat_.has_morphism(f) || cat_.tgt(f) != u) return false;
    for (const auto& g : cat_.morphisms_into(cat_.src(f)))
      if (!members.count(cat_.compose(f, g))) return false;
  }
  return true;
}

std::set<Id> FiniteSite::maximal_sieve(const Id& u) const {
  const auto& in = cat_.morphisms_into(u);
  return std::set<Id>(in.begin(), in.end());
}

std::set<Id> FiniteSite::generated_sieve(const Id& u, const std::vector<Id>& gens) const {
  std::set<Id> out;
  for (const auto& f : gens) {
    if (cat_.tgt(f) != u) throw gc_error("generator '" + f + "' does not target '" + u + "'");
    out.insert(f);
    for (const auto& g : cat_.morphisms_into(cat_.src(f))) out.insert(cat_.compose(f, g));
  }
  return out;
}

std::set<Id> FiniteSite::pullback_sieve(const Id& phi, const std::set<Id>& members) const {
  std::set<Id> out;
  for (const auto& g : cat_.morphisms_into(cat_.src(phi)))
    if (members.count(cat_.compose(phi, g))) out.insert(g);
  return out;
}

const std::vector<std::set<Id>>& FiniteSite::sieves_on(const Id& u) const {
  std::lock_guard<std::mutex> lk(mu_);
  auto it = sieves_cache_.find(u);
  if (it != sieves_cache_.end()) return it->second;

  const auto& in = cat_.morphisms_into(u);
  if (in.size() > kMaxSieveBase)
    throw gc_error("too many morphisms into '" + u + "' to enumerate sieves");
  std::vector<std::set<Id>> out;
  for (size_t mask = 0; mask < (size_t(1) << in.size()); ++mask) {
    std::set<Id> s;
    for (size_t i = 0; i < in.size(); ++i)
      if (mask & (size_t(1) << i)) s.insert(in[i]);
    if (is_sieve(u, s)) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return sieves_cache_.emplace(u, std::move(out)).first->second;
}

const std::set<Id>& FiniteSite::t_min(const Id& u) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = t_min_cache_.find(u);
    if (it != t_min_cache_.end()) return it->second;
  }
  const auto& cov = covering_on(u);
  if (cov.empty()) throw gc_error("object '" + u + "' has no covering sieves");
  std::set<Id> acc = *cov.begin();
  for (const auto& r : cov) {
    std::set<Id> next;
    std::set_intersection(acc.begin(), acc.end(), r.begin(), r.end(),
                          std::inserter(next, next.begin()));
    acc = std::move(next);
  }
  std::lock_guard<std::mutex> lk(mu_);
  return t_min_cache_.emplace(u, std::move(acc)).first->second;
}

std::string format_sieve(const std::set<Id>& members) {
  std::string out = "{";
  bool first = true;
  for (const auto& m : members) {
    if (!first) out += ",";
    out += m;
    first = false;
  }
  return out + "}";
}

std::vector<Violation> FiniteSite::validate() const {
  std::vector<Violation> out = cat_.validate();
  if (!out.empty()) return out;

  for (const auto& [u, sieves] : covering_) {
    if (!cat_.has_object(u)) {
      out.push_back({"covering-object", u});
      continue;
    }
    for (const auto& r : sieves)
      if (!is_sieve(u, r))
        out.push_back({"covering-not-sieve", u + " " + format_sieve(r)});
  }
  if (!out.empty()) return out;

  for (const auto& u : cat_.objects()) {
    if (!is_covering(u, maximal_sieve(u)))
      out.push_back({"maximal-sieve", u});
    // Upward closure: the spec for stored sites, so that covering tests are
    // single lookups.
    for (const auto& r : covering_on(u))
      for (const auto& s : sieves_on(u))
        if (std::includes(s.begin(), s.end(), r.begin(), r.end()) && !is_covering(u, s))
          out.push_back({"upward-closure", u + " " + format_sieve(r) + " " + format_sieve(s)});
    // Stability under pullback.
    for (const auto& r : covering_on(u))
      for (const auto& phi : cat_.morphisms_into(u)) {
        auto pb = pullback_sieve(phi, r);
        if (!is_covering(cat_.src(phi), pb))
          out.push_back({"stability", u + " " + format_sieve(r) + " " + phi});
      }
    // Transitivity.
    for (const auto& s : sieves_on(u)) {
      if (is_covering(u, s)) continue;
      for (const auto& r : covering_on(u)) {
        bool all = true;
        for (const auto& phi : r)
          if (!is_covering(cat_.src(phi), pullback_sieve(phi, s))) {
            all = false;
            break;
          }
        if (all) {
          out.push_back({"transitivity", u + " " + format_sieve(r) + " " + format_sieve(s)});
          break;
        }
      }
    }
  }
  return out;
}

std::shared_ptr<const FiniteSite> FiniteSite::make_saturated(
    FiniteCategory cat, const std::map<Id, std::vector<std::set<Id>>>& generators) {
  auto cat_errors = cat.validate();
  if (!cat_errors.empty())
    throw gc_error("make_saturated: category invalid: " + cat_errors.front().axiom);

  FiniteSite probe(cat, {});
  std::map<Id, std::set<std::set<Id>>> cov;
  for (const auto& u : probe.cat().objects()) {
    cov[u].insert(probe.maximal_sieve(u));
  }
  for (const auto& [u, rs] : generators)
    for (const auto& r : rs) {
      if (!probe.is_sieve(u, r))
        throw gc_error("make_saturated: generator on '" + u + "' is not a sieve");
      cov[u].insert(r);
    }

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& u : probe.cat().objects()) {
      // upward closure
      for (const auto& s : probe.sieves_on(u)) {
        if (cov[u].count(s)) continue;
        bool contains_covering = false;
        for (const auto& r : cov[u])
          if (std::includes(s.begin(), s.end(), r.begin(), r.end())) {
            contains_covering = true;
            break;
          }
        if (contains_covering) {
          cov[u].insert(s);
          changed = true;
        }
      }
      // stability closure
      auto snapshot = cov[u];
      for (const auto& r : snapshot)
        for (const auto& phi : probe.cat().morphisms_into(u)) {
          auto pb = probe.pullback_sieve(phi, r);
          if (!cov[probe.cat().src(phi)].count(pb)) {
            cov[probe.cat().src(phi)].insert(pb);
            changed = true;
          }
        }
      // transitivity closure
      for (const auto& s : probe.sieves_on(u)) {
        if (cov[u].count(s)) continue;
        for (const auto& r : cov[u]) {
          bool all = true;
          for (const auto& phi : r)
            if (!cov[probe.cat().src(phi)].count(probe.pullback_sieve(phi, s))) {
              all = false;
              break;
            }
          if (all) {
            cov[u].insert(s);
            changed = true;
            break;
          }
        }
      }
    }
  }
  return std::make_shared<FiniteSite>(std::move(cat), std::move(cov));
}

std::shared_ptr<const FiniteSite> FiniteSite::slice(const Id& u) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = slice_cache_.find(u);
    if (it != slice_cache_.end()) return it->second;
  }
  if (!cat_.has_object(u)) throw gc_error("slice: no object '" + u + "'");

  std::vector<Id> objects = cat_.morphisms_into(u);
  std::vector<MorphismData> morphisms;
  std::map<Id, Id> identity;
  std::map<std::pair<Id, Id>, Id> compose;
  for (const auto& psi : objects) {
    const Id& v = cat_.src(psi);
    for (const auto& g : cat_.morphisms_into(v))
      morphisms.push_back({mint_slice_morphism(g, psi), cat_.compose(psi, g), psi});
    identity[psi] = mint_slice_morphism(cat_.identity_of(v), psi);
  }
  for (const auto& psi : objects) {
    const Id& v = cat_.src(psi);
    for (const auto& g : cat_.morphisms_into(v)) {
      const Id chi = cat_.compose(psi, g);  // source of g@psi
      for (const auto& h : cat_.morphisms_into(cat_.src(g)))
        compose[{mint_slice_morphism(g, psi), mint_slice_morphism(h, chi)}] =
            mint_slice_morphism(cat_.compose(g, h), psi);
    }
  }
  FiniteCategory scat(objects, morphisms, identity, compose);

  std::map<Id, std::set<std::set<Id>>> scov;
  for (const auto& psi : objects) {
    const Id& v = cat_.src(psi);
    for (const auto& b : covering_on(v)) {
      std::set<Id> s;
      for (const auto& g : b) s.insert(mint_slice_morphism(g, psi));
      scov[psi].insert(std::move(s));
    }
  }
  auto result = std::make_shared<FiniteSite>(std::move(scat), std::move(scov));
  std::lock_guard<std::mutex> lk(mu_);
  return slice_cache_.emplace(u, std::move(result)).first->second;
}

std::shared_ptr<const FiniteSite> terminal_site() {
  FiniteCategory cat({"pt"}, {{"1pt", "pt", "pt"}}, {{"pt", "1pt"}},
                     {{{"1pt", "1pt"}, "1pt"}});
  return FiniteSite::make_saturated(std::move(cat), {});
}

std::shared_ptr<const FiniteSite> trivial_site(FiniteCategory cat) {
  return FiniteSite::make_saturated(std::move(cat), {});
}

std::shared_ptr<const FiniteSite> opens_site(
    const std::vector<std::pair<Id, std::set<Id>>>& opens) {
  std::vector<Id> names;
  std::vector<std::pair<Id, Id>> leq;
  for (const auto& [name, pts] : opens) names.push_back(name);
  for (const auto& [a, apts] : opens)
    for (const auto& [b, bpts] : opens)
      if (a != b && std::includes(bpts.begin(), bpts.end(), apts.begin(), apts.end()))
        leq.push_back({a, b});
  FiniteCategory cat = poset_category(names, leq);

  // Generating covers: every family of subopens whose union is the whole open.
  std::map<Id, std::vector<std::set<Id>>> gens;
  FiniteSite probe(cat, {});
  for (const auto& [uname, upts] : opens) {
    std::vector<std::pair<Id, const std::set<Id>*>> below;
    for (const auto& [vname, vpts] : opens)
      if (std::includes(upts.begin(), upts.end(), vpts.begin(), vpts.end()))
        below.push_back({vname, &vpts});
    for (size_t mask = 0; mask < (size_t(1) << below.size()); ++mask) {
      std::set<Id> uni;
      std::vector<Id> fam;
      for (size_t i = 0; i < below.size(); ++i)
        if (mask & (size_t(1) << i)) {
          fam.push_back(below[i].first == uname ? cat.identity_of(uname)
                                                : below[i].first + "2" + uname);
          uni.insert(below[i].second->begin(), below[i].second->end());
        }
      if (uni == upts) gens[uname].push_back(probe.generated_sieve(uname, fam));
    }
  }
  return FiniteSite::make_saturated(std::move(cat), gens);
}

}  // namespace gerbecalc
