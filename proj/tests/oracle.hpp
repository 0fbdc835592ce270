#pragma once

// Brute-force reference computations used to pin expected values in tests.
// These deliberately avoid the shortcuts the library takes: families are
// enumerated by raw product filtering, and plus sections are genuine colimit
// classes of (covering sieve, family) pairs glued along every refinement,
// rather than families over one distinguished sieve.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gerbecalc/groupoid.hpp"
#include "gerbecalc/presheaf.hpp"
#include "gerbecalc/two_groupoid.hpp"

namespace oracle {

using gerbecalc::Family;
using gerbecalc::Id;
using gerbecalc::Presheaf;

inline bool matches(const Presheaf& x, const std::set<Id>& sieve, const Family& fam) {
  const auto& cat = x.site()->cat();
  for (const auto& phi : sieve)
    for (const auto& g : cat.morphisms_into(cat.src(phi)))
      if (fam.at(cat.compose(phi, g)) != x.restrict(g, fam.at(phi))) return false;
  return true;
}

inline std::vector<Family> families(const Presheaf& x, const Id& u,
                                    const std::set<Id>& sieve) {
  const auto& cat = x.site()->cat();
  std::vector<Id> ms(sieve.begin(), sieve.end());
  std::vector<Family> out;
  Family cur;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == ms.size()) {
      if (matches(x, sieve, cur)) out.push_back(cur);
      return;
    }
    for (const auto& v : x.sections(cat.src(ms[i]))) {
      cur[ms[i]] = v;
      rec(i + 1);
    }
    cur.erase(ms[i]);
  };
  rec(0);
  return out;
}

struct PlusOracle {
  Presheaf plus;
  std::map<Id, std::map<Id, Id>> unit;
};

inline PlusOracle plus(const Presheaf& x) {
  const auto& site = *x.site();
  const auto& cat = site.cat();

  using Node = std::pair<std::set<Id>, Family>;
  auto node_key = [](const Node& n) {
    return gerbecalc::format_sieve(n.first) + gerbecalc::format_family(n.second);
  };

  // Per object: every (covering sieve, matching family) pair, glued along
  // every refinement map. The class name is the least member key.
  std::map<Id, std::map<std::string, std::string>> cls;
  for (const auto& u : cat.objects()) {
    std::vector<Node> nodes;
    for (const auto& r : site.covering_on(u))
      for (const auto& fam : families(x, u, r)) nodes.push_back({r, fam});
    std::vector<size_t> parent(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) parent[i] = i;
    std::function<size_t(size_t)> find = [&](size_t i) {
      return parent[i] == i ? i : parent[i] = find(parent[i]);
    };
    for (size_t i = 0; i < nodes.size(); ++i)
      for (size_t j = 0; j < nodes.size(); ++j) {
        if (i == j) continue;
        const auto& [ri, mi] = nodes[i];
        const auto& [rj, mj] = nodes[j];
        if (!std::includes(ri.begin(), ri.end(), rj.begin(), rj.end())) continue;
        bool agrees = true;
        for (const auto& phi : rj)
          if (mi.at(phi) != mj.at(phi)) {
            agrees = false;
            break;
          }
        if (agrees) parent[find(i)] = find(j);
      }
    std::map<size_t, std::string> least;
    for (size_t i = 0; i < nodes.size(); ++i) {
      auto k = node_key(nodes[i]);
      auto [it, fresh] = least.try_emplace(find(i), k);
      if (!fresh && k < it->second) it->second = k;
    }
    for (size_t i = 0; i < nodes.size(); ++i)
      cls[u][node_key(nodes[i])] = least.at(find(i));
  }

  std::map<Id, std::vector<Id>> sections;
  for (const auto& [u, table] : cls) {
    std::set<Id> reps;
    for (const auto& [k, rep] : table) reps.insert(rep);
    sections[u] = std::vector<Id>(reps.begin(), reps.end());
  }

  std::map<Id, std::map<Id, Id>> restriction;
  for (const auto& m : cat.morphisms())
    for (const auto& r : site.covering_on(m.tgt))
      for (const auto& fam : families(x, m.tgt, r)) {
        auto pb = site.pullback_sieve(m.id, r);
        Family down;
        for (const auto& g : pb) down[g] = fam.at(cat.compose(m.id, g));
        const auto& from = cls.at(m.tgt).at(node_key({r, fam}));
        const auto& to = cls.at(m.src).at(node_key({pb, down}));
        auto [it, fresh] = restriction[m.id].try_emplace(from, to);
        if (!fresh && it->second != to)
          throw gerbecalc::gc_error("oracle restriction not class-invariant");
      }

  PlusOracle out;
  for (const auto& u : cat.objects()) {
    auto max = site.maximal_sieve(u);
    for (const auto& sec : x.sections(u)) {
      Family germ;
      for (const auto& g : max) germ[g] = x.restrict(g, sec);
      out.unit[u][sec] = cls.at(u).at(node_key({max, germ}));
    }
  }
  out.plus = Presheaf(x.site(), std::move(sections), std::move(restriction));
  return out;
}

inline PlusOracle sheafify(const Presheaf& x) {
  PlusOracle once = plus(x);
  PlusOracle twice = plus(once.plus);
  PlusOracle out;
  out.plus = twice.plus;
  for (const auto& [u, table] : once.unit)
    for (const auto& [sec, mid] : table) out.unit[u][sec] = twice.unit.at(u).at(mid);
  return out;
}

// Partition of `elems` by reachability closure over symmetrized edges,
// computed with a boolean matrix rather than union-find.
inline std::set<std::set<Id>> closure_partition(
    std::vector<Id> elems, const std::vector<std::pair<Id, Id>>& edges) {
  std::sort(elems.begin(), elems.end());
  std::map<Id, size_t> index;
  for (size_t i = 0; i < elems.size(); ++i) index[elems[i]] = i;
  std::vector<std::vector<bool>> reach(elems.size(),
                                       std::vector<bool>(elems.size(), false));
  for (size_t i = 0; i < elems.size(); ++i) reach[i][i] = true;
  for (const auto& [a, b] : edges) {
    reach[index.at(a)][index.at(b)] = true;
    reach[index.at(b)][index.at(a)] = true;
  }
  for (size_t k = 0; k < elems.size(); ++k)
    for (size_t i = 0; i < elems.size(); ++i)
      for (size_t j = 0; j < elems.size(); ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  std::set<std::set<Id>> out;
  for (size_t i = 0; i < elems.size(); ++i) {
    std::set<Id> cls;
    for (size_t j = 0; j < elems.size(); ++j)
      if (reach[i][j]) cls.insert(elems[j]);
    out.insert(cls);
  }
  return out;
}

// Path components over the arrow relation, as a partition of the object set.
inline std::set<std::set<Id>> pi0_partition(const gerbecalc::FiniteGroupoid& g) {
  std::vector<std::pair<Id, Id>> edges;
  for (const auto& m : g.arrows()) edges.push_back({m.src, m.tgt});
  return closure_partition(g.objects(), edges);
}

// Partition of the 1-cells of a 2-groupoid by 2-cell reachability.
inline std::set<std::set<Id>> cell_partition(const gerbecalc::TwoGroupoid& g) {
  std::vector<Id> ones;
  for (const auto& m : g.one_cells()) ones.push_back(m.id);
  std::vector<std::pair<Id, Id>> edges;
  for (const auto& [a, d] : g.two_cells()) edges.push_back({d.src, d.tgt});
  return closure_partition(ones, edges);
}

}  // namespace oracle
