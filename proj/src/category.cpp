#include "gerbecalc/category.hpp"

#include <algorithm>

namespace gerbecalc {

FiniteCategory::FiniteCategory(std::vector<Id> objects,
                               std::vector<MorphismData> morphisms,
                               std::map<Id, Id> identity,
                               std::map<std::pair<Id, Id>, Id> compose)
    : objects_(std::move(objects)),
      morphisms_(std::move(morphisms)),
      identity_(std::move(identity)),
      compose_(std::move(compose)) {
  std::sort(objects_.begin(), objects_.end());
  std::sort(morphisms_.begin(), morphisms_.end(),
            [](const MorphismData& a, const MorphismData& b) { return a.id < b.id; });
  for (const auto& m : morphisms_) {
    by_id_[m.id] = m;
    into_[m.tgt].push_back(m.id);
  }
  for (auto& [u, v] : into_) std::sort(v.begin(), v.end());
}

bool FiniteCategory::has_object(const Id& u) const {
  return std::binary_search(objects_.begin(), objects_.end(), u);
}

bool FiniteCategory::has_morphism(const Id& f) const { return by_id_.count(f) > 0; }

const MorphismData& FiniteCategory::morphism(const Id& f) const {
  auto it = by_id_.find(f);
  if (it == by_id_.end()) throw gc_error("no morphism '" + f + "'");
  return it->second;
}

const Id& FiniteCategory::identity_of(const Id& u) const {
  auto it = identity_.find(u);
  if (it == identity_.end()) throw gc_error("no identity for object '" + u + "'");
  return it->second;
}

const Id& FiniteCategory::compose(const Id& g, const Id& f) const {
  auto it = compose_.find({g, f});
  if (it == compose_.end())
    throw gc_error("composite " + g + " after " + f + " not defined");
  return it->second;
}

std::optional<Id> FiniteCategory::try_compose(const Id& g, const Id& f) const {
  auto it = compose_.find({g, f});
  if (it == compose_.end()) return std::nullopt;
  return it->second;
}

const std::vector<Id>& FiniteCategory::morphisms_into(const Id& u) const {
  static const std::vector<Id> empty;
  auto it = into_.find(u);
  return it == into_.end() ? empty : it->second;
}

std::vector<Violation> FiniteCategory::validate() const {
  std::vector<Violation> out;
  std::set<Id> objset(objects_.begin(), objects_.end());
  if (objset.size() != objects_.size())
    out.push_back({"unique-objects", "duplicate object id"});
  std::set<Id> morset;
  for (const auto& m : morphisms_) {
    if (!morset.insert(m.id).second)
      out.push_back({"unique-morphisms", m.id});
    if (!objset.count(m.src)) out.push_back({"morphism-src", m.id + " " + m.src});
    if (!objset.count(m.tgt)) out.push_back({"morphism-tgt", m.id + " " + m.tgt});
  }
  for (const auto& u : objects_) {
    auto it = identity_.find(u);
    if (it == identity_.end()) {
      out.push_back({"identity-missing", u});
      continue;
    }
    if (!morset.count(it->second)) {
      out.push_back({"identity-missing", u});
      continue;
    }
    const auto& m = morphism(it->second);
    if (m.src != u || m.tgt != u) out.push_back({"identity-endpoints", u});
  }
  // Totality and endpoint correctness of composition.
  for (const auto& g : morphisms_) {
    for (const auto& f : morphisms_) {
      auto it = compose_.find({g.id, f.id});
      bool composable = f.tgt == g.src;
      if (composable && it == compose_.end()) {
        out.push_back({"compose-missing", g.id + " " + f.id});
      } else if (!composable && it != compose_.end()) {
        out.push_back({"compose-spurious", g.id + " " + f.id});
      } else if (composable) {
        if (!morset.count(it->second)) {
          out.push_back({"compose-unknown", g.id + " " + f.id});
          continue;
        }
        const auto& c = morphism(it->second);
        if (c.src != f.src || c.tgt != g.tgt)
          out.push_back({"compose-endpoints", g.id + " " + f.id});
      }
    }
  }
  if (!out.empty()) return out;  // unit/assoc checks assume a total table
  for (const auto& f : morphisms_) {
    if (compose(f.id, identity_of(f.src)) != f.id)
      out.push_back({"unit-right", f.id});
    if (compose(identity_of(f.tgt), f.id) != f.id)
      out.push_back({"unit-left", f.id});
  }
  for (const auto& h : morphisms_)
    for (const auto& g : morphisms_)
      for (const auto& f : morphisms_) {
        if (f.tgt != g.src || g.tgt != h.src) continue;
        if (compose(h.id, compose(g.id, f.id)) != compose(compose(h.id, g.id), f.id))
          out.push_back({"associativity", h.id + " " + g.id + " " + f.id});
      }
  return out;
}

FiniteCategory poset_category(const std::vector<Id>& elements,
                              const std::vector<std::pair<Id, Id>>& leq) {
  for (const auto& e : elements) require_user_id(e, "poset element");
  size_t n = elements.size();
  std::map<Id, size_t> idx;
  for (size_t i = 0; i < n; ++i) idx[elements[i]] = i;
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i) le[i][i] = true;
  for (const auto& [a, b] : leq) le.at(idx.at(a))[idx.at(b)] = true;
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = true;

  auto mor_name = [&](size_t i, size_t j) {
    return i == j ? "1" + elements[i] : elements[i] + "2" + elements[j];
  };
  std::vector<MorphismData> morphisms;
  std::map<Id, Id> identity;
  std::map<std::pair<Id, Id>, Id> compose;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (le[i][j]) morphisms.push_back({mor_name(i, j), elements[i], elements[j]});
  for (size_t i = 0; i < n; ++i) identity[elements[i]] = mor_name(i, i);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        if (le[i][j] && le[j][k])
          compose[{mor_name(j, k), mor_name(i, j)}] = mor_name(i, k);
  return FiniteCategory(elements, morphisms, identity, compose);
}

}  // namespace gerbecalc
