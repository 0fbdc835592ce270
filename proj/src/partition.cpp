#include "gerbecalc/partition.hpp"

#include <algorithm>

namespace gerbecalc {

std::map<Id, Id> least_representatives(const std::vector<Id>& elements,
                                       const std::vector<std::pair<Id, Id>>& edges) {
  std::map<Id, Id> parent;
  for (const Id& x : elements) parent[x] = x;
  auto find = [&parent](Id a) {
    while (parent.at(a) != a) a = parent.at(a);
    return a;
  };
  // linking the larger root under the smaller keeps every root the least
  // member of its tree
  for (const auto& [a, b] : edges) {
    Id ra = find(a);
    Id rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::map<Id, Id> reps;
  for (const Id& x : elements) reps[x] = find(x);
  return reps;
}

}  // namespace gerbecalc
