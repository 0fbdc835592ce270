#pragma once

#include <map>
#include <utility>
#include <vector>

#include "gerbecalc/ids.hpp"

namespace gerbecalc {

// Union-find closure of the edge relation; every element is mapped to the
// lexicographically least member of its class, which names the class.
std::map<Id, Id> least_representatives(const std::vector<Id>& elements,
                                       const std::vector<std::pair<Id, Id>>& edges);

}  // namespace gerbecalc
