#ifndef MDSKIT_ENUMERATE_HPP
#define MDSKIT_ENUMERATE_HPP

#include <functional>
#include <vector>

#include "mdskit/graph.hpp"

namespace mdskit {

/// Calls fn once per minimal vertex cover (as the complement of a maximal
/// independent set, Bron-Kerbosch with pivoting). Emission order is
/// unspecified. fn returning false stops the enumeration.
void minimal_vertex_covers(const Graph& g, const std::function<bool(const std::vector<int>&)>& fn);

std::vector<std::vector<int>> all_minimal_vertex_covers(const Graph& g);

} // namespace mdskit

#endif
