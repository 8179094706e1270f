#ifndef MDSKIT_MATCHING_HPP
#define MDSKIT_MATCHING_HPP

#include <optional>
#include <vector>

#include "mdskit/graph.hpp"

namespace mdskit {

/// Maximum-cardinality matching on a general graph (blossom contraction),
/// returned as a mate array: mate[v] is v's partner or -1.
std::vector<int> max_matching_mates(const Graph& g);

/// Maximum matching as sorted edge ids.
std::vector<int> max_matching(const Graph& g);

/// Minimum edge cover: a maximum matching plus one incident edge per
/// unmatched vertex; size n - nu(g). Infeasible (nullopt) when g has an
/// isolated vertex.
std::optional<std::vector<int>> min_edge_cover(const Graph& g);

} // namespace mdskit

#endif
