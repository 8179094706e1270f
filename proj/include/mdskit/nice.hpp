#ifndef MDSKIT_NICE_HPP
#define MDSKIT_NICE_HPP

#include <vector>

#include "mdskit/graph.hpp"

namespace mdskit {

/// The (D, P, I) partition induced by a nice solution: P = V(M), I the rest.
struct NicePartition {
    std::vector<int> d, p, i;  // sorted, partition V
    std::vector<int> m;        // edge ids with V(m) = p
};

/// True iff D and V(M) are disjoint and every vertex of D has at least two
/// private neighbors. `sol` must be a valid solution (ContractError
/// otherwise). On success fills `out` when given.
bool is_nice(const Graph& g, const MixedSolution& sol, NicePartition* out = nullptr);

/// Rewrites a valid solution into a nice one of no greater size. The graph
/// must have no isolated vertices.
MixedSolution make_nice(const Graph& g, MixedSolution sol);

/// A minimal vertex cover C with D <= C <= D u P, obtained by greedily
/// minimalizing D u P (ascending ids, D kept).
std::vector<int> sandwiched_minimal_vc(const Graph& g, const NicePartition& part);

} // namespace mdskit

#endif
