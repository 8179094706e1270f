#ifndef MDSKIT_ORACLE_HPP
#define MDSKIT_ORACLE_HPP

#include <vector>

#include "mdskit/graph.hpp"

namespace mdskit {

/// Size caps for the ground-truth solvers; they refuse larger inputs.
struct OracleLimits {
    int max_n_subset = 7;     // full (D,M) subset enumeration
    int max_n_partition = 18; // 3^n partition search
};

/// Splits off isolated vertices, which every solver forces into D.
struct IsolatedSplit {
    std::vector<int> isolated;     // original ids, sorted
    Graph rest;                    // induced on the non-isolated vertices
    std::vector<int> rest_to_orig; // new id -> original id
};
IsolatedSplit split_isolated(const Graph& g);

/// Lifts a solution of split.rest back to the original graph, adding the
/// isolated vertices to D.
MixedSolution lift_split_solution(const Graph& g, const IsolatedSplit& split,
                                  const MixedSolution& sol);

/// Minimum mds by enumerating all (D, M) of size s = 0, 1, ...
MixedSolution brute_force_mds(const Graph& g, const OracleLimits& lim = {});

/// Minimum mds as min over partitions V = D u P u I with I independent,
/// I <= N(D), G[P] isolated-vertex-free, of |D| + |min edge cover of G[P]|.
MixedSolution partition_oracle(const Graph& g, const OracleLimits& lim = {});

/// Minimum distance-2 dominating set by subset enumeration.
std::vector<int> distance2_brute(const Graph& g, const OracleLimits& lim = {});

/// Minimum edge dominating set by edge-subset enumeration (referee for the
/// eds-to-mds reduction).
std::vector<int> brute_force_eds(const Graph& g, const OracleLimits& lim = {});

} // namespace mdskit

#endif
