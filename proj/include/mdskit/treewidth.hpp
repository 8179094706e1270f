#ifndef MDSKIT_TREEWIDTH_HPP
#define MDSKIT_TREEWIDTH_HPP

#include <optional>
#include <string>
#include <vector>

#include "mdskit/graph.hpp"
#include "mdskit/transforms.hpp"

namespace mdskit {

struct TreeDecomposition {
    int n = 0;                              // vertex count of the decomposed graph
    std::vector<std::vector<int>> bags;     // sorted vertex lists
    std::vector<std::pair<int, int>> tree;  // edges over bag indices
    int width() const;
};

/// Checks the three decomposition conditions: vertex coverage, edge
/// coverage, and per-vertex connectedness of the bag subtree.
bool validate_decomposition(const Graph& g, const TreeDecomposition& td,
                            std::string* why = nullptr);

/// Lifts a decomposition of g to one of its incidence graph: for each edge a
/// bag {u, v, e} is attached to a bag containing u and v.
TreeDecomposition lift_to_incidence(const TreeDecomposition& td, const Graph& g);

struct NiceNode {
    enum Kind { Leaf, IntroduceVertex, IntroduceEdge, Forget, Join } kind;
    int a = -1, b = -1;            // vertex, or edge endpoints for IntroduceEdge
    int child1 = -1, child2 = -1;  // node indices
    std::vector<int> bag;          // sorted
};

/// Rooted nice decomposition; nodes are stored in post-order (children before
/// parents), the last node is the empty root.
struct NiceDecomposition {
    std::vector<NiceNode> nodes;
    int width = 0;
};

/// Nice form with the same width: introduce/forget chains, binary joins,
/// and one introduce-edge node per graph edge (spliced at the topmost node
/// whose bag holds both endpoints).
NiceDecomposition make_nice(const TreeDecomposition& td, const Graph& g);

/// Minimum distance-2 dominating set via the 5-state table DP over a nice
/// decomposition of h. Table sizes stay within 5^|bag| (checked); the
/// largest table is reported through `table_size_out` when given.
std::vector<int> distance2_dp(const Graph& h, const NiceDecomposition& nd,
                              long long* table_size_out = nullptr);

/// Min-fill elimination-order decomposition (min-degree, then id tie-breaks).
TreeDecomposition heuristic_decomposition(const Graph& g);

struct TreewidthStats {
    int width_used = 0;
    long long dp_nodes = 0;
    long long max_table = 0;
    long long wall_ms = 0;
    int best_size = -1;
};

/// Optimal mds through the pipeline incidence graph -> lifted decomposition
/// -> nice form -> distance-2 DP -> back-mapping.
MixedSolution solve_treewidth(const Graph& g,
                              const std::optional<TreeDecomposition>& td = std::nullopt,
                              TreewidthStats* stats = nullptr);

} // namespace mdskit

#endif
