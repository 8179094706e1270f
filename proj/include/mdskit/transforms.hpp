#ifndef MDSKIT_TRANSFORMS_HPP
#define MDSKIT_TRANSFORMS_HPP

#include "mdskit/graph.hpp"

namespace mdskit {

/// G with every edge subdivided once. Vertices 0..n-1 are the originals;
/// vertex n+e represents edge id e of g.
struct IncidenceGraph {
    Graph graph;
    int orig_n = 0;
    bool is_original_vertex(int v) const { return v < orig_n; }
    int edge_of(int v) const { return v - orig_n; }       // valid when !is_original_vertex
    int vertex_of_edge(int e) const { return orig_n + e; }
};

IncidenceGraph incidence_graph(const Graph& g);

/// The Edge Dominating Set reduction: add a hub adjacent to all of V and
/// n+2 leaves on the hub. Optimum mds of the output equals optimum eds of g
/// plus one. Vertex n is the hub, n+1..2n+2 the leaves.
Graph reduce_eds_to_mds(const Graph& g);

} // namespace mdskit

#endif
