#ifndef MDSKIT_GRAPH_HPP
#define MDSKIT_GRAPH_HPP

#include <string>
#include <utility>
#include <vector>

#include "mdskit/bitset.hpp"

namespace mdskit {

/// Simple undirected graph with stable 0-based vertex ids.
/// Edges are canonicalized as (min,max) pairs and indexed by their position
/// in the lexicographically sorted edge list; solution edge sets store these
/// indices so file-format round trips are stable.
class Graph {
public:
    Graph() = default;

    // Canonicalizes, sorts and deduplicates; rejects self-loops and
    // out-of-range endpoints.
    static Graph from_edges(int n, std::vector<std::pair<int, int>> edges);

    int n() const { return n_; }
    int m() const { return (int)edges_.size(); }

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    std::pair<int, int> edge(int id) const { return edges_[id]; }

    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return (int)adj_[v].size(); }

    bool has_edge(int u, int v) const { return edge_id(u, v) >= 0; }
    // Index of edge {u,v} in the canonical list, or -1.
    int edge_id(int u, int v) const;

    Bitset neighbor_bits(int v) const;
    std::vector<Bitset> adjacency_bitsets() const;

    // Induced subgraph on `keep` (ascending); returns the subgraph and the
    // map from new ids to original ids.
    std::pair<Graph, std::vector<int>> induced(const std::vector<int>& keep) const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

/// A candidate solution: a vertex set D plus an edge set M (edge ids of g).
struct MixedSolution {
    std::vector<int> d;        // sorted vertex ids
    std::vector<int> m;        // sorted edge ids
    int size() const { return (int)d.size() + (int)m.size(); }
    void normalize();          // sort + dedup
};

/// Solution cost counted in half-units: |D| + |P|/2.
struct Cost {
    long long halves = 0;
    static Cost of(long long d, long long p) { return Cost{2 * d + p}; }
    friend Cost operator+(Cost a, Cost b) { return Cost{a.halves + b.halves}; }
    bool operator<(Cost o) const { return halves < o.halves; }
    bool operator>(Cost o) const { return halves > o.halves; }
    bool operator==(Cost o) const { return halves == o.halves; }
};

struct Violation {
    enum Kind { UndominatedVertex, UndominatedEdge } kind;
    int a = -1, b = -1;  // vertex id, or edge endpoints
};

struct ValidationReport {
    bool valid = true;
    bool truncated = false;  // more than max_violations found
    std::vector<Violation> violations;
    static constexpr int max_violations = 100;
};

/// Checks the two domination conditions: every vertex outside D u V(M) has a
/// neighbor in D, and every edge outside M has an endpoint in D u V(M).
/// Out-of-range ids in `sol` raise InputError.
ValidationReport validate_mds(const Graph& g, const MixedSolution& sol);

std::string violation_message(const Graph& g, const Violation& v);

} // namespace mdskit

#endif
