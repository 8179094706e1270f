#include "mdskit/graph.hpp"

#include <algorithm>
#include <string>

#include "mdskit/errors.hpp"

namespace mdskit {

Graph Graph::from_edges(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 0) throw InputError("negative vertex count");
    for (auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw InputError("edge endpoint out of range: (" + std::to_string(u) + "," +
                             std::to_string(v) + ") with n=" + std::to_string(n));
        if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.adj_.assign(n, {});
    for (auto [u, v] : g.edges_) {
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    for (auto& a : g.adj_) std::sort(a.begin(), a.end());
    return g;
}

int Graph::edge_id(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v));
    if (it == edges_.end() || *it != std::make_pair(u, v)) return -1;
    return (int)(it - edges_.begin());
}

Bitset Graph::neighbor_bits(int v) const {
    Bitset b(n_);
    for (int w : adj_[v]) b.set(w);
    return b;
}

std::vector<Bitset> Graph::adjacency_bitsets() const {
    std::vector<Bitset> out;
    out.reserve(n_);
    for (int v = 0; v < n_; ++v) out.push_back(neighbor_bits(v));
    return out;
}

std::pair<Graph, std::vector<int>> Graph::induced(const std::vector<int>& keep) const {
    std::vector<int> map(n_, -1);
    std::vector<int> back;
    back.reserve(keep.size());
    for (int v : keep) {
        if (v < 0 || v >= n_) throw InputError("induced: vertex out of range");
        if (map[v] != -1) throw InputError("induced: duplicate vertex");
        map[v] = (int)back.size();
        back.push_back(v);
    }
    std::vector<std::pair<int, int>> es;
    for (auto [u, v] : edges_)
        if (map[u] != -1 && map[v] != -1) es.emplace_back(map[u], map[v]);
    return {Graph::from_edges((int)back.size(), std::move(es)), back};
}

void MixedSolution::normalize() {
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
}

ValidationReport validate_mds(const Graph& g, const MixedSolution& sol) {
    for (int v : sol.d)
        if (v < 0 || v >= g.n()) throw InputError("solution vertex id out of range: " + std::to_string(v));
    for (int e : sol.m)
        if (e < 0 || e >= g.m()) throw InputError("solution edge id out of range: " + std::to_string(e));

    Bitset in_d(g.n()), covered(g.n());  // covered = D u V(M)
    for (int v : sol.d) { in_d.set(v); covered.set(v); }
    Bitset in_m(std::max(1, g.m()));
    for (int e : sol.m) {
        in_m.set(e);
        auto [u, v] = g.edge(e);
        covered.set(u);
        covered.set(v);
    }

    ValidationReport rep;
    auto add = [&rep](Violation viol) {
        rep.valid = false;
        if ((int)rep.violations.size() < ValidationReport::max_violations)
            rep.violations.push_back(viol);
        else
            rep.truncated = true;
    };

    for (int v = 0; v < g.n(); ++v) {
        if (covered.test(v)) continue;
        bool dominated = false;
        for (int w : g.neighbors(v))
            if (in_d.test(w)) { dominated = true; break; }
        if (!dominated) add({Violation::UndominatedVertex, v, -1});
    }
    for (int e = 0; e < g.m(); ++e) {
        if (in_m.test(e)) continue;
        auto [u, v] = g.edge(e);
        if (!covered.test(u) && !covered.test(v)) add({Violation::UndominatedEdge, u, v});
    }
    return rep;
}

std::string violation_message(const Graph&, const Violation& v) {
    if (v.kind == Violation::UndominatedVertex)
        return "undominated vertex " + std::to_string(v.a);
    return "undominated edge (" + std::to_string(v.a) + "," + std::to_string(v.b) + ")";
}

} // namespace mdskit
