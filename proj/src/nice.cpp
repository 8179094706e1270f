#include "mdskit/nice.hpp"

#include <algorithm>
#include <set>

#include "mdskit/errors.hpp"

namespace mdskit {
namespace {

struct SolutionView {
    const Graph& g;
    std::set<int> d;
    std::set<std::pair<int, int>> m;  // canonical endpoint pairs
    std::vector<int> vm_count;        // per-vertex count of incident M edges

    SolutionView(const Graph& g_, const MixedSolution& sol) : g(g_), vm_count(g_.n(), 0) {
        d.insert(sol.d.begin(), sol.d.end());
        for (int e : sol.m) add_edge(g.edge(e));
    }
    bool in_vm(int v) const { return vm_count[v] > 0; }
    void add_edge(std::pair<int, int> e) {
        if (m.insert(e).second) {
            ++vm_count[e.first];
            ++vm_count[e.second];
        }
    }
    void remove_edge(std::pair<int, int> e) {
        if (m.erase(e)) {
            --vm_count[e.first];
            --vm_count[e.second];
        }
    }
    // Some edge of M incident to u, assuming one exists.
    std::pair<int, int> edge_at(int u) const {
        for (int w : g.neighbors(u)) {
            auto key = std::minmax(u, w);
            if (m.count({key.first, key.second})) return {key.first, key.second};
        }
        throw ContractError("edge_at: no incident M edge");
    }
    // Private neighbors of u: vertices outside D u V(M) whose only D-neighbor is u.
    std::vector<int> privates(int u) const {
        std::vector<int> out;
        for (int v : g.neighbors(u)) {
            if (d.count(v) || in_vm(v)) continue;
            bool only_u = true;
            for (int w : g.neighbors(v))
                if (w != u && d.count(w)) { only_u = false; break; }
            if (only_u) out.push_back(v);
        }
        return out;
    }
    bool valid_without_d_vertex(int u) const {
        // u stays in V(M) or is dominated; only u's private neighbors can break.
        if (!in_vm(u)) {
            bool dominated = false;
            for (int w : g.neighbors(u))
                if (w != u && d.count(w)) { dominated = true; break; }
            if (!dominated) return false;
        }
        return privates(u).empty();
    }
    MixedSolution to_solution() const {
        MixedSolution s;
        s.d.assign(d.begin(), d.end());
        for (auto [u, v] : m) s.m.push_back(g.edge_id(u, v));
        s.normalize();
        return s;
    }
};

} // namespace

bool is_nice(const Graph& g, const MixedSolution& sol, NicePartition* out) {
    if (!validate_mds(g, sol).valid) throw ContractError("is_nice: solution is not a valid mds");
    SolutionView view(g, sol);
    for (int v : sol.d)
        if (view.in_vm(v)) return false;
    for (int v : sol.d)
        if ((int)view.privates(v).size() < 2) return false;
    if (out) {
        out->d.assign(view.d.begin(), view.d.end());
        out->p.clear();
        out->i.clear();
        out->m = sol.m;
        std::sort(out->m.begin(), out->m.end());
        for (int v = 0; v < g.n(); ++v) {
            if (view.d.count(v)) continue;
            (view.in_vm(v) ? out->p : out->i).push_back(v);
        }
    }
    return true;
}

MixedSolution make_nice(const Graph& g, MixedSolution sol) {
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) == 0) throw ContractError("make_nice: graph has an isolated vertex");
    sol.normalize();
    if (!validate_mds(g, sol).valid) throw ContractError("make_nice: input solution invalid");

    SolutionView view(g, sol);

    // Phase 1: establish D and V(M) disjoint. Each step deletes an M edge,
    // drops a D vertex, or moves an M edge off a D vertex onto a non-D
    // replacement endpoint; the pair (solution size, #incidences between D
    // and M) decreases lexicographically.
    for (;;) {
        int u = -1;
        for (int v : view.d)
            if (view.in_vm(v)) { u = v; break; }
        if (u == -1) break;

        auto e = view.edge_at(u);
        int v = e.first == u ? e.second : e.first;
        if (view.d.count(v)) {
            view.remove_edge(e);  // both endpoints in D; the edge is redundant
        } else if (view.valid_without_d_vertex(u)) {
            view.d.erase(u);
        } else {
            int y = -1;
            for (int w : g.neighbors(v)) {
                if (w == u) continue;
                if (!view.d.count(w)) { y = w; break; }
            }
            if (y != -1) {
                // Re-anchor the edge at v; u keeps dominating its side from D.
                view.remove_edge(e);
                auto key = std::minmax(v, y);
                view.add_edge({key.first, key.second});
            } else {
                // All of N(v)\{u} lies in D, so v and its edges are dominated
                // without this edge.
                view.remove_edge(e);
            }
        }
    }

    // Phase 2: every D vertex gets two private neighbors.
    for (;;) {
        int u = -1;
        std::vector<int> priv;
        for (int w : view.d) {
            priv = view.privates(w);
            if ((int)priv.size() < 2) { u = w; break; }
        }
        if (u == -1) break;

        if (priv.size() == 1) {
            int v = priv[0];
            view.d.erase(u);
            auto key = std::minmax(u, v);
            view.add_edge({key.first, key.second});
        } else {
            int v = -1;
            for (int w : g.neighbors(u))
                if (!view.d.count(w)) { v = w; break; }
            if (v == -1) {
                view.d.erase(u);  // N(u) inside D: u is redundant
            } else {
                view.d.erase(u);
                auto key = std::minmax(u, v);
                view.add_edge({key.first, key.second});
            }
        }
    }

    return view.to_solution();
}

std::vector<int> sandwiched_minimal_vc(const Graph& g, const NicePartition& part) {
    Bitset in_d(g.n());
    for (int v : part.d) in_d.set(v);
    Bitset cover(g.n());
    for (int v : part.d) cover.set(v);
    for (int v : part.p) cover.set(v);

    // Contract check: D u P must cover every edge (I independent).
    for (auto [u, v] : g.edges())
        if (!cover.test(u) && !cover.test(v))
            throw ContractError("sandwiched_minimal_vc: D u P is not a vertex cover");

    // Greedy minimalization, ascending ids. D vertices are never
    // removable: each has private neighbors outside D u P, so dropping one
    // uncovers the edge to such a neighbor.
    for (int v = 0; v < g.n(); ++v) {
        if (!cover.test(v) || in_d.test(v)) continue;
        bool removable = true;
        for (int w : g.neighbors(v))
            if (!cover.test(w)) { removable = false; break; }
        if (removable) cover.reset(v);
    }
    return cover.to_vector();
}

} // namespace mdskit
