#include "mdskit/matching.hpp"

#include <algorithm>
#include <queue>

namespace mdskit {
namespace {

// Blossom-contraction search for one augmenting path from root.
// Standard base/parent arrays over the original vertex set; contracted
// blossoms are represented by their base vertex.
struct BlossomSearch {
    const Graph& g;
    std::vector<int>& mate;
    std::vector<int> parent, base;
    std::vector<char> in_queue, in_blossom_path;
    std::queue<int> bfs;

    explicit BlossomSearch(const Graph& g_, std::vector<int>& mate_)
        : g(g_), mate(mate_), parent(g.n(), -1), base(g.n()), in_queue(g.n(), 0),
          in_blossom_path(g.n(), 0) {}

    int lowest_common_ancestor(int a, int b) {
        std::vector<char> used(g.n(), 0);
        for (;;) {
            a = base[a];
            used[a] = 1;
            if (mate[a] == -1) break;
            a = parent[mate[a]];
        }
        for (;;) {
            b = base[b];
            if (used[b]) return b;
            b = parent[mate[b]];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base[v] != b) {
            in_blossom_path[base[v]] = 1;
            in_blossom_path[base[mate[v]]] = 1;
            parent[v] = child;
            child = mate[v];
            v = parent[mate[v]];
        }
    }

    void contract(int u, int v) {
        int b = lowest_common_ancestor(u, v);
        std::fill(in_blossom_path.begin(), in_blossom_path.end(), 0);
        mark_path(u, b, v);
        mark_path(v, b, u);
        for (int i = 0; i < g.n(); ++i) {
            if (!in_blossom_path[base[i]]) continue;
            base[i] = b;
            if (!in_queue[i]) {
                in_queue[i] = 1;
                bfs.push(i);
            }
        }
    }

    // Returns the exposed vertex ending an augmenting path, or -1.
    int find_path(int root) {
        std::fill(parent.begin(), parent.end(), -1);
        std::fill(in_queue.begin(), in_queue.end(), 0);
        for (int i = 0; i < g.n(); ++i) base[i] = i;

        bfs = {};
        bfs.push(root);
        in_queue[root] = 1;
        while (!bfs.empty()) {
            int u = bfs.front();
            bfs.pop();
            for (int v : g.neighbors(u)) {
                if (base[u] == base[v] || mate[u] == v) continue;
                if (v == root || (mate[v] != -1 && parent[mate[v]] != -1)) {
                    contract(u, v);
                } else if (parent[v] == -1) {
                    parent[v] = u;
                    if (mate[v] == -1) return v;
                    if (!in_queue[mate[v]]) {
                        in_queue[mate[v]] = 1;
                        bfs.push(mate[v]);
                    }
                }
            }
        }
        return -1;
    }
};

void augment(std::vector<int>& mate, const std::vector<int>& parent, int v) {
    while (v != -1) {
        int pv = parent[v], next = mate[pv];
        mate[v] = pv;
        mate[pv] = v;
        v = next;
    }
}

} // namespace

std::vector<int> max_matching_mates(const Graph& g) {
    std::vector<int> mate(g.n(), -1);
    // Greedy warm start.
    for (auto [u, v] : g.edges())
        if (mate[u] == -1 && mate[v] == -1) {
            mate[u] = v;
            mate[v] = u;
        }
    BlossomSearch search(g, mate);
    bool improved = true;
    while (improved) {
        improved = false;
        for (int v = 0; v < g.n(); ++v) {
            if (mate[v] != -1) continue;
            int end = search.find_path(v);
            if (end != -1) {
                augment(mate, search.parent, end);
                improved = true;
            }
        }
    }
    return mate;
}

std::vector<int> max_matching(const Graph& g) {
    auto mate = max_matching_mates(g);
    std::vector<int> ids;
    for (int v = 0; v < g.n(); ++v)
        if (mate[v] > v) ids.push_back(g.edge_id(v, mate[v]));
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::optional<std::vector<int>> min_edge_cover(const Graph& g) {
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) == 0) return std::nullopt;
    auto mate = max_matching_mates(g);
    std::vector<int> ids;
    for (int v = 0; v < g.n(); ++v) {
        if (mate[v] > v)
            ids.push_back(g.edge_id(v, mate[v]));
        else if (mate[v] == -1)
            ids.push_back(g.edge_id(v, g.neighbors(v)[0]));
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

} // namespace mdskit
