#include "mdskit/transforms.hpp"

#include "mdskit/errors.hpp"

namespace mdskit {

IncidenceGraph incidence_graph(const Graph& g) {
    std::vector<std::pair<int, int>> es;
    es.reserve(2 * g.m());
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edge(e);
        es.emplace_back(u, g.n() + e);
        es.emplace_back(v, g.n() + e);
    }
    IncidenceGraph out;
    out.graph = Graph::from_edges(g.n() + g.m(), std::move(es));
    out.orig_n = g.n();
    return out;
}

Graph reduce_eds_to_mds(const Graph& g) {
    if (g.n() == 0) throw InputError("reduce_eds_to_mds: empty graph");
    std::vector<std::pair<int, int>> es(g.edges());
    int hub = g.n();
    for (int v = 0; v < g.n(); ++v) es.emplace_back(v, hub);
    for (int l = 0; l < g.n() + 2; ++l) es.emplace_back(hub, hub + 1 + l);
    return Graph::from_edges(2 * g.n() + 3, std::move(es));
}

} // namespace mdskit
