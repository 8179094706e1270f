#include "mdskit/enumerate.hpp"

namespace mdskit {
namespace {

// Bron-Kerbosch over the "non-adjacency" relation enumerates maximal
// independent sets of g.
struct MisEnum {
    const Graph& g;
    int n;
    std::vector<Bitset> nonadj;  // complement adjacency, no self
    const std::function<bool(const std::vector<int>&)>& fn;
    Bitset current;
    bool stopped = false;

    MisEnum(const Graph& g_, const std::function<bool(const std::vector<int>&)>& fn_)
        : g(g_), n(g_.n()), fn(fn_), current(g_.n()) {
        Bitset full(n);
        for (int v = 0; v < n; ++v) full.set(v);
        nonadj.reserve(n);
        for (int v = 0; v < n; ++v) {
            Bitset b = full;
            b.reset(v);
            b.subtract(g.neighbor_bits(v));
            nonadj.push_back(std::move(b));
        }
    }

    void emit() {
        // Complement of a maximal independent set is a minimal vertex cover.
        std::vector<int> cover;
        for (int v = 0; v < n; ++v)
            if (!current.test(v)) cover.push_back(v);
        if (!fn(cover)) stopped = true;
    }

    void recurse(Bitset p, Bitset x) {
        if (stopped) return;
        if (p.none() && x.none()) {
            emit();
            return;
        }
        // Pivot: vertex of P u X maximizing |P & nonadj(pivot)|.
        int pivot = -1, best = -1;
        auto consider = [&](int v) {
            int c = p.count_and(nonadj[v]);
            if (c > best) { best = c; pivot = v; }
        };
        p.for_each(consider);
        x.for_each(consider);

        Bitset candidates = p;
        candidates.subtract(nonadj[pivot]);
        for (int v = candidates.find_first(); v >= 0 && !stopped;
             v = candidates.find_next(v + 1)) {
            current.set(v);
            recurse(p & nonadj[v], x & nonadj[v]);
            current.reset(v);
            p.reset(v);
            x.set(v);
        }
    }
};

} // namespace

void minimal_vertex_covers(const Graph& g,
                           const std::function<bool(const std::vector<int>&)>& fn) {
    if (g.n() == 0) {
        fn({});
        return;
    }
    MisEnum e(g, fn);
    Bitset p(g.n()), x(g.n());
    for (int v = 0; v < g.n(); ++v) p.set(v);
    e.recurse(p, x);
}

std::vector<std::vector<int>> all_minimal_vertex_covers(const Graph& g) {
    std::vector<std::vector<int>> out;
    minimal_vertex_covers(g, [&](const std::vector<int>& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

} // namespace mdskit
