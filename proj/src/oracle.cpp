#include "mdskit/oracle.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "mdskit/errors.hpp"
#include "mdskit/matching.hpp"

namespace mdskit {
namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw LimitError(msg);
}

// Enumerates k-subsets of {0..total-1} in lexicographic order until fn
// returns true; returns whether fn accepted one.
bool first_combination(int total, int k, const std::function<bool(const std::vector<int>&)>& fn) {
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    if (k > total) return false;
    for (;;) {
        if (fn(pick)) return true;
        int i = k - 1;
        while (i >= 0 && pick[i] == total - k + i) --i;
        if (i < 0) return false;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

} // namespace

IsolatedSplit split_isolated(const Graph& g) {
    IsolatedSplit out;
    std::vector<int> keep;
    for (int v = 0; v < g.n(); ++v)
        (g.degree(v) == 0 ? out.isolated : keep).push_back(v);
    auto [rest, back] = g.induced(keep);
    out.rest = std::move(rest);
    out.rest_to_orig = std::move(back);
    return out;
}

MixedSolution lift_split_solution(const Graph& g, const IsolatedSplit& split,
                                  const MixedSolution& sol) {
    MixedSolution out;
    out.d = split.isolated;
    for (int v : sol.d) out.d.push_back(split.rest_to_orig[v]);
    for (int e : sol.m) {
        auto [u, v] = split.rest.edge(e);
        out.m.push_back(g.edge_id(split.rest_to_orig[u], split.rest_to_orig[v]));
    }
    out.normalize();
    return out;
}

MixedSolution brute_force_mds(const Graph& g, const OracleLimits& lim) {
    require(g.n() <= lim.max_n_subset,
            "brute_force_mds: n=" + std::to_string(g.n()) + " exceeds cap " +
                std::to_string(lim.max_n_subset));
    int items = g.n() + g.m();
    MixedSolution best;
    for (int s = 0; s <= items; ++s) {
        bool found = first_combination(items, s, [&](const std::vector<int>& pick) {
            MixedSolution cand;
            for (int i : pick)
                (i < g.n() ? cand.d : cand.m).push_back(i < g.n() ? i : i - g.n());
            if (!validate_mds(g, cand).valid) return false;
            best = cand;
            return true;
        });
        if (found) return best;
    }
    return best;  // unreachable: D = V is always valid
}

MixedSolution partition_oracle(const Graph& g, const OracleLimits& lim) {
    IsolatedSplit split = split_isolated(g);
    const Graph& h = split.rest;
    require(h.n() <= lim.max_n_partition,
            "partition_oracle: n=" + std::to_string(h.n()) + " exceeds cap " +
                std::to_string(lim.max_n_partition));

    enum : char { UNSET = 0, VD = 1, VP = 2, VI = 3 };
    std::vector<char> label(h.n(), UNSET);
    int best = h.n() + 1;
    std::vector<char> best_label;

    // Depth-first over labelings with the half-cost bound |D| + |P|/2.
    auto rec = [&](auto&& self, int v, int nd, int np) -> void {
        if (2 * nd + np >= 2 * best) return;
        if (v == h.n()) {
            std::vector<int> pvs;
            for (int w = 0; w < h.n(); ++w) {
                if (label[w] == VI) {
                    bool dom = false;
                    for (int x : h.neighbors(w))
                        if (label[x] == VD) { dom = true; break; }
                    if (!dom) return;
                }
                if (label[w] == VP) pvs.push_back(w);
            }
            auto [gp, back] = h.induced(pvs);
            (void)back;
            auto cover = min_edge_cover(gp);
            if (!cover) return;  // G[P] has an isolated vertex
            int cost = nd + (int)cover->size();
            if (cost < best) {
                best = cost;
                best_label = label;
            }
            return;
        }
        label[v] = VD;
        self(self, v + 1, nd + 1, np);
        label[v] = VP;
        self(self, v + 1, nd, np + 1);
        // I must stay independent and keep a chance of a D neighbor.
        bool ind = true;
        for (int w : h.neighbors(v))
            if (w < v && label[w] == VI) { ind = false; break; }
        if (ind) {
            bool dominatable = false;
            for (int w : h.neighbors(v))
                if (w > v || label[w] == VD) { dominatable = true; break; }
            if (dominatable) {
                label[v] = VI;
                self(self, v + 1, nd, np);
            }
        }
        label[v] = UNSET;
    };
    rec(rec, 0, 0, 0);

    MixedSolution sol;
    std::vector<int> pvs;
    for (int v = 0; v < h.n(); ++v) {
        if (best_label[v] == VD) sol.d.push_back(v);
        if (best_label[v] == VP) pvs.push_back(v);
    }
    auto [gp, back] = h.induced(pvs);
    auto cover = min_edge_cover(gp);
    for (int e : *cover) {
        auto [u, v] = gp.edge(e);
        sol.m.push_back(h.edge_id(back[u], back[v]));
    }
    sol.normalize();
    return lift_split_solution(g, split, sol);
}

std::vector<int> distance2_brute(const Graph& g, const OracleLimits& lim) {
    require(g.n() <= lim.max_n_subset + 5,
            "distance2_brute: n=" + std::to_string(g.n()) + " exceeds cap " +
                std::to_string(lim.max_n_subset + 5));
    // ball[v] = vertices within distance 2 of v.
    std::vector<Bitset> ball(g.n(), Bitset(g.n()));
    for (int v = 0; v < g.n(); ++v) {
        ball[v].set(v);
        for (int w : g.neighbors(v)) {
            ball[v].set(w);
            for (int x : g.neighbors(w)) ball[v].set(x);
        }
    }
    std::vector<int> best;
    for (int s = 0; s <= g.n(); ++s) {
        bool found = first_combination(g.n(), s, [&](const std::vector<int>& pick) {
            Bitset covered(g.n());
            for (int v : pick) covered |= ball[v];
            if (covered.count() != g.n()) return false;
            best = pick;
            return true;
        });
        if (found) return best;
    }
    return best;
}

std::vector<int> brute_force_eds(const Graph& g, const OracleLimits& lim) {
    require(g.n() <= lim.max_n_subset + 5,
            "brute_force_eds: n=" + std::to_string(g.n()) + " exceeds cap " +
                std::to_string(lim.max_n_subset + 5));
    std::vector<int> best;
    for (int s = 0; s <= g.m(); ++s) {
        bool found = first_combination(g.m(), s, [&](const std::vector<int>& pick) {
            Bitset vm(std::max(1, g.n()));
            for (int e : pick) {
                auto [u, v] = g.edge(e);
                vm.set(u);
                vm.set(v);
            }
            for (int e = 0; e < g.m(); ++e) {
                auto [u, v] = g.edge(e);
                if (!vm.test(u) && !vm.test(v)) return false;
            }
            best = pick;
            return true;
        });
        if (found) return best;
    }
    return best;
}

} // namespace mdskit
