#include "mdskit/exact_solver.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "mdskit/enumerate.hpp"
#include "mdskit/errors.hpp"
#include "mdskit/matching.hpp"
#include "mdskit/oracle.hpp"

namespace mdskit {

const char* to_string(ExactRule r) {
    switch (r) {
        case ExactRule::R1: return "R1";
        case ExactRule::R2: return "R2";
        case ExactRule::B1: return "B1";
        case ExactRule::B2_1: return "B2.1";
        case ExactRule::B2_2: return "B2.2";
        case ExactRule::B3_1: return "B3.1";
        case ExactRule::B3_2: return "B3.2";
        case ExactRule::B4: return "B4";
        case ExactRule::B5: return "B5";
        case ExactRule::B6: return "B6";
        case ExactRule::None: return "None";
    }
    return "?";
}

ExactContext::ExactContext(const Graph& graph, const std::vector<int>& cover_vertices)
    : g(&graph), adj(graph.adjacency_bitsets()), cover(graph.n()), zset(graph.n()) {
    for (int v : cover_vertices) cover.set(v);
    for (int v = 0; v < graph.n(); ++v)
        if (!cover.test(v)) zset.set(v);
}

ExactState ExactState::root(const ExactContext& c) {
    ExactState st;
    st.ctx = &c;
    int n = c.g->n();
    st.df = st.pf = st.pfz = Bitset(n);
    st.recompute_derived();
    return st;
}

void ExactState::recompute_derived() {
    int n = ctx->g->n();
    Bitset dominated_z(n);
    df.for_each([&](int v) { dominated_z |= ctx->adj[v]; });
    dominated_z &= ctx->zset;

    u = Bitset(n);
    for (int v = 0; v < n; ++v) u.set(v);
    u.subtract(df);
    u.subtract(pf);
    u.subtract(pfz);
    u.subtract(dominated_z);
    uc = u & ctx->cover;
    uz = u & ctx->zset;
}

bool ExactState::consistent() const {
    if (df.intersects(pf) || df.intersects(pfz) || pf.intersects(pfz)) return false;
    if ((pf & ctx->zset).any() || (pfz & ctx->cover).any()) return false;
    ExactState copy = *this;
    copy.recompute_derived();
    return copy.u == u && copy.uc == uc && copy.uz == uz;
}

int measure_l(const ExactState& st) {
    int l = 0;
    st.uc.for_each([&](int v) { l += st.d_uz(v) >= 2; });
    st.uz.for_each([&](int v) { l += st.d_uc(v) >= 1; });
    return l;
}

namespace {

// A matched rule together with the vertices its branches use.
struct RuleMatch {
    ExactRule rule = ExactRule::None;
    int a = -1, b = -1, c = -1, d = -1;
};

RuleMatch find_rule(const ExactState& st) {
    // R1: u in U_C with d_UZ(u) <= 1.
    for (int v = st.uc.find_first(); v >= 0; v = st.uc.find_next(v + 1))
        if (st.d_uz(v) <= 1) return {ExactRule::R1, v};
    // R2: v in U_Z with d_UC(v) = 0.
    for (int v = st.uz.find_first(); v >= 0; v = st.uz.find_next(v + 1))
        if (st.d_uc(v) == 0) return {ExactRule::R2, v};
    // B1: u in U_C with d_UZ(u) >= 4.
    for (int v = st.uc.find_first(); v >= 0; v = st.uc.find_next(v + 1))
        if (st.d_uz(v) >= 4) return {ExactRule::B1, v};
    // B2.1: u1, u2 in U_C with degrees 3 and 2 sharing a U_Z neighbor.
    for (int u1 = st.uc.find_first(); u1 >= 0; u1 = st.uc.find_next(u1 + 1)) {
        if (st.d_uz(u1) != 3) continue;
        for (int u2 = st.uc.find_first(); u2 >= 0; u2 = st.uc.find_next(u2 + 1)) {
            if (u2 == u1 || st.d_uz(u2) != 2) continue;
            if (st.ctx->adj[u1].count_and(st.ctx->adj[u2], st.uz) > 0)
                return {ExactRule::B2_1, u1, u2};
        }
    }
    // B2.2: u in U_C with d_UZ(u) = 2.
    for (int v = st.uc.find_first(); v >= 0; v = st.uc.find_next(v + 1))
        if (st.d_uz(v) == 2) return {ExactRule::B2_2, v};
    // B3.1: v in U_Z with d_UC(v) = 1; branch on its U_C neighbor.
    for (int v = st.uz.find_first(); v >= 0; v = st.uz.find_next(v + 1))
        if (st.d_uc(v) == 1) {
            Bitset nb = st.ctx->adj[v] & st.uc;
            return {ExactRule::B3_1, nb.find_first(), v};
        }
    // B3.2: v in U_Z with d_UC(v) = 2.
    for (int v = st.uz.find_first(); v >= 0; v = st.uz.find_next(v + 1))
        if (st.d_uc(v) == 2) {
            Bitset nb = st.ctx->adj[v] & st.uc;
            int u1 = nb.find_first();
            return {ExactRule::B3_2, u1, nb.find_next(u1 + 1), v};
        }
    // B4: u1, u2 in U_C with two common U_Z neighbors.
    for (int u1 = st.uc.find_first(); u1 >= 0; u1 = st.uc.find_next(u1 + 1))
        for (int u2 = st.uc.find_next(u1 + 1); u2 >= 0; u2 = st.uc.find_next(u2 + 1))
            if (st.ctx->adj[u1].count_and(st.ctx->adj[u2], st.uz) >= 2)
                return {ExactRule::B4, u1, u2};
    // B5: v in U_Z with d_UC(v) = 3.
    for (int v = st.uz.find_first(); v >= 0; v = st.uz.find_next(v + 1))
        if (st.d_uc(v) == 3) {
            Bitset nb = st.ctx->adj[v] & st.uc;
            int u1 = nb.find_first();
            int u2 = nb.find_next(u1 + 1);
            int u3 = nb.find_next(u2 + 1);
            return {ExactRule::B5, v, u1, u2, u3};
        }
    // B6: any u in U_C (its d_UZ is necessarily 3 here).
    int u = st.uc.find_first();
    if (u >= 0) return {ExactRule::B6, u};
    return {ExactRule::None};
}

ExactState child_of(const ExactState& st, const Bitset& add_d, const Bitset& add_p,
                    const Bitset& add_pz) {
    ExactState out = st;
    out.df |= add_d;
    out.pf |= add_p;
    out.pfz |= add_pz;
    out.recompute_derived();
    return out;
}

struct ChildBuilder {
    const ExactState& st;
    int n;
    std::vector<ExactState> out;

    explicit ChildBuilder(const ExactState& st_) : st(st_), n(st_.ctx->g->n()) {}

    Bitset none() const { return Bitset(n); }
    Bitset just(int v) const {
        Bitset b(n);
        if (v >= 0) b.set(v);
        return b;
    }
    // Discards children whose moves collide with each other or with earlier
    // decisions (cannot arise from the rules as written, but such a child
    // could never complete to a partition).
    void add(const Bitset& d, const Bitset& p, const Bitset& pz) {
        Bitset all = d | p | pz;
        if (all.count() != d.count() + p.count() + pz.count()) return;
        if (all.intersects(st.df) || all.intersects(st.pf) || all.intersects(st.pfz)) return;
        out.push_back(child_of(st, d, p, pz));
    }
};

} // namespace

ExactRule select_rule(const ExactState& st) {
    if (!st.consistent()) throw ContractError("select_rule: inconsistent state");
    return find_rule(st).rule;
}

std::vector<ExactState> expand(const ExactState& st, ExactRule rule) {
    RuleMatch m = find_rule(st);
    if (m.rule != rule || rule == ExactRule::None)
        throw ContractError("expand: rule is not the first applicable one");

    ChildBuilder cb(st);
    const auto& adj = st.ctx->adj;
    switch (rule) {
        case ExactRule::R1:
            cb.add(cb.none(), cb.just(m.a), cb.none());
            break;
        case ExactRule::R2:
            cb.add(cb.none(), cb.none(), cb.just(m.a));
            break;
        case ExactRule::B1:
        case ExactRule::B2_2:
            cb.add(cb.just(m.a), cb.none(), cb.none());
            cb.add(cb.none(), cb.just(m.a), cb.none());
            break;
        case ExactRule::B2_1:
        case ExactRule::B4:
            cb.add(cb.just(m.a), cb.just(m.b), cb.none());
            cb.add(cb.none(), cb.just(m.a), cb.none());
            break;
        case ExactRule::B3_1:
            cb.add(cb.just(m.a), cb.none(), cb.none());
            cb.add(cb.none(), cb.just(m.a), cb.none());
            break;
        case ExactRule::B3_2: {
            int u1 = m.a, u2 = m.b;
            cb.add(cb.just(u1), cb.none(), cb.none());
            cb.add(cb.just(u2), cb.just(u1), cb.none());
            Bitset both = cb.just(u1) | cb.just(u2);
            cb.add(cb.none(), both, cb.none());
            break;
        }
        case ExactRule::B5: {
            int v = m.a, u1 = m.b, u2 = m.c, u3 = m.d;
            Bitset us = cb.just(u1) | cb.just(u2) | cb.just(u3);
            // X_i: vertices of U_C beyond u1..u3 sharing with u_i a U_Z
            // neighbor other than v.
            Bitset uz_not_v = st.uz;
            uz_not_v.reset(v);
            auto xset = [&](int ui) {
                Bitset x(cb.n);
                Bitset cands = st.uc;
                cands.subtract(us);
                cands.for_each([&](int w) {
                    if (adj[w].count_and(adj[ui], uz_not_v) > 0) x.set(w);
                });
                return x;
            };
            Bitset x1 = xset(u1), x2 = xset(u2), x3 = xset(u3);
            // (i) all three in P, v forced into P'.
            cb.add(cb.none(), us, cb.just(v));
            // (ii) exactly one in D.
            int us3[3] = {u1, u2, u3};
            for (int i = 0; i < 3; ++i) {
                Bitset rest = us;
                rest.reset(us3[i]);
                cb.add(cb.just(us3[i]), rest, cb.none());
            }
            // (iii) exactly two in D; the X sets of the chosen pair go to P.
            const Bitset* xs[3] = {&x1, &x2, &x3};
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    Bitset dset = cb.just(us3[i]) | cb.just(us3[j]);
                    Bitset pset = us;
                    pset.subtract(dset);
                    pset |= *xs[i];
                    pset |= *xs[j];
                    cb.add(dset, pset, cb.none());
                }
            // (iv) all three in D.
            cb.add(us, x1 | x2 | x3, cb.none());
            break;
        }
        case ExactRule::B6: {
            int u = m.a;
            Bitset nz = adj[u] & st.uz;
            int v1 = nz.find_first();
            int v2 = nz.find_next(v1 + 1);
            int v3 = nz.find_next(v2 + 1);
            cb.add(cb.none(), cb.just(u), cb.none());
            Bitset p1 = adj[v1] & st.uc;
            p1.reset(u);
            cb.add(cb.just(u), p1, cb.none());
            Bitset p23 = (adj[v2] | adj[v3]) & st.uc;
            p23.reset(u);
            cb.add(cb.just(u), p23, cb.none());
            break;
        }
        case ExactRule::None:
            break;
    }
    return cb.out;
}

std::optional<MixedSolution> complete_exact(const Graph& g, const ExactState& st) {
    if (st.u.any()) throw ContractError("complete_exact: U is not empty");

    // Cover T = P_f u P_f' by edges: pairs inside G[T] via a maximum
    // matching, one incident edge for each unmatched vertex. The fallback
    // partner may sit outside T (a vertex dominated or taken by D_f);
    // restricting partners to G[T] loses optimal branches whose cover
    // vertices saw their partners leave U through domination. The size is
    // |T| - nu(G[T]) either way.
    Bitset tset = st.pf | st.pfz;
    std::vector<int> t = tset.to_vector();
    auto [gt, back] = g.induced(t);
    auto mate = max_matching_mates(gt);

    MixedSolution sol;
    sol.d = st.df.to_vector();
    for (int i = 0; i < gt.n(); ++i) {
        if (mate[i] > i) {
            sol.m.push_back(g.edge_id(back[i], back[mate[i]]));
        } else if (mate[i] == -1) {
            int v = back[i], partner = -1;
            for (int w : g.neighbors(v)) {
                if (tset.test(w)) { partner = w; break; }
                if (partner < 0) partner = w;
            }
            if (partner < 0) return std::nullopt;  // isolated in g: uncoverable
            sol.m.push_back(g.edge_id(v, partner));
        }
    }
    sol.normalize();
    return sol;
}

namespace {

struct CoverResult {
    int best_size = -1;
    MixedSolution best;
    long long branches = 0, leaves = 0, completions = 0, infeasible = 0, pruned = 0;
    int max_depth = 0;
};

// Completion cost can never drop below the decided vertices plus half of the
// decided P vertices, rounded up.
int lower_bound(const ExactState& st) {
    return st.df.count() + (st.pf.count() + st.pfz.count() + 1) / 2;
}

void search(const ExactState& st, const ExactOptions& opt, std::atomic<int>& incumbent,
            CoverResult& res, int depth = 0) {
    res.max_depth = std::max(res.max_depth, depth);
    if (opt.prune && lower_bound(st) > incumbent.load(std::memory_order_relaxed)) {
        ++res.pruned;
        return;
    }
    RuleMatch m = find_rule(st);
    if (m.rule == ExactRule::None) {
        ++res.leaves;
        if (st.u.any()) throw ContractError("exact search: no rule applies but U is nonempty");
        auto sol = complete_exact(*st.ctx->g, st);
        if (!sol) {
            ++res.infeasible;
            return;
        }
        ++res.completions;
        if (opt.verify_leaves && !validate_mds(*st.ctx->g, *sol).valid)
            throw ContractError("exact search: leaf completion failed validation");
        int size = sol->size();
        if (res.best_size < 0 || size < res.best_size) {
            res.best_size = size;
            res.best = std::move(*sol);
        }
        int cur = incumbent.load(std::memory_order_relaxed);
        while (size < cur && !incumbent.compare_exchange_weak(cur, size)) {
        }
        return;
    }
    ++res.branches;
    for (const ExactState& child : expand(st, m.rule))
        search(child, opt, incumbent, res, depth + 1);
}

} // namespace

MixedSolution solve_exact(const Graph& g, const ExactOptions& options, ExactStats* stats) {
    auto t0 = std::chrono::steady_clock::now();
    IsolatedSplit split = split_isolated(g);
    const Graph& h = split.rest;

    std::vector<std::vector<int>> covers = all_minimal_vertex_covers(h);

    std::atomic<int> incumbent{h.n() + 1};
    std::vector<CoverResult> results(covers.size());

    int threads = std::max(1, options.threads);
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= covers.size()) break;
            ExactContext ctx(h, covers[i]);
            search(ExactState::root(ctx), options, incumbent, results[i]);
        }
    };
    if (threads == 1 || covers.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // Deterministic merge: smallest size, then lowest cover index.
    int best_idx = -1;
    for (size_t i = 0; i < results.size(); ++i) {
        if (results[i].best_size < 0) continue;
        if (best_idx < 0 || results[i].best_size < results[best_idx].best_size) best_idx = (int)i;
    }

    MixedSolution best;
    if (best_idx >= 0) {
        best = results[best_idx].best;
    } else {
        // No cover produced a feasible leaf (possible only for edgeless h,
        // which split_isolated already consumed, so h must be empty).
        if (h.n() > 0) throw ContractError("solve_exact: no feasible completion found");
    }
    MixedSolution lifted = lift_split_solution(g, split, best);

    if (stats) {
        stats->covers = (long long)covers.size();
        stats->branches = stats->leaves = stats->completions = stats->infeasible_leaves =
            stats->pruned = 0;
        stats->max_cover_leaves = 0;
        for (const auto& r : results) {
            stats->branches += r.branches;
            stats->leaves += r.leaves;
            stats->completions += r.completions;
            stats->infeasible_leaves += r.infeasible;
            stats->pruned += r.pruned;
            stats->max_cover_leaves = std::max(stats->max_cover_leaves, r.leaves);
            stats->max_depth = std::max(stats->max_depth, r.max_depth);
        }
        stats->best_size = lifted.size();
        stats->wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    }
    return lifted;
}

} // namespace mdskit
