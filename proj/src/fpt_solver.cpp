#include "mdskit/fpt_solver.hpp"

#include <algorithm>
#include <chrono>

#include "mdskit/errors.hpp"
#include "mdskit/matching.hpp"
#include "mdskit/oracle.hpp"

namespace mdskit {

const char* to_string(FptRule r) {
    switch (r) {
        case FptRule::Sanity: return "Sanity";
        case FptRule::R1: return "R1";
        case FptRule::B1: return "B1";
        case FptRule::B2_1: return "B2.1";
        case FptRule::B2_2: return "B2.2";
        case FptRule::B3_1: return "B3.1";
        case FptRule::B3_2: return "B3.2";
        case FptRule::B3_3: return "B3.3";
        case FptRule::B4_1: return "B4.1";
        case FptRule::B4_2: return "B4.2";
        case FptRule::B5: return "B5";
        case FptRule::B6: return "B6";
        case FptRule::B7: return "B7";
        case FptRule::None: return "None";
    }
    return "?";
}

FptContext::FptContext(const Graph& graph, int budget)
    : g(&graph), adj(graph.adjacency_bitsets()), k(budget) {}

FptState FptState::root(const FptContext& c) {
    FptState st;
    st.ctx = &c;
    st.df = st.pf = Bitset(c.g->n());
    st.recompute_derived();
    return st;
}

void FptState::recompute_derived() {
    int n = ctx->g->n();
    u = Bitset(n);
    for (int v = 0; v < n; ++v) u.set(v);
    u.subtract(df);
    u.subtract(pf);
    Bitset dom(n);
    df.for_each([&](int v) { dom |= ctx->adj[v]; });
    ustar = u;
    ustar.subtract(dom);
}

bool FptState::consistent() const {
    if (df.intersects(pf)) return false;
    FptState copy = *this;
    copy.recompute_derived();
    return copy.u == u && copy.ustar == ustar;
}

int FptState::private_candidates(int w) const {
    int count = 0;
    Bitset cand = ctx->adj[w] & u;
    cand.for_each([&](int v) { count += ctx->adj[v].count_and(df) == 1; });
    return count;
}

int measure_fpt(const FptState& st) {
    return 2 * st.ctx->k - 2 * st.df.count() - st.pf.count();
}

bool sanity_check(const FptState& st) {
    if (2 * st.df.count() + st.pf.count() > 2 * st.ctx->k) return false;
    for (int w = st.df.find_first(); w >= 0; w = st.df.find_next(w + 1))
        if (st.private_candidates(w) <= 1) return false;
    return true;
}

bool is_feasible_pair(const FptState& st, int v1, int v2) {
    if (v1 == v2 || !st.u.test(v1) || !st.u.test(v2))
        throw ContractError("is_feasible_pair: vertices must be distinct and undecided");
    Bitset a = st.ctx->adj[v1] & st.ustar;
    a.subtract(st.ctx->adj[v2]);
    if (a.count() < 2) return false;
    Bitset b = st.ctx->adj[v2] & st.ustar;
    b.subtract(st.ctx->adj[v1]);
    return b.count() >= 2;
}

bool is_compatible(const FptState& st, int u, int vi) {
    if (!st.ustar.test(u) || st.d_u(u) != 4 || !(st.ctx->adj[u] & st.u).test(vi))
        throw ContractError("is_compatible: requires u in U* with d_U(u)=4 and vi in N_U(u)");
    Bitset cand = st.ctx->adj[vi] & st.ustar;
    Bitset others = st.ctx->adj[u] & st.u;
    others.reset(vi);
    others.for_each([&](int vj) { cand.subtract(st.ctx->adj[vj]); });
    return cand.count() >= 2;
}

namespace {

struct FptMatch {
    FptRule rule = FptRule::None;
    int v = -1;
};

// N_U(u) ordered with U* vertices first (ids ascending within each part);
// when a feasible pair exists among the U* prefix, the lexicographically
// first one is moved to the front.
std::vector<int> ordered_u_neighbors(const FptState& st, int u, bool feasible_front) {
    std::vector<int> star, rest;
    (st.ctx->adj[u] & st.u).for_each([&](int v) {
        (st.ustar.test(v) ? star : rest).push_back(v);
    });
    if (feasible_front) {
        int pi = -1, pj = -1;
        for (size_t i = 0; i < star.size() && pi < 0; ++i)
            for (size_t j = i + 1; j < star.size(); ++j)
                if (is_feasible_pair(st, star[i], star[j])) {
                    pi = (int)i;
                    pj = (int)j;
                    break;
                }
        if (pi >= 0) {
            std::vector<int> reordered = {star[pi], star[pj]};
            for (size_t i = 0; i < star.size(); ++i)
                if ((int)i != pi && (int)i != pj) reordered.push_back(star[i]);
            star = std::move(reordered);
        }
    }
    star.insert(star.end(), rest.begin(), rest.end());
    return star;
}

FptMatch find_rule_fpt(const FptState& st) {
    if (!sanity_check(st)) return {FptRule::Sanity};
    const Bitset& us = st.ustar;
    for (int v = us.find_first(); v >= 0; v = us.find_next(v + 1))
        if (st.d_u(v) == 0) return {FptRule::R1, v};
    for (int v = us.find_first(); v >= 0; v = us.find_next(v + 1))
        if (st.d_u(v) == 1) return {FptRule::B1, v};
    for (int v = us.find_first(); v >= 0; v = us.find_next(v + 1))
        if (st.d_u(v) == 2 && st.d_ustar(v) <= 1) return {FptRule::B2_1, v};
    for (int v = us.find_first(); v >= 0; v = us.find_next(v + 1))
        if (st.d_u(v) == 2) return {FptRule::B2_2, v};
    for (int v = us.find_first(); v >= 0; v = us.find_next(v + 1))
        if (st.d_u(v) == 3 && st.d_ustar(v) <= 2) return {FptRule::B3_1, v};
    for (int v = us.find_first(); v >= 0; v = us.find_next(v + 1)) {
        if (st.d_u(v) != 3) continue;
        auto ns = ordered_u_neighbors(st, v, false);
        int pairs = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) pairs += is_feasible_pair(st, ns[i], ns[j]);
        if (pairs >= 2) return {FptRule::B3_2, v};
    }
    for (int v = us.find_first(); v >= 0; v = us.find_next(v + 1))
        if (st.d_u(v) == 3) return {FptRule::B3_3, v};
    for (int v = us.find_first(); v >= 0; v = us.find_next(v + 1)) {
        if (st.d_u(v) != 4 || st.d_ustar(v) != 4) continue;
        auto ns = ordered_u_neighbors(st, v, false);
        bool all = true;
        for (int vi : ns)
            if (!is_compatible(st, v, vi)) { all = false; break; }
        if (all) return {FptRule::B4_1, v};
    }
    for (int v = us.find_first(); v >= 0; v = us.find_next(v + 1))
        if (st.d_u(v) == 4) return {FptRule::B4_2, v};
    {
        int best = -1, bestdeg = 9;
        for (int v = us.find_first(); v >= 0; v = us.find_next(v + 1)) {
            int d = st.d_u(v);
            if (d >= 5 && d <= 8 && d < bestdeg) {
                bestdeg = d;
                best = v;
            }
        }
        if (best >= 0) return {FptRule::B5, best};
    }
    for (int v = us.find_first(); v >= 0; v = us.find_next(v + 1))
        if (st.d_u(v) >= 9) return {FptRule::B6, v};
    // Step 2: vertex-cover style branching in G[U].
    for (int v = st.u.find_first(); v >= 0; v = st.u.find_next(v + 1))
        if (st.d_u(v) >= 2) return {FptRule::B7, v};
    return {FptRule::None};
}

struct FptChildBuilder {
    const FptState& st;
    int n;
    std::vector<FptState> out;
    int produced = 0;

    explicit FptChildBuilder(const FptState& st_) : st(st_), n(st_.ctx->g->n()) {}

    Bitset none() const { return Bitset(n); }
    Bitset just(int v) const {
        Bitset b(n);
        b.set(v);
        return b;
    }
    Bitset of(const std::vector<int>& vs) const {
        Bitset b(n);
        for (int v : vs) b.set(v);
        return b;
    }
    void add(const Bitset& d, const Bitset& p) {
        ++produced;
        if (d.intersects(p)) return;
        if ((d | p).intersects(st.df) || (d | p).intersects(st.pf)) return;
        FptState child = st;
        child.df |= d;
        child.pf |= p;
        child.recompute_derived();
        if (sanity_check(child)) out.push_back(std::move(child));
    }
};

} // namespace

FptRule select_rule_fpt(const FptState& st) {
    if (!st.consistent()) throw ContractError("select_rule_fpt: inconsistent state");
    return find_rule_fpt(st).rule;
}

std::vector<FptState> expand_fpt(const FptState& st, FptRule rule, int* prefilter_count) {
    FptMatch m = find_rule_fpt(st);
    if (m.rule != rule) throw ContractError("expand_fpt: rule is not the first applicable one");
    if (rule == FptRule::Sanity || rule == FptRule::None)
        throw ContractError("expand_fpt: nothing to expand");

    FptChildBuilder cb(st);
    const auto& adj = st.ctx->adj;
    int u = m.v;

    // P_f additions for the branch where u enters D with the given private
    // neighbors: all their other undecided neighbors must be matched.
    auto privates_to_p = [&](std::initializer_list<int> privs) {
        Bitset p(cb.n);
        for (int v : privs) p |= adj[v] & st.u;
        p.reset(u);
        return p;
    };
    auto subset_branches = [&](const std::vector<int>& vs, bool include_empty) {
        int total = 1 << vs.size();
        for (int mask = include_empty ? 0 : 1; mask < total; ++mask) {
            Bitset d(cb.n), p(cb.n);
            for (size_t i = 0; i < vs.size(); ++i)
                ((mask >> i) & 1 ? d : p).set(vs[i]);
            cb.add(d, p);
        }
    };

    switch (rule) {
        case FptRule::R1:
            cb.add(cb.none(), cb.just(u));
            break;
        case FptRule::B1: {
            int v = (adj[u] & st.u).find_first();
            cb.add(cb.none(), cb.just(u));
            cb.add(cb.just(v), cb.none());
            break;
        }
        case FptRule::B2_1: {
            auto ns = (adj[u] & st.u).to_vector();
            cb.add(cb.none(), cb.just(u));
            cb.add(cb.just(ns[0]), cb.just(ns[1]));
            cb.add(cb.just(ns[1]), cb.just(ns[0]));
            cb.add(cb.of(ns), cb.none());
            break;
        }
        case FptRule::B2_2: {
            auto ns = (adj[u] & st.u).to_vector();
            cb.add(cb.just(u), privates_to_p({ns[0], ns[1]}));
            cb.add(cb.none(), cb.just(u));
            cb.add(cb.just(ns[0]), cb.just(ns[1]));
            cb.add(cb.just(ns[1]), cb.just(ns[0]));
            cb.add(cb.of(ns), cb.none());
            break;
        }
        case FptRule::B3_1: {
            auto ns = ordered_u_neighbors(st, u, false);  // dominated neighbor lands last
            cb.add(cb.none(), cb.just(u));
            cb.add(cb.just(u), privates_to_p({ns[0], ns[1]}));
            subset_branches(ns, false);
            break;
        }
        case FptRule::B3_2: {
            auto ns = (adj[u] & st.u).to_vector();  // all three lie in U* here
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    cb.add(cb.just(u), privates_to_p({ns[i], ns[j]}));
            cb.add(cb.none(), cb.just(u));
            subset_branches(ns, false);
            break;
        }
        case FptRule::B3_3: {
            auto ns = (adj[u] & st.u).to_vector();
            cb.add(cb.none(), cb.just(u));
            cb.add(cb.just(u), privates_to_p({ns[0]}));
            cb.add(cb.just(u), privates_to_p({ns[1], ns[2]}));
            subset_branches(ns, false);
            break;
        }
        case FptRule::B4_1: {
            auto ns = (adj[u] & st.u).to_vector();
            cb.add(cb.none(), cb.just(u));
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    cb.add(cb.just(u), privates_to_p({ns[i], ns[j]}));
            subset_branches(ns, false);
            break;
        }
        case FptRule::B4_2:
        case FptRule::B5: {
            auto ns = ordered_u_neighbors(st, u, true);
            int dstar = st.d_ustar(u);
            cb.add(cb.none(), cb.just(u));
            subset_branches(ns, false);
            if (dstar >= 2) cb.add(cb.just(u), privates_to_p({ns[0], ns[1]}));
            for (int j = 2; j < dstar; ++j) cb.add(cb.just(u), privates_to_p({ns[j]}));
            break;
        }
        case FptRule::B6: {
            auto full = (adj[u] & st.u).to_vector();
            std::vector<int> t(full.begin(), full.begin() + 9);
            cb.add(cb.just(u), cb.none());
            cb.add(cb.none(), cb.just(u));
            subset_branches(t, true);
            break;
        }
        case FptRule::B7: {
            cb.add(cb.none(), cb.just(u));
            cb.add(cb.none(), adj[u] & st.u);
            break;
        }
        default:
            break;
    }
    if (prefilter_count) *prefilter_count = cb.produced;
    return cb.out;
}

std::optional<MixedSolution> complete_fpt(const Graph& g, const FptState& st) {
    if (st.ustar.any()) throw ContractError("complete_fpt: U* is not empty");
    // Matching edges of G[U]; max degree must be 1.
    std::vector<std::pair<int, int>> xedges;
    for (int v = st.u.find_first(); v >= 0; v = st.u.find_next(v + 1)) {
        int du = st.d_u(v);
        if (du > 1) throw ContractError("complete_fpt: G[U] has a vertex of degree > 1");
        if (du == 1) {
            int w = (st.ctx->adj[v] & st.u).find_first();
            if (v < w) xedges.emplace_back(v, w);
        }
    }

    std::vector<int> pfs = st.pf.to_vector();
    int np = (int)pfs.size(), nx = (int)xedges.size();
    std::vector<int> pf_index(g.n(), -1), x_of_vertex(g.n(), -1);
    for (int i = 0; i < np; ++i) pf_index[pfs[i]] = i;
    for (int i = 0; i < nx; ++i) {
        x_of_vertex[xedges[i].first] = i;
        x_of_vertex[xedges[i].second] = i;
    }

    // Collapsed graph H: one vertex per P_f member, one per G[U] edge.
    std::vector<std::pair<int, int>> hedges;
    for (int i = 0; i < np; ++i)
        for (int w : g.neighbors(pfs[i])) {
            if (pf_index[w] > i) hedges.emplace_back(i, pf_index[w]);
            if (x_of_vertex[w] >= 0) hedges.emplace_back(i, np + x_of_vertex[w]);
        }
    for (int i = 0; i < nx; ++i) {
        auto probe = [&](int a) {
            for (int w : g.neighbors(a))
                if (x_of_vertex[w] >= 0 && x_of_vertex[w] > i)
                    hedges.emplace_back(np + i, np + x_of_vertex[w]);
        };
        probe(xedges[i].first);
        probe(xedges[i].second);
    }
    Graph h = Graph::from_edges(np + nx, std::move(hedges));
    auto mate = max_matching_mates(h);

    MixedSolution sol;
    sol.d = st.df.to_vector();
    auto g_edge_for = [&](int hu, int hv) -> int {
        if (hu > hv) std::swap(hu, hv);
        if (hv < np) return g.edge_id(pfs[hu], pfs[hv]);
        auto [a, b] = xedges[hv - np];
        if (hu < np) {
            int p = pfs[hu];
            int ea = g.edge_id(p, a), eb = g.edge_id(p, b);
            if (ea >= 0 && eb >= 0) return std::min(ea, eb);
            return ea >= 0 ? ea : eb;
        }
        auto [a2, b2] = xedges[hu - np];
        int best = -1;
        for (int x : {a2, b2})
            for (int y : {a, b}) {
                int e = g.edge_id(x, y);
                if (e >= 0 && (best < 0 || e < best)) best = e;
            }
        return best;
    };

    for (int hv = 0; hv < np + nx; ++hv)
        if (mate[hv] > hv) sol.m.push_back(g_edge_for(hv, mate[hv]));
    for (int i = 0; i < np; ++i) {
        if (mate[i] != -1) continue;
        // Prefer a collapsed-graph partner; any incident edge covers p.
        int p = pfs[i], chosen = -1;
        for (int w : g.neighbors(p)) {
            if (pf_index[w] >= 0 || x_of_vertex[w] >= 0) { chosen = w; break; }
            if (chosen < 0) chosen = w;
        }
        if (chosen < 0) return std::nullopt;  // p is isolated in g
        sol.m.push_back(g.edge_id(p, chosen));
    }
    for (int i = 0; i < nx; ++i)
        if (mate[np + i] == -1) sol.m.push_back(g.edge_id(xedges[i].first, xedges[i].second));
    sol.normalize();
    return sol;
}

namespace {

struct FptSearch {
    const FptContext& ctx;
    const FptOptions& opt;
    FptStats& stats;
    std::optional<MixedSolution> best;

    bool done() const { return best && !opt.optimal; }

    void run(const FptState& st) {
        if (done()) return;
        FptMatch m = find_rule_fpt(st);
        if (m.rule == FptRule::Sanity) {
            ++stats.sanity_rejections;
            return;
        }
        if (m.rule == FptRule::None) {
            ++stats.leaves;
            auto sol = complete_fpt(*ctx.g, st);
            if (!sol) return;
            ++stats.completions;
            if (opt.verify_leaves && !validate_mds(*ctx.g, *sol).valid)
                throw ContractError("fpt search: leaf completion failed validation");
            if (sol->size() <= ctx.k && (!best || sol->size() < best->size())) best = *sol;
            return;
        }
        ++stats.branches;
        int prefilter = 0;
        auto children = expand_fpt(st, m.rule, &prefilter);
        stats.sanity_rejections += prefilter - (int)children.size();
        for (const FptState& child : children) {
            run(child);
            if (done()) return;
        }
    }
};

} // namespace

std::optional<MixedSolution> solve_fpt(const Graph& g, int k, const FptOptions& options,
                                       FptStats* stats) {
    auto t0 = std::chrono::steady_clock::now();
    FptStats local;
    FptStats& s = stats ? *stats : local;
    s = FptStats{};

    IsolatedSplit split = split_isolated(g);
    int budget = k - (int)split.isolated.size();
    std::optional<MixedSolution> result;
    if (budget >= 0) {
        FptContext ctx(split.rest, budget);
        FptSearch search{ctx, options, s, std::nullopt};
        search.run(FptState::root(ctx));
        if (search.best) result = lift_split_solution(g, split, *search.best);
    }
    s.best_size = result ? result->size() : -1;
    s.wall_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
            .count();
    return result;
}

} // namespace mdskit
