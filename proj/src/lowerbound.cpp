#include "mdskit/lowerbound.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "mdskit/errors.hpp"

namespace mdskit {

namespace {

long long pow5(int q) {
    long long p = 1;
    for (int i = 0; i < q; ++i) p *= 5;
    return p;
}

} // namespace

Csp5Instance normalize_csp(Csp5Instance csp) {
    int q = csp.arity;
    long long cap = pow5(q) - 1;  // C
    std::vector<Csp5Constraint> kept;

    for (auto& c : csp.constraints) {
        if ((int)c.vars.size() > q) throw InputError("normalize_csp: constraint arity exceeds q");
        {
            std::set<int> distinct(c.vars.begin(), c.vars.end());
            if (distinct.size() != c.vars.size())
                throw InputError("normalize_csp: constraint repeats a variable");
        }
        for (const auto& a : c.assignments) {
            if (a.size() != c.vars.size()) throw InputError("normalize_csp: assignment arity mismatch");
            for (int v : a)
                if (v < 0 || v > 4) throw InputError("normalize_csp: value outside 0..4");
        }
        if (c.assignments.empty())
            throw InputError("normalize_csp: constraint with empty assignment list is unsatisfiable");

        // Pad to arity q with uninvolved variables whose value is irrelevant.
        int need = q - (int)c.vars.size();
        if (need > 0) {
            std::set<int> used(c.vars.begin(), c.vars.end());
            std::vector<int> pads;
            for (int v = 0; v < csp.num_vars && (int)pads.size() < need; ++v)
                if (!used.count(v)) pads.push_back(v);
            while ((int)pads.size() < need) pads.push_back(csp.num_vars++);
            std::vector<std::vector<int>> padded;
            long long combos = pow5(need);
            for (const auto& a : c.assignments)
                for (long long code = 0; code < combos; ++code) {
                    std::vector<int> full = a;
                    long long rest = code;
                    for (int i = 0; i < need; ++i) {
                        full.push_back((int)(rest % 5));
                        rest /= 5;
                    }
                    padded.push_back(std::move(full));
                }
            c.vars.insert(c.vars.end(), pads.begin(), pads.end());
            c.assignments = std::move(padded);
        }

        std::set<std::vector<int>> distinct(c.assignments.begin(), c.assignments.end());
        if ((long long)distinct.size() > cap) continue;  // lists all 5^q tuples: always satisfied
        // Repeats are allowed below the cap; an over-long list collapses to
        // its distinct assignments before padding back up.
        if ((long long)c.assignments.size() > cap)
            c.assignments.assign(distinct.begin(), distinct.end());
        while ((long long)c.assignments.size() < cap) c.assignments.push_back(c.assignments.front());
        kept.push_back(std::move(c));
    }
    csp.constraints = std::move(kept);
    return csp;
}

bool csp_satisfied_by(const Csp5Instance& csp, const std::vector<int>& assignment) {
    if ((int)assignment.size() != csp.num_vars) return false;
    for (const auto& c : csp.constraints) {
        std::vector<int> restr;
        restr.reserve(c.vars.size());
        for (int v : c.vars) restr.push_back(assignment[v]);
        if (std::find(c.assignments.begin(), c.assignments.end(), restr) == c.assignments.end())
            return false;
    }
    return true;
}

int ConstructionOutput::u_id(int i, long long j) const {
    return (int)((i - 1) * main_len + j);
}
int ConstructionOutput::z_id(long long j, int sigma, int t, int which) const {
    return (int)(h_base + j * h_block + sigma * 2 * q + 2 * t + (which - 1));
}
int ConstructionOutput::w_id(long long j, int t) const {
    return (int)(h_base + j * h_block + C * 2 * q + t);
}
int ConstructionOutput::w_pendant_id(long long j, int t, long long p) const {
    return (int)(h_base + j * h_block + C * 2 * q + 2 * q * (C - 1) + t * pendant_size + p);
}
int ConstructionOutput::a_id(int i, long long j, int r, int t) const {
    long long copy = ((i - 1) * sections + j) * A + r;
    return (int)(q_base + copy * q_block + t);
}
int ConstructionOutput::b_id(int i, long long j, int r, int l, int which) const {
    long long copy = ((i - 1) * sections + j) * A + r;
    return (int)(q_base + copy * q_block + 8 + 2 * l + which);
}
int ConstructionOutput::a_pendant_id(int i, long long j, int r, int t, long long p) const {
    long long copy = ((i - 1) * sections + j) * A + r;
    return (int)(q_base + copy * q_block + 18 + t * pendant_size + p);
}

int ConstructionOutput::agreeing_sigma(long long jp, const std::vector<int>& assignment) const {
    const Csp5Constraint& c = constraints[jp];
    std::vector<int> restr;
    restr.reserve(c.vars.size());
    for (int v : c.vars) restr.push_back(assignment[v]);
    for (int sigma = 0; sigma < (int)c.assignments.size(); ++sigma)
        if (c.assignments[sigma] == restr) return sigma;
    return -1;
}

long long ConstructionOutput::expected_vertex_count() const {
    long long main_total = (long long)n_vars * main_len;
    long long h_total = sections * h_block;
    long long q_total = (long long)n_vars * sections * A * q_block;
    return main_total + h_total + q_total + 3;
}

ConstructionOutput build_seth_instance(const Csp5Instance& csp,
                                       std::optional<long long> pendant_override) {
    int q = csp.arity;
    long long C = pow5(q) - 1;
    for (const auto& c : csp.constraints) {
        if ((int)c.vars.size() != q)
            throw ContractError("build_seth_instance: instance is not normalized (arity)");
        if ((long long)c.assignments.size() != C)
            throw ContractError("build_seth_instance: instance is not normalized (list size)");
    }

    ConstructionOutput out;
    out.constraints = csp.constraints;
    out.n_vars = csp.num_vars;
    out.m_constraints = (int)csp.constraints.size();
    out.q = q;
    out.C = C;
    long long n = out.n_vars, m = out.m_constraints;
    out.F = (4 * n + 1) * (2 * n + 1);
    out.A = 12;
    out.k = 8LL * out.A * out.F * m * n + 2 * out.F * m * n + 2 * out.F * m * q * (C - 1) + n + 1;
    out.pendant_size = pendant_override.value_or(2 * out.k + 1);
    if (out.pendant_size < 1)
        throw InputError("build_seth_instance: pendant size must be positive");
    out.sections = out.F * m;
    out.main_len = 5 * out.sections;
    out.h_block = C * 2 * q + 2 * q * (C - 1) + 2 * q * (C - 1) * out.pendant_size;
    out.h_base = n * out.main_len;
    out.q_block = 8 + 10 + 8 * out.pendant_size;
    out.q_base = out.h_base + out.sections * out.h_block;
    long long total = out.expected_vertex_count();
    out.s = (int)(total - 3);
    out.s1 = out.s + 1;
    out.s2 = out.s + 2;

    if (total > 50'000'000)
        throw LimitError("build_seth_instance: " + std::to_string(total) +
                         " vertices; rerun with a pendant override for desk-scale output");

    std::vector<std::pair<int, int>> es;
    // Item 1: apex and its two leaves.
    es.emplace_back(out.s, out.s1);
    es.emplace_back(out.s, out.s2);
    // Item 2: the n main paths.
    for (int i = 1; i <= n; ++i)
        for (long long j = 0; j + 1 < out.main_len; ++j)
            es.emplace_back(out.u_id(i, j), out.u_id(i, j + 1));

    // Item 3: checker gadgets H_j.
    for (long long j = 0; j < out.sections; ++j) {
        const auto& c = csp.constraints[j % m];
        // 3b: wiring of the reserved pair of each involved variable.
        for (int t = 0; t < q; ++t) {
            int i = c.vars[t] + 1;
            for (int sigma = 0; sigma < C; ++sigma) {
                int alpha = c.assignments[sigma][t];
                int beta = (alpha + 2) % 5, gamma = (alpha + 3) % 5;
                int z1 = out.z_id(j, sigma, t, 1), z2 = out.z_id(j, sigma, t, 2);
                es.emplace_back(out.u_id(i, 5 * j + alpha), z1);
                es.emplace_back(out.u_id(i, 5 * j + alpha), z2);
                es.emplace_back(out.u_id(i, 5 * j + beta), z1);
                es.emplace_back(out.u_id(i, 5 * j + gamma), z2);
            }
        }
        // 3c: complete bipartite between distinct Z sets.
        for (int s1 = 0; s1 < C; ++s1)
            for (int s2 = s1 + 1; s2 < C; ++s2)
                for (int a = 0; a < 2 * q; ++a)
                    for (int b = 0; b < 2 * q; ++b)
                        es.emplace_back(out.z_id(j, s1, a / 2, 1 + a % 2),
                                        out.z_id(j, s2, b / 2, 1 + b % 2));
        // 3e: all edges between W_j and every Z set.
        for (int t = 0; t < 2 * q * (C - 1); ++t)
            for (int sigma = 0; sigma < C; ++sigma)
                for (int a = 0; a < 2 * q; ++a)
                    es.emplace_back(out.w_id(j, t), out.z_id(j, sigma, a / 2, 1 + a % 2));
        // 3f: pendant independent sets wired to w and to the apex.
        for (int t = 0; t < 2 * q * (C - 1); ++t)
            for (long long p = 0; p < out.pendant_size; ++p) {
                int pv = out.w_pendant_id(j, t, p);
                es.emplace_back(pv, out.w_id(j, t));
                es.emplace_back(pv, out.s);
            }
    }

    // Items 4 and 5: A copies of each consistency gadget Q_{i,j}.
    for (int i = 1; i <= n; ++i)
        for (long long j = 0; j < out.sections; ++j)
            for (int r = 0; r < out.A; ++r) {
                // 4c: complete bipartite between distinct B sets.
                for (int l1 = 0; l1 < 5; ++l1)
                    for (int l2 = l1 + 1; l2 < 5; ++l2)
                        for (int w1 = 0; w1 < 2; ++w1)
                            for (int w2 = 0; w2 < 2; ++w2)
                                es.emplace_back(out.b_id(i, j, r, l1, w1),
                                                out.b_id(i, j, r, l2, w2));
                // 4d: all edges from every B set to A.
                for (int l = 0; l < 5; ++l)
                    for (int w = 0; w < 2; ++w)
                        for (int t = 0; t < 8; ++t)
                            es.emplace_back(out.b_id(i, j, r, l, w), out.a_id(i, j, r, t));
                // 4e: pendants on each A vertex, wired to the apex.
                for (int t = 0; t < 8; ++t)
                    for (long long p = 0; p < out.pendant_size; ++p) {
                        int pv = out.a_pendant_id(i, j, r, t, p);
                        es.emplace_back(pv, out.a_id(i, j, r, t));
                        es.emplace_back(pv, out.s);
                    }
                // 4f and 4g: wiring into the main path.
                for (int l = 0; l < 5; ++l) {
                    int lp = (l + 2) % 5, lpp = (l + 3) % 5;
                    es.emplace_back(out.b_id(i, j, r, l, 0), out.u_id(i, 5 * j + l));
                    es.emplace_back(out.b_id(i, j, r, l, 1), out.u_id(i, 5 * j + l));
                    es.emplace_back(out.b_id(i, j, r, l, 0), out.u_id(i, 5 * j + lp));
                    es.emplace_back(out.b_id(i, j, r, l, 1), out.u_id(i, 5 * j + lpp));
                }
            }

    out.graph = Graph::from_edges((int)total, std::move(es));
    if (out.graph.n() != total)
        throw ContractError("build_seth_instance: vertex-count audit failed");
    return out;
}

MixedSolution build_witness_solution(const ConstructionOutput& out,
                                     const std::vector<int>& assignment) {
    if ((int)assignment.size() != out.n_vars)
        throw ContractError("build_witness_solution: assignment arity mismatch");
    for (int v : assignment)
        if (v < 0 || v > 4) throw ContractError("build_witness_solution: value outside 0..4");

    const Graph& g = out.graph;
    MixedSolution sol;
    auto add_edge = [&](int u, int v) {
        int id = g.edge_id(u, v);
        if (id < 0) throw ContractError("build_witness_solution: expected edge missing");
        sol.m.push_back(id);
    };

    // Step 1: one selected vertex per section per variable path.
    for (int i = 1; i <= out.n_vars; ++i) {
        int alpha = assignment[i - 1];
        for (long long j = 0; j < out.sections; ++j) sol.d.push_back(out.u_id(i, 5 * j + alpha));
    }

    // Step 2: maximum matching of the unselected, undominated part of each
    // path (a disjoint union of subpaths), unmatched vertices into D.
    for (int i = 1; i <= out.n_vars; ++i) {
        int alpha = assignment[i - 1];
        auto in_uprime = [&](long long j) {
            if (j < 0 || j >= out.main_len) return false;
            if (j % 5 == alpha) return false;
            if (j > 0 && (j - 1) % 5 == alpha) return false;
            if (j + 1 < out.main_len && (j + 1) % 5 == alpha) return false;
            return true;
        };
        for (long long j = 0; j < out.main_len; ++j) {
            if (!in_uprime(j)) continue;
            if (in_uprime(j + 1)) {
                add_edge(out.u_id(i, j), out.u_id(i, j + 1));
                ++j;  // greedy pairing along the subpath
            } else {
                sol.d.push_back(out.u_id(i, j));
            }
        }
    }

    // Step 3: in each section, a perfect matching from W_j onto the Z sets of
    // the assignments that disagree with the chosen one.
    for (long long j = 0; j < out.sections; ++j) {
        long long jp = j % out.m_constraints;
        // The constraint's agreeing list entry (it exists when the assignment
        // satisfies the instance).
        int chosen = out.agreeing_sigma(jp, assignment);
        if (chosen < 0)
            throw ContractError("build_witness_solution: assignment violates constraint " +
                                std::to_string(jp));
        int t = 0;
        for (int sigma = 0; sigma < out.C; ++sigma) {
            if (sigma == chosen) continue;
            for (int a = 0; a < 2 * out.q; ++a)
                add_edge(out.w_id(j, t++), out.z_id(j, sigma, a / 2, 1 + a % 2));
        }
    }

    // Step 4: in each consistency copy, a perfect matching from A onto the B
    // sets away from the selected value.
    for (int i = 1; i <= out.n_vars; ++i) {
        int alpha = assignment[i - 1];
        for (long long j = 0; j < out.sections; ++j)
            for (int r = 0; r < out.A; ++r) {
                int t = 0;
                for (int l = 0; l < 5; ++l) {
                    if (l == alpha) continue;
                    add_edge(out.a_id(i, j, r, t), out.b_id(i, j, r, l, 0));
                    ++t;
                    add_edge(out.a_id(i, j, r, t), out.b_id(i, j, r, l, 1));
                    ++t;
                }
            }
    }

    // Step 5: the apex.
    sol.d.push_back(out.s);
    sol.normalize();
    return sol;
}

TreeDecomposition emit_path_decomposition(const ConstructionOutput& out) {
    const Graph& g = out.graph;
    std::vector<std::vector<int>> bags;

    std::vector<int> carried;
    for (int i = 1; i <= out.n_vars; ++i) carried.push_back(out.u_id(i, 0));

    for (long long j = 0; j < out.sections; ++j) {
        std::vector<int> base;
        for (int sigma = 0; sigma < out.C; ++sigma)
            for (int a = 0; a < 2 * out.q; ++a) base.push_back(out.z_id(j, sigma, a / 2, 1 + a % 2));
        for (int t = 0; t < 2 * out.q * ((int)out.C - 1); ++t) base.push_back(out.w_id(j, t));

        for (int i = 1; i <= out.n_vars; ++i) {
            std::vector<int> sweep = carried;
            sweep.insert(sweep.end(), base.begin(), base.end());
            for (int t = 1; t <= 4; ++t) sweep.push_back(out.u_id(i, 5 * j + t));
            bags.push_back(sweep);
            for (int r = 0; r < out.A; ++r) {
                std::vector<int> with_q = sweep;
                for (int t = 0; t < 8; ++t) with_q.push_back(out.a_id(i, j, r, t));
                for (int l = 0; l < 5; ++l)
                    for (int w = 0; w < 2; ++w) with_q.push_back(out.b_id(i, j, r, l, w));
                bags.push_back(std::move(with_q));
            }
            // S_{i,j} leaves the bag except its last path vertex.
            for (auto& v : carried)
                if (v == out.u_id(i, 5 * j)) v = out.u_id(i, 5 * j + 4);
        }

        if (j + 1 < out.sections) {
            // 2n transition bags between consecutive sections.
            for (int i = 1; i <= out.n_vars; ++i) {
                std::vector<int> with_next = carried;
                with_next.push_back(out.u_id(i, 5 * (j + 1)));
                bags.push_back(with_next);
                for (auto& v : carried)
                    if (v == out.u_id(i, 5 * j + 4)) v = out.u_id(i, 5 * (j + 1));
                bags.push_back(carried);
            }
        }
    }

    // The apex joins every bag; the leaves hanging off the apex and the
    // pendant sets are re-inserted next to a bag containing their neighbor.
    for (auto& b : bags) b.push_back(out.s);

    std::vector<int> first_bag(g.n(), -1);
    for (int bi = 0; bi < (int)bags.size(); ++bi)
        for (int v : bags[bi])
            if (first_bag[v] < 0) first_bag[v] = bi;

    std::vector<std::vector<int>> insertions(bags.size());
    auto insert_leaf = [&](int leaf, int neighbor) {
        int host = first_bag[neighbor];
        if (host < 0) throw ContractError("emit_path_decomposition: neighbor not in any bag");
        insertions[host].push_back(leaf);
    };
    insert_leaf(out.s1, out.s);
    insert_leaf(out.s2, out.s);
    for (long long j = 0; j < out.sections; ++j)
        for (int t = 0; t < 2 * out.q * ((int)out.C - 1); ++t)
            for (long long p = 0; p < out.pendant_size; ++p)
                insert_leaf(out.w_pendant_id(j, t, p), out.w_id(j, t));
    for (int i = 1; i <= out.n_vars; ++i)
        for (long long j = 0; j < out.sections; ++j)
            for (int r = 0; r < out.A; ++r)
                for (int t = 0; t < 8; ++t)
                    for (long long p = 0; p < out.pendant_size; ++p)
                        insert_leaf(out.a_pendant_id(i, j, r, t, p), out.a_id(i, j, r, t));

    TreeDecomposition td;
    td.n = g.n();
    for (int bi = 0; bi < (int)bags.size(); ++bi) {
        td.bags.push_back(bags[bi]);
        for (int leaf : insertions[bi]) {
            std::vector<int> copy = bags[bi];
            copy.push_back(leaf);
            td.bags.push_back(std::move(copy));
        }
    }
    for (auto& b : td.bags) std::sort(b.begin(), b.end());
    for (int bi = 0; bi + 1 < (int)td.bags.size(); ++bi) td.tree.emplace_back(bi, bi + 1);
    return td;
}

} // namespace mdskit
