#include "mdskit/treewidth.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <queue>
#include <set>
#include <unordered_map>

#include "mdskit/errors.hpp"

namespace mdskit {

int TreeDecomposition::width() const {
    int w = -1;
    for (const auto& b : bags) w = std::max(w, (int)b.size() - 1);
    return w;
}

bool validate_decomposition(const Graph& g, const TreeDecomposition& td, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (td.n != g.n()) return fail("decomposition is for a different vertex count");
    int nb = (int)td.bags.size();
    if (nb == 0) return g.n() == 0 ? true : fail("no bags");
    for (auto [a, b] : td.tree)
        if (a < 0 || a >= nb || b < 0 || b >= nb) return fail("tree edge out of range");
    if ((int)td.tree.size() != nb - 1) return fail("bag tree is not a tree (edge count)");

    // Tree connectivity.
    std::vector<std::vector<int>> bt(nb);
    for (auto [a, b] : td.tree) {
        bt[a].push_back(b);
        bt[b].push_back(a);
    }
    {
        std::vector<char> seen(nb, 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        int cnt = 1;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : bt[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    ++cnt;
                    q.push(y);
                }
        }
        if (cnt != nb) return fail("bag tree is not connected");
    }

    std::vector<std::vector<int>> bags_of(g.n());
    for (int i = 0; i < nb; ++i)
        for (int v : td.bags[i]) {
            if (v < 0 || v >= g.n()) return fail("bag vertex out of range");
            bags_of[v].push_back(i);
        }
    for (int v = 0; v < g.n(); ++v)
        if (bags_of[v].empty()) return fail("vertex " + std::to_string(v) + " in no bag");

    for (auto [u, v] : g.edges()) {
        bool found = false;
        const auto& smaller = bags_of[u].size() <= bags_of[v].size() ? bags_of[u] : bags_of[v];
        int other = bags_of[u].size() <= bags_of[v].size() ? v : u;
        for (int b : smaller)
            if (std::binary_search(td.bags[b].begin(), td.bags[b].end(), other)) {
                found = true;
                break;
            }
        if (!found)
            return fail("edge (" + std::to_string(u) + "," + std::to_string(v) + ") in no bag");
    }

    // Per-vertex connectedness of the bag set.
    for (int v = 0; v < g.n(); ++v) {
        std::set<int> want(bags_of[v].begin(), bags_of[v].end());
        std::queue<int> q;
        q.push(bags_of[v][0]);
        std::set<int> seen{bags_of[v][0]};
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : bt[x])
                if (want.count(y) && !seen.count(y)) {
                    seen.insert(y);
                    q.push(y);
                }
        }
        if (seen.size() != want.size())
            return fail("bags of vertex " + std::to_string(v) + " are not connected");
    }
    return true;
}

TreeDecomposition lift_to_incidence(const TreeDecomposition& td, const Graph& g) {
    std::string why;
    if (!validate_decomposition(g, td, &why))
        throw InputError("lift_to_incidence: invalid decomposition: " + why);

    TreeDecomposition out;
    out.n = g.n() + g.m();
    out.bags = td.bags;
    out.tree = td.tree;
    // Sorted bags let us binary-search the host bag for each edge.
    for (auto& b : out.bags) std::sort(b.begin(), b.end());
    int original_bags = (int)td.bags.size();
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edge(e);
        int host = -1;
        for (int i = 0; i < original_bags; ++i)
            if (std::binary_search(out.bags[i].begin(), out.bags[i].end(), u) &&
                std::binary_search(out.bags[i].begin(), out.bags[i].end(), v)) {
                host = i;
                break;
            }
        // host >= 0 because td covers every edge.
        out.bags.push_back({u, v, g.n() + e});
        out.tree.emplace_back(host, (int)out.bags.size() - 1);
    }
    return out;
}

namespace {

struct NiceBuilder {
    std::vector<NiceNode> nodes;

    int add(NiceNode n) {
        nodes.push_back(std::move(n));
        return (int)nodes.size() - 1;
    }
    // Chain of introduces from empty up to `bag`; returns top node index.
    int build_leaf_chain(const std::vector<int>& bag) {
        int cur = add({NiceNode::Leaf, -1, -1, -1, -1, {}});
        std::vector<int> have;
        for (int v : bag) {
            have.push_back(v);
            cur = add({NiceNode::IntroduceVertex, v, -1, cur, -1, have});
        }
        return cur;
    }
    // Morph from bag `from` (node `cur`) to bag `to`: forgets then introduces.
    int morph(int cur, std::vector<int> from, const std::vector<int>& to) {
        for (int v : std::vector<int>(from)) {
            if (std::binary_search(to.begin(), to.end(), v)) continue;
            from.erase(std::find(from.begin(), from.end(), v));
            cur = add({NiceNode::Forget, v, -1, cur, -1, from});
        }
        for (int v : to) {
            if (std::binary_search(from.begin(), from.end(), v)) continue;
            from.insert(std::upper_bound(from.begin(), from.end(), v), v);
            cur = add({NiceNode::IntroduceVertex, v, -1, cur, -1, from});
        }
        return cur;
    }
};

} // namespace

static NiceDecomposition make_nice_skeleton(const TreeDecomposition& td) {
    NiceDecomposition out;
    NiceBuilder nb;

    if (td.bags.empty()) {
        nb.add({NiceNode::Leaf, -1, -1, -1, -1, {}});
        out.nodes = std::move(nb.nodes);
        out.width = 0;
        return out;
    }

    int nbags = (int)td.bags.size();
    std::vector<std::vector<int>> bags = td.bags;
    for (auto& b : bags) std::sort(b.begin(), b.end());
    std::vector<std::vector<int>> bt(nbags);
    for (auto [a, b] : td.tree) {
        bt[a].push_back(b);
        bt[b].push_back(a);
    }

    // Post-order over the rooted bag tree (root 0), iterative.
    // For each bag produce a nice node whose bag equals it.
    std::vector<int> order, parent(nbags, -1);
    {
        std::vector<int> stack{0};
        std::vector<char> seen(nbags, 0);
        seen[0] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            order.push_back(x);
            for (int y : bt[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    parent[y] = x;
                    stack.push_back(y);
                }
        }
        std::reverse(order.begin(), order.end());  // children before parents
    }

    std::vector<int> top_node(nbags, -1);
    for (int b : order) {
        std::vector<int> kids;
        for (int y : bt[b])
            if (parent[y] == b) kids.push_back(y);
        if (kids.empty()) {
            top_node[b] = nb.build_leaf_chain(bags[b]);
            continue;
        }
        // Morph each child's top to this bag, then join pairwise.
        int cur = -1;
        for (int kid : kids) {
            int morphed = nb.morph(top_node[kid], bags[kid], bags[b]);
            if (cur == -1) {
                cur = morphed;
            } else {
                cur = nb.add({NiceNode::Join, -1, -1, cur, morphed, bags[b]});
            }
        }
        top_node[b] = cur;
    }
    // Forget everything above the root bag.
    int cur = nb.morph(top_node[0], bags[0], {});
    (void)cur;

    // Splice introduce-edge nodes: each edge at the topmost (closest-to-root)
    // node whose bag holds both endpoints. Nodes are in post-order, so the
    // topmost such node is the last one on the path... we compute depths.
    out.nodes = std::move(nb.nodes);

    int width = 0;
    for (const auto& n : out.nodes) width = std::max(width, (int)n.bag.size() - 1);
    out.width = std::max(width, 0);
    return out;
}

namespace {

// Depth of each nice node from the root (parents after children in storage).
std::vector<int> node_depths(const std::vector<NiceNode>& nodes) {
    int root = (int)nodes.size() - 1;
    std::vector<int> depth(nodes.size(), -1);
    depth[root] = 0;
    for (int i = root; i >= 0; --i) {
        if (depth[i] < 0) continue;
        const auto& n = nodes[i];
        if (n.child1 >= 0) depth[n.child1] = depth[i] + 1;
        if (n.child2 >= 0) depth[n.child2] = depth[i] + 1;
    }
    return depth;
}

} // namespace

// -------- DP over a nice decomposition with introduce-edge nodes --------

namespace {

// Labels: 0 SEL, 1 D1_OK, 2 D1_PEND, 3 D2_OK, 4 D2_PEND.
enum : int { SEL = 0, D1_OK = 1, D1_PEND = 2, D2_OK = 3, D2_PEND = 4 };

inline int label_class(int l) { return l == SEL ? 0 : (l <= D1_PEND ? 1 : 2); }
inline bool label_ok(int l) { return l == SEL || l == D1_OK || l == D2_OK; }

struct Entry {
    int count = 0;
    uint64_t pred1 = 0, pred2 = 0;  // child state keys
    bool has2 = false;
};

using Table = std::unordered_map<uint64_t, Entry>;

inline int digit(uint64_t key, int pos) { return (int)((key >> (3 * pos)) & 7); }
inline uint64_t with_digit(uint64_t key, int pos, int val) {
    return (key & ~(uint64_t{7} << (3 * pos))) | ((uint64_t)val << (3 * pos));
}

void relax(Table& t, uint64_t key, const Entry& e) {
    auto it = t.find(key);
    if (it == t.end() || e.count < it->second.count) t[key] = e;
}

} // namespace

std::vector<int> distance2_dp(const Graph& h, const NiceDecomposition& nd,
                              long long* table_size_out) {
    // Basic structural checks: every vertex introduced, every edge introduced
    // exactly once, bags small enough for the 3-bit packing.
    {
        std::vector<int> edge_seen(h.m(), 0), vertex_seen(h.n(), 0);
        for (const auto& n : nd.nodes) {
            if ((int)n.bag.size() > 21)
                throw InputError("distance2_dp: bag too large for packed keys");
            if (n.kind == NiceNode::IntroduceEdge) {
                int id = h.edge_id(n.a, n.b);
                if (id < 0) throw InputError("distance2_dp: introduce-edge not an edge of h");
                ++edge_seen[id];
            }
            if (n.kind == NiceNode::IntroduceVertex) {
                if (n.a < 0 || n.a >= h.n())
                    throw InputError("distance2_dp: introduced vertex out of range");
                vertex_seen[n.a] = 1;
            }
        }
        for (int e = 0; e < h.m(); ++e)
            if (edge_seen[e] != 1)
                throw InputError("distance2_dp: edge introduced " + std::to_string(edge_seen[e]) +
                                 " times");
        for (int v = 0; v < h.n(); ++v)
            if (h.n() > 0 && !vertex_seen[v])
                throw InputError("distance2_dp: vertex never introduced");
    }

    int nn = (int)nd.nodes.size();
    std::vector<Table> tables(nn);

    auto pow5 = [](int e) {
        long long p = 1;
        while (e-- > 0) p *= 5;
        return p;
    };
    long long max_table = 0;

    for (int i = 0; i < nn; ++i) {
        const NiceNode& node = nd.nodes[i];
        Table& t = tables[i];
        switch (node.kind) {
            case NiceNode::Leaf:
                t[0] = Entry{0, 0, 0, false};
                break;
            case NiceNode::IntroduceVertex: {
                const Table& ct = tables[node.child1];
                int pos = (int)(std::lower_bound(node.bag.begin(), node.bag.end(), node.a) -
                                node.bag.begin());
                for (const auto& [ckey, ce] : ct) {
                    // Re-pack child key around the inserted position.
                    uint64_t low = ckey & ((uint64_t{1} << (3 * pos)) - 1);
                    uint64_t high = (ckey >> (3 * pos)) << (3 * (pos + 1));
                    uint64_t base = low | high;
                    for (int l : {SEL, D1_PEND, D2_PEND}) {
                        Entry e{ce.count + (l == SEL ? 1 : 0), ckey, 0, false};
                        relax(t, with_digit(base, pos, l), e);
                    }
                }
                break;
            }
            case NiceNode::IntroduceEdge: {
                const Table& ct = tables[node.child1];
                int pa = (int)(std::lower_bound(node.bag.begin(), node.bag.end(), node.a) -
                               node.bag.begin());
                int pb = (int)(std::lower_bound(node.bag.begin(), node.bag.end(), node.b) -
                               node.bag.begin());
                for (const auto& [ckey, ce] : ct) {
                    uint64_t key = ckey;
                    int la = digit(key, pa), lb = digit(key, pb);
                    // The new edge can witness a pending label when the other
                    // endpoint sits one distance class lower.
                    if (la == D1_PEND && lb == SEL) key = with_digit(key, pa, D1_OK);
                    if (la == D2_PEND && label_class(lb) == 1) key = with_digit(key, pa, D2_OK);
                    la = digit(key, pa);
                    if (lb == D1_PEND && la == SEL) key = with_digit(key, pb, D1_OK);
                    if (lb == D2_PEND && label_class(la) == 1) key = with_digit(key, pb, D2_OK);
                    relax(t, key, Entry{ce.count, ckey, 0, false});
                }
                break;
            }
            case NiceNode::Forget: {
                const Table& ct = tables[node.child1];
                const auto& cbag = nd.nodes[node.child1].bag;
                int pos = (int)(std::lower_bound(cbag.begin(), cbag.end(), node.a) - cbag.begin());
                for (const auto& [ckey, ce] : ct) {
                    if (!label_ok(digit(ckey, pos))) continue;
                    uint64_t low = ckey & ((uint64_t{1} << (3 * pos)) - 1);
                    uint64_t high = (ckey >> (3 * (pos + 1))) << (3 * pos);
                    relax(t, low | high, Entry{ce.count, ckey, 0, false});
                }
                break;
            }
            case NiceNode::Join: {
                const Table& t1 = tables[node.child1];
                const Table& t2 = tables[node.child2];
                int bag_size = (int)node.bag.size();
                // Group child-2 states by class vector for agreement lookup.
                std::unordered_map<uint64_t, std::vector<uint64_t>> by_class;
                for (const auto& [k2, e2] : t2) {
                    uint64_t cls = 0;
                    for (int p = 0; p < bag_size; ++p)
                        cls = with_digit(cls, p, label_class(digit(k2, p)));
                    by_class[cls].push_back(k2);
                }
                for (const auto& [k1, e1] : t1) {
                    uint64_t cls = 0;
                    int sel = 0;
                    for (int p = 0; p < bag_size; ++p) {
                        int c = label_class(digit(k1, p));
                        cls = with_digit(cls, p, c);
                        sel += c == 0;
                    }
                    auto it = by_class.find(cls);
                    if (it == by_class.end()) continue;
                    for (uint64_t k2 : it->second) {
                        const Entry& e2 = t2.at(k2);
                        uint64_t merged = 0;
                        for (int p = 0; p < bag_size; ++p) {
                            int l1 = digit(k1, p), l2 = digit(k2, p);
                            int l = l1;
                            if (label_class(l1) != 0) {
                                // OK wins over PEND within the same class.
                                bool ok = (l1 == D1_OK || l1 == D2_OK) ||
                                          (l2 == D1_OK || l2 == D2_OK);
                                if (label_class(l1) == 1) l = ok ? D1_OK : D1_PEND;
                                else l = ok ? D2_OK : D2_PEND;
                            }
                            merged = with_digit(merged, p, l);
                        }
                        relax(t, merged, Entry{e1.count + e2.count - sel, k1, k2, true});
                    }
                }
                break;
            }
        }
        if ((long long)t.size() > pow5((int)node.bag.size()))
            throw ContractError("distance2_dp: table exceeds 5^|bag| states");
        max_table = std::max(max_table, (long long)t.size());
    }
    if (table_size_out) *table_size_out = max_table;

    const Table& root = tables[nn - 1];
    auto best = root.find(0);
    if (best == root.end()) throw InputError("distance2_dp: no feasible labeling at root");

    // Backtrack: walk parent-to-child recording SEL labels at introduces.
    std::vector<int> solution;
    std::vector<std::pair<int, uint64_t>> stack{{nn - 1, 0}};
    while (!stack.empty()) {
        auto [i, key] = stack.back();
        stack.pop_back();
        const NiceNode& node = nd.nodes[i];
        const Entry& e = tables[i].at(key);
        switch (node.kind) {
            case NiceNode::Leaf:
                break;
            case NiceNode::IntroduceVertex: {
                int pos = (int)(std::lower_bound(node.bag.begin(), node.bag.end(), node.a) -
                                node.bag.begin());
                if (digit(key, pos) == SEL) solution.push_back(node.a);
                stack.emplace_back(node.child1, e.pred1);
                break;
            }
            case NiceNode::Join:
                stack.emplace_back(node.child1, e.pred1);
                stack.emplace_back(node.child2, e.pred2);
                break;
            default:
                stack.emplace_back(node.child1, e.pred1);
                break;
        }
    }
    std::sort(solution.begin(), solution.end());
    solution.erase(std::unique(solution.begin(), solution.end()), solution.end());
    return solution;
}

TreeDecomposition heuristic_decomposition(const Graph& g) {
    int n = g.n();
    TreeDecomposition td;
    td.n = n;
    if (n == 0) return td;

    std::vector<std::set<int>> work(n);
    for (auto [u, v] : g.edges()) {
        work[u].insert(v);
        work[v].insert(u);
    }
    std::vector<char> gone(n, 0);
    std::vector<int> order;
    std::vector<std::vector<int>> elim_bag(n);

    for (int step = 0; step < n; ++step) {
        // Min fill-in, then min degree, then lowest id.
        int best = -1;
        long long best_fill = -1;
        int best_deg = -1;
        for (int v = 0; v < n; ++v) {
            if (gone[v]) continue;
            long long fill = 0;
            for (auto it = work[v].begin(); it != work[v].end(); ++it)
                for (auto jt = std::next(it); jt != work[v].end(); ++jt)
                    if (!work[*it].count(*jt)) ++fill;
            int deg = (int)work[v].size();
            if (best == -1 || fill < best_fill || (fill == best_fill && deg < best_deg)) {
                best = v;
                best_fill = fill;
                best_deg = deg;
            }
        }
        order.push_back(best);
        elim_bag[best].assign(work[best].begin(), work[best].end());
        elim_bag[best].push_back(best);
        std::sort(elim_bag[best].begin(), elim_bag[best].end());
        // Make the neighborhood a clique, then remove.
        for (int a : work[best])
            for (int b : work[best])
                if (a < b) {
                    work[a].insert(b);
                    work[b].insert(a);
                }
        for (int a : work[best]) work[a].erase(best);
        work[best].clear();
        gone[best] = 1;
    }

    // Bag i belongs to order[i]; connect to the bag of the first-eliminated
    // later neighbor.
    std::vector<int> elim_pos(n);
    for (int i = 0; i < n; ++i) elim_pos[order[i]] = i;
    td.bags.resize(n);
    for (int i = 0; i < n; ++i) td.bags[i] = elim_bag[order[i]];
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        int nxt = -1, nxt_pos = n;
        for (int w : elim_bag[v])
            if (w != v && elim_pos[w] > i && elim_pos[w] < nxt_pos) {
                nxt_pos = elim_pos[w];
                nxt = w;
            }
        if (nxt >= 0) td.tree.emplace_back(i, elim_pos[nxt]);
    }
    // Connect any remaining roots (disconnected graphs) into one tree.
    {
        std::vector<int> comp(n, -1);
        std::vector<std::vector<int>> bt(n);
        for (auto [a, b] : td.tree) {
            bt[a].push_back(b);
            bt[b].push_back(a);
        }
        int roots = -1;
        for (int i = 0; i < n; ++i) {
            if (comp[i] != -1) continue;
            std::queue<int> q;
            q.push(i);
            comp[i] = i;
            while (!q.empty()) {
                int x = q.front();
                q.pop();
                for (int y : bt[x])
                    if (comp[y] == -1) {
                        comp[y] = i;
                        q.push(y);
                    }
            }
            if (roots >= 0) td.tree.emplace_back(roots, i);
            roots = i;
        }
    }
    return td;
}

MixedSolution solve_treewidth(const Graph& g, const std::optional<TreeDecomposition>& td_in,
                              TreewidthStats* stats) {
    auto t0 = std::chrono::steady_clock::now();
    TreeDecomposition td = td_in ? *td_in : heuristic_decomposition(g);
    if (td_in) {
        std::string why;
        if (!validate_decomposition(g, td, &why))
            throw InputError("solve_treewidth: invalid decomposition: " + why);
    }

    IncidenceGraph inc = incidence_graph(g);
    TreeDecomposition lifted = lift_to_incidence(td, g);
    NiceDecomposition nd = make_nice(lifted, inc.graph);
    long long max_table = 0;
    std::vector<int> dz = distance2_dp(inc.graph, nd, &max_table);

    MixedSolution sol;
    for (int v : dz)
        (inc.is_original_vertex(v) ? sol.d : sol.m).push_back(inc.is_original_vertex(v)
                                                                  ? v
                                                                  : inc.edge_of(v));
    sol.normalize();
    if (stats) {
        stats->width_used = lifted.width();
        stats->dp_nodes = (long long)nd.nodes.size();
        stats->max_table = max_table;
        stats->best_size = sol.size();
        stats->wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    }
    return sol;
}

NiceDecomposition make_nice(const TreeDecomposition& td, const Graph& g) {
    NiceDecomposition nd = make_nice_skeleton(td);
    // Splice an introduce-edge node above the topmost node whose bag holds
    // both endpoints.
    auto depth = node_depths(nd.nodes);
    std::vector<int> parent(nd.nodes.size(), -1);
    for (int i = 0; i < (int)nd.nodes.size(); ++i) {
        if (nd.nodes[i].child1 >= 0) parent[nd.nodes[i].child1] = i;
        if (nd.nodes[i].child2 >= 0) parent[nd.nodes[i].child2] = i;
    }
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edge(e);
        int host = -1;
        for (int i = 0; i < (int)nd.nodes.size(); ++i) {
            const auto& bag = nd.nodes[i].bag;
            if (std::binary_search(bag.begin(), bag.end(), u) &&
                std::binary_search(bag.begin(), bag.end(), v) &&
                (host == -1 || depth[i] < depth[host]))
                host = i;
        }
        if (host == -1) throw InputError("make_nice: edge not covered by any bag");
        NiceNode edge_node{NiceNode::IntroduceEdge, u, v, host, -1, nd.nodes[host].bag};
        nd.nodes.push_back(edge_node);
        int en = (int)nd.nodes.size() - 1;
        int par = parent[host];
        if (par >= 0) {
            if (nd.nodes[par].child1 == host) nd.nodes[par].child1 = en;
            else nd.nodes[par].child2 = en;
        }
        parent.push_back(par);
        parent[host] = en;
        depth.push_back(depth[host]);  // same depth bucket keeps later splices above
    }

    // Re-linearize to post-order (children before parents).
    int root = -1;
    for (int i = 0; i < (int)nd.nodes.size(); ++i)
        if (parent[i] < 0) root = i;
    std::vector<NiceNode> ordered;
    std::vector<int> remap(nd.nodes.size(), -1);
    std::vector<std::pair<int, bool>> stack{{root, false}};
    while (!stack.empty()) {
        auto [i, expanded] = stack.back();
        stack.pop_back();
        if (expanded) {
            NiceNode n = nd.nodes[i];
            if (n.child1 >= 0) n.child1 = remap[n.child1];
            if (n.child2 >= 0) n.child2 = remap[n.child2];
            remap[i] = (int)ordered.size();
            ordered.push_back(std::move(n));
        } else {
            stack.emplace_back(i, true);
            if (nd.nodes[i].child1 >= 0) stack.emplace_back(nd.nodes[i].child1, false);
            if (nd.nodes[i].child2 >= 0) stack.emplace_back(nd.nodes[i].child2, false);
        }
    }
    nd.nodes = std::move(ordered);
    return nd;
}

} // namespace mdskit
