#ifndef MDSKIT_EXACT_SOLVER_HPP
#define MDSKIT_EXACT_SOLVER_HPP

#include <optional>
#include <vector>

#include "mdskit/graph.hpp"

namespace mdskit {

enum class ExactRule { R1, R2, B1, B2_1, B2_2, B3_1, B3_2, B4, B5, B6, None };
const char* to_string(ExactRule r);

/// Per-cover search context: the graph, its adjacency bitsets, the minimal
/// vertex cover C and its complement Z (an independent set).
struct ExactContext {
    const Graph* g = nullptr;
    std::vector<Bitset> adj;
    Bitset cover, zset;
    ExactContext(const Graph& graph, const std::vector<int>& cover_vertices);
};

/// Partial assignment (D_f, P_f, P_f') plus the cached undecided-undominated
/// set U = V \ (D_f u P_f u P_f' u (N(D_f) n Z)) and its halves U_C, U_Z.
struct ExactState {
    const ExactContext* ctx = nullptr;
    Bitset df, pf, pfz;
    Bitset u, uc, uz;

    static ExactState root(const ExactContext& ctx);
    void recompute_derived();
    bool consistent() const;  // disjointness + cache freshness

    int d_uz(int v) const { return ctx->adj[v].count_and(uz); }
    int d_uc(int v) const { return ctx->adj[v].count_and(uc); }
};

/// |{u in U_C : d_UZ(u) >= 2}| + |{v in U_Z : d_UC(v) >= 1}|.
int measure_l(const ExactState& st);

/// First applicable rule in priority order; None implies U is empty.
ExactRule select_rule(const ExactState& st);

/// The rule's child list; `rule` must equal select_rule(st).
std::vector<ExactState> expand(const ExactState& st, ExactRule rule);

/// Step-3 completion: D_f plus a minimum edge cover of G[P_f u P_f'];
/// infeasible (nullopt) when that induced subgraph has an isolated vertex.
/// Requires U = empty.
std::optional<MixedSolution> complete_exact(const Graph& g, const ExactState& st);

struct ExactStats {
    long long covers = 0;
    long long branches = 0;  // expand calls
    long long leaves = 0;
    long long completions = 0;
    long long infeasible_leaves = 0;
    long long pruned = 0;
    long long max_cover_leaves = 0;
    int max_depth = 0;
    int best_size = -1;
    long long wall_ms = 0;
};

struct ExactOptions {
    bool prune = true;          // incumbent bound; --faithful turns this off
    int threads = 1;            // cover-level parallelism
    bool verify_leaves = false; // re-validate every feasible completion
};

/// Minimum mds: enumerate minimal vertex covers, branch with the rules,
/// complete each leaf via minimum edge cover; best solution over all covers.
MixedSolution solve_exact(const Graph& g, const ExactOptions& options = {},
                          ExactStats* stats = nullptr);

} // namespace mdskit

#endif
