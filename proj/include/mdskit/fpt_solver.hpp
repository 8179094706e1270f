#ifndef MDSKIT_FPT_SOLVER_HPP
#define MDSKIT_FPT_SOLVER_HPP

#include <optional>
#include <vector>

#include "mdskit/graph.hpp"

namespace mdskit {

enum class FptRule {
    Sanity, R1, B1, B2_1, B2_2, B3_1, B3_2, B3_3, B4_1, B4_2, B5, B6, B7, None
};
const char* to_string(FptRule r);

struct FptContext {
    const Graph* g = nullptr;
    std::vector<Bitset> adj;
    int k = 0;
    FptContext(const Graph& graph, int budget);
};

/// Partial assignment (D_f, P_f) with budget k; U = undecided vertices,
/// U* = U \ N(D_f) the undecided vertices not yet dominated.
struct FptState {
    const FptContext* ctx = nullptr;
    Bitset df, pf;
    Bitset u, ustar;

    static FptState root(const FptContext& ctx);
    void recompute_derived();
    bool consistent() const;

    int d_u(int v) const { return ctx->adj[v].count_and(u); }
    int d_ustar(int v) const { return ctx->adj[v].count_and(ustar); }
    /// Private-neighbor candidates of a D_f vertex: undecided neighbors whose
    /// only D_f neighbor is w itself.
    int private_candidates(int w) const;
};

/// l = 2k - 2|D_f| - |P_f|.
int measure_fpt(const FptState& st);

/// Accept/reject: rejects when the decided cost exceeds k or some D_f vertex
/// has at most one private-neighbor candidate left.
bool sanity_check(const FptState& st);

/// Both v1 and v2 could enter D: each keeps two undominated private
/// candidates avoiding the other's neighborhood.
bool is_feasible_pair(const FptState& st, int v1, int v2);

/// vi keeps two private candidates avoiding every other neighbor of u
/// (u has d_U(u) = 4, vi in N_U(u)).
bool is_compatible(const FptState& st, int u, int vi);

/// First applicable rule; None implies U* is empty and G[U] has max degree 1.
FptRule select_rule_fpt(const FptState& st);

/// The rule's child list, sanity-filtered. `prefilter_count` receives the
/// child count before the sanity filter when given.
std::vector<FptState> expand_fpt(const FptState& st, FptRule rule,
                                 int* prefilter_count = nullptr);

/// Minimum completion respecting D_f <= D, P_f <= V(M), via a maximum
/// matching on the collapsed graph over P_f and the G[U] matching edges.
/// Requires U* empty and max degree of G[U] at most 1.
std::optional<MixedSolution> complete_fpt(const Graph& g, const FptState& st);

struct FptStats {
    long long branches = 0;
    long long leaves = 0;
    long long sanity_rejections = 0;
    long long completions = 0;
    int best_size = -1;  // -1 when no solution of size <= k exists
    long long wall_ms = 0;
};

struct FptOptions {
    bool optimal = false;        // keep searching for the minimum over all leaves
    bool verify_leaves = false;  // re-validate every feasible completion
};

/// A valid mds of size <= k if one exists (isolated vertices are forced into
/// D and decrement k), else nullopt.
std::optional<MixedSolution> solve_fpt(const Graph& g, int k, const FptOptions& options = {},
                                       FptStats* stats = nullptr);

} // namespace mdskit

#endif
