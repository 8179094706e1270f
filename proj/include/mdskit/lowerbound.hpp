#ifndef MDSKIT_LOWERBOUND_HPP
#define MDSKIT_LOWERBOUND_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "mdskit/graph.hpp"
#include "mdskit/treewidth.hpp"

namespace mdskit {

/// One q-CSP-5 constraint: an ordered variable tuple (0-based ids) and its
/// list of allowed assignments over {0..4}. After normalization every
/// constraint has exactly q variables and exactly 5^q - 1 listed assignments
/// (repeats allowed).
struct Csp5Constraint {
    std::vector<int> vars;
    std::vector<std::vector<int>> assignments;
};

struct Csp5Instance {
    int num_vars = 0;
    int arity = 1;  // q
    std::vector<Csp5Constraint> constraints;
};

/// Pads every constraint to arity q (reusing uninvolved variables, adding
/// fresh ones only when the instance runs out) and every assignment list to
/// exactly 5^q - 1 entries. Constraints that become always-satisfied are
/// dropped. Satisfiability is preserved.
Csp5Instance normalize_csp(Csp5Instance csp);

bool csp_satisfied_by(const Csp5Instance& csp, const std::vector<int>& assignment);

/// The pathwidth lower-bound gadget graph together with its budget and the
/// id maps for every gadget symbol. Canonical id order: main paths, then
/// per-section checker blocks, then consistency-gadget copies, then the apex
/// and its two leaves.
struct ConstructionOutput {
    Graph graph;
    std::vector<Csp5Constraint> constraints;  // the normalized source
    int n_vars = 0, m_constraints = 0, q = 1;
    long long F = 0, C = 0, k = 0;
    int A = 12;
    long long pendant_size = 0;  // 2k+1, or the override
    long long sections = 0;      // F * m

    long long main_len = 0;      // 5 F m
    long long h_block = 0;       // ids of section j's checker start at h_base + j*h_block
    long long h_base = 0;
    long long q_block = 0;       // per consistency-gadget copy
    long long q_base = 0;
    int s = 0, s1 = 0, s2 = 0;

    // Main path vertex u_{i,j}; i in 1..n, j in 0..5Fm-1.
    int u_id(int i, long long j) const;
    // Z vertex of section j, assignment list position sigma, involved
    // variable slot t (0-based), which in {1,2}.
    int z_id(long long j, int sigma, int t, int which) const;
    int w_id(long long j, int t) const;                   // t < 2q(C-1)
    int w_pendant_id(long long j, int t, long long p) const;
    // Consistency gadget copy r (0-based, r < A) for variable i, section j.
    int a_id(int i, long long j, int r, int t) const;     // t < 8
    int b_id(int i, long long j, int r, int l, int which) const;  // l < 5, which in {0,1}
    int a_pendant_id(int i, long long j, int r, int t, long long p) const;

    /// List position of the first assignment of constraint jp matching the
    /// given full assignment, or -1.
    int agreeing_sigma(long long jp, const std::vector<int>& assignment) const;

    long long expected_vertex_count() const;
};

/// Builds the gadget graph per the construction items. `pendant_override`,
/// when set, replaces the 2k+1 pendant set size (non-faithful desk-scale
/// mode, recorded in the output).
ConstructionOutput build_seth_instance(const Csp5Instance& csp,
                                       std::optional<long long> pendant_override = std::nullopt);

/// The witness solution for a satisfying assignment (values 0..4 per
/// variable, 0-based variable ids). ContractError when the assignment does
/// not satisfy the instance.
MixedSolution build_witness_solution(const ConstructionOutput& out,
                                     const std::vector<int>& assignment);

/// Path decomposition with the apex in every bag, per-section sweeps, and
/// leaf re-insertion.
TreeDecomposition emit_path_decomposition(const ConstructionOutput& out);

} // namespace mdskit

#endif
