// Command-line front end: solve / validate / gen / bench / reduce-eds.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "mdskit/enumerate.hpp"
#include "mdskit/errors.hpp"
#include "mdskit/exact_solver.hpp"
#include "mdskit/fpt_solver.hpp"
#include "mdskit/generators.hpp"
#include "mdskit/io.hpp"
#include "mdskit/lowerbound.hpp"
#include "mdskit/oracle.hpp"
#include "mdskit/transforms.hpp"
#include "mdskit/treewidth.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

int env_threads() {
    const char* v = std::getenv("MDSKIT_THREADS");
    if (!v) return 1;
    int t = std::atoi(v);
    return t >= 1 ? t : 1;
}

struct SolveOutcome {
    bool has_solution = false;
    mdskit::MixedSolution sol;
    json stats;
    long long wall_ms = 0;
};

SolveOutcome run_algo(const mdskit::Graph& g, const std::string& algo, int k, bool faithful,
                      bool optimal, const std::optional<mdskit::TreeDecomposition>& td) {
    using namespace mdskit;
    SolveOutcome out;
    if (algo == "brute") {
        auto t0 = std::chrono::steady_clock::now();
        out.sol = brute_force_mds(g);
        out.has_solution = true;
        out.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        out.stats = {{"best_size", out.sol.size()}, {"wall_ms", out.wall_ms}};
    } else if (algo == "partition") {
        auto t0 = std::chrono::steady_clock::now();
        OracleLimits lim;
        out.sol = partition_oracle(g, lim);
        out.has_solution = true;
        out.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        out.stats = {{"best_size", out.sol.size()}, {"wall_ms", out.wall_ms}};
    } else if (algo == "exact") {
        ExactOptions opt;
        opt.prune = !faithful;
        opt.threads = env_threads();
        ExactStats st;
        out.sol = solve_exact(g, opt, &st);
        out.has_solution = true;
        out.wall_ms = st.wall_ms;
        out.stats = {{"covers", st.covers},
                     {"branches", st.branches},
                     {"leaves", st.leaves},
                     {"completions", st.completions},
                     {"infeasible_leaves", st.infeasible_leaves},
                     {"max_depth", st.max_depth},
                     {"best_size", st.best_size},
                     {"wall_ms", st.wall_ms}};
    } else if (algo == "fpt") {
        FptOptions opt;
        opt.optimal = optimal;
        FptStats st;
        auto sol = solve_fpt(g, k, opt, &st);
        out.has_solution = sol.has_value();
        if (sol) out.sol = *sol;
        out.wall_ms = st.wall_ms;
        out.stats = {{"branches", st.branches},
                     {"leaves", st.leaves},
                     {"sanity_rejections", st.sanity_rejections},
                     {"completions", st.completions},
                     {"best_size", st.best_size},
                     {"wall_ms", st.wall_ms}};
    } else if (algo == "treewidth") {
        TreewidthStats st;
        out.sol = solve_treewidth(g, td, &st);
        out.has_solution = true;
        out.wall_ms = st.wall_ms;
        out.stats = {{"width_used", st.width_used},
                     {"dp_nodes", st.dp_nodes},
                     {"max_table", st.max_table},
                     {"best_size", st.best_size},
                     {"wall_ms", st.wall_ms}};
    } else {
        throw mdskit::InputError("unknown algorithm: " + algo);
    }
    return out;
}

int cmd_solve(const std::string& path, const std::string& algo, int k, bool faithful, bool optimal,
              const std::string& td_path) {
    using namespace mdskit;
    Graph g = load_graph_file(path);
    std::optional<TreeDecomposition> td;
    if (!td_path.empty()) {
        std::ifstream in(td_path);
        if (!in) throw InputError("cannot open file: " + td_path);
        td = parse_td(in);
    }
    SolveOutcome out = run_algo(g, algo, k, faithful, optimal, td);

    json report = {{"algo", algo}, {"instance", path}, {"wall_ms", out.wall_ms},
                   {"stats", out.stats}};
    if (!out.has_solution) {
        report["size"] = "none";
        report["valid"] = nullptr;
        std::cout << "s mds none\n" << report.dump() << "\n";
        return 1;
    }
    bool valid = validate_mds(g, out.sol).valid;  // never trusted from the solver
    report["size"] = out.sol.size();
    report["valid"] = valid;
    print_solution(std::cout, g, out.sol);
    std::cout << report.dump() << "\n";
    if (!valid) {
        std::cerr << "error: solver returned an invalid solution\n";
        return 3;
    }
    return 0;
}

int cmd_validate(const std::string& graph_path, const std::string& sol_path) {
    using namespace mdskit;
    Graph g = load_graph_file(graph_path);
    std::ifstream in(sol_path);
    if (!in) throw InputError("cannot open file: " + sol_path);
    MixedSolution sol = parse_solution(in, g);
    ValidationReport rep = validate_mds(g, sol);
    if (rep.valid) {
        std::cout << "valid\n";
        return 0;
    }
    for (const auto& v : rep.violations) std::cout << violation_message(g, v) << "\n";
    if (rep.truncated) std::cout << "... (more violations suppressed)\n";
    return 1;
}

int cmd_reduce_eds(const std::string& path, const std::string& out_path) {
    using namespace mdskit;
    Graph g = load_graph_file(path);
    Graph reduced = reduce_eds_to_mds(g);
    std::ostringstream ss;
    ss << "c eds-to-mds reduction of " << path << "\n";
    print_graph(ss, reduced);
    if (out_path.empty())
        std::cout << ss.str();
    else
        save_text_file(out_path, ss.str());
    return 0;
}

int cmd_gen(const std::vector<std::string>& spec, uint64_t seed, long long pendant,
            const std::string& out_path) {
    using namespace mdskit;
    if (spec.empty()) throw InputError("gen: missing generator kind");
    const std::string& kind = spec[0];
    auto need = [&](size_t k) {
        if (spec.size() != k + 1)
            throw InputError("gen " + kind + ": expected " + std::to_string(k) + " argument(s)");
    };

    if (kind == "seth") {
        need(1);
        std::ifstream in(spec[1]);
        if (!in) throw InputError("cannot open file: " + spec[1]);
        Csp5Instance csp = normalize_csp(parse_csp(in));
        ConstructionOutput out = build_seth_instance(
            csp, pendant > 0 ? std::optional<long long>(pendant) : std::nullopt);
        std::string base = out_path.empty() ? fs::path(spec[1]).stem().string() : out_path;

        std::ostringstream gss;
        gss << "c seth lower-bound instance (budget k=" << out.k << ")\n";
        if (pendant > 0)
            gss << "c non-faithful pendant size " << out.pendant_size << " (exact is 2k+1)\n";
        print_graph(gss, out.graph);
        save_text_file(base + ".gr", gss.str());

        std::ostringstream tss;
        print_td(tss, emit_path_decomposition(out));
        save_text_file(base + ".td", tss.str());

        json side = {{"n", out.n_vars},
                     {"m", out.m_constraints},
                     {"q", out.q},
                     {"F", out.F},
                     {"A", out.A},
                     {"C", out.C},
                     {"k", out.k},
                     {"pendant_multiplier", out.pendant_size},
                     {"vertex_count", out.graph.n()},
                     {"section_offsets",
                      {{"main", 0},
                       {"h_base", out.h_base},
                       {"h_block", out.h_block},
                       {"q_base", out.q_base},
                       {"q_block", out.q_block},
                       {"apex", out.s}}}};
        save_text_file(base + ".json", side.dump(2) + "\n");
        std::cout << "wrote " << base << ".gr " << base << ".td " << base << ".json\n";
        return 0;
    }

    Graph g;
    if (kind == "path") {
        need(1);
        g = gen_path(std::stoi(spec[1]));
    } else if (kind == "cycle") {
        need(1);
        g = gen_cycle(std::stoi(spec[1]));
    } else if (kind == "random") {
        need(2);
        g = gen_random(std::stoi(spec[1]), std::stod(spec[2]), seed);
    } else if (kind == "tree") {
        need(1);
        g = gen_tree(std::stoi(spec[1]), seed);
    } else {
        throw InputError("gen: unknown kind " + kind);
    }
    std::ostringstream ss;
    ss << "c generated: " << kind;
    for (size_t i = 1; i < spec.size(); ++i) ss << " " << spec[i];
    if (kind == "random" || kind == "tree") ss << " seed=" << seed;
    ss << "\n";
    print_graph(ss, g);
    if (out_path.empty())
        std::cout << ss.str();
    else
        save_text_file(out_path, ss.str());
    return 0;
}

int cmd_bench(const std::string& corpus, const std::vector<std::string>& algos, bool pretty) {
    using namespace mdskit;
    if (!fs::is_directory(corpus)) throw InputError("bench: corpus directory not found: " + corpus);
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(corpus))
        if (entry.path().extension() == ".gr") files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());

    std::mutex out_mu;
    std::atomic<bool> disagreement{false};
    std::atomic<bool> failure{false};
    std::atomic<size_t> next{0};

    auto work = [&] {
        for (;;) {
            size_t idx = next.fetch_add(1);
            if (idx >= files.size()) return;
            const std::string& f = files[idx];
            Graph g;
            try {
                g = load_graph_file(f);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(out_mu);
                std::cerr << "error: " << f << ": " << e.what() << "\n";
                failure = true;
                continue;
            }
            std::vector<int> sizes;
            std::vector<json> rows;
            for (const auto& algo : algos) {
                SolveOutcome o = run_algo(g, algo, g.n(), false, true, std::nullopt);
                bool valid = o.has_solution && validate_mds(g, o.sol).valid;
                sizes.push_back(o.has_solution ? o.sol.size() : -1);
                json row = {{"instance", f},
                            {"algo", algo},
                            {"size", sizes.back()},
                            {"valid", valid},
                            {"wall_ms", o.wall_ms}};
                if (o.stats.contains("branches")) row["branches"] = o.stats["branches"];
                rows.push_back(std::move(row));
                if (!valid) failure = true;
            }
            bool agree = std::all_of(sizes.begin(), sizes.end(),
                                     [&](int s) { return s == sizes.front(); });
            if (!agree) disagreement = true;
            std::lock_guard<std::mutex> lk(out_mu);
            if (pretty) {
                std::cout << f << ":";
                for (size_t i = 0; i < algos.size(); ++i)
                    std::cout << "  " << algos[i] << "=" << sizes[i];
                std::cout << (agree ? "  [agree]" : "  [DISAGREE]") << "\n";
            } else {
                for (const auto& row : rows) std::cout << row.dump() << "\n";
                json summary = {{"instance", f}, {"agreement", agree}};
                std::cout << summary.dump() << "\n";
            }
        }
    };

    int threads = std::min<int>(env_threads(), std::max<size_t>(files.size(), 1));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) return 2;
    return disagreement ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mdskit: mixed dominating set solvers, generators and validators"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "solve an instance");
    std::string solve_algo, solve_td, solve_file;
    int solve_k = -1;
    bool faithful = false, optimal = false;
    solve->add_option("--algo", solve_algo, "brute|partition|exact|fpt|treewidth")->required();
    solve->add_option("--k", solve_k, "budget (required for fpt)");
    solve->add_option("--td", solve_td, "tree decomposition file (treewidth)");
    solve->add_flag("--faithful", faithful, "disable incumbent pruning in the exact solver");
    solve->add_flag("--optimal", optimal, "fpt: search for the minimum instead of any <= k");
    solve->add_option("graph", solve_file, "graph file")->required();

    // validate
    auto* validate = app.add_subcommand("validate", "check a solution file");
    std::string val_graph, val_sol;
    validate->add_option("graph", val_graph, "graph file")->required();
    validate->add_option("solution", val_sol, "solution file")->required();

    // gen
    auto* gen = app.add_subcommand("gen", "generate instances");
    std::vector<std::string> gen_spec;
    std::string gen_out;
    uint64_t gen_seed = 1;
    long long gen_pendant = 0;
    gen->add_option("spec", gen_spec, "path N | cycle N | random N P | tree N | seth CSPFILE")
        ->required()
        ->expected(-1);
    gen->add_option("--seed", gen_seed, "rng seed (printed in the output header)");
    gen->add_option("--pendant", gen_pendant, "override pendant set size (seth)");
    gen->add_option("-o,--out", gen_out, "output file (or basename for seth)");

    // bench
    auto* bench = app.add_subcommand("bench", "run a corpus across algorithms");
    std::string bench_corpus;
    std::vector<std::string> bench_algos;
    bool pretty = false;
    bench->add_option("--corpus", bench_corpus, "directory of .gr files")->required();
    bench->add_option("--algos", bench_algos, "comma-separated algorithms")
        ->required()
        ->delimiter(',');
    bench->add_flag("--pretty", pretty, "human-readable table");

    // reduce-eds
    auto* reduce = app.add_subcommand("reduce-eds", "apply the eds-to-mds transform");
    std::string red_graph, red_out;
    reduce->add_option("graph", red_graph, "graph file")->required();
    reduce->add_option("-o,--out", red_out, "output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            if (solve_algo == "fpt" && solve_k < 0)
                throw mdskit::InputError("solve --algo fpt requires --k");
            return cmd_solve(solve_file, solve_algo, solve_k, faithful, optimal, solve_td);
        }
        if (*validate) return cmd_validate(val_graph, val_sol);
        if (*gen) return cmd_gen(gen_spec, gen_seed, gen_pendant, gen_out);
        if (*bench) return cmd_bench(bench_corpus, bench_algos, pretty);
        if (*reduce) return cmd_reduce_eds(red_graph, red_out);
    } catch (const mdskit::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const mdskit::LimitError& e) {
        std::cerr << "limit error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
