#include "mdskit/generators.hpp"

#include <random>

#include "mdskit/errors.hpp"

namespace mdskit {
namespace {

void require_n(int n) {
    if (n <= 0) throw InputError("generator: n must be positive");
}

double unit(std::mt19937_64& rng) {
    // 53-bit mantissa; avoids distribution objects, which differ across
    // standard libraries.
    return (rng() >> 11) * 0x1.0p-53;
}

} // namespace

Graph gen_path(int n) {
    require_n(n);
    std::vector<std::pair<int, int>> es;
    for (int v = 0; v + 1 < n; ++v) es.emplace_back(v, v + 1);
    return Graph::from_edges(n, std::move(es));
}

Graph gen_cycle(int n) {
    require_n(n);
    if (n < 3) throw InputError("gen_cycle: n must be at least 3");
    std::vector<std::pair<int, int>> es;
    for (int v = 0; v < n; ++v) es.emplace_back(v, (v + 1) % n);
    return Graph::from_edges(n, std::move(es));
}

Graph gen_random(int n, double p, uint64_t seed) {
    require_n(n);
    if (p < 0.0 || p > 1.0) throw InputError("gen_random: p outside [0,1]");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (unit(rng) < p) es.emplace_back(u, v);
    return Graph::from_edges(n, std::move(es));
}

Graph gen_tree(int n, uint64_t seed) {
    require_n(n);
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> es;
    for (int v = 1; v < n; ++v) es.emplace_back((int)(rng() % v), v);
    return Graph::from_edges(n, std::move(es));
}

} // namespace mdskit
