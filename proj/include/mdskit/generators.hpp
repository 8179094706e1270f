#ifndef MDSKIT_GENERATORS_HPP
#define MDSKIT_GENERATORS_HPP

#include <cstdint>

#include "mdskit/graph.hpp"

namespace mdskit {

Graph gen_path(int n);
Graph gen_cycle(int n);
/// Independent-edge model; byte-reproducible for a fixed seed.
Graph gen_random(int n, double p, uint64_t seed);
/// Uniform random attachment tree.
Graph gen_tree(int n, uint64_t seed);

} // namespace mdskit

#endif
