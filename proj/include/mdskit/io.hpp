#ifndef MDSKIT_IO_HPP
#define MDSKIT_IO_HPP

#include <iosfwd>
#include <string>

#include "mdskit/graph.hpp"
#include "mdskit/lowerbound.hpp"
#include "mdskit/treewidth.hpp"

namespace mdskit {

// Graph format: comment lines `c ...`, header `p mds <n> <m>`, then exactly
// m lines `<u> <v>` with 1-indexed endpoints.
Graph parse_graph(std::istream& in);
void print_graph(std::ostream& out, const Graph& g);

// Solution format: `s mds <size>`, then `v <id>` per D vertex and
// `e <u> <v>` per M edge, 1-indexed.
MixedSolution parse_solution(std::istream& in, const Graph& g);
void print_solution(std::ostream& out, const Graph& g, const MixedSolution& sol);

// PACE-style tree decomposition: `s td <#bags> <width+1> <n>`, bag lines
// `b <id> <v...>`, then bag-tree edges `<b1> <b2>`.
TreeDecomposition parse_td(std::istream& in);
void print_td(std::ostream& out, const TreeDecomposition& td);

// CSP format: `p csp5 <n> <m> <q>`, per constraint one `x <i1> ... <iq>`
// line (1-indexed variables) followed by its `a <v1> ... <vq>` lines.
Csp5Instance parse_csp(std::istream& in);
void print_csp(std::ostream& out, const Csp5Instance& csp);

Graph load_graph_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& content);

} // namespace mdskit

#endif
