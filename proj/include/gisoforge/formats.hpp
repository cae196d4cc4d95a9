#ifndef GISOFORGE_FORMATS_HPP
#define GISOFORGE_FORMATS_HPP

#include "gisoforge/graph.hpp"

#include <string>

namespace gisoforge {

// graph6 encoding per the McKay format description.  Decoding accepts an
// optional ">>graph6<<" header; encoding emits a bare line unless asked.
std::string to_graph6(const Graph &g, bool with_header = false);
Graph from_graph6(const std::string &line);

// "p edge n m" followed by one "e u v" line per edge, 1-indexed.
std::string to_dimacs(const Graph &g);

std::string hypergraph_to_json(const Hypergraph &g);
Hypergraph hypergraph_from_json(const std::string &text);

} // namespace gisoforge

#endif // GISOFORGE_FORMATS_HPP
