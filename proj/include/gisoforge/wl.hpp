#ifndef GISOFORGE_WL_HPP
#define GISOFORGE_WL_HPP

#include "gisoforge/graph.hpp"

#include <map>
#include <vector>

namespace gisoforge {

struct Coloring {
    std::vector<int> colors;      // canonical color id per vertex (or per pair for k=2)
    std::map<int, long long> histogram;
    int rounds = 0;
    bool stable = false;
};

// Iterated color refinement to a fixed point.  k=1 refines vertex colors by
// neighbor-color multisets; k=2 refines ordered-pair colors by the
// coordinate-neighbor rule.  Color ids are canonical (sorted-signature
// ranks), so histograms of different graphs are directly comparable only
// when refined jointly; see wl_distinguish.
Coloring wl_refine(const Graph &g, int k = 1);

enum class WlVerdict { not_isomorphic, maybe };

// Joint refinement of the disjoint union; sound: never reports
// not_isomorphic on isomorphic inputs.
WlVerdict wl_distinguish(const Graph &g, const Graph &h, int k = 1);

} // namespace gisoforge

#endif // GISOFORGE_WL_HPP
