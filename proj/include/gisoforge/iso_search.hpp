#ifndef GISOFORGE_ISO_SEARCH_HPP
#define GISOFORGE_ISO_SEARCH_HPP

#include "gisoforge/graph.hpp"

#include <cstdint>
#include <optional>

namespace gisoforge {

enum class IsoStatus { found, none, budget_exceeded };

struct IsoResult {
    IsoStatus status;
    std::optional<VertexMap> map; // present iff status == found

    bool found() const { return status == IsoStatus::found; }
};

struct IsoOptions {
    int max_vertices = 60;             // guard; raisable via environment
    long long node_budget = 20'000'000; // backtracking expansions before giving up
};

// Exact isomorphism by color-refinement-pruned backtracking.  A returned
// map always has gi_score exactly 1; "none" is a certificate, while
// budget_exceeded is reported distinctly.
IsoResult exact_iso(const Graph &g, const Graph &h, const IsoOptions &opts = {});

// Transposition hill-climb on gi_score with restarts; one-sided lower
// bound on GI(G,H).  An initial map, when given, seeds the first restart.
VertexMap best_iso_local_search(const Graph &g, const Graph &h, int restarts,
                                std::uint64_t seed,
                                const std::optional<VertexMap> &initial = std::nullopt);

} // namespace gisoforge

#endif // GISOFORGE_ISO_SEARCH_HPP
