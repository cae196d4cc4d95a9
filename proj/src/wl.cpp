#include "gisoforge/wl.hpp"

#include "gisoforge/guards.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace gisoforge {

namespace {

// Replaces each signature by its rank among the sorted distinct signatures.
// Deterministic and independent of vertex order.
template <typename Sig>
std::pair<std::vector<int>, int> canonicalize(const std::vector<Sig> &sigs) {
    std::vector<Sig> sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> ids(sigs.size());
    for (std::size_t i = 0; i < sigs.size(); ++i) {
        ids[i] = static_cast<int>(
            std::lower_bound(sorted.begin(), sorted.end(), sigs[i]) - sorted.begin());
    }
    return {std::move(ids), static_cast<int>(sorted.size())};
}

Coloring refine_vertices(const Graph &g) {
    int n = g.vertex_count();
    Coloring out;
    out.colors.assign(static_cast<std::size_t>(n), 0);
    int classes = n > 0 ? 1 : 0;
    for (int round = 1; round <= std::max(n, 1); ++round) {
        std::vector<std::pair<int, std::vector<int>>> sigs(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) {
            std::vector<int> nb;
            nb.reserve(g.neighbors(v).size());
            for (int u : g.neighbors(v)) nb.push_back(out.colors[static_cast<std::size_t>(u)]);
            std::sort(nb.begin(), nb.end());
            sigs[static_cast<std::size_t>(v)] = {out.colors[static_cast<std::size_t>(v)], std::move(nb)};
        }
        auto [ids, count] = canonicalize(sigs);
        out.rounds = round;
        if (count == classes) {
            out.colors = std::move(ids);
            out.stable = true;
            break;
        }
        classes = count;
        out.colors = std::move(ids);
    }
    if (n == 0) out.stable = true;
    for (int c : out.colors) ++out.histogram[c];
    return out;
}

// Ordered-pair refinement: a pair's signature combines its own color with
// the multisets of colors reachable by moving either coordinate along an
// edge.  Pairs start from their atomic type (equal / edge / non-edge).
Coloring refine_pairs(const Graph &g) {
    int n = g.vertex_count();
    long long pairs = static_cast<long long>(n) * n;
    check_guard(pairs, 1 << 20, "wl_refine k=2 pair table");
    auto index = [n](int u, int v) { return static_cast<std::size_t>(u) * n + v; };
    std::vector<int> colors(static_cast<std::size_t>(pairs));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            colors[index(u, v)] = u == v ? 0 : (g.has_edge(u, v) ? 1 : 2);
    Coloring out;
    int classes = 0;
    {
        auto [ids, count] = canonicalize(colors);
        colors = std::move(ids);
        classes = count;
    }
    for (int round = 1; round <= std::max(n * n, 1); ++round) {
        std::vector<std::tuple<int, std::vector<int>, std::vector<int>>> sigs(
            static_cast<std::size_t>(pairs));
        for (int u = 0; u < n; ++u) {
            for (int v = 0; v < n; ++v) {
                std::vector<int> first, second;
                first.reserve(g.neighbors(u).size());
                second.reserve(g.neighbors(v).size());
                for (int w : g.neighbors(u)) first.push_back(colors[index(w, v)]);
                for (int w : g.neighbors(v)) second.push_back(colors[index(u, w)]);
                std::sort(first.begin(), first.end());
                std::sort(second.begin(), second.end());
                sigs[index(u, v)] = {colors[index(u, v)], std::move(first), std::move(second)};
            }
        }
        auto [ids, count] = canonicalize(sigs);
        out.rounds = round;
        colors = std::move(ids);
        if (count == classes) {
            out.stable = true;
            break;
        }
        classes = count;
    }
    out.colors = std::move(colors);
    if (n == 0) out.stable = true;
    for (int c : out.colors) ++out.histogram[c];
    return out;
}

Graph disjoint_union(const Graph &g, const Graph &h) {
    std::vector<Edge> edges = g.edges();
    int off = g.vertex_count();
    for (const auto &e : h.edges()) edges.push_back({e.first + off, e.second + off});
    return Graph(g.vertex_count() + h.vertex_count(), std::move(edges));
}

} // namespace

Coloring wl_refine(const Graph &g, int k) {
    if (k == 1) return refine_vertices(g);
    if (k == 2) return refine_pairs(g);
    throw std::invalid_argument("wl_refine: only k in {1,2} supported");
}

WlVerdict wl_distinguish(const Graph &g, const Graph &h, int k) {
    if (g.vertex_count() != h.vertex_count())
        throw std::invalid_argument("wl_distinguish: vertex counts differ");
    Coloring joint = wl_refine(disjoint_union(g, h), k);
    std::map<int, long long> hist_g, hist_h;
    if (k == 1) {
        int n = g.vertex_count();
        for (int v = 0; v < n; ++v) ++hist_g[joint.colors[static_cast<std::size_t>(v)]];
        for (int v = 0; v < n; ++v) ++hist_h[joint.colors[static_cast<std::size_t>(n + v)]];
    } else {
        int n = g.vertex_count();
        int total = 2 * n;
        for (int u = 0; u < total; ++u) {
            for (int v = 0; v < total; ++v) {
                int c = joint.colors[static_cast<std::size_t>(u) * total + v];
                if (u < n && v < n) ++hist_g[c];
                else if (u >= n && v >= n) ++hist_h[c];
                // Cross pairs belong to neither side's histogram.
            }
        }
    }
    return hist_g == hist_h ? WlVerdict::maybe : WlVerdict::not_isomorphic;
}

} // namespace gisoforge
