#include "gisoforge/iso_search.hpp"

#include "gisoforge/guards.hpp"
#include "gisoforge/rng.hpp"
#include "gisoforge/wl.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace gisoforge {

namespace {

struct BitAdjacency {
    int n;
    int words;
    std::vector<std::uint64_t> rows;

    explicit BitAdjacency(const Graph &g)
        : n(g.vertex_count()), words((g.vertex_count() + 63) / 64),
          rows(static_cast<std::size_t>(n) * words, 0) {
        for (const auto &e : g.edges()) {
            set(e.first, e.second);
            set(e.second, e.first);
        }
    }

    void set(int u, int v) {
        rows[static_cast<std::size_t>(u) * words + v / 64] |= 1ULL << (v % 64);
    }
    bool get(int u, int v) const {
        return (rows[static_cast<std::size_t>(u) * words + v / 64] >> (v % 64)) & 1ULL;
    }
};

struct SearchState {
    const BitAdjacency &ga, &ha;
    const std::vector<int> &color_g, &color_h;
    std::vector<int> map_gh;   // -1 when unassigned
    std::vector<char> used_h;
    std::vector<int> assigned; // sources in assignment order
    long long budget;
    bool exhausted = false;

    bool feasible(int s, int t) const;
    bool search();
};

bool SearchState::feasible(int s, int t) const {
    if (color_g[static_cast<std::size_t>(s)] != color_h[static_cast<std::size_t>(t)]) return false;
    for (int s2 : assigned) {
        int t2 = map_gh[static_cast<std::size_t>(s2)];
        if (ga.get(s, s2) != ha.get(t, t2)) return false;
    }
    return true;
}

bool SearchState::search() {
    if (static_cast<int>(assigned.size()) == ga.n) return true;
    if (--budget < 0) {
        exhausted = true;
        return false;
    }
    // Most-constrained unassigned source vertex.
    int best_s = -1;
    int best_count = ga.n + 1;
    std::vector<int> best_cands;
    for (int s = 0; s < ga.n; ++s) {
        if (map_gh[static_cast<std::size_t>(s)] != -1) continue;
        std::vector<int> cands;
        for (int t = 0; t < ha.n; ++t) {
            if (used_h[static_cast<std::size_t>(t)]) continue;
            if (feasible(s, t)) cands.push_back(t);
        }
        if (static_cast<int>(cands.size()) < best_count) {
            best_count = static_cast<int>(cands.size());
            best_s = s;
            best_cands = std::move(cands);
            if (best_count == 0) return false;
        }
    }
    for (int t : best_cands) {
        map_gh[static_cast<std::size_t>(best_s)] = t;
        used_h[static_cast<std::size_t>(t)] = 1;
        assigned.push_back(best_s);
        if (search()) return true;
        if (exhausted) return false;
        assigned.pop_back();
        used_h[static_cast<std::size_t>(t)] = 0;
        map_gh[static_cast<std::size_t>(best_s)] = -1;
    }
    return false;
}

} // namespace

IsoResult exact_iso(const Graph &g, const Graph &h, const IsoOptions &opts) {
    if (g.vertex_count() != h.vertex_count())
        throw std::invalid_argument("exact_iso: vertex counts differ");
    check_guard(g.vertex_count(), opts.max_vertices, "exact_iso");
    if (g.edge_count() != h.edge_count()) return {IsoStatus::none, std::nullopt};
    int n = g.vertex_count();
    if (n == 0) return {IsoStatus::found, VertexMap::identity(0)};

    // Joint refinement gives comparable color classes on both sides.
    std::vector<Edge> union_edges = g.edges();
    for (const auto &e : h.edges()) union_edges.push_back({e.first + n, e.second + n});
    Coloring joint = wl_refine(Graph(2 * n, std::move(union_edges)), 1);
    std::vector<int> color_g(joint.colors.begin(), joint.colors.begin() + n);
    std::vector<int> color_h(joint.colors.begin() + n, joint.colors.end());
    {
        std::map<int, long long> cg, ch;
        for (int c : color_g) ++cg[c];
        for (int c : color_h) ++ch[c];
        if (cg != ch) return {IsoStatus::none, std::nullopt};
    }

    BitAdjacency ga(g), ha(h);
    SearchState state{ga, ha, color_g, color_h,
                      std::vector<int>(static_cast<std::size_t>(n), -1),
                      std::vector<char>(static_cast<std::size_t>(n), 0),
                      {}, opts.node_budget};
    if (state.search()) return {IsoStatus::found, VertexMap(state.map_gh)};
    if (state.exhausted) return {IsoStatus::budget_exceeded, std::nullopt};
    return {IsoStatus::none, std::nullopt};
}

namespace {

long long preserved_count(const Graph &g, const Graph &h, const std::vector<int> &fwd) {
    long long c = 0;
    for (const auto &e : g.edges())
        if (h.has_edge(fwd[static_cast<std::size_t>(e.first)],
                       fwd[static_cast<std::size_t>(e.second)]))
            ++c;
    return c;
}

// Preserved edges among those incident to source vertices a or b.
long long local_contribution(const Graph &g, const Graph &h,
                             const std::vector<int> &fwd, int a, int b) {
    long long c = 0;
    for (int u : g.neighbors(a))
        if (h.has_edge(fwd[static_cast<std::size_t>(a)], fwd[static_cast<std::size_t>(u)])) ++c;
    for (int u : g.neighbors(b)) {
        if (u == a) continue; // edge (a,b) already counted from a's side
        if (h.has_edge(fwd[static_cast<std::size_t>(b)], fwd[static_cast<std::size_t>(u)])) ++c;
    }
    return c;
}

} // namespace

VertexMap best_iso_local_search(const Graph &g, const Graph &h, int restarts,
                                std::uint64_t seed,
                                const std::optional<VertexMap> &initial) {
    if (g.vertex_count() != h.vertex_count())
        throw std::invalid_argument("best_iso_local_search: vertex counts differ");
    int n = g.vertex_count();
    Rng rng(seed);
    std::vector<int> best;
    long long best_score = -1;
    for (int r = 0; r < std::max(restarts, 1); ++r) {
        std::vector<int> fwd;
        if (r == 0 && initial.has_value()) {
            fwd = initial->forward();
        } else {
            fwd.resize(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) fwd[static_cast<std::size_t>(i)] = i;
            rng.shuffle(fwd);
        }
        long long score = preserved_count(g, h, fwd);
        bool improved = true;
        while (improved) {
            improved = false;
            for (int i = 0; i < n && !improved; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    long long before = local_contribution(g, h, fwd, i, j);
                    std::swap(fwd[static_cast<std::size_t>(i)], fwd[static_cast<std::size_t>(j)]);
                    long long after = local_contribution(g, h, fwd, i, j);
                    if (after > before) {
                        score += after - before;
                        improved = true;
                        break;
                    }
                    std::swap(fwd[static_cast<std::size_t>(i)], fwd[static_cast<std::size_t>(j)]);
                }
            }
        }
        if (score > best_score) {
            best_score = score;
            best = fwd;
        }
        if (best_score == g.edge_count()) break;
    }
    return VertexMap(std::move(best));
}

} // namespace gisoforge
