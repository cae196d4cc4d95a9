#include "gisoforge/guards.hpp"
#include "gisoforge/iso_search.hpp"
#include "gisoforge/reduction.hpp"
#include "gisoforge/wl.hpp"
#include "gisoforge/xor_csp.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <map>

using namespace gisoforge;

namespace {

Graph relabel(const Graph &g, const Permutation &pi) {
    std::vector<Edge> edges;
    for (const auto &e : g.edges()) edges.push_back(pi.apply(e));
    return Graph(g.vertex_count(), std::move(edges));
}

} // namespace

TEST_CASE("wl on regular and path graphs") {
    Graph c6(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
    Coloring reg = wl_refine(c6, 1);
    CHECK(reg.histogram.size() == 1); // 2-regular stays monochromatic
    CHECK(reg.stable);

    Graph p3(3, {{0, 1}, {1, 2}});
    Coloring path = wl_refine(p3, 1);
    CHECK(path.histogram.size() == 2); // endpoints split from the midpoint
    CHECK(path.colors[0] == path.colors[2]);
    CHECK(path.colors[0] != path.colors[1]);
}

TEST_CASE("wl stabilizes quickly and refines degrees") {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 5 + static_cast<int>(rng.below(12));
        Graph g = sample_gnm(n, 1 + static_cast<long long>(rng.below(
                                     static_cast<std::uint64_t>(binomial(n, 2)))),
                             rng);
        Coloring c = wl_refine(g, 1);
        CHECK(c.stable);
        CHECK(c.rounds <= n);
        // Stable colors refine the degree partition.
        std::map<int, int> degree_of_color;
        for (int v = 0; v < n; ++v) {
            auto [it, fresh] = degree_of_color.try_emplace(c.colors[static_cast<std::size_t>(v)],
                                                           g.degree(v));
            if (!fresh) CHECK(it->second == g.degree(v));
        }
    }
}

TEST_CASE("wl_distinguish separates obvious non-isomorphic pairs") {
    Graph claw(4, {{0, 1}, {0, 2}, {0, 3}});
    Graph tri_plus_isolated(4, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(wl_distinguish(claw, tri_plus_isolated, 1) == WlVerdict::not_isomorphic);
    CHECK(wl_distinguish(claw, tri_plus_isolated, 2) == WlVerdict::not_isomorphic);
    CHECK(wl_distinguish(claw, claw, 1) == WlVerdict::maybe);
}

TEST_CASE("wl soundness on relabeled pairs") {
    Rng rng(19);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 6 + static_cast<int>(rng.below(10));
        Graph g = sample_gnm(n, 2 * n, rng);
        Graph h = relabel(g, random_permutation(n, rng));
        CHECK(wl_distinguish(g, h, 1) == WlVerdict::maybe);
    }
    // k = 2 soundness on a smaller batch.
    for (int trial = 0; trial < 20; ++trial) {
        int n = 6 + static_cast<int>(rng.below(5));
        Graph g = sample_gnm(n, n + 2, rng);
        Graph h = relabel(g, random_permutation(n, rng));
        CHECK(wl_distinguish(g, h, 2) == WlVerdict::maybe);
    }
}

TEST_CASE("wl k=2 separates C6 from two triangles") {
    Graph c6(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
    Graph two_tri(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    // Degree-regular, so vertex refinement says maybe; the pair version
    // sees the difference.
    CHECK(wl_distinguish(c6, two_tri, 1) == WlVerdict::maybe);
    CHECK(wl_distinguish(c6, two_tri, 2) == WlVerdict::not_isomorphic);
}

TEST_CASE("exact_iso finds relabelings and certifies score one") {
    Rng rng(47);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 5 + static_cast<int>(rng.below(12));
        Graph g = sample_gnm(n, 1 + static_cast<long long>(rng.below(
                                     static_cast<std::uint64_t>(binomial(n, 2)))),
                             rng);
        Graph h = relabel(g, random_permutation(n, rng));
        IsoResult res = exact_iso(g, h);
        REQUIRE(res.found());
        CHECK(gi_score(g, h, *res.map).ratio == 1);
    }
}

TEST_CASE("exact_iso on single-constraint gadgets") {
    GadgetGraph a = gadget_graph(make_xor_constraint(0, 1, 2, 1));
    GadgetGraph b = gadget_graph(make_xor_constraint(0, 1, 2, 0));
    IsoResult res = exact_iso(a.graph(), b.graph());
    REQUIRE(res.found());
    CHECK(gi_score(a.graph(), b.graph(), *res.map).ratio == 1);
}

TEST_CASE("exact_iso certifies non-isomorphism") {
    Graph c6(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
    Graph two_tri(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    CHECK(exact_iso(c6, two_tri).status == IsoStatus::none);
}

TEST_CASE("exact_iso distinguishes budget exhaustion from refutation") {
    Rng seeder(2);
    Graph g = sample_gnm(12, 20, 1);
    Graph h = relabel(g, random_permutation(12, seeder));
    IsoOptions opts;
    opts.node_budget = 0;
    CHECK(exact_iso(g, h, opts).status == IsoStatus::budget_exceeded);
    IsoOptions small_guard;
    small_guard.max_vertices = 4;
    CHECK_THROWS_AS(exact_iso(g, h, small_guard), GuardError);
}

TEST_CASE("exact_iso agrees with full enumeration at n <= 7") {
    Rng rng(61);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 4 + static_cast<int>(rng.below(4));
        Graph g = sample_gnm(n, 1 + rng.below(static_cast<std::uint64_t>(binomial(n, 2))), rng);
        Graph h(0, {});
        if (rng.bit()) {
            h = relabel(g, random_permutation(n, rng));
        } else {
            h = sample_gnm(n, g.edge_count(), rng);
        }
        auto expected = oracles::iso_by_enumeration(g, h);
        IsoResult got = exact_iso(g, h);
        CHECK(expected.has_value() == got.found());
        if (got.found()) CHECK(gi_score(g, h, *got.map).ratio == 1);
    }
}

TEST_CASE("wl k=2 on reduced pairs (recorded, not asserted)") {
    // Whether the pair refinement also fails to separate encoded pairs at
    // desk scale is an experiment output; the verdicts are recorded.
    Rng rng(27);
    int maybe = 0;
    const int pairs = 5;
    for (int trial = 0; trial < pairs; ++trial) {
        ThreeXorInstance inst = sample_random_3xor(8, 24, rng.next());
        ReducedPair pair = reduce(inst);
        if (wl_distinguish(pair.source.graph(), pair.homogeneous.graph(), 2) ==
            WlVerdict::maybe)
            ++maybe;
    }
    MESSAGE("wl k=2 says maybe on ", maybe, "/", pairs, " reduced pairs");
    CHECK(maybe >= 0);
}

TEST_CASE("local search improves on a completeness seed") {
    PlantedInstance p = plant(8, 10, Rational(1, 5), 15);
    ReducedPair pair = reduce(p.instance);
    VertexMap seed = completeness_map(p.instance, p.tau);
    Rational seed_score = gi_score(pair.source.graph(), pair.homogeneous.graph(), seed).ratio;
    VertexMap best = best_iso_local_search(pair.source.graph(), pair.homogeneous.graph(), 1, 9, seed);
    CHECK(gi_score(pair.source.graph(), pair.homogeneous.graph(), best).ratio >= seed_score);
}

TEST_CASE("local search reaches the brute-force optimum most of the time") {
    // Calibration against exhaustive search over all 9! bijections.
    Rng rng(83);
    int hits = 0;
    const int trials = 100;
    for (int trial = 0; trial < trials; ++trial) {
        Graph g = sample_gnm(9, 14, rng);
        Graph h = sample_gnm(9, 14, rng);
        long long best = oracles::max_preserved_by_enumeration(g, h);
        VertexMap found = best_iso_local_search(g, h, 50, rng.next());
        long long got = gi_score(g, h, found).satisfied;
        CHECK(got <= best);
        if (got == best) ++hits;
    }
    CHECK(hits >= 95);
}
