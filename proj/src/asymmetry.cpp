#include "gisoforge/asymmetry.hpp"

#include "gisoforge/guards.hpp"
#include "gisoforge/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace gisoforge {

namespace {

long long edge_index(const std::vector<int> &sorted_edge, int k) {
    if (k == 2) return rank_pair(sorted_edge[0], sorted_edge[1]);
    return rank_triple(sorted_edge[0], sorted_edge[1], sorted_edge[2]);
}

std::vector<int> edge_at(long long index, int k) {
    if (k == 2) {
        Edge e = unrank_pair(index);
        return {e.first, e.second};
    }
    return unrank_triple(index);
}

} // namespace

BinDecomposition edge_permutation_bins(const Permutation &pi, int n, int k) {
    if (k != 2 && k != 3)
        throw std::invalid_argument("edge_permutation_bins: k must be 2 or 3");
    if (pi.size() != n)
        throw std::invalid_argument("edge_permutation_bins: permutation size mismatch");
    long long universe = binomial(n, k);
    check_guard(universe, 4'000'000, "edge_permutation_bins");

    BinDecomposition out;
    out.n = n;
    out.k = k;
    std::vector<char> visited(static_cast<std::size_t>(universe), 0);
    for (long long start = 0; start < universe; ++start) {
        if (visited[static_cast<std::size_t>(start)]) continue;
        std::vector<long long> cycle;
        long long cur = start;
        do {
            visited[static_cast<std::size_t>(cur)] = 1;
            cycle.push_back(cur);
            cur = edge_index(pi.apply(edge_at(cur, k)), k);
        } while (cur != start);
        if (cycle.size() == 1) {
            auto verts = edge_at(start, k);
            int fixed = 0;
            for (int v : verts)
                if (pi(v) == v) ++fixed;
            if (fixed == k) {
                ++out.size1_type1;
            } else if (k == 2) {
                ++out.size1_type2; // the two endpoints swap
            } else if (fixed == 1) {
                ++out.size1_type2; // one fixed point plus a swapped pair
            } else {
                ++out.size1_type3; // 3-cycle inside the edge
            }
        }
        out.bins.push_back(std::move(cycle));
    }
    return refine_bins(out);
}

BinDecomposition refine_bins(const BinDecomposition &b) {
    BinDecomposition out = b;
    out.refined.clear();
    for (const auto &bin : b.bins) {
        std::size_t l = bin.size();
        if (l < 2) continue;
        if (l == 2 || l == 3) {
            out.refined.push_back(bin);
            continue;
        }
        std::size_t pairs_end = (l % 2 == 0) ? l : l - 3;
        for (std::size_t i = 0; i + 1 < pairs_end; i += 2)
            out.refined.push_back({bin[i], bin[i + 1]});
        if (l % 2 == 1)
            out.refined.push_back({bin[l - 3], bin[l - 2], bin[l - 1]});
    }
    return out;
}

namespace {

template <typename G>
long long half_full_generic(const G &g, const Permutation &pi, int k) {
    BinDecomposition bins = edge_permutation_bins(pi, g.vertex_count(), k);
    long long s = 0;
    for (const auto &bin : bins.refined) {
        int present = 0;
        for (long long idx : bin) {
            auto verts = edge_at(idx, k);
            bool in_g;
            if constexpr (std::is_same_v<G, Graph>) {
                in_g = g.has_edge(verts[0], verts[1]);
            } else {
                in_g = g.has_edge(verts);
            }
            if (in_g) ++present;
        }
        if (present > 0 && present < static_cast<int>(bin.size())) ++s;
    }
    return s;
}

} // namespace

long long half_full_count(const Graph &g, const Permutation &pi) {
    return half_full_generic(g, pi, 2);
}

long long half_full_count(const Hypergraph &g, const Permutation &pi) {
    return half_full_generic(g, pi, g.uniformity());
}

namespace {

// Sorted integer codes for the edge set; the permutation scan then runs
// without allocation or rational arithmetic.
std::vector<long long> edge_codes(const Graph &g, int n) {
    std::vector<long long> codes;
    for (const auto &e : g.edges())
        codes.push_back(static_cast<long long>(e.first) * n + e.second);
    return codes;
}

std::vector<long long> edge_codes(const Hypergraph &g, int n) {
    std::vector<long long> codes;
    for (const auto &e : g.edges()) {
        long long c = 0;
        for (int v : e) c = c * n + v;
        codes.push_back(c);
    }
    return codes;
}

long long image_code(const std::vector<int> &edge, const std::vector<int> &fwd, int n) {
    int img[3];
    int k = static_cast<int>(edge.size());
    for (int i = 0; i < k; ++i) img[i] = fwd[static_cast<std::size_t>(edge[static_cast<std::size_t>(i)])];
    if (img[0] > img[1]) std::swap(img[0], img[1]);
    if (k == 3) {
        if (img[1] > img[2]) std::swap(img[1], img[2]);
        if (img[0] > img[1]) std::swap(img[0], img[1]);
    }
    long long c = 0;
    for (int i = 0; i < k; ++i) c = c * n + img[i];
    return c;
}

template <typename G>
AsymmetryResult asymmetric_bruteforce_generic(const G &g, const Rational &beta,
                                              const Rational &gamma) {
    int n = g.vertex_count();
    check_guard(n, 9, "is_asymmetric_bruteforce");
    if (g.edge_count() == 0)
        throw std::invalid_argument("is_asymmetric_bruteforce: empty edge set");
    long long max_fixed = floor_times(Rational(1) - beta, n);
    // A permutation scores as a violation when it fixes at most max_fixed
    // vertices yet preserves at least a (1 - gamma) fraction of edges; the
    // count cutoff makes the inner loop integer-only.
    long long cutoff = ceil_of(Rational((Rational(1) - gamma) * rat(g.edge_count())));
    std::vector<long long> codes = edge_codes(g, n);
    std::vector<std::vector<int>> plain_edges;
    for (const auto &e : g.edges()) {
        if constexpr (std::is_same_v<G, Graph>)
            plain_edges.push_back({e.first, e.second});
        else
            plain_edges.push_back(e);
    }
    std::vector<int> fwd(static_cast<std::size_t>(n));
    std::iota(fwd.begin(), fwd.end(), 0);
    do {
        int fixed = 0;
        for (int i = 0; i < n; ++i)
            if (fwd[static_cast<std::size_t>(i)] == i) ++fixed;
        if (fixed > max_fixed) continue;
        long long preserved = 0;
        for (const auto &e : plain_edges)
            if (std::binary_search(codes.begin(), codes.end(), image_code(e, fwd, n)))
                ++preserved;
        if (preserved >= cutoff)
            return {false, Permutation{std::vector<int>(fwd)}};
    } while (std::next_permutation(fwd.begin(), fwd.end()));
    return {true, std::nullopt};
}

} // namespace

AsymmetryResult is_asymmetric_bruteforce(const Graph &g, const Rational &beta,
                                         const Rational &gamma) {
    return asymmetric_bruteforce_generic(g, beta, gamma);
}

AsymmetryResult is_asymmetric_bruteforce(const Hypergraph &g, const Rational &beta,
                                         const Rational &gamma) {
    return asymmetric_bruteforce_generic(g, beta, gamma);
}

namespace {

long long preserved_edges(const Graph &g, const std::vector<int> &fwd) {
    long long c = 0;
    for (const auto &e : g.edges()) {
        int a = fwd[static_cast<std::size_t>(e.first)];
        int b = fwd[static_cast<std::size_t>(e.second)];
        if (g.has_edge(a, b)) ++c;
    }
    return c;
}

int fixed_count(const std::vector<int> &fwd) {
    int c = 0;
    for (std::size_t i = 0; i < fwd.size(); ++i)
        if (fwd[i] == static_cast<int>(i)) ++c;
    return c;
}

// Random permutation with at most max_fixed fixed points.
std::vector<int> constrained_start(int n, long long max_fixed, Rng &rng) {
    std::vector<int> fwd(static_cast<std::size_t>(n));
    std::iota(fwd.begin(), fwd.end(), 0);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        rng.shuffle(fwd);
        if (fixed_count(fwd) <= max_fixed) return fwd;
    }
    // Derangement by rotation as a deterministic fallback.
    std::iota(fwd.begin(), fwd.end(), 0);
    std::rotate(fwd.begin(), fwd.begin() + 1, fwd.end());
    return fwd;
}

} // namespace

TrialRecord hill_climb_violation(const Graph &g, const Rational &beta,
                                 const Rational &gamma, int search_budget,
                                 std::uint64_t seed) {
    int n = g.vertex_count();
    long long m = g.edge_count();
    long long max_fixed = floor_times(Rational(1) - beta, n);
    Rational threshold = (Rational(1) - gamma) * rat(m);
    Rng rng(seed);
    TrialRecord rec;
    rec.best_score = Rational(0);
    for (int restart = 0; restart < std::max(search_budget, 1); ++restart) {
        std::vector<int> fwd;
        if (restart % 2 == 1 && n - 2 <= max_fixed) {
            // Near-identity start: one random transposition.
            fwd.resize(static_cast<std::size_t>(n));
            std::iota(fwd.begin(), fwd.end(), 0);
            int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
            if (b >= a) ++b;
            std::swap(fwd[static_cast<std::size_t>(a)], fwd[static_cast<std::size_t>(b)]);
        } else {
            fwd = constrained_start(n, max_fixed, rng);
        }
        if (fixed_count(fwd) > max_fixed) continue; // constraint unsatisfiable
        long long score = preserved_edges(g, fwd);
        bool improved = true;
        while (improved) {
            improved = false;
            for (int i = 0; i < n && !improved; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    std::swap(fwd[static_cast<std::size_t>(i)], fwd[static_cast<std::size_t>(j)]);
                    if (fixed_count(fwd) <= max_fixed) {
                        long long s = preserved_edges(g, fwd);
                        if (s > score) {
                            score = s;
                            improved = true;
                            break;
                        }
                    }
                    std::swap(fwd[static_cast<std::size_t>(i)], fwd[static_cast<std::size_t>(j)]);
                }
            }
        }
        Rational ratio = make_rational(score, m);
        if (ratio > rec.best_score) {
            rec.best_score = ratio;
            if (rat(score) >= threshold) {
                rec.violation_found = true;
                rec.witness = Permutation(fwd);
                return rec;
            }
        }
    }
    return rec;
}

namespace {

bool bin_internal_checks(const Graph &g, const Permutation &pi) {
    BinDecomposition bins = edge_permutation_bins(pi, g.vertex_count(), 2);
    long long total = 0;
    for (const auto &bin : bins.bins) total += static_cast<long long>(bin.size());
    if (total != bins.potential_edges()) return false;
    int n = g.vertex_count();
    long long id = pi.fixed_point_count();
    if (bins.size1_type1 > binomial(id, 2)) return false;
    if (bins.size1_type2 > (n - id) / 2) return false;
    long long s = half_full_count(g, pi);
    long long diff = static_cast<long long>(edge_diff(g, pi).size());
    if (s > diff) return false;
    // Every lost edge touches a moved vertex.
    std::vector<int> moved;
    for (int v = 0; v < n; ++v)
        if (pi(v) != v) moved.push_back(v);
    long long lost = 0;
    for (const auto &e : g.edges()) {
        Edge img = pi.apply(e);
        if (!g.has_edge(img.first, img.second)) ++lost;
    }
    return lost <= incident_edge_count(g, moved);
}

} // namespace

MonteCarloReport monte_carlo_asymmetry(int n, long long m, const Rational &beta,
                                       const Rational &gamma, int trials,
                                       int search_budget, std::uint64_t seed,
                                       FalsifierMode mode, unsigned workers) {
    MonteCarloReport report;
    report.n = n;
    report.m = m;
    report.beta = beta;
    report.gamma = gamma;
    report.trials = trials;
    if (mode == FalsifierMode::automatic)
        mode = n <= 9 ? FalsifierMode::brute_force : FalsifierMode::hill_climb;
    report.mode_used = mode;
    report.records.resize(static_cast<std::size_t>(std::max(trials, 0)));

    Rng root(seed);
    // Each slot depends only on its spawned stream, so the outcome is
    // identical for any worker count or completion order.
    auto run_trial = [&](int t) {
        Rng trial_rng = root.spawn(static_cast<std::uint64_t>(t));
        Graph g = sample_gnm(n, m, trial_rng);
        TrialRecord rec;
        if (mode == FalsifierMode::brute_force) {
            AsymmetryResult res = is_asymmetric_bruteforce(g, beta, gamma);
            rec.violation_found = !res.asymmetric;
            rec.witness = res.witness;
            rec.best_score = rec.violation_found
                                 ? aut_score(g, *res.witness).ratio
                                 : Rational(0);
        } else {
            rec = hill_climb_violation(g, beta, gamma, search_budget,
                                       trial_rng.next());
        }
        rec.trial = t;
        Permutation probe = random_permutation(n, trial_rng);
        rec.internal_checks_passed = bin_internal_checks(g, probe);
        report.records[static_cast<std::size_t>(t)] = std::move(rec);
    };

    if (workers == 0) workers = std::thread::hardware_concurrency();
    workers = std::min(workers, static_cast<unsigned>(std::max(trials, 1)));
    if (workers <= 1) {
        for (int t = 0; t < trials; ++t) run_trial(t);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    int t = next.fetch_add(1);
                    if (t >= trials) break;
                    run_trial(t);
                }
            });
        }
        for (auto &thread : pool) thread.join();
    }
    for (const auto &rec : report.records)
        if (rec.violation_found) ++report.violations_found;
    return report;
}

std::string TrialRecord::to_json() const {
    nlohmann::json j;
    j["trial"] = trial;
    j["violation_found"] = violation_found;
    if (witness.has_value()) j["witness"] = witness->forward();
    j["best_score"] = to_string(best_score);
    j["internal_checks_passed"] = internal_checks_passed;
    return j.dump();
}

std::string MonteCarloReport::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["m"] = m;
    j["beta"] = to_string(beta);
    j["gamma"] = to_string(gamma);
    j["trials"] = trials;
    j["violations_found"] = violations_found;
    j["mode"] = mode_used == FalsifierMode::brute_force ? "brute_force" : "hill_climb";
    auto &w = j["witnesses"] = nlohmann::json::array();
    for (const auto &r : records)
        if (r.witness.has_value()) w.push_back(r.witness->forward());
    return j.dump();
}

} // namespace gisoforge
