#ifndef GISOFORGE_ASYMMETRY_HPP
#define GISOFORGE_ASYMMETRY_HPP

#include "gisoforge/graph.hpp"
#include "gisoforge/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gisoforge {

// Cycle decomposition of the action e -> pi(e) on all k-subsets.  Bins are
// listed in cycle order; size-1 bins are typed by how pi moves the edge's
// vertices (all fixed / swapped pair / one fixed plus a swap / 3-cycle).
struct BinDecomposition {
    int n = 0;
    int k = 2;
    std::vector<std::vector<long long>> bins; // colex edge indices, cycle order
    long long size1_type1 = 0; // every endpoint fixed
    long long size1_type2 = 0; // k=2: swapped pair; k=3: one fixed + swapped pair
    long long size1_type3 = 0; // k=3 only: 3-cycle inside the edge
    std::vector<std::vector<long long>> refined; // sizes 2 and 3 only

    long long potential_edges() const { return binomial(n, k); }
};

BinDecomposition edge_permutation_bins(const Permutation &pi, int n, int k);

// Splits every bin of size >= 4 into consecutive pairs, closing with a
// triple when the length is odd; bins of size 2 and 3 pass through.
// Size-1 bins never enter the refined list.
BinDecomposition refine_bins(const BinDecomposition &b);

// Number of refined bins holding at least one edge and one non-edge of G.
long long half_full_count(const Graph &g, const Permutation &pi);
long long half_full_count(const Hypergraph &g, const Permutation &pi);

struct AsymmetryResult {
    bool asymmetric = false;
    std::optional<Permutation> witness; // a violating permutation when not asymmetric
};

// Exhaustive check of (beta, gamma)-asymmetry: every permutation fixing at
// most floor((1-beta) n) vertices must score below 1 - gamma.  Guarded at
// n <= 9.
AsymmetryResult is_asymmetric_bruteforce(const Graph &g, const Rational &beta,
                                         const Rational &gamma);
AsymmetryResult is_asymmetric_bruteforce(const Hypergraph &g, const Rational &beta,
                                         const Rational &gamma);

enum class FalsifierMode { automatic, hill_climb, brute_force };

struct TrialRecord {
    int trial = 0;
    bool violation_found = false;
    std::optional<Permutation> witness;
    Rational best_score;            // best automorphism score seen under the constraint
    bool internal_checks_passed = true; // bin partition, type caps, s_pi <= |diff|

    std::string to_json() const;
};

struct MonteCarloReport {
    int n = 0;
    long long m = 0;
    Rational beta;
    Rational gamma;
    int trials = 0;
    long long violations_found = 0;
    FalsifierMode mode_used = FalsifierMode::hill_climb;
    std::vector<TrialRecord> records;

    std::string to_json() const;
};

// Samples `trials` graphs from G_{n,m} and runs a falsifier per sample: a
// transposition hill-climb with restarts, or exhaustive search when n is
// within the brute-force guard (the automatic mode picks for you).  The
// result is one-sided: a found violation is a certificate, an absent one
// is not.  Every sample also re-checks the bin invariants.  Trials run on
// a worker pool (0 = hardware concurrency); per-trial derived seeds make
// the report identical for every worker count.
MonteCarloReport monte_carlo_asymmetry(int n, long long m, const Rational &beta,
                                       const Rational &gamma, int trials,
                                       int search_budget, std::uint64_t seed,
                                       FalsifierMode mode = FalsifierMode::automatic,
                                       unsigned workers = 0);

// Hill-climb falsifier on a single graph; exposed for calibration tests.
TrialRecord hill_climb_violation(const Graph &g, const Rational &beta,
                                 const Rational &gamma, int search_budget,
                                 std::uint64_t seed);

} // namespace gisoforge

#endif // GISOFORGE_ASYMMETRY_HPP
