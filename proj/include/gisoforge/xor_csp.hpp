#ifndef GISOFORGE_XOR_CSP_HPP
#define GISOFORGE_XOR_CSP_HPP

#include "gisoforge/graph.hpp"
#include "gisoforge/rational.hpp"
#include "gisoforge/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gisoforge {

// One equation x_{j1} + x_{j2} + x_{j3} = b over Z_2, with j1 < j2 < j3.
struct XorConstraint {
    int j1, j2, j3;
    int b;

    bool operator==(const XorConstraint &o) const = default;
};

struct ThreeXorInstance {
    int n = 0;
    std::vector<XorConstraint> constraints;

    long long m() const { return static_cast<long long>(constraints.size()); }
    // Hypergraph on the distinct variable triples of the constraints.
    Hypergraph constraint_hypergraph() const;
};

struct Assignment {
    std::vector<int> values; // one Z_2 value per variable
};

XorConstraint make_xor_constraint(int a, int b, int c, int rhs);

enum class TripleSampling { with_replacement, without_replacement };

// m constraints, each on a uniform unordered variable triple with uniform
// right-hand side.  Triples repeat across constraints by default.
ThreeXorInstance sample_random_3xor(int n, long long m, std::uint64_t seed,
                                    TripleSampling sampling = TripleSampling::with_replacement);

ThreeXorInstance homogenize(const ThreeXorInstance &inst);
ThreeXorInstance flip_all_rhs(const ThreeXorInstance &inst);

Rational val(const ThreeXorInstance &inst, const Assignment &tau);

// Random instance plus an assignment satisfying all but exactly
// floor(eps*m) constraints (those get flipped right-hand sides).
struct PlantedInstance {
    ThreeXorInstance instance;
    Assignment tau;
    long long flipped = 0;
};
PlantedInstance plant(int n, long long m, const Rational &eps, std::uint64_t seed);

struct BruteForceResult {
    Rational value;
    Assignment witness;
};
// Exact maximum of val over all 2^n assignments; guarded at n <= 24.
BruteForceResult brute_force_val(const ThreeXorInstance &inst);

std::string instance_to_json(const ThreeXorInstance &inst);
ThreeXorInstance instance_from_json(const std::string &text);
std::string assignment_to_json(const Assignment &tau);
Assignment assignment_from_json(const std::string &text);

} // namespace gisoforge

#endif // GISOFORGE_XOR_CSP_HPP
