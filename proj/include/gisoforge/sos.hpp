#ifndef GISOFORGE_SOS_HPP
#define GISOFORGE_SOS_HPP

#include "gisoforge/multilinear.hpp"
#include "gisoforge/reduction.hpp"
#include "gisoforge/xor_csp.hpp"

#include <map>
#include <string>
#include <vector>

namespace gisoforge {

// Indicator indeterminates A[x -> a] are numbered 2x + a, matching the
// variable-vertex layout of the encoded graphs.
inline int indicator_id(int var, int value) { return 2 * var + value; }

// The axiom system of a 3XOR instance: Booleanity per indeterminate, a
// sum-to-one generator per variable, and a satisfying-indicator generator
// (four degree-3 monomials minus one) per constraint.
struct AxiomSystem {
    int n = 0;
    std::vector<MultilinearPoly> booleanity;   // identically zero after A^2 -> A
    std::vector<MultilinearPoly> variable_sums;
    std::vector<MultilinearPoly> constraint_sums;
};

AxiomSystem axiom_system(const ThreeXorInstance &inst);

MultilinearPoly variable_sum_generator(int var);
MultilinearPoly constraint_generator(const XorConstraint &c);

// Image of the pair indeterminate for (u in V(G), v in V(homogeneous G)):
// a single indicator for same-variable pairs, a degree-3 monomial for
// same-constraint pairs, zero for everything else.
MultilinearPoly substitute_pi(const ReducedPair &pair, int u, int v);

// All 0/1 indicator valuations over the touched variables that satisfy
// every listed constraint exactly.
struct LocalVariety {
    std::vector<int> variables;
    std::vector<std::map<int, int>> points; // indicator id -> 0/1
    bool empty() const { return points.empty(); }
};

LocalVariety local_variety_points(const ThreeXorInstance &inst,
                                  const std::vector<int> &constraint_subset,
                                  const std::vector<int> &extra_variables = {});

struct IdentityCheck {
    bool passed = false;
    bool vacuous = false; // locally unsatisfiable neighborhood; never counts as a pass
};

// Evaluates the per-edge identity (the sum over ordered homogeneous-side
// edge images of the two substituted endpoints, minus one) on the local
// variety of the constraints touching the edge.  Vanishing there is local
// ideal membership: the local axioms cut out a radical ideal over the 0/1
// points.
IdentityCheck verify_edge_identity(const ReducedPair &pair, const Edge &edge);

// Second route for clique edges only: exhibits the explicit decomposition
// (S1*S2 - 1) = (S1 - 1)*S2 + (S2 - 1) and certifies the diagonal
// correction term monomial-by-monomial (each contains both values of some
// variable).  Pure polynomial identities, no evaluation.
bool verify_clique_edge_algebraic(const ReducedPair &pair, int constraint,
                                  int rank_a, int rank_b);

struct ClassStats {
    long long checked = 0;
    long long passed = 0;
    long long vacuous = 0;
    long long failed = 0;
};

struct SosReport {
    ClassStats booleanity;     // (I)
    ClassStats row_sums;       // (II), source side
    ClassStats column_sums;    // (II), homogeneous side
    ClassStats edge_identities; // (III), per-edge equality form
    ClassStats clique_cross_checks;
    bool all_passed = false;

    std::string to_json() const;
};

// Checks axiom classes (I)-(III) of the pair-indeterminate system against
// the instance's axiom system by local-variety evaluation.  Guards:
// m <= 15, n <= 10.
SosReport verify_sos_reduction(const ThreeXorInstance &inst);

// Point pseudo-expectation induced by a fully satisfying assignment; maps
// a polynomial in the indicator indeterminates to its value at the 0/1
// indicator point of tau.
class PointPseudoExpectation {
public:
    PointPseudoExpectation(const Assignment &tau, const ThreeXorInstance &inst);

    Rational operator()(const MultilinearPoly &p) const;
    const std::map<int, int> &point() const { return point_; }

private:
    std::map<int, int> point_;
};

} // namespace gisoforge

#endif // GISOFORGE_SOS_HPP
