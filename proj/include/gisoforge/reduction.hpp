#ifndef GISOFORGE_REDUCTION_HPP
#define GISOFORGE_REDUCTION_HPP

#include "gisoforge/graph.hpp"
#include "gisoforge/rational.hpp"
#include "gisoforge/xor_csp.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace gisoforge {

// A partial assignment to the three variables of one constraint, in the
// order of its sorted variable indices.
using ConstraintAssignment = std::array<int, 3>;

// Instance encoded as a graph.  Layout: variable vertices first (value 0
// then 1 per variable), then per constraint its four vertices sorted by
// assignment.  Each constraint vertex is adjacent to its clique mates and
// to the three variable vertices it is consistent with; each variable pair
// (x->0, x->1) is joined by an edge.
class GadgetGraph {
public:
    GadgetGraph(const ThreeXorInstance &inst);

    const Graph &graph() const { return graph_; }
    const ThreeXorInstance &instance() const { return inst_; }

    int variable_vertex(int var, int value) const { return 2 * var + value; }
    int constraint_vertex(int constraint, int assignment_rank) const {
        return 2 * inst_.n + 4 * constraint + assignment_rank;
    }
    // Satisfying assignments of constraint i, sorted; rank r names vertex
    // constraint_vertex(i, r).
    const std::vector<ConstraintAssignment> &satisfying(int constraint) const {
        return satisfying_[static_cast<std::size_t>(constraint)];
    }
    int assignment_rank(int constraint, const ConstraintAssignment &a) const;

    // Vertex-set blocks used by the decoder.
    std::vector<int> variable_pair(int var) const;
    std::vector<int> constraint_clique(int constraint) const;

    bool is_variable_vertex(int v) const { return v < 2 * inst_.n; }
    int vertex_variable(int v) const { return v / 2; }      // variable vertices only
    int vertex_value(int v) const { return v % 2; }          // variable vertices only
    int vertex_constraint(int v) const { return (v - 2 * inst_.n) / 4; }
    int vertex_rank(int v) const { return (v - 2 * inst_.n) % 4; }

private:
    ThreeXorInstance inst_;
    std::vector<std::vector<ConstraintAssignment>> satisfying_;
    Graph graph_;
};

// The ten-vertex gadget of a single constraint, as its own graph.
GadgetGraph gadget_graph(const XorConstraint &c);

GadgetGraph encode(const ThreeXorInstance &inst);

struct ReducedPair {
    GadgetGraph source;      // G for the instance
    GadgetGraph homogeneous; // G for the all-zero-rhs instance
};

ReducedPair reduce(const ThreeXorInstance &inst);

// Bijection mapping variable vertex (x_j -> b) to (x_j -> b + tau_j) and,
// for tau-satisfied constraints, each constraint vertex a to a + tau.
// Vertices of unsatisfied constraints map to a + tau + (1,1,1), which
// violates all twelve of their consistency edges, so the score is exactly
// (M - 12u)/M for u unsatisfied constraints.
VertexMap completeness_map(const ThreeXorInstance &inst, const Assignment &tau);

struct DecodeParams {
    Rational eps;
    Rational beta;
    Rational gamma;
    Rational c;
};

struct ClaimCheck {
    std::string name;
    Rational threshold;
    Rational actual;
    bool holds = false;
};

struct DecodeReport {
    std::vector<int> a_set;              // constraints whose clique maps onto a clique
    std::vector<int> a_partner;          // image constraint index, aligned with a_set
    std::vector<int> b_set;              // variables whose pair maps onto a pair
    std::vector<int> b_partner;
    Permutation sigma;                   // variable permutation extending the B-map
    Assignment tau;                      // decoded assignment
    Score aut_sigma;                     // sigma on the constraint triple multiset
    Rational val_tau;
    Score gi_of_pi;
    Rational delta;                      // min{1/200, gamma/48, eps/(95 c)}
    bool score_above_threshold = false;  // gi(pi) >= 1 - delta
    bool degree_bounded = false;         // (eps, 100c) on the constraint hypergraph
    std::optional<bool> asymmetric;      // brute force when within guard, else unset
    bool gamma_large_enough = false;     // gamma >= 200 eps
    bool claims_checked = false;
    std::vector<ClaimCheck> claims;

    std::string to_json() const;
};

// Recovers (sigma, tau) from a candidate bijection and evaluates the
// decoding-chain inequalities when the hypergraph preconditions hold and
// the bijection scores at least 1 - delta.
DecodeReport decode(const ReducedPair &pair, const VertexMap &pi, const DecodeParams &params);

// Parity of |neighbors of constraint vertex alpha among the variable
// vertices (x_{j1} -> b1, x_{j2} -> b2, x_{j3} -> b3)|.  Equals
// 1 + b + b1 + b2 + b3 (mod 2): each consistency indicator [alpha_t = b_t]
// is 1 + alpha_t + b_t over Z_2 and the alpha_t sum to b.
int constraint_vertex_parity(const XorConstraint &c, const ConstraintAssignment &alpha,
                             int b1, int b2, int b3);

// Exhaustive check of the parity rule over all 4 constraint vertices and
// all 8 boundary vectors of a constraint.
bool parity_rule_holds(const XorConstraint &c);

// graph6 pair block plus a JSON sidecar carrying vertex roles and names.
std::string pair_to_text(const ReducedPair &pair);
std::string pair_sidecar_json(const ReducedPair &pair);

} // namespace gisoforge

#endif // GISOFORGE_REDUCTION_HPP
