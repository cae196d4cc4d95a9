#ifndef GISOFORGE_ABELIAN_HPP
#define GISOFORGE_ABELIAN_HPP

#include "gisoforge/graph.hpp"
#include "gisoforge/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gisoforge {

// Z_{p1} + Z_{p2} + ... + Z_{pt}; elements are coordinate tuples.
class AbelianGroup {
public:
    using Elem = std::vector<int>;

    explicit AbelianGroup(std::vector<int> moduli);
    static AbelianGroup parse(const std::string &text); // e.g. "Z3xZ5"

    const std::vector<int> &moduli() const { return moduli_; }
    int coordinates() const { return static_cast<int>(moduli_.size()); }
    long long order() const { return order_; }

    Elem zero() const { return Elem(moduli_.size(), 0); }
    Elem add(const Elem &a, const Elem &b) const;
    Elem neg(const Elem &a) const;
    Elem sub(const Elem &a, const Elem &b) const;

    // Mixed-radix rank with the first coordinate most significant; element
    // ranks index the variable vertices of gadgets.
    long long rank(const Elem &a) const;
    Elem element(long long rank) const;

    std::string to_string() const;

private:
    std::vector<int> moduli_;
    long long order_;
};

// A k-ary predicate given extensionally as a subset of H^k (tuples are
// flattened coordinate lists of length k*t).
struct SubgroupPredicate {
    AbelianGroup group;
    int k = 0;
    std::vector<std::vector<int>> elements; // sorted flattened tuples

    bool contains(const std::vector<int> &flat_tuple) const;
    long long size() const { return static_cast<long long>(elements.size()); }
    std::vector<AbelianGroup::Elem> unflatten(const std::vector<int> &flat) const;
    std::vector<int> flatten(const std::vector<AbelianGroup::Elem> &tuple) const;
};

SubgroupPredicate predicate_from_elements(const AbelianGroup &group, int k,
                                          std::vector<std::vector<int>> elements);
// Eagerly closes a generator list under addition; guarded by |H|^k.
SubgroupPredicate predicate_from_generators(const AbelianGroup &group, int k,
                                            const std::vector<std::vector<int>> &generators);
// {(a_1, ..., a_k) : sum a_i = 0}; the 3XOR predicate at H = Z_2, k = 3.
SubgroupPredicate xor_predicate(const AbelianGroup &group, int k = 3);

struct PredicateCheck {
    bool ok = false;
    std::string failure;                  // empty when ok
    std::vector<int> witness;             // offending tuple, when applicable
};

// Subgroup closure, properness, uniform coordinate marginals, and exact
// pairwise independence of coordinate pairs.
PredicateCheck check_pairwise_independent_subgroup(const SubgroupPredicate &psi);

// The gadget forcing every automorphism to act on the variable vertices as
// a group shift.  Variable vertices are element ranks 0..|H|-1; row-star
// and cycle-unit auxiliaries follow.
struct VariableGadget {
    AbelianGroup group;
    Graph graph;

    struct Star {
        int coordinate;      // 0-based; a star for this row has coordinate+1 outer nodes
        long long row_base;  // rank of the row member with this coordinate zero
        int inner;
        std::vector<int> outers;
    };
    struct CycleUnit {
        int coordinate;
        long long row_base;
        int position; // j: the unit sits between row members j and j+1 (mod p)
        int u, v;
    };

    std::vector<Star> stars;
    std::vector<CycleUnit> units;

    int variable_vertex(const AbelianGroup::Elem &e) const {
        return static_cast<int>(group.rank(e));
    }
    int auxiliary_count() const {
        return graph.vertex_count() - static_cast<int>(group.order());
    }

    // The automorphism sending x -> b to x -> a + b, extended over the
    // auxiliary vertices.
    Permutation shift_automorphism(const AbelianGroup::Elem &a) const;
};

// Stars only; for t = 1 this adds nothing.
VariableGadget row_gadget(const AbelianGroup &group);
// Row gadget plus per-row cycle units (a single edge when p = 2).
VariableGadget variable_gadget(const AbelianGroup &group);

struct AutomorphismCensus {
    std::vector<Permutation> all;                       // every graph automorphism
    std::vector<std::vector<int>> variable_actions;     // distinct actions on element ranks
    bool variable_set_preserved = true;                 // every automorphism fixes V_x setwise
    bool every_action_is_shift = true;
    std::vector<AbelianGroup::Elem> shifts_realized;    // the shift of each distinct action
};

// Exhaustive backtracking over all automorphisms of the gadget.  Multi-outer
// row stars have interchangeable pendant nodes, so the full list can exceed
// |H|; the census therefore also reports the distinct actions on the
// variable vertices, which are exactly the |H| shifts.
AutomorphismCensus enumerate_gadget_automorphisms(const VariableGadget &gadget);

// One constraint of psi(x_{j_1} + a_1, ..., x_{j_k} + a_k) = 1; variable
// order matters since psi need not be symmetric.
struct AdditiveConstraint {
    std::vector<int> vars;
    std::vector<AbelianGroup::Elem> shifts;
};

struct AdditiveCspInstance {
    int n = 0;
    AbelianGroup group;
    SubgroupPredicate psi;
    std::vector<AdditiveConstraint> constraints;

    long long m() const { return static_cast<long long>(constraints.size()); }
    // Satisfying assignments (value tuples) of constraint i, sorted by rank.
    std::vector<std::vector<AbelianGroup::Elem>> satisfying(int constraint) const;
    Hypergraph constraint_hypergraph() const;
};

AdditiveCspInstance homogenize(const AdditiveCspInstance &inst);

struct GroupAssignment {
    std::vector<AbelianGroup::Elem> values;
};

Rational val(const AdditiveCspInstance &inst, const GroupAssignment &tau);

AdditiveCspInstance sample_random_additive(const AbelianGroup &group,
                                           const SubgroupPredicate &psi, int n,
                                           long long m, std::uint64_t seed);

struct PlantedAdditive {
    AdditiveCspInstance instance;
    GroupAssignment tau;
    long long flipped = 0;
};
PlantedAdditive plant_additive(const AbelianGroup &group, const SubgroupPredicate &psi,
                               int n, long long m, const Rational &eps, std::uint64_t seed);

// Variable vertex sets plus one constraint vertex per satisfying
// assignment, joined to its k consistent variable vertices.  No cliques,
// no gadget auxiliaries: just the consistency structure.
Graph label_extended_graph(const AdditiveCspInstance &inst, int constraint);

// Full encoding: per-variable gadgets, per-constraint cliques, and the
// label-extended consistency edges.
class AdditiveGadgetGraph {
public:
    explicit AdditiveGadgetGraph(const AdditiveCspInstance &inst);

    const Graph &graph() const { return graph_; }
    const AdditiveCspInstance &instance() const { return inst_; }

    long long n1() const { return n1_; } // constraint vertices per constraint
    long long n2() const { return n2_; } // vertices per variable block
    long long m1() const { return m1_; } // edges per constraint
    long long m2() const { return m2_; } // edges per variable block

    int variable_block_offset(int var) const { return static_cast<int>(n2_)*var; }
    int variable_vertex(int var, const AbelianGroup::Elem &value) const;
    int constraint_vertex(int constraint, int rank) const;
    const std::vector<std::vector<AbelianGroup::Elem>> &satisfying(int constraint) const {
        return satisfying_[static_cast<std::size_t>(constraint)];
    }

    std::vector<int> variable_block(int var) const;      // gadget incl. auxiliaries
    std::vector<int> variable_vertices(int var) const;   // the |H| value vertices only
    std::vector<int> constraint_clique(int constraint) const;

    const VariableGadget &gadget() const { return gadget_; }

private:
    AdditiveCspInstance inst_;
    VariableGadget gadget_;
    std::vector<std::vector<std::vector<AbelianGroup::Elem>>> satisfying_;
    long long n1_, n2_, m1_, m2_;
    Graph graph_;
};

AdditiveGadgetGraph encode_additive(const AdditiveCspInstance &inst);

struct AdditiveReducedPair {
    AdditiveGadgetGraph source;
    AdditiveGadgetGraph homogeneous;
};

AdditiveReducedPair reduce_additive(const AdditiveCspInstance &inst);

// Gadget shifts on the variable side, beta -> beta - tau on satisfied
// constraints, rank order on unsatisfied ones.
VertexMap additive_completeness_map(const AdditiveCspInstance &inst, const GroupAssignment &tau);

struct AdditiveDecodeParams {
    Rational eps;
    Rational beta;
    Rational gamma;
    Rational c;
};

struct AdditiveClaimCheck {
    std::string name;
    Rational threshold;
    Rational actual;
    bool holds = false;
};

struct AdditiveDecodeReport {
    std::vector<int> a_set;
    std::vector<int> b_set;       // variable blocks mapped onto variable blocks
    std::vector<int> b_shift;     // variables mapped by a coordinate shift
    Permutation sigma;
    GroupAssignment tau;
    Score aut_sigma;
    Rational val_tau;
    Score gi_of_pi;
    Rational delta;
    bool score_above_threshold = false;
    bool degree_bounded = false;
    std::optional<bool> asymmetric;
    bool gamma_large_enough = false;
    bool claims_checked = false;
    std::vector<AdditiveClaimCheck> claims;

    std::string to_json() const;
};

AdditiveDecodeReport additive_decode(const AdditiveReducedPair &pair, const VertexMap &pi,
                                     const AdditiveDecodeParams &params);

std::string predicate_to_json(const SubgroupPredicate &psi);
SubgroupPredicate predicate_from_json(const std::string &text);
std::string additive_instance_to_json(const AdditiveCspInstance &inst);
AdditiveCspInstance additive_instance_from_json(const std::string &text);

} // namespace gisoforge

#endif // GISOFORGE_ABELIAN_HPP
