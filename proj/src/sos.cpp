#include "gisoforge/sos.hpp"

#include "gisoforge/guards.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace gisoforge {

MultilinearPoly variable_sum_generator(int var) {
    return MultilinearPoly::indeterminate(indicator_id(var, 0)) +
           MultilinearPoly::indeterminate(indicator_id(var, 1)) -
           MultilinearPoly::constant(Rational(1));
}

MultilinearPoly constraint_generator(const XorConstraint &c) {
    MultilinearPoly sum;
    for (int a1 = 0; a1 < 2; ++a1) {
        for (int a2 = 0; a2 < 2; ++a2) {
            for (int a3 = 0; a3 < 2; ++a3) {
                if ((a1 ^ a2 ^ a3) != c.b) continue;
                sum += MultilinearPoly::monomial(
                    {indicator_id(c.j1, a1), indicator_id(c.j2, a2), indicator_id(c.j3, a3)},
                    Rational(1));
            }
        }
    }
    return sum - MultilinearPoly::constant(Rational(1));
}

AxiomSystem axiom_system(const ThreeXorInstance &inst) {
    AxiomSystem sys;
    sys.n = inst.n;
    for (int j = 0; j < inst.n; ++j) {
        for (int a = 0; a < 2; ++a) {
            MultilinearPoly x = MultilinearPoly::indeterminate(indicator_id(j, a));
            sys.booleanity.push_back(x * x - x);
        }
        sys.variable_sums.push_back(variable_sum_generator(j));
    }
    for (const auto &c : inst.constraints) sys.constraint_sums.push_back(constraint_generator(c));
    return sys;
}

MultilinearPoly substitute_pi(const ReducedPair &pair, int u, int v) {
    const GadgetGraph &src = pair.source;
    const GadgetGraph &dst = pair.homogeneous;
    bool u_var = src.is_variable_vertex(u);
    bool v_var = dst.is_variable_vertex(v);
    if (u_var != v_var) return MultilinearPoly::zero();
    if (u_var) {
        int x = src.vertex_variable(u);
        if (dst.vertex_variable(v) != x) return MultilinearPoly::zero();
        int a = src.vertex_value(u);
        int b = dst.vertex_value(v);
        return MultilinearPoly::indeterminate(indicator_id(x, a ^ b));
    }
    int i = src.vertex_constraint(u);
    if (dst.vertex_constraint(v) != i) return MultilinearPoly::zero();
    const XorConstraint &c = src.instance().constraints[static_cast<std::size_t>(i)];
    ConstraintAssignment alpha = src.satisfying(i)[static_cast<std::size_t>(src.vertex_rank(u))];
    ConstraintAssignment beta = dst.satisfying(i)[static_cast<std::size_t>(dst.vertex_rank(v))];
    int vars[3] = {c.j1, c.j2, c.j3};
    Monomial ids;
    for (int t = 0; t < 3; ++t)
        ids.push_back(indicator_id(vars[t], alpha[static_cast<std::size_t>(t)] ^
                                                beta[static_cast<std::size_t>(t)]));
    return MultilinearPoly::monomial(std::move(ids), Rational(1));
}

LocalVariety local_variety_points(const ThreeXorInstance &inst,
                                  const std::vector<int> &constraint_subset,
                                  const std::vector<int> &extra_variables) {
    std::set<int> vars(extra_variables.begin(), extra_variables.end());
    for (int ci : constraint_subset) {
        const auto &c = inst.constraints.at(static_cast<std::size_t>(ci));
        vars.insert(c.j1);
        vars.insert(c.j2);
        vars.insert(c.j3);
    }
    LocalVariety out;
    out.variables.assign(vars.begin(), vars.end());
    check_guard(static_cast<long long>(out.variables.size()), 8, "local_variety_points");
    std::size_t count = out.variables.size();
    for (std::uint32_t bits = 0; bits < (1u << count); ++bits) {
        std::map<int, int> assign;
        for (std::size_t i = 0; i < count; ++i)
            assign[out.variables[i]] = (bits >> i) & 1;
        bool ok = true;
        for (int ci : constraint_subset) {
            const auto &c = inst.constraints[static_cast<std::size_t>(ci)];
            if ((assign[c.j1] ^ assign[c.j2] ^ assign[c.j3]) != c.b) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        std::map<int, int> point;
        for (const auto &[x, value] : assign) {
            point[indicator_id(x, 0)] = value == 0 ? 1 : 0;
            point[indicator_id(x, 1)] = value == 1 ? 1 : 0;
        }
        out.points.push_back(std::move(point));
    }
    return out;
}

namespace {

// Constraints whose vertices appear among the endpoints, plus the
// variables of variable-vertex endpoints.
void edge_locality(const GadgetGraph &g, const Edge &edge,
                   std::vector<int> &constraints, std::vector<int> &variables) {
    for (int u : {edge.first, edge.second}) {
        if (g.is_variable_vertex(u))
            variables.push_back(g.vertex_variable(u));
        else
            constraints.push_back(g.vertex_constraint(u));
    }
    std::sort(constraints.begin(), constraints.end());
    constraints.erase(std::unique(constraints.begin(), constraints.end()), constraints.end());
}

MultilinearPoly edge_identity_polynomial(const ReducedPair &pair, const Edge &edge) {
    MultilinearPoly sum;
    for (const auto &h_edge : pair.homogeneous.graph().edges()) {
        // Ordered pairs (v, v') with {v, v'} an edge on the homogeneous side.
        for (int flip = 0; flip < 2; ++flip) {
            int v = flip == 0 ? h_edge.first : h_edge.second;
            int v2 = flip == 0 ? h_edge.second : h_edge.first;
            MultilinearPoly a = substitute_pi(pair, edge.first, v);
            if (a.is_zero()) continue;
            MultilinearPoly b = substitute_pi(pair, edge.second, v2);
            if (b.is_zero()) continue;
            sum += a * b;
        }
    }
    return sum - MultilinearPoly::constant(Rational(1));
}

IdentityCheck check_on_variety(const MultilinearPoly &p, const LocalVariety &variety) {
    IdentityCheck out;
    if (variety.empty()) {
        out.vacuous = true;
        return out;
    }
    for (const auto &point : variety.points)
        if (p.evaluate(point) != 0) return out;
    out.passed = true;
    return out;
}

} // namespace

IdentityCheck verify_edge_identity(const ReducedPair &pair, const Edge &edge) {
    if (!pair.source.graph().has_edge(edge.first, edge.second))
        throw std::invalid_argument("verify_edge_identity: not an edge of the source graph");
    std::vector<int> constraints, variables;
    edge_locality(pair.source, edge, constraints, variables);
    MultilinearPoly p = edge_identity_polynomial(pair, edge);
    LocalVariety variety = local_variety_points(pair.source.instance(), constraints, variables);
    return check_on_variety(p, variety);
}

bool verify_clique_edge_algebraic(const ReducedPair &pair, int constraint,
                                  int rank_a, int rank_b) {
    const GadgetGraph &src = pair.source;
    const GadgetGraph &dst = pair.homogeneous;
    int u = src.constraint_vertex(constraint, rank_a);
    int u2 = src.constraint_vertex(constraint, rank_b);
    MultilinearPoly s1, s2, diagonal;
    for (int r = 0; r < 4; ++r) {
        int v = dst.constraint_vertex(constraint, r);
        MultilinearPoly a = substitute_pi(pair, u, v);
        MultilinearPoly b = substitute_pi(pair, u2, v);
        s1 += a;
        s2 += b;
        diagonal += a * b;
    }
    MultilinearPoly one = MultilinearPoly::constant(Rational(1));
    MultilinearPoly lhs = edge_identity_polynomial(pair, {u, u2});
    // lhs + diagonal must equal (s1 - 1) s2 + (s2 - 1) as exact polynomials.
    MultilinearPoly rhs = (s1 - one) * s2 + (s2 - one);
    if (!(lhs + diagonal == rhs)) return false;
    // Each diagonal monomial carries both values of some variable, hence
    // lies in the ideal generated by Booleanity and the sum-to-one axioms.
    for (const auto &[ids, coeff] : diagonal.terms()) {
        bool has_contradiction = false;
        for (int id : ids) {
            if ((id & 1) == 0 &&
                std::binary_search(ids.begin(), ids.end(), id + 1)) {
                has_contradiction = true;
                break;
            }
        }
        if (!has_contradiction) return false;
    }
    return true;
}

namespace {

void tally(ClassStats &stats, const IdentityCheck &check) {
    ++stats.checked;
    if (check.vacuous)
        ++stats.vacuous;
    else if (check.passed)
        ++stats.passed;
    else
        ++stats.failed;
}

std::vector<int> vertex_locality_constraints(const GadgetGraph &g, int v) {
    if (g.is_variable_vertex(v)) return {};
    return {g.vertex_constraint(v)};
}

std::vector<int> vertex_locality_variables(const GadgetGraph &g, int v) {
    if (g.is_variable_vertex(v)) return {g.vertex_variable(v)};
    return {};
}

} // namespace

SosReport verify_sos_reduction(const ThreeXorInstance &inst) {
    check_guard(inst.m(), 15, "verify_sos_reduction constraints");
    check_guard(inst.n, 10, "verify_sos_reduction variables");
    ReducedPair pair = reduce(inst);
    const Graph &src = pair.source.graph();
    int total = src.vertex_count();
    SosReport report;

    // (I) Booleanity: p^2 - p for every pair indeterminate.  After the
    // multilinear reduction the difference must vanish identically.
    for (int u = 0; u < total; ++u) {
        for (int v = 0; v < total; ++v) {
            MultilinearPoly p = substitute_pi(pair, u, v);
            IdentityCheck check;
            check.passed = (p * p - p).is_zero();
            tally(report.booleanity, check);
        }
    }

    // (II) Row sums on the source side, column sums on the homogeneous side.
    for (int u = 0; u < total; ++u) {
        MultilinearPoly sum;
        for (int v = 0; v < total; ++v) sum += substitute_pi(pair, u, v);
        sum -= MultilinearPoly::constant(Rational(1));
        LocalVariety variety = local_variety_points(
            inst, vertex_locality_constraints(pair.source, u),
            vertex_locality_variables(pair.source, u));
        tally(report.row_sums, check_on_variety(sum, variety));
    }
    for (int v = 0; v < total; ++v) {
        MultilinearPoly sum;
        for (int u = 0; u < total; ++u) sum += substitute_pi(pair, u, v);
        sum -= MultilinearPoly::constant(Rational(1));
        LocalVariety variety = local_variety_points(
            inst, vertex_locality_constraints(pair.homogeneous, v),
            vertex_locality_variables(pair.homogeneous, v));
        tally(report.column_sums, check_on_variety(sum, variety));
    }

    // (III) every per-edge identity.
    for (const auto &edge : src.edges())
        tally(report.edge_identities, verify_edge_identity(pair, edge));

    // Cross-check the clique edges by the explicit decomposition as well.
    for (long long i = 0; i < inst.m(); ++i) {
        for (int r = 0; r < 4; ++r) {
            for (int r2 = r + 1; r2 < 4; ++r2) {
                IdentityCheck check;
                check.passed = verify_clique_edge_algebraic(pair, static_cast<int>(i), r, r2);
                tally(report.clique_cross_checks, check);
            }
        }
    }

    auto clean = [](const ClassStats &s) { return s.failed == 0 && s.vacuous == 0; };
    report.all_passed = clean(report.booleanity) && clean(report.row_sums) &&
                        clean(report.column_sums) && clean(report.edge_identities) &&
                        clean(report.clique_cross_checks);
    return report;
}

PointPseudoExpectation::PointPseudoExpectation(const Assignment &tau,
                                               const ThreeXorInstance &inst) {
    if (val(inst, tau) != 1)
        throw std::invalid_argument("point pseudo-expectation: assignment must satisfy every constraint");
    for (int j = 0; j < inst.n; ++j) {
        point_[indicator_id(j, 0)] = tau.values[static_cast<std::size_t>(j)] == 0 ? 1 : 0;
        point_[indicator_id(j, 1)] = tau.values[static_cast<std::size_t>(j)] == 1 ? 1 : 0;
    }
}

Rational PointPseudoExpectation::operator()(const MultilinearPoly &p) const {
    return p.evaluate(point_);
}

std::string SosReport::to_json() const {
    nlohmann::json j;
    auto emit = [](const ClassStats &s) {
        return nlohmann::json{{"checked", s.checked},
                              {"passed", s.passed},
                              {"vacuous", s.vacuous},
                              {"failed", s.failed}};
    };
    j["booleanity"] = emit(booleanity);
    j["row_sums"] = emit(row_sums);
    j["column_sums"] = emit(column_sums);
    j["edge_identities"] = emit(edge_identities);
    j["clique_cross_checks"] = emit(clique_cross_checks);
    j["all_passed"] = all_passed;
    return j.dump();
}

} // namespace gisoforge
