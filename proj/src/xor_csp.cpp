#include "gisoforge/xor_csp.hpp"

#include "gisoforge/guards.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace gisoforge {

XorConstraint make_xor_constraint(int a, int b, int c, int rhs) {
    int v[3] = {a, b, c};
    std::sort(v, v + 3);
    if (v[0] == v[1] || v[1] == v[2])
        throw std::invalid_argument("xor constraint: variables must be distinct");
    if (v[0] < 0) throw std::invalid_argument("xor constraint: negative variable index");
    if ((rhs & ~1) != 0) throw std::invalid_argument("xor constraint: rhs must be 0 or 1");
    return XorConstraint{v[0], v[1], v[2], rhs};
}

Hypergraph ThreeXorInstance::constraint_hypergraph() const {
    std::set<std::vector<int>> triples;
    for (const auto &c : constraints) triples.insert({c.j1, c.j2, c.j3});
    return Hypergraph(n, 3, {triples.begin(), triples.end()});
}

ThreeXorInstance sample_random_3xor(int n, long long m, std::uint64_t seed,
                                    TripleSampling sampling) {
    if (n < 3) throw std::invalid_argument("sample_random_3xor: need at least 3 variables");
    Rng rng(seed);
    ThreeXorInstance inst;
    inst.n = n;
    inst.constraints.reserve(static_cast<std::size_t>(m));
    long long universe = binomial(n, 3);
    if (sampling == TripleSampling::without_replacement && m > universe)
        throw std::invalid_argument("sample_random_3xor: more constraints than distinct triples");
    std::set<long long> used;
    for (long long i = 0; i < m; ++i) {
        long long idx;
        for (;;) {
            idx = static_cast<long long>(rng.below(static_cast<std::uint64_t>(universe)));
            if (sampling == TripleSampling::with_replacement || used.insert(idx).second) break;
        }
        auto t = unrank_triple(idx);
        inst.constraints.push_back(XorConstraint{t[0], t[1], t[2], rng.bit()});
    }
    return inst;
}

ThreeXorInstance homogenize(const ThreeXorInstance &inst) {
    ThreeXorInstance out = inst;
    for (auto &c : out.constraints) c.b = 0;
    return out;
}

ThreeXorInstance flip_all_rhs(const ThreeXorInstance &inst) {
    ThreeXorInstance out = inst;
    for (auto &c : out.constraints) c.b ^= 1;
    return out;
}

Rational val(const ThreeXorInstance &inst, const Assignment &tau) {
    if (static_cast<int>(tau.values.size()) != inst.n)
        throw std::invalid_argument("val: assignment length != variable count");
    if (inst.constraints.empty()) return Rational(1);
    long long sat = 0;
    for (const auto &c : inst.constraints) {
        int s = tau.values[c.j1] ^ tau.values[c.j2] ^ tau.values[c.j3];
        if (s == c.b) ++sat;
    }
    return make_rational(sat, inst.m());
}

PlantedInstance plant(int n, long long m, const Rational &eps, std::uint64_t seed) {
    if (eps < 0 || eps > 1) throw std::invalid_argument("plant: eps must be in [0,1]");
    Rng rng(seed);
    PlantedInstance out;
    out.tau.values.resize(n);
    for (int i = 0; i < n; ++i) out.tau.values[i] = rng.bit();
    out.instance.n = n;
    long long universe = binomial(n, 3);
    for (long long i = 0; i < m; ++i) {
        long long idx = static_cast<long long>(rng.below(static_cast<std::uint64_t>(universe)));
        auto t = unrank_triple(idx);
        int b = out.tau.values[t[0]] ^ out.tau.values[t[1]] ^ out.tau.values[t[2]];
        out.instance.constraints.push_back(XorConstraint{t[0], t[1], t[2], b});
    }
    out.flipped = floor_times(eps, m);
    // Flip the right-hand side of a uniform set of exactly floor(eps*m) constraints.
    std::vector<long long> order(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
    rng.shuffle(order);
    for (long long i = 0; i < out.flipped; ++i)
        out.instance.constraints[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])].b ^= 1;
    return out;
}

BruteForceResult brute_force_val(const ThreeXorInstance &inst) {
    check_guard(inst.n, 24, "brute_force_val");
    long long m = inst.m();
    std::vector<std::uint32_t> mask(static_cast<std::size_t>(m));
    std::vector<int> rhs(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        const auto &c = inst.constraints[static_cast<std::size_t>(i)];
        mask[static_cast<std::size_t>(i)] =
            (1u << c.j1) | (1u << c.j2) | (1u << c.j3);
        rhs[static_cast<std::size_t>(i)] = c.b;
    }
    long long best = -1;
    std::uint32_t best_assign = 0;
    const std::uint32_t total = inst.n >= 31 ? 0 : (1u << inst.n);
    for (std::uint32_t a = 0;; ++a) {
        long long sat = 0;
        for (long long i = 0; i < m; ++i) {
            int parity = __builtin_popcount(a & mask[static_cast<std::size_t>(i)]) & 1;
            if (parity == rhs[static_cast<std::size_t>(i)]) ++sat;
        }
        if (sat > best) {
            best = sat;
            best_assign = a;
        }
        if (a + 1 == total) break;
    }
    BruteForceResult res;
    res.value = m == 0 ? Rational(1) : make_rational(best, m);
    res.witness.values.resize(inst.n);
    for (int j = 0; j < inst.n; ++j) res.witness.values[j] = (best_assign >> j) & 1;
    return res;
}

std::string instance_to_json(const ThreeXorInstance &inst) {
    nlohmann::json j;
    j["n"] = inst.n;
    auto &cs = j["constraints"] = nlohmann::json::array();
    for (const auto &c : inst.constraints) cs.push_back({c.j1, c.j2, c.j3, c.b});
    return j.dump();
}

ThreeXorInstance instance_from_json(const std::string &text) {
    auto j = nlohmann::json::parse(text);
    ThreeXorInstance inst;
    inst.n = j.at("n").get<int>();
    for (const auto &row : j.at("constraints")) {
        if (row.size() != 4) throw std::invalid_argument("instance json: constraint arity");
        auto c = make_xor_constraint(row[0].get<int>(), row[1].get<int>(),
                                     row[2].get<int>(), row[3].get<int>());
        if (c.j3 >= inst.n) throw std::invalid_argument("instance json: variable out of range");
        inst.constraints.push_back(c);
    }
    return inst;
}

std::string assignment_to_json(const Assignment &tau) {
    nlohmann::json j;
    j["values"] = tau.values;
    return j.dump();
}

Assignment assignment_from_json(const std::string &text) {
    auto j = nlohmann::json::parse(text);
    Assignment tau;
    tau.values = j.at("values").get<std::vector<int>>();
    for (int v : tau.values)
        if ((v & ~1) != 0) throw std::invalid_argument("assignment json: values must be bits");
    return tau;
}

} // namespace gisoforge
