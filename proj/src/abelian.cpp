#include "gisoforge/abelian.hpp"

#include "gisoforge/asymmetry.hpp"
#include "gisoforge/guards.hpp"
#include "gisoforge/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gisoforge {

AbelianGroup::AbelianGroup(std::vector<int> moduli) : moduli_(std::move(moduli)) {
    if (moduli_.empty()) throw std::invalid_argument("abelian group: no moduli");
    order_ = 1;
    for (int p : moduli_) {
        if (p < 2) throw std::invalid_argument("abelian group: modulus below 2");
        order_ *= p;
    }
}

AbelianGroup AbelianGroup::parse(const std::string &text) {
    std::vector<int> moduli;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] != 'Z' && text[pos] != 'z')
            throw std::invalid_argument("group spec: expected 'Z': " + text);
        ++pos;
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw std::invalid_argument("group spec: missing modulus: " + text);
        moduli.push_back(std::stoi(text.substr(start, pos - start)));
        if (pos < text.size()) {
            if (text[pos] != 'x' && text[pos] != 'X')
                throw std::invalid_argument("group spec: expected 'x': " + text);
            ++pos;
        }
    }
    return AbelianGroup(std::move(moduli));
}

AbelianGroup::Elem AbelianGroup::add(const Elem &a, const Elem &b) const {
    Elem out(moduli_.size());
    for (std::size_t i = 0; i < moduli_.size(); ++i)
        out[i] = (a[i] + b[i]) % moduli_[i];
    return out;
}

AbelianGroup::Elem AbelianGroup::neg(const Elem &a) const {
    Elem out(moduli_.size());
    for (std::size_t i = 0; i < moduli_.size(); ++i)
        out[i] = (moduli_[i] - a[i]) % moduli_[i];
    return out;
}

AbelianGroup::Elem AbelianGroup::sub(const Elem &a, const Elem &b) const {
    return add(a, neg(b));
}

long long AbelianGroup::rank(const Elem &a) const {
    long long r = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i) r = r * moduli_[i] + a[i];
    return r;
}

AbelianGroup::Elem AbelianGroup::element(long long rank) const {
    Elem out(moduli_.size());
    for (std::size_t i = moduli_.size(); i-- > 0;) {
        out[i] = static_cast<int>(rank % moduli_[i]);
        rank /= moduli_[i];
    }
    return out;
}

std::string AbelianGroup::to_string() const {
    std::ostringstream s;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        if (i) s << "x";
        s << "Z" << moduli_[i];
    }
    return s.str();
}

bool SubgroupPredicate::contains(const std::vector<int> &flat_tuple) const {
    return std::binary_search(elements.begin(), elements.end(), flat_tuple);
}

std::vector<AbelianGroup::Elem> SubgroupPredicate::unflatten(const std::vector<int> &flat) const {
    int t = group.coordinates();
    std::vector<AbelianGroup::Elem> out(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        out[static_cast<std::size_t>(i)] =
            AbelianGroup::Elem(flat.begin() + static_cast<std::ptrdiff_t>(i) * t,
                               flat.begin() + static_cast<std::ptrdiff_t>(i + 1) * t);
    return out;
}

std::vector<int> SubgroupPredicate::flatten(const std::vector<AbelianGroup::Elem> &tuple) const {
    std::vector<int> out;
    for (const auto &e : tuple) out.insert(out.end(), e.begin(), e.end());
    return out;
}

SubgroupPredicate predicate_from_elements(const AbelianGroup &group, int k,
                                          std::vector<std::vector<int>> elements) {
    if (k < 1) throw std::invalid_argument("predicate: arity below 1");
    int width = k * group.coordinates();
    for (const auto &e : elements) {
        if (static_cast<int>(e.size()) != width)
            throw std::invalid_argument("predicate: tuple width mismatch");
        for (int i = 0; i < width; ++i) {
            int p = group.moduli()[static_cast<std::size_t>(i % group.coordinates())];
            if (e[static_cast<std::size_t>(i)] < 0 || e[static_cast<std::size_t>(i)] >= p)
                throw std::invalid_argument("predicate: coordinate out of range");
        }
    }
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    return SubgroupPredicate{group, k, std::move(elements)};
}

SubgroupPredicate predicate_from_generators(const AbelianGroup &group, int k,
                                            const std::vector<std::vector<int>> &generators) {
    long long cap = 1;
    for (int i = 0; i < k; ++i) {
        cap *= group.order();
        check_guard(cap, 1 << 20, "predicate_from_generators closure");
    }
    auto add_flat = [&](const std::vector<int> &a, const std::vector<int> &b) {
        std::vector<int> out(a.size());
        int t = group.coordinates();
        for (std::size_t i = 0; i < a.size(); ++i) {
            int p = group.moduli()[i % static_cast<std::size_t>(t)];
            out[i] = (a[i] + b[i]) % p;
        }
        return out;
    };
    std::set<std::vector<int>> closed;
    closed.insert(std::vector<int>(static_cast<std::size_t>(k * group.coordinates()), 0));
    std::vector<std::vector<int>> frontier(closed.begin(), closed.end());
    for (const auto &g : generators)
        if (closed.insert(g).second) frontier.push_back(g);
    while (!frontier.empty()) {
        std::vector<int> cur = frontier.back();
        frontier.pop_back();
        for (const auto &g : generators) {
            auto next = add_flat(cur, g);
            if (closed.insert(next).second) frontier.push_back(next);
        }
    }
    return predicate_from_elements(group, k, {closed.begin(), closed.end()});
}

SubgroupPredicate xor_predicate(const AbelianGroup &group, int k) {
    long long total = 1;
    for (int i = 0; i < k; ++i) {
        total *= group.order();
        check_guard(total, 1 << 20, "xor_predicate enumeration");
    }
    std::vector<std::vector<int>> elements;
    for (long long r = 0; r < total; ++r) {
        long long rest = r;
        std::vector<AbelianGroup::Elem> tuple(static_cast<std::size_t>(k));
        for (int i = k; i-- > 0;) {
            tuple[static_cast<std::size_t>(i)] = group.element(rest % group.order());
            rest /= group.order();
        }
        AbelianGroup::Elem sum = group.zero();
        for (const auto &e : tuple) sum = group.add(sum, e);
        if (sum != group.zero()) continue;
        std::vector<int> flat;
        for (const auto &e : tuple) flat.insert(flat.end(), e.begin(), e.end());
        elements.push_back(std::move(flat));
    }
    return predicate_from_elements(group, k, std::move(elements));
}

PredicateCheck check_pairwise_independent_subgroup(const SubgroupPredicate &psi) {
    PredicateCheck out;
    const AbelianGroup &H = psi.group;
    int t = H.coordinates();
    if (psi.elements.empty()) {
        out.failure = "empty";
        return out;
    }
    std::vector<int> zero(static_cast<std::size_t>(psi.k * t), 0);
    if (!psi.contains(zero)) {
        out.failure = "missing identity";
        return out;
    }
    // Closure under addition implies closure under negation for finite sets.
    for (const auto &a : psi.elements) {
        for (const auto &b : psi.elements) {
            std::vector<int> sum(a.size());
            for (std::size_t i = 0; i < a.size(); ++i)
                sum[i] = (a[i] + b[i]) % H.moduli()[i % static_cast<std::size_t>(t)];
            if (!psi.contains(sum)) {
                out.failure = "not closed under addition";
                out.witness = sum;
                return out;
            }
        }
    }
    long long full = 1;
    for (int i = 0; i < psi.k; ++i) full *= H.order();
    if (psi.size() >= full) {
        out.failure = "not a proper subgroup";
        return out;
    }
    // Uniform marginals: every coordinate value appears |psi|/|H| times.
    if (psi.size() % H.order() != 0) {
        out.failure = "marginal not uniform";
        return out;
    }
    long long per_value = psi.size() / H.order();
    for (int i = 0; i < psi.k; ++i) {
        std::map<long long, long long> counts;
        for (const auto &e : psi.elements) {
            AbelianGroup::Elem v(e.begin() + static_cast<std::ptrdiff_t>(i) * t,
                                 e.begin() + static_cast<std::ptrdiff_t>(i + 1) * t);
            ++counts[H.rank(v)];
        }
        if (static_cast<long long>(counts.size()) != H.order()) {
            out.failure = "marginal not uniform";
            return out;
        }
        for (const auto &[value, count] : counts) {
            if (count != per_value) {
                out.failure = "marginal not uniform";
                return out;
            }
        }
    }
    // Pairwise independence: every value pair appears |psi|/|H|^2 times.
    if (psi.size() % (H.order() * H.order()) != 0) {
        out.failure = "coordinate pair not independent";
        return out;
    }
    long long per_pair = psi.size() / (H.order() * H.order());
    for (int i = 0; i < psi.k; ++i) {
        for (int j = i + 1; j < psi.k; ++j) {
            std::map<std::pair<long long, long long>, long long> counts;
            for (const auto &e : psi.elements) {
                AbelianGroup::Elem vi(e.begin() + static_cast<std::ptrdiff_t>(i) * t,
                                      e.begin() + static_cast<std::ptrdiff_t>(i + 1) * t);
                AbelianGroup::Elem vj(e.begin() + static_cast<std::ptrdiff_t>(j) * t,
                                      e.begin() + static_cast<std::ptrdiff_t>(j + 1) * t);
                ++counts[{H.rank(vi), H.rank(vj)}];
            }
            if (static_cast<long long>(counts.size()) != H.order() * H.order()) {
                out.failure = "coordinate pair not independent";
                return out;
            }
            for (const auto &[value, count] : counts) {
                if (count != per_pair) {
                    out.failure = "coordinate pair not independent";
                    return out;
                }
            }
        }
    }
    out.ok = true;
    return out;
}

namespace {

// Row bases for a coordinate: every element with that coordinate zero, in
// rank order.  A row consists of the base plus its coordinate translates.
std::vector<long long> row_bases(const AbelianGroup &H, int coordinate) {
    std::vector<long long> bases;
    for (long long r = 0; r < H.order(); ++r) {
        AbelianGroup::Elem e = H.element(r);
        if (e[static_cast<std::size_t>(coordinate)] == 0) bases.push_back(r);
    }
    return bases;
}

AbelianGroup::Elem row_member(const AbelianGroup &H, int coordinate, long long base, int j) {
    AbelianGroup::Elem e = H.element(base);
    e[static_cast<std::size_t>(coordinate)] = j;
    return e;
}

long long zero_coordinate(const AbelianGroup &H, const AbelianGroup::Elem &e, int coordinate) {
    AbelianGroup::Elem copy = e;
    copy[static_cast<std::size_t>(coordinate)] = 0;
    return H.rank(copy);
}

} // namespace

VariableGadget row_gadget(const AbelianGroup &group) {
    VariableGadget g{group, Graph(), {}, {}};
    std::vector<Edge> edges;
    int next = static_cast<int>(group.order());
    int t = group.coordinates();
    if (t > 1) {
        for (int c = 0; c < t; ++c) {
            for (long long base : row_bases(group, c)) {
                VariableGadget::Star star;
                star.coordinate = c;
                star.row_base = base;
                star.inner = next++;
                for (int o = 0; o <= c; ++o) { // c+1 outer nodes for coordinate c (0-based)
                    star.outers.push_back(next);
                    edges.push_back({star.inner, next});
                    ++next;
                }
                for (int j = 0; j < group.moduli()[static_cast<std::size_t>(c)]; ++j) {
                    int member = static_cast<int>(group.rank(row_member(group, c, base, j)));
                    edges.push_back({star.inner, member});
                }
                g.stars.push_back(std::move(star));
            }
        }
    }
    g.graph = Graph(next, std::move(edges));
    return g;
}

VariableGadget variable_gadget(const AbelianGroup &group) {
    VariableGadget g = row_gadget(group);
    std::vector<Edge> edges = g.graph.edges();
    int next = g.graph.vertex_count();
    int t = group.coordinates();
    for (int c = 0; c < t; ++c) {
        int p = group.moduli()[static_cast<std::size_t>(c)];
        for (long long base : row_bases(group, c)) {
            if (p == 2) {
                int a = static_cast<int>(group.rank(row_member(group, c, base, 0)));
                int b = static_cast<int>(group.rank(row_member(group, c, base, 1)));
                edges.push_back({a, b});
                continue;
            }
            for (int j = 0; j < p; ++j) {
                int xj = static_cast<int>(group.rank(row_member(group, c, base, j)));
                int xj1 = static_cast<int>(group.rank(row_member(group, c, base, (j + 1) % p)));
                VariableGadget::CycleUnit unit;
                unit.coordinate = c;
                unit.row_base = base;
                unit.position = j;
                unit.u = next++;
                unit.v = next++;
                edges.push_back({xj, xj1});
                edges.push_back({unit.u, xj});
                edges.push_back({unit.u, xj1});
                edges.push_back({unit.u, unit.v});
                edges.push_back({unit.v, xj1});
                g.units.push_back(unit);
            }
        }
    }
    g.graph = Graph(next, std::move(edges));
    return g;
}

Permutation VariableGadget::shift_automorphism(const AbelianGroup::Elem &a) const {
    const AbelianGroup &H = group;
    std::vector<int> fwd(static_cast<std::size_t>(graph.vertex_count()), -1);
    for (long long r = 0; r < H.order(); ++r)
        fwd[static_cast<std::size_t>(r)] = static_cast<int>(H.rank(H.add(H.element(r), a)));
    std::map<std::pair<int, long long>, const Star *> star_at;
    for (const auto &s : stars) star_at[{s.coordinate, s.row_base}] = &s;
    for (const auto &s : stars) {
        AbelianGroup::Elem shifted_base = H.add(H.element(s.row_base), a);
        const Star *target = star_at.at({s.coordinate, zero_coordinate(H, shifted_base, s.coordinate)});
        fwd[static_cast<std::size_t>(s.inner)] = target->inner;
        for (std::size_t o = 0; o < s.outers.size(); ++o)
            fwd[static_cast<std::size_t>(s.outers[o])] = target->outers[o];
    }
    std::map<std::tuple<int, long long, int>, const CycleUnit *> unit_at;
    for (const auto &u : units) unit_at[{u.coordinate, u.row_base, u.position}] = &u;
    for (const auto &u : units) {
        int p = H.moduli()[static_cast<std::size_t>(u.coordinate)];
        AbelianGroup::Elem shifted_base = H.add(H.element(u.row_base), a);
        int pos = (u.position + shifted_base[static_cast<std::size_t>(u.coordinate)]) % p;
        const CycleUnit *target =
            unit_at.at({u.coordinate, zero_coordinate(H, shifted_base, u.coordinate), pos});
        fwd[static_cast<std::size_t>(u.u)] = target->u;
        fwd[static_cast<std::size_t>(u.v)] = target->v;
    }
    return Permutation(std::move(fwd));
}

namespace {

struct AutSearch {
    const Graph &g;
    std::vector<int> map;
    std::vector<char> used;
    std::vector<Permutation> found;

    explicit AutSearch(const Graph &graph)
        : g(graph), map(static_cast<std::size_t>(graph.vertex_count()), -1),
          used(static_cast<std::size_t>(graph.vertex_count()), 0) {}

    bool consistent(int v, int w) const {
        if (g.degree(v) != g.degree(w)) return false;
        for (int v2 = 0; v2 < g.vertex_count(); ++v2) {
            int w2 = map[static_cast<std::size_t>(v2)];
            if (w2 < 0) continue;
            if (g.has_edge(v, v2) != g.has_edge(w, w2)) return false;
        }
        return true;
    }

    void run(int v) {
        if (v == g.vertex_count()) {
            found.emplace_back(map);
            return;
        }
        for (int w = 0; w < g.vertex_count(); ++w) {
            if (used[static_cast<std::size_t>(w)] || !consistent(v, w)) continue;
            map[static_cast<std::size_t>(v)] = w;
            used[static_cast<std::size_t>(w)] = 1;
            run(v + 1);
            used[static_cast<std::size_t>(w)] = 0;
            map[static_cast<std::size_t>(v)] = -1;
        }
    }
};

} // namespace

AutomorphismCensus enumerate_gadget_automorphisms(const VariableGadget &gadget) {
    check_guard(gadget.group.order(), 8, "enumerate_gadget_automorphisms group order");
    check_guard(gadget.graph.vertex_count(), 40, "enumerate_gadget_automorphisms size");
    AutSearch search(gadget.graph);
    search.run(0);
    AutomorphismCensus census;
    census.all = std::move(search.found);
    long long h = gadget.group.order();
    std::set<std::vector<int>> actions;
    for (const auto &f : census.all) {
        std::vector<int> action(static_cast<std::size_t>(h));
        for (long long r = 0; r < h; ++r) {
            int img = f(static_cast<int>(r));
            if (img >= h) {
                census.variable_set_preserved = false;
                break;
            }
            action[static_cast<std::size_t>(r)] = img;
        }
        if (!census.variable_set_preserved) break;
        actions.insert(std::move(action));
    }
    if (!census.variable_set_preserved) return census;
    const AbelianGroup &H = gadget.group;
    for (const auto &action : actions) {
        census.variable_actions.push_back(action);
        // A shift action sends rank(b) to rank(a + b) with a = action(0).
        AbelianGroup::Elem a = H.element(action[0]);
        bool is_shift = true;
        for (long long r = 0; r < h; ++r) {
            if (action[static_cast<std::size_t>(r)] !=
                static_cast<int>(H.rank(H.add(a, H.element(r))))) {
                is_shift = false;
                break;
            }
        }
        if (is_shift)
            census.shifts_realized.push_back(a);
        else
            census.every_action_is_shift = false;
    }
    return census;
}

std::vector<std::vector<AbelianGroup::Elem>> AdditiveCspInstance::satisfying(int constraint) const {
    const auto &c = constraints.at(static_cast<std::size_t>(constraint));
    std::vector<std::vector<AbelianGroup::Elem>> out;
    for (const auto &flat : psi.elements) {
        auto tuple = psi.unflatten(flat);
        // psi(x + a) = 1 means the assignment x = s - a for s in psi.
        for (int i = 0; i < psi.k; ++i)
            tuple[static_cast<std::size_t>(i)] =
                group.sub(tuple[static_cast<std::size_t>(i)], c.shifts[static_cast<std::size_t>(i)]);
        out.push_back(std::move(tuple));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Hypergraph AdditiveCspInstance::constraint_hypergraph() const {
    std::set<std::vector<int>> sets;
    for (const auto &c : constraints) {
        std::vector<int> vars = c.vars;
        std::sort(vars.begin(), vars.end());
        sets.insert(std::move(vars));
    }
    return Hypergraph(n, psi.k, {sets.begin(), sets.end()});
}

AdditiveCspInstance homogenize(const AdditiveCspInstance &inst) {
    AdditiveCspInstance out = inst;
    for (auto &c : out.constraints)
        for (auto &s : c.shifts) s = inst.group.zero();
    return out;
}

Rational val(const AdditiveCspInstance &inst, const GroupAssignment &tau) {
    if (static_cast<int>(tau.values.size()) != inst.n)
        throw std::invalid_argument("val: assignment length != variable count");
    if (inst.constraints.empty()) return Rational(1);
    long long sat = 0;
    for (const auto &c : inst.constraints) {
        std::vector<AbelianGroup::Elem> shifted(static_cast<std::size_t>(inst.psi.k));
        for (int i = 0; i < inst.psi.k; ++i) {
            shifted[static_cast<std::size_t>(i)] =
                inst.group.add(tau.values[static_cast<std::size_t>(c.vars[static_cast<std::size_t>(i)])],
                               c.shifts[static_cast<std::size_t>(i)]);
        }
        if (inst.psi.contains(inst.psi.flatten(shifted))) ++sat;
    }
    return make_rational(sat, inst.m());
}

namespace {

std::vector<int> random_distinct_ordered_vars(int n, int k, Rng &rng) {
    std::set<int> chosen;
    for (int j = n - k; j < n; ++j) {
        int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(j + 1)));
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<int> vars(chosen.begin(), chosen.end());
    rng.shuffle(vars);
    return vars;
}

AbelianGroup::Elem random_element(const AbelianGroup &H, Rng &rng) {
    return H.element(static_cast<long long>(rng.below(static_cast<std::uint64_t>(H.order()))));
}

} // namespace

AdditiveCspInstance sample_random_additive(const AbelianGroup &group,
                                           const SubgroupPredicate &psi, int n,
                                           long long m, std::uint64_t seed) {
    if (n < psi.k) throw std::invalid_argument("sample_random_additive: fewer variables than arity");
    Rng rng(seed);
    AdditiveCspInstance inst{n, group, psi, {}};
    for (long long i = 0; i < m; ++i) {
        AdditiveConstraint c;
        c.vars = random_distinct_ordered_vars(n, psi.k, rng);
        for (int j = 0; j < psi.k; ++j) c.shifts.push_back(random_element(group, rng));
        inst.constraints.push_back(std::move(c));
    }
    return inst;
}

PlantedAdditive plant_additive(const AbelianGroup &group, const SubgroupPredicate &psi,
                               int n, long long m, const Rational &eps, std::uint64_t seed) {
    if (eps < 0 || eps > 1) throw std::invalid_argument("plant_additive: eps must be in [0,1]");
    Rng rng(seed);
    PlantedAdditive out{{n, group, psi, {}}, {}, 0};
    for (int j = 0; j < n; ++j) out.tau.values.push_back(random_element(group, rng));
    long long full = 1;
    for (int i = 0; i < psi.k; ++i) full *= group.order();
    for (long long i = 0; i < m; ++i) {
        AdditiveConstraint c;
        c.vars = random_distinct_ordered_vars(n, psi.k, rng);
        // Shifts a with tau(x) + a in psi: a = s - tau(x) for uniform s in psi.
        const auto &s = psi.elements[static_cast<std::size_t>(
            rng.below(static_cast<std::uint64_t>(psi.elements.size())))];
        auto tuple = psi.unflatten(s);
        for (int j = 0; j < psi.k; ++j) {
            c.shifts.push_back(group.sub(tuple[static_cast<std::size_t>(j)],
                                         out.tau.values[static_cast<std::size_t>(
                                             c.vars[static_cast<std::size_t>(j)])]));
        }
        out.instance.constraints.push_back(std::move(c));
    }
    out.flipped = floor_times(eps, m);
    std::vector<long long> order(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
    rng.shuffle(order);
    for (long long i = 0; i < out.flipped; ++i) {
        auto &c = out.instance.constraints[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
        // Re-aim the shifts at a uniformly random non-member tuple.
        std::vector<AbelianGroup::Elem> w;
        do {
            long long r = static_cast<long long>(rng.below(static_cast<std::uint64_t>(full)));
            w.clear();
            for (int j = 0; j < psi.k; ++j) {
                w.push_back(group.element(r % group.order()));
                r /= group.order();
            }
        } while (psi.contains(psi.flatten(w)));
        for (int j = 0; j < psi.k; ++j) {
            c.shifts[static_cast<std::size_t>(j)] =
                group.sub(w[static_cast<std::size_t>(j)],
                          out.tau.values[static_cast<std::size_t>(c.vars[static_cast<std::size_t>(j)])]);
        }
    }
    return out;
}

Graph label_extended_graph(const AdditiveCspInstance &inst, int constraint) {
    long long h = inst.group.order();
    auto sats = inst.satisfying(constraint);
    int n_vertices = static_cast<int>(inst.psi.k * h + static_cast<long long>(sats.size()));
    std::vector<Edge> edges;
    for (std::size_t r = 0; r < sats.size(); ++r) {
        int cv = static_cast<int>(inst.psi.k * h + static_cast<long long>(r));
        for (int i = 0; i < inst.psi.k; ++i) {
            int vv = static_cast<int>(i * h + inst.group.rank(sats[r][static_cast<std::size_t>(i)]));
            edges.push_back({cv, vv});
        }
    }
    return Graph(n_vertices, std::move(edges));
}

AdditiveGadgetGraph::AdditiveGadgetGraph(const AdditiveCspInstance &inst)
    : inst_(inst), gadget_(variable_gadget(inst.group)) {
    long long h = inst_.group.order();
    n1_ = inst_.psi.size();
    n2_ = gadget_.graph.vertex_count();
    m1_ = binomial(n1_, 2) + n1_ * inst_.psi.k;
    m2_ = gadget_.graph.edge_count();
    int n = inst_.n;
    long long m = inst_.m();
    std::vector<Edge> edges;
    std::vector<VertexLabel> labels;
    for (int j = 0; j < n; ++j) {
        int off = variable_block_offset(j);
        for (const auto &e : gadget_.graph.edges())
            edges.push_back({off + e.first, off + e.second});
        for (long long r = 0; r < n2_; ++r) {
            if (r < h) {
                std::ostringstream name;
                name << "x" << j << "->(";
                AbelianGroup::Elem e = inst_.group.element(r);
                for (std::size_t i = 0; i < e.size(); ++i)
                    name << (i ? "," : "") << e[i];
                name << ")";
                labels.push_back({VertexRole::variable, name.str()});
            } else {
                labels.push_back({VertexRole::auxiliary, "aux"});
            }
        }
    }
    satisfying_.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        satisfying_.push_back(inst_.satisfying(static_cast<int>(i)));
        const auto &c = inst_.constraints[static_cast<std::size_t>(i)];
        const auto &sats = satisfying_.back();
        for (std::size_t r = 0; r < sats.size(); ++r) {
            int cv = constraint_vertex(static_cast<int>(i), static_cast<int>(r));
            std::ostringstream name;
            name << "C" << i << ":" << static_cast<int>(r);
            labels.push_back({VertexRole::constraint, name.str()});
            for (std::size_t r2 = r + 1; r2 < sats.size(); ++r2)
                edges.push_back({cv, constraint_vertex(static_cast<int>(i), static_cast<int>(r2))});
            for (int t = 0; t < inst_.psi.k; ++t) {
                edges.push_back({cv, variable_vertex(c.vars[static_cast<std::size_t>(t)],
                                                     sats[r][static_cast<std::size_t>(t)])});
            }
        }
    }
    int total = static_cast<int>(n2_ * n + n1_ * m);
    graph_ = Graph(total, std::move(edges), std::move(labels));
}

int AdditiveGadgetGraph::variable_vertex(int var, const AbelianGroup::Elem &value) const {
    return variable_block_offset(var) + static_cast<int>(inst_.group.rank(value));
}

int AdditiveGadgetGraph::constraint_vertex(int constraint, int rank) const {
    return static_cast<int>(n2_ * inst_.n + n1_ * constraint + rank);
}

std::vector<int> AdditiveGadgetGraph::variable_block(int var) const {
    std::vector<int> out;
    int off = variable_block_offset(var);
    for (long long r = 0; r < n2_; ++r) out.push_back(off + static_cast<int>(r));
    return out;
}

std::vector<int> AdditiveGadgetGraph::variable_vertices(int var) const {
    std::vector<int> out;
    int off = variable_block_offset(var);
    for (long long r = 0; r < inst_.group.order(); ++r) out.push_back(off + static_cast<int>(r));
    return out;
}

std::vector<int> AdditiveGadgetGraph::constraint_clique(int constraint) const {
    std::vector<int> out;
    for (long long r = 0; r < n1_; ++r)
        out.push_back(constraint_vertex(constraint, static_cast<int>(r)));
    return out;
}

AdditiveGadgetGraph encode_additive(const AdditiveCspInstance &inst) {
    return AdditiveGadgetGraph(inst);
}

AdditiveReducedPair reduce_additive(const AdditiveCspInstance &inst) {
    return AdditiveReducedPair{encode_additive(inst), encode_additive(homogenize(inst))};
}

VertexMap additive_completeness_map(const AdditiveCspInstance &inst, const GroupAssignment &tau) {
    if (static_cast<int>(tau.values.size()) != inst.n)
        throw std::invalid_argument("additive_completeness_map: assignment length mismatch");
    AdditiveGadgetGraph source(inst);
    AdditiveGadgetGraph target(homogenize(inst));
    const AbelianGroup &H = inst.group;
    std::vector<int> fwd(static_cast<std::size_t>(source.graph().vertex_count()));
    for (int j = 0; j < inst.n; ++j) {
        // x -> b must land on x -> b - tau(x): the shift by -tau(x).
        Permutation local = source.gadget().shift_automorphism(
            H.neg(tau.values[static_cast<std::size_t>(j)]));
        int off = source.variable_block_offset(j);
        for (int r = 0; r < static_cast<int>(source.n2()); ++r)
            fwd[static_cast<std::size_t>(off + r)] = off + local(r);
    }
    for (long long i = 0; i < inst.m(); ++i) {
        const auto &c = inst.constraints[static_cast<std::size_t>(i)];
        const auto &sats = source.satisfying(static_cast<int>(i));
        const auto &homog_sats = target.satisfying(static_cast<int>(i));
        bool satisfied;
        {
            std::vector<AbelianGroup::Elem> shifted(static_cast<std::size_t>(inst.psi.k));
            for (int t = 0; t < inst.psi.k; ++t)
                shifted[static_cast<std::size_t>(t)] =
                    H.add(tau.values[static_cast<std::size_t>(c.vars[static_cast<std::size_t>(t)])],
                          c.shifts[static_cast<std::size_t>(t)]);
            satisfied = inst.psi.contains(inst.psi.flatten(shifted));
        }
        for (std::size_t r = 0; r < sats.size(); ++r) {
            int source_vertex = source.constraint_vertex(static_cast<int>(i), static_cast<int>(r));
            std::size_t target_rank;
            if (satisfied) {
                std::vector<AbelianGroup::Elem> img(static_cast<std::size_t>(inst.psi.k));
                for (int t = 0; t < inst.psi.k; ++t)
                    img[static_cast<std::size_t>(t)] =
                        H.sub(sats[r][static_cast<std::size_t>(t)],
                              tau.values[static_cast<std::size_t>(c.vars[static_cast<std::size_t>(t)])]);
                auto it = std::lower_bound(homog_sats.begin(), homog_sats.end(), img);
                if (it == homog_sats.end() || *it != img)
                    throw std::logic_error("additive_completeness_map: image not a homogeneous vertex");
                target_rank = static_cast<std::size_t>(it - homog_sats.begin());
            } else {
                target_rank = r; // rank order on unsatisfied constraints
            }
            fwd[static_cast<std::size_t>(source_vertex)] =
                target.constraint_vertex(static_cast<int>(i), static_cast<int>(target_rank));
        }
    }
    return VertexMap(std::move(fwd));
}

AdditiveDecodeReport additive_decode(const AdditiveReducedPair &pair, const VertexMap &pi,
                                     const AdditiveDecodeParams &params) {
    const AdditiveGadgetGraph &src = pair.source;
    const AdditiveGadgetGraph &dst = pair.homogeneous;
    if (pi.size() != src.graph().vertex_count())
        throw std::invalid_argument("additive_decode: map size mismatch");
    const AdditiveCspInstance &inst = src.instance();
    const AbelianGroup &H = inst.group;
    int n = inst.n;
    long long m = inst.m();
    int k = inst.psi.k;

    AdditiveDecodeReport report;
    report.gi_of_pi = gi_score(src.graph(), dst.graph(), pi);

    std::map<std::vector<int>, int> clique_of;
    for (long long i = 0; i < m; ++i) {
        auto cl = dst.constraint_clique(static_cast<int>(i));
        std::sort(cl.begin(), cl.end());
        clique_of[cl] = static_cast<int>(i);
    }
    for (long long i = 0; i < m; ++i) {
        std::vector<int> img = pi.apply(src.constraint_clique(static_cast<int>(i)));
        if (clique_of.count(img)) report.a_set.push_back(static_cast<int>(i));
    }

    std::map<std::vector<int>, int> block_of;
    for (int j = 0; j < n; ++j) {
        auto b = dst.variable_block(j);
        std::sort(b.begin(), b.end());
        block_of[b] = j;
    }
    for (int j = 0; j < n; ++j) {
        std::vector<int> img = pi.apply(src.variable_block(j));
        if (block_of.count(img)) report.b_set.push_back(j);
    }

    // B_shift: some j' and a with pi(x_j -> b) = x_j' -> (b - a) for all b.
    std::vector<int> sigma(static_cast<std::size_t>(n), -1);
    std::vector<AbelianGroup::Elem> shift_of(static_cast<std::size_t>(n), H.zero());
    long long h = H.order();
    for (int j = 0; j < n; ++j) {
        int img0 = pi(src.variable_vertex(j, H.zero()));
        int block = img0 / static_cast<int>(dst.n2());
        int local = img0 % static_cast<int>(dst.n2());
        if (block >= n || local >= h) continue;
        AbelianGroup::Elem minus_a = H.element(local); // image of b = 0 is -a
        AbelianGroup::Elem a = H.neg(minus_a);
        bool ok = true;
        for (long long r = 0; r < h && ok; ++r) {
            AbelianGroup::Elem b = H.element(r);
            int expect = dst.variable_vertex(block, H.sub(b, a));
            if (pi(src.variable_vertex(j, b)) != expect) ok = false;
        }
        if (ok) {
            report.b_shift.push_back(j);
            sigma[static_cast<std::size_t>(j)] = block;
            shift_of[static_cast<std::size_t>(j)] = a;
        }
    }
    extend_avoiding_fixed_points(sigma);
    report.sigma = Permutation(sigma);

    report.tau.values.assign(static_cast<std::size_t>(n), H.zero());
    for (int j = 0; j < n; ++j)
        if (sigma[static_cast<std::size_t>(j)] == j &&
            std::binary_search(report.b_shift.begin(), report.b_shift.end(), j))
            report.tau.values[static_cast<std::size_t>(j)] = shift_of[static_cast<std::size_t>(j)];

    Hypergraph hgraph = inst.constraint_hypergraph();
    long long sat = 0;
    for (const auto &c : inst.constraints) {
        std::vector<int> vars = c.vars;
        std::sort(vars.begin(), vars.end());
        if (hgraph.has_edge(report.sigma.apply(vars))) ++sat;
    }
    report.aut_sigma = m > 0 ? Score::make(sat, m) : Score{0, 0, Rational(1)};
    report.val_tau = val(inst, report.tau);

    Rational m_sum(static_cast<long>(src.m1() + src.m2()));
    Rational d1 = Rational(1) / (m_sum * 10);
    Rational d2 = params.gamma / (m_sum * 4);
    Rational d3 = params.eps / (m_sum * rat(3 * src.n1()) * params.c);
    report.delta = std::min(std::min(d1, d2), d3);
    report.score_above_threshold = report.gi_of_pi.ratio >= Rational(1) - report.delta;
    report.degree_bounded = is_degree_bounded(hgraph, params.eps, params.c * 100 * k);
    if (n <= guard_limit(9) && hgraph.edge_count() > 0)
        report.asymmetric =
            is_asymmetric_bruteforce(hgraph, params.beta, params.gamma).asymmetric;
    report.gamma_large_enough = params.gamma >= params.eps * 200 * k;
    report.claims_checked = report.score_above_threshold && report.degree_bounded &&
                            report.asymmetric.value_or(false) && report.gamma_large_enough;
    if (report.claims_checked) {
        auto push = [&](const std::string &name, const Rational &actual, const Rational &threshold) {
            report.claims.push_back({name, threshold, actual, actual >= threshold});
        };
        push("a-set", rat(static_cast<long long>(report.a_set.size())),
             (Rational(1) - report.delta * m_sum) * rat(m));
        push("b-set", rat(static_cast<long long>(report.b_set.size())),
             (Rational(1) - report.delta * m_sum * rat(2 * src.n1()) * params.c) * n);
        push("b-shift", rat(static_cast<long long>(report.b_shift.size())),
             (Rational(1) - report.delta * m_sum * rat(3 * src.n1()) * params.c) * n);
        push("aut-sigma", report.aut_sigma.ratio,
             Rational(1) - params.eps * 100 * k - report.delta * m_sum * 2);
        push("val-tau", report.val_tau,
             Rational(9, 10) - (params.eps + params.beta) * 100);
    }
    return report;
}

std::string predicate_to_json(const SubgroupPredicate &psi) {
    nlohmann::json j;
    j["k"] = psi.k;
    j["moduli"] = psi.group.moduli();
    j["elements"] = psi.elements;
    return j.dump();
}

SubgroupPredicate predicate_from_json(const std::string &text) {
    auto j = nlohmann::json::parse(text);
    AbelianGroup group(j.at("moduli").get<std::vector<int>>());
    return predicate_from_elements(group, j.at("k").get<int>(),
                                   j.at("elements").get<std::vector<std::vector<int>>>());
}

std::string additive_instance_to_json(const AdditiveCspInstance &inst) {
    nlohmann::json j;
    j["n"] = inst.n;
    j["moduli"] = inst.group.moduli();
    j["k"] = inst.psi.k;
    j["predicate"] = inst.psi.elements;
    auto &cs = j["constraints"] = nlohmann::json::array();
    for (const auto &c : inst.constraints)
        cs.push_back({{"vars", c.vars}, {"shifts", c.shifts}});
    return j.dump();
}

AdditiveCspInstance additive_instance_from_json(const std::string &text) {
    auto j = nlohmann::json::parse(text);
    AbelianGroup group(j.at("moduli").get<std::vector<int>>());
    SubgroupPredicate psi = predicate_from_elements(
        group, j.at("k").get<int>(),
        j.at("predicate").get<std::vector<std::vector<int>>>());
    AdditiveCspInstance inst{j.at("n").get<int>(), group, psi, {}};
    for (const auto &c : j.at("constraints")) {
        AdditiveConstraint ac;
        ac.vars = c.at("vars").get<std::vector<int>>();
        ac.shifts = c.at("shifts").get<std::vector<AbelianGroup::Elem>>();
        if (static_cast<int>(ac.vars.size()) != psi.k ||
            static_cast<int>(ac.shifts.size()) != psi.k)
            throw std::invalid_argument("additive instance json: arity mismatch");
        inst.constraints.push_back(std::move(ac));
    }
    return inst;
}

std::string AdditiveDecodeReport::to_json() const {
    nlohmann::json j;
    j["a_set"] = a_set;
    j["b_set"] = b_set;
    j["b_shift"] = b_shift;
    j["sigma"] = sigma.forward();
    auto &tv = j["tau"] = nlohmann::json::array();
    for (const auto &e : tau.values) tv.push_back(e);
    j["aut_sigma"] = to_string(aut_sigma.ratio);
    j["val_tau"] = to_string(val_tau);
    j["gi_of_pi"] = to_string(gi_of_pi.ratio);
    j["delta"] = to_string(delta);
    j["score_above_threshold"] = score_above_threshold;
    j["degree_bounded"] = degree_bounded;
    if (asymmetric.has_value()) j["asymmetric"] = *asymmetric;
    j["gamma_large_enough"] = gamma_large_enough;
    j["claims_checked"] = claims_checked;
    auto &cl = j["claims"] = nlohmann::json::array();
    for (const auto &c : claims)
        cl.push_back({{"name", c.name},
                      {"threshold", to_string(c.threshold)},
                      {"actual", to_string(c.actual)},
                      {"holds", c.holds}});
    return j.dump();
}

} // namespace gisoforge
