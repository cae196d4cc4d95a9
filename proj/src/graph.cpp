#include "gisoforge/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace gisoforge {

Graph::Graph(int n, std::vector<Edge> edges, std::vector<VertexLabel> labels)
    : n_(n), labels_(std::move(labels)) {
    if (n < 0) throw std::invalid_argument("graph: negative vertex count");
    if (!labels_.empty() && static_cast<int>(labels_.size()) != n)
        throw std::invalid_argument("graph: label count != vertex count");
    for (auto &e : edges) {
        if (e.first > e.second) std::swap(e.first, e.second);
        if (e.first == e.second)
            throw std::invalid_argument("graph: self-loop");
        if (e.first < 0 || e.second >= n)
            throw std::invalid_argument("graph: edge endpoint out of range");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("graph: duplicate edge");
    edges_ = std::move(edges);
    adj_.assign(n_, {});
    for (const auto &e : edges_) {
        adj_[e.first].push_back(e.second);
        adj_[e.second].push_back(e.first);
    }
    for (auto &nb : adj_) std::sort(nb.begin(), nb.end());
}

bool Graph::has_edge(int u, int v) const {
    if (u == v) return false;
    const auto &nb = adj_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

Hypergraph::Hypergraph(int n, int k, std::vector<std::vector<int>> edges)
    : n_(n), k_(k) {
    if (n < 0 || k < 1) throw std::invalid_argument("hypergraph: bad parameters");
    for (auto &e : edges) {
        std::sort(e.begin(), e.end());
        if (static_cast<int>(e.size()) != k ||
            std::adjacent_find(e.begin(), e.end()) != e.end())
            throw std::invalid_argument("hypergraph: edge is not a k-set of distinct vertices");
        if (e.front() < 0 || e.back() >= n)
            throw std::invalid_argument("hypergraph: edge endpoint out of range");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("hypergraph: duplicate edge");
    edges_ = std::move(edges);
    degrees_.assign(n_, 0);
    for (const auto &e : edges_)
        for (int v : e) ++degrees_[v];
}

bool Hypergraph::has_edge(const std::vector<int> &sorted_edge) const {
    return std::binary_search(edges_.begin(), edges_.end(), sorted_edge);
}

VertexMap::VertexMap(std::vector<int> forward) : forward_(std::move(forward)) {
    std::vector<char> seen(forward_.size(), 0);
    for (int v : forward_) {
        if (v < 0 || v >= static_cast<int>(forward_.size()) || seen[v])
            throw std::invalid_argument("vertex map: not a bijection");
        seen[v] = 1;
    }
}

VertexMap VertexMap::identity(int n) {
    std::vector<int> f(n);
    for (int i = 0; i < n; ++i) f[i] = i;
    return VertexMap(std::move(f));
}

VertexMap VertexMap::inverse() const {
    std::vector<int> inv(forward_.size());
    for (int i = 0; i < static_cast<int>(forward_.size()); ++i) inv[forward_[i]] = i;
    return VertexMap(std::move(inv));
}

int VertexMap::fixed_point_count() const {
    int c = 0;
    for (int i = 0; i < static_cast<int>(forward_.size()); ++i)
        if (forward_[i] == i) ++c;
    return c;
}

Edge VertexMap::apply(const Edge &e) const {
    int a = forward_[e.first], b = forward_[e.second];
    if (a > b) std::swap(a, b);
    return {a, b};
}

std::vector<int> VertexMap::apply(const std::vector<int> &sorted_set) const {
    std::vector<int> out;
    out.reserve(sorted_set.size());
    for (int v : sorted_set) out.push_back(forward_[v]);
    std::sort(out.begin(), out.end());
    return out;
}

Score Score::make(long long satisfied, long long denominator) {
    if (denominator <= 0)
        throw std::invalid_argument("score: denominator must be positive");
    Score s;
    s.satisfied = satisfied;
    s.denominator = denominator;
    s.ratio = make_rational(satisfied, denominator);
    return s;
}

Score gi_score(const Graph &g, const Graph &h, const VertexMap &pi) {
    if (g.vertex_count() != h.vertex_count())
        throw std::invalid_argument("gi_score: vertex counts differ");
    if (pi.size() != g.vertex_count())
        throw std::invalid_argument("gi_score: map size mismatch");
    long long denom = std::max(g.edge_count(), h.edge_count());
    if (denom == 0)
        throw std::invalid_argument("gi_score: both graphs have empty edge sets");
    long long sat = 0;
    for (const auto &e : g.edges()) {
        Edge img = pi.apply(e);
        if (h.has_edge(img.first, img.second)) ++sat;
    }
    return Score::make(sat, denom);
}

Score aut_score(const Graph &g, const Permutation &pi) {
    return gi_score(g, g, pi);
}

Score gi_score(const Hypergraph &g, const Hypergraph &h, const VertexMap &pi) {
    if (g.vertex_count() != h.vertex_count())
        throw std::invalid_argument("gi_score: vertex counts differ");
    if (g.uniformity() != h.uniformity())
        throw std::invalid_argument("gi_score: uniformities differ");
    if (pi.size() != g.vertex_count())
        throw std::invalid_argument("gi_score: map size mismatch");
    long long denom = std::max(g.edge_count(), h.edge_count());
    if (denom == 0)
        throw std::invalid_argument("gi_score: both hypergraphs have empty edge sets");
    long long sat = 0;
    for (const auto &e : g.edges())
        if (h.has_edge(pi.apply(e))) ++sat;
    return Score::make(sat, denom);
}

Score aut_score(const Hypergraph &g, const Permutation &pi) {
    return gi_score(g, g, pi);
}

std::vector<Edge> edge_diff(const Graph &g, const Permutation &pi) {
    std::vector<Edge> diff;
    VertexMap inv = pi.inverse();
    for (const auto &e : g.edges()) {
        Edge img = pi.apply(e);
        if (!g.has_edge(img.first, img.second)) diff.push_back(e);
        Edge pre = inv.apply(e); // pre is a non-edge iff e gained by pi
        if (!g.has_edge(pre.first, pre.second)) diff.push_back(pre);
    }
    std::sort(diff.begin(), diff.end());
    diff.erase(std::unique(diff.begin(), diff.end()), diff.end());
    return diff;
}

std::vector<std::vector<int>> edge_diff(const Hypergraph &g, const Permutation &pi) {
    std::vector<std::vector<int>> diff;
    VertexMap inv = pi.inverse();
    for (const auto &e : g.edges()) {
        if (!g.has_edge(pi.apply(e))) diff.push_back(e);
        auto pre = inv.apply(e);
        if (!g.has_edge(pre)) diff.push_back(std::move(pre));
    }
    std::sort(diff.begin(), diff.end());
    diff.erase(std::unique(diff.begin(), diff.end()), diff.end());
    return diff;
}

namespace {

bool top_degrees_bounded(std::vector<int> degrees, int n,
                         const Rational &eps, const Rational &bound) {
    if (eps <= 0) throw std::invalid_argument("is_degree_bounded: eps must be positive");
    if (eps > 1) throw std::invalid_argument("is_degree_bounded: eps must be at most 1");
    long long take = ceil_of(Rational(eps * n));
    if (take <= 0) take = 1;
    if (take > n) take = n;
    std::sort(degrees.begin(), degrees.end(), std::greater<int>());
    long long sum = 0;
    for (long long i = 0; i < take; ++i) sum += degrees[static_cast<std::size_t>(i)];
    return rat(sum) <= bound * rat(take);
}

} // namespace

bool is_degree_bounded(const Graph &g, const Rational &eps, const Rational &bound) {
    std::vector<int> deg(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) deg[v] = g.degree(v);
    return top_degrees_bounded(std::move(deg), g.vertex_count(), eps, bound);
}

bool is_degree_bounded(const Hypergraph &g, const Rational &eps, const Rational &bound) {
    std::vector<int> deg(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) deg[v] = g.degree(v);
    return top_degrees_bounded(std::move(deg), g.vertex_count(), eps, bound);
}

long long incident_edge_count(const Graph &g, const std::vector<int> &vertex_set) {
    std::vector<char> in_set(g.vertex_count(), 0);
    for (int v : vertex_set) in_set.at(v) = 1;
    long long c = 0;
    for (const auto &e : g.edges())
        if (in_set[e.first] || in_set[e.second]) ++c;
    return c;
}

long long incident_edge_count(const Hypergraph &g, const std::vector<int> &vertex_set) {
    std::vector<char> in_set(g.vertex_count(), 0);
    for (int v : vertex_set) in_set.at(v) = 1;
    long long c = 0;
    for (const auto &e : g.edges()) {
        for (int v : e) {
            if (in_set[v]) {
                ++c;
                break;
            }
        }
    }
    return c;
}

long long binomial(long long n, int k) {
    if (n < k || k < 0) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

long long rank_pair(int lo, int hi) {
    return binomial(hi, 2) + lo;
}

Edge unrank_pair(long long index) {
    int hi = 1;
    while (binomial(hi + 1, 2) <= index) ++hi;
    return {static_cast<int>(index - binomial(hi, 2)), hi};
}

long long rank_triple(int a, int b, int c) {
    return binomial(c, 3) + binomial(b, 2) + a;
}

std::vector<int> unrank_triple(long long index) {
    int c = 2;
    while (binomial(c + 1, 3) <= index) ++c;
    long long rest = index - binomial(c, 3);
    int b = 1;
    while (binomial(b + 1, 2) <= rest) ++b;
    int a = static_cast<int>(rest - binomial(b, 2));
    return {a, b, c};
}

namespace {

// Floyd's m-subset sampling over [0, universe).
std::vector<long long> sample_distinct(long long universe, long long m, Rng &rng) {
    std::set<long long> chosen;
    for (long long j = universe - m; j < universe; ++j) {
        long long t = static_cast<long long>(rng.below(static_cast<std::uint64_t>(j + 1)));
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    return std::vector<long long>(chosen.begin(), chosen.end());
}

} // namespace

Graph sample_gnm(int n, long long m, Rng &rng) {
    long long universe = binomial(n, 2);
    if (m < 0 || m > universe)
        throw std::invalid_argument("sample_gnm: m exceeds possible edge count");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long idx : sample_distinct(universe, m, rng))
        edges.push_back(unrank_pair(idx));
    return Graph(n, std::move(edges));
}

Graph sample_gnm(int n, long long m, std::uint64_t seed) {
    Rng rng(seed);
    return sample_gnm(n, m, rng);
}

Hypergraph sample_gnm_hyper(int n, int k, long long m, Rng &rng) {
    if (k != 2 && k != 3)
        throw std::invalid_argument("sample_gnm_hyper: only k in {2,3} supported");
    long long universe = binomial(n, k);
    if (m < 0 || m > universe)
        throw std::invalid_argument("sample_gnm_hyper: m exceeds possible edge count");
    std::vector<std::vector<int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long idx : sample_distinct(universe, m, rng)) {
        if (k == 2) {
            Edge e = unrank_pair(idx);
            edges.push_back({e.first, e.second});
        } else {
            edges.push_back(unrank_triple(idx));
        }
    }
    return Hypergraph(n, k, std::move(edges));
}

Hypergraph sample_gnm_hyper(int n, int k, long long m, std::uint64_t seed) {
    Rng rng(seed);
    return sample_gnm_hyper(n, k, m, rng);
}

VertexMap random_permutation(int n, Rng &rng) {
    std::vector<int> f(n);
    for (int i = 0; i < n; ++i) f[i] = i;
    rng.shuffle(f);
    return VertexMap(std::move(f));
}

void extend_avoiding_fixed_points(std::vector<int> &partial) {
    int n = static_cast<int>(partial.size());
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (int v : partial)
        if (v >= 0) used[static_cast<std::size_t>(v)] = 1;
    // Split the leftovers: values in both lists rotate among themselves,
    // one-sided sources and targets pair up freely.  A fixed point then
    // appears only in the forced singleton case.
    std::vector<int> common, sources_only, targets_only;
    for (int j = 0; j < n; ++j) {
        bool is_source = partial[static_cast<std::size_t>(j)] < 0;
        bool is_target = !used[static_cast<std::size_t>(j)];
        if (is_source && is_target) common.push_back(j);
        else if (is_source) sources_only.push_back(j);
        else if (is_target) targets_only.push_back(j);
    }
    if (common.size() >= 2) {
        for (std::size_t i = 0; i < common.size(); ++i)
            partial[static_cast<std::size_t>(common[i])] = common[(i + 1) % common.size()];
        for (std::size_t i = 0; i < sources_only.size(); ++i)
            partial[static_cast<std::size_t>(sources_only[i])] = targets_only[i];
        return;
    }
    if (common.size() == 1) {
        int c = common[0];
        if (targets_only.empty()) {
            partial[static_cast<std::size_t>(c)] = c; // forced
            return;
        }
        partial[static_cast<std::size_t>(c)] = targets_only[0];
        partial[static_cast<std::size_t>(sources_only[0])] = c;
        for (std::size_t i = 1; i < sources_only.size(); ++i)
            partial[static_cast<std::size_t>(sources_only[i])] = targets_only[i];
        return;
    }
    for (std::size_t i = 0; i < sources_only.size(); ++i)
        partial[static_cast<std::size_t>(sources_only[i])] = targets_only[i];
}

namespace {

void clique_extend(const Graph &g, std::vector<int> &candidates, int current, int &best) {
    if (current + static_cast<int>(candidates.size()) <= best) return;
    if (candidates.empty()) {
        best = std::max(best, current);
        return;
    }
    while (!candidates.empty()) {
        if (current + static_cast<int>(candidates.size()) <= best) return;
        int v = candidates.back();
        candidates.pop_back();
        std::vector<int> next;
        for (int u : candidates)
            if (g.has_edge(u, v)) next.push_back(u);
        clique_extend(g, next, current + 1, best);
    }
    best = std::max(best, current);
}

} // namespace

int max_clique_size(const Graph &g) {
    std::vector<int> all(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) all[static_cast<std::size_t>(v)] = v;
    int best = 0;
    clique_extend(g, all, 0, best);
    return best;
}

} // namespace gisoforge
