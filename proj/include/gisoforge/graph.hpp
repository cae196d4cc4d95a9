#ifndef GISOFORGE_GRAPH_HPP
#define GISOFORGE_GRAPH_HPP

#include "gisoforge/rational.hpp"
#include "gisoforge/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gisoforge {

using Edge = std::pair<int, int>; // unordered, stored with first < second

enum class VertexRole { variable, constraint, auxiliary };

struct VertexLabel {
    VertexRole role;
    std::string name;
};

// Simple undirected graph over vertices 0..n-1.  Immutable after
// construction; edges are deduplicated and stored sorted.
class Graph {
public:
    Graph() : n_(0) {}
    Graph(int n, std::vector<Edge> edges,
          std::vector<VertexLabel> labels = {});

    int vertex_count() const { return n_; }
    long long edge_count() const { return static_cast<long long>(edges_.size()); }
    const std::vector<Edge> &edges() const { return edges_; }
    const std::vector<int> &neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(int u, int v) const;

    bool has_labels() const { return !labels_.empty(); }
    const std::vector<VertexLabel> &labels() const { return labels_; }

    bool operator==(const Graph &other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<VertexLabel> labels_;
};

// k-uniform hypergraph; every edge is a sorted k-set of distinct vertices.
class Hypergraph {
public:
    Hypergraph() : n_(0), k_(0) {}
    Hypergraph(int n, int k, std::vector<std::vector<int>> edges);

    int vertex_count() const { return n_; }
    int uniformity() const { return k_; }
    long long edge_count() const { return static_cast<long long>(edges_.size()); }
    const std::vector<std::vector<int>> &edges() const { return edges_; }
    bool has_edge(const std::vector<int> &sorted_edge) const;
    int degree(int v) const { return degrees_[v]; }

private:
    int n_;
    int k_;
    std::vector<std::vector<int>> edges_; // sorted list of sorted k-sets
    std::vector<int> degrees_;
};

// Bijection between equal-sized vertex sets; also used for permutations.
class VertexMap {
public:
    VertexMap() = default;
    explicit VertexMap(std::vector<int> forward);

    static VertexMap identity(int n);

    int size() const { return static_cast<int>(forward_.size()); }
    int operator()(int v) const { return forward_[v]; }
    const std::vector<int> &forward() const { return forward_; }
    VertexMap inverse() const;
    int fixed_point_count() const;
    Edge apply(const Edge &e) const;
    std::vector<int> apply(const std::vector<int> &sorted_set) const;

    bool operator==(const VertexMap &other) const { return forward_ == other.forward_; }

private:
    std::vector<int> forward_;
};

using Permutation = VertexMap;

// Edge-preservation score: satisfied / max of the two edge counts.
struct Score {
    long long satisfied = 0;
    long long denominator = 0;
    Rational ratio;

    static Score make(long long satisfied, long long denominator);
    bool at_least(const Rational &threshold) const { return ratio >= threshold; }
};

Score gi_score(const Graph &g, const Graph &h, const VertexMap &pi);
Score aut_score(const Graph &g, const Permutation &pi);
Score gi_score(const Hypergraph &g, const Hypergraph &h, const VertexMap &pi);
Score aut_score(const Hypergraph &g, const Permutation &pi);

// Symmetric difference between E and the preimage of E under pi:
// {e in E : pi(e) not in E} and {e not in E : pi(e) in E}.
std::vector<Edge> edge_diff(const Graph &g, const Permutation &pi);
std::vector<std::vector<int>> edge_diff(const Hypergraph &g, const Permutation &pi);

// True iff the mean of the ceil(eps*n) largest degrees is at most D.  The
// top-degree set maximizes average degree over all sets of that size, so
// this is equivalent to the universal quantification over such sets.
bool is_degree_bounded(const Graph &g, const Rational &eps, const Rational &bound);
bool is_degree_bounded(const Hypergraph &g, const Rational &eps, const Rational &bound);

long long incident_edge_count(const Graph &g, const std::vector<int> &vertex_set);
long long incident_edge_count(const Hypergraph &g, const std::vector<int> &vertex_set);

// Uniform over all simple graphs (k-uniform hypergraphs) with exactly m edges.
Graph sample_gnm(int n, long long m, std::uint64_t seed);
Hypergraph sample_gnm_hyper(int n, int k, long long m, std::uint64_t seed);
Graph sample_gnm(int n, long long m, Rng &rng);
Hypergraph sample_gnm_hyper(int n, int k, long long m, Rng &rng);

long long binomial(long long n, int k);

// Colex ranking of sorted k-sets; used by sampling and the bin machinery.
long long rank_pair(int lo, int hi);
Edge unrank_pair(long long index);
long long rank_triple(int a, int b, int c);
std::vector<int> unrank_triple(long long index);

VertexMap random_permutation(int n, Rng &rng);

// Completes a partial injection (-1 marks unassigned sources) to a
// permutation, avoiding new fixed points unless a lone (j, j) pair is all
// that remains.
void extend_avoiding_fixed_points(std::vector<int> &partial);

// Exhaustive maximum clique; intended for small gadget-sized graphs.
int max_clique_size(const Graph &g);

} // namespace gisoforge

#endif // GISOFORGE_GRAPH_HPP
