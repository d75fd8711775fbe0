#pragma once

#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace eqforest {

// Undirected edge, normalized so that first < second.
using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

/// Simple undirected graph on vertices 0..n-1. Immutable after construction;
/// all queries are read-only and safe to call concurrently.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);
    // Throws std::invalid_argument on self-loops, duplicate edges or
    // out-of-range endpoints. Edges are normalized and stored sorted.
    Graph(int n, std::vector<Edge> edges);

    int order() const { return n_; }                          // |V|
    int size() const { return static_cast<int>(edges_.size()); } // |E|
    const std::vector<Edge>& edges() const { return edges_; }

    std::span<const int> neighbors(int v) const;
    int degree(int v) const;
    bool has_edge(int u, int v) const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;            // sorted, unique, normalized
    std::vector<std::vector<int>> adj_;  // sorted neighbor lists
};

/// Length of the shortest cycle; `infinite` when the graph is a forest.
struct Girth {
    static constexpr int infinite = std::numeric_limits<int>::max();
    int value = infinite;

    bool is_infinite() const { return value == infinite; }
    friend bool operator==(const Girth&, const Girth&) = default;
};

Girth girth(const Graph& g);
std::string to_string(const Girth& g);

// Minimum / maximum vertex degree. The empty graph is an input error.
int min_degree(const Graph& g);
int max_degree(const Graph& g);

// e(S1, S2): number of edges with one endpoint in each set.
// The sets must be disjoint subsets of V(G).
int edges_between(const Graph& g, std::span<const int> s1, std::span<const int> s2);

struct InducedSubgraph {
    Graph graph;
    std::vector<int> vertex_map;  // vertex_map[new id] = old id
};

// Subgraph induced by `s` (no duplicates, all in range), relabeled to
// 0..|s|-1 in the order the vertices appear in `s`.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> s);

bool is_forest(const Graph& g);

// Least k such that every subgraph has a vertex of degree <= k,
// by iterated minimum-degree removal. Requires n >= 1.
int degeneracy(const Graph& g);

}  // namespace eqforest
