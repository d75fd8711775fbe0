#include "eqforest/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace eqforest {

Graph::Graph(int n) : n_(n), adj_(static_cast<size_t>(std::max(n, 0))) {
    if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
}

Graph::Graph(int n, std::vector<Edge> edges) : Graph(n) {
    for (auto& [u, v] : edges) {
        if (u == v) throw std::invalid_argument("self-loop");
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("duplicate edge");
    edges_ = std::move(edges);
    for (const auto& [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

std::span<const int> Graph::neighbors(int v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("vertex out of range");
    return adj_[v];
}

int Graph::degree(int v) const { return static_cast<int>(neighbors(v).size()); }

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) throw std::invalid_argument("vertex out of range");
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    int w = (&a == &adj_[u]) ? v : u;
    return std::binary_search(a.begin(), a.end(), w);
}

Girth girth(const Graph& g) {
    // BFS from every root; a non-tree edge (u,w) closes a walk of length
    // dist[u]+dist[w]+1 containing a cycle, and the minimum over all
    // roots is exact because every shortest cycle is seen from a root it
    // passes through.
    const int n = g.order();
    int best = Girth::infinite;
    std::vector<int> dist(n), parent(n), queue;
    queue.reserve(n);
    for (int root = 0; root < n && best > 3; ++root) {
        if (g.degree(root) < 2) continue;  // no cycle passes through it
        std::fill(dist.begin(), dist.end(), -1);
        dist[root] = 0;
        parent[root] = -1;
        queue.assign(1, root);
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            if (best != Girth::infinite && 2 * dist[u] >= best) break;
            for (int w : g.neighbors(u)) {
                if (w == parent[u]) continue;
                if (dist[w] == -1) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else {
                    best = std::min(best, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    return Girth{best};
}

std::string to_string(const Girth& g) {
    return g.is_infinite() ? "inf" : std::to_string(g.value);
}

int min_degree(const Graph& g) {
    if (g.order() == 0) throw std::invalid_argument("min_degree of empty graph");
    int best = g.degree(0);
    for (int v = 1; v < g.order(); ++v) best = std::min(best, g.degree(v));
    return best;
}

int max_degree(const Graph& g) {
    if (g.order() == 0) throw std::invalid_argument("max_degree of empty graph");
    int best = g.degree(0);
    for (int v = 1; v < g.order(); ++v) best = std::max(best, g.degree(v));
    return best;
}

int edges_between(const Graph& g, std::span<const int> s1, std::span<const int> s2) {
    // 0 = outside, 1 = s1, 2 = s2
    std::vector<char> side(g.order(), 0);
    for (int v : s1) {
        if (v < 0 || v >= g.order()) throw std::invalid_argument("vertex out of range");
        side[v] = 1;
    }
    for (int v : s2) {
        if (v < 0 || v >= g.order()) throw std::invalid_argument("vertex out of range");
        if (side[v] == 1) throw std::invalid_argument("sets must be disjoint");
        side[v] = 2;
    }
    int count = 0;
    for (const auto& [u, v] : g.edges())
        if (side[u] + side[v] == 3) ++count;
    return count;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> s) {
    std::vector<int> new_id(g.order(), -1);
    std::vector<int> vertex_map(s.begin(), s.end());
    for (size_t i = 0; i < vertex_map.size(); ++i) {
        int v = vertex_map[i];
        if (v < 0 || v >= g.order()) throw std::invalid_argument("vertex out of range");
        if (new_id[v] != -1) throw std::invalid_argument("duplicate vertex in set");
        new_id[v] = static_cast<int>(i);
    }
    std::vector<Edge> edges;
    for (const auto& [u, v] : g.edges())
        if (new_id[u] != -1 && new_id[v] != -1)
            edges.push_back(make_edge(new_id[u], new_id[v]));
    return {Graph(static_cast<int>(vertex_map.size()), std::move(edges)), std::move(vertex_map)};
}

bool is_forest(const Graph& g) {
    // union-find; an edge inside one component closes a cycle
    std::vector<int> parent(g.order());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [u, v] : g.edges()) {
        int ru = find(u), rv = find(v);
        if (ru == rv) return false;
        parent[ru] = rv;
    }
    return true;
}

int degeneracy(const Graph& g) {
    const int n = g.order();
    if (n == 0) throw std::invalid_argument("degeneracy of empty graph");
    std::vector<int> deg(n);
    std::vector<char> removed(n, 0);
    for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
    int result = 0;
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int v = 0; v < n; ++v)
            if (!removed[v] && (pick == -1 || deg[v] < deg[pick])) pick = v;
        result = std::max(result, deg[pick]);
        removed[pick] = 1;
        for (int w : g.neighbors(pick))
            if (!removed[w]) --deg[w];
    }
    return result;
}

}  // namespace eqforest
