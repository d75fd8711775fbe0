#include "eqforest/generator.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace eqforest {

namespace {

// modulo draws keep corpora byte-identical across standard libraries
int draw(std::mt19937& rng, int bound) { return static_cast<int>(rng() % static_cast<unsigned>(bound)); }

template <typename T>
void shuffle_vec(std::vector<T>& v, std::mt19937& rng) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
        std::swap(v[i], v[draw(rng, i + 1)]);
}

// shortest u-v distance in the current edge set, -1 if disconnected
int bfs_distance(const std::vector<std::vector<int>>& adj, int u, int v) {
    if (u == v) return 0;
    std::vector<int> dist(adj.size(), -1);
    std::vector<int> queue{u};
    dist[u] = 0;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int x = queue[qi];
        for (int w : adj[x]) {
            if (dist[w] != -1) continue;
            dist[w] = dist[x] + 1;
            if (w == v) return dist[w];
            queue.push_back(w);
        }
    }
    return -1;
}

bool edge_keeps_girth(const std::vector<std::vector<int>>& adj, int u, int v, int min_girth) {
    int d = bfs_distance(adj, u, v);
    return d == -1 || d + 1 >= min_girth;
}

}  // namespace

Graph random_planar(int n, int min_girth, std::uint32_t seed, int target_edges) {
    if (n < 1) throw std::invalid_argument("order must be >= 1");
    if (min_girth < 3) throw std::invalid_argument("girth floor must be >= 3");
    std::mt19937 rng(seed);

    std::vector<Edge> edges;
    std::vector<std::vector<int>> adj(n);
    auto add = [&](int u, int v) {
        edges.push_back(make_edge(u, v));
        adj[u].push_back(v);
        adj[v].push_back(u);
    };
    // random recursive tree keeps the result connected
    for (int v = 1; v < n; ++v) add(draw(rng, v), v);

    std::vector<Edge> candidates;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) candidates.push_back({u, v});
    shuffle_vec(candidates, rng);

    long long target = target_edges < 0 ? static_cast<long long>(n) * n : target_edges;
    for (const auto& [u, v] : candidates) {
        if (static_cast<long long>(edges.size()) >= target) break;
        if (std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end()) continue;
        if (!edge_keeps_girth(adj, u, v, min_girth)) continue;
        std::vector<Edge> tentative = edges;
        tentative.push_back(make_edge(u, v));
        if (!is_planar(Graph(n, tentative))) continue;
        add(u, v);
    }
    return Graph(n, std::move(edges));
}

Drawing ic_augment(const Graph& planar, int max_crossings, std::uint32_t seed, int min_girth) {
    if (!is_planar(planar)) throw std::invalid_argument("base graph must be planar");
    if (min_girth < 3) throw std::invalid_argument("girth floor must be >= 3");
    const int n = planar.order();
    std::mt19937 rng(seed);

    std::vector<Edge> edges = planar.edges();
    std::vector<std::vector<int>> adj(n);
    for (const auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<Crossing> crossings;
    std::vector<char> used(n, 0);
    Rational cap = n >= 3 ? edge_bound(n, min_girth) : Rational(0);

    int attempts = 40 * std::max(max_crossings, 1) + 40;
    while (static_cast<int>(crossings.size()) < max_crossings && attempts-- > 0) {
        std::vector<int> unused;
        for (int v = 0; v < n; ++v)
            if (!used[v]) unused.push_back(v);
        if (unused.size() < 4) break;
        shuffle_vec(unused, rng);
        int q[4] = {unused[0], unused[1], unused[2], unused[3]};
        std::sort(q, q + 4);

        // the three ways to pair four vertices into two disjoint edges
        int pairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
        int first = draw(rng, 3);
        bool committed = false;
        for (int p = 0; p < 3 && !committed; ++p) {
            auto& pr = pairings[(first + p) % 3];
            Edge e1 = make_edge(q[pr[0]], q[pr[1]]);
            Edge e2 = make_edge(q[pr[2]], q[pr[3]]);
            if (planar.order() >= 3 && Rational(static_cast<long long>(edges.size()) + 2) > cap)
                break;  // density budget exhausted
            auto exists = [&](Edge e) {
                return std::find(adj[e.first].begin(), adj[e.first].end(), e.second) !=
                       adj[e.first].end();
            };
            if (exists(e1) || exists(e2)) continue;
            if (!edge_keeps_girth(adj, e1.first, e1.second, min_girth)) continue;
            adj[e1.first].push_back(e1.second);
            adj[e1.second].push_back(e1.first);
            bool ok = edge_keeps_girth(adj, e2.first, e2.second, min_girth);
            if (ok) {
                // the planarized skeleton (lex-smaller edge dropped) must stay planar
                std::vector<Edge> skeleton = edges;
                skeleton.push_back(std::max(e1, e2));
                ok = is_planar(Graph(n, skeleton));
            }
            if (!ok) {
                adj[e1.first].pop_back();
                adj[e1.second].pop_back();
                continue;
            }
            adj[e2.first].push_back(e2.second);
            adj[e2.second].push_back(e2.first);
            edges.push_back(e1);
            edges.push_back(e2);
            Crossing c{std::min(e1, e2), std::max(e1, e2)};
            crossings.push_back(c);
            for (int v : q) used[v] = 1;
            committed = true;
        }
    }
    return Drawing{Graph(n, std::move(edges)), std::move(crossings)};
}

Graph sharpness_example(int k, int t) {
    if (k < 2) throw std::invalid_argument("clique size must be >= 2");
    if (t < 2 * k - 3) throw std::invalid_argument("needs at least 2k-3 extra vertices");
    std::vector<Edge> edges;
    for (int u = 0; u < k; ++u)
        for (int v = u + 1; v < k; ++v) edges.push_back({u, v});
    for (int a = 0; a < t; ++a)
        for (int v = 0; v < k; ++v) edges.push_back({v, k + a});
    return Graph(k + t, std::move(edges));
}

Graph fan_example(int path_len) {
    if (path_len < 1) throw std::invalid_argument("path length must be >= 1");
    std::vector<Edge> edges;
    for (int v = 0; v + 1 < path_len; ++v) edges.push_back({v, v + 1});
    for (int v = 0; v < path_len; ++v) edges.push_back({v, path_len});
    return Graph(path_len + 1, std::move(edges));
}

Graph star(int delta) {
    if (delta < 0) throw std::invalid_argument("degree must be >= 0");
    std::vector<Edge> edges;
    for (int v = 1; v <= delta; ++v) edges.push_back({0, v});
    return Graph(delta + 1, std::move(edges));
}

Graph cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs >= 3 vertices");
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v) edges.push_back(make_edge(v, (v + 1) % n));
    return Graph(n, std::move(edges));
}

Graph complete(int k) {
    if (k < 1) throw std::invalid_argument("order must be >= 1");
    std::vector<Edge> edges;
    for (int u = 0; u < k; ++u)
        for (int v = u + 1; v < k; ++v) edges.push_back({u, v});
    return Graph(k, std::move(edges));
}

Graph subdivide(const Graph& g, int r) {
    if (r < 0) throw std::invalid_argument("subdivision factor must be >= 0");
    if (r == 0) return g;
    std::vector<Edge> edges;
    int next = g.order();
    for (const auto& [u, v] : g.edges()) {
        int prev = u;
        for (int i = 0; i < r; ++i) {
            edges.push_back(make_edge(prev, next));
            prev = next++;
        }
        edges.push_back(make_edge(prev, v));
    }
    return Graph(next, std::move(edges));
}

}  // namespace eqforest
