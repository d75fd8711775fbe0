#include "eqforest/drawing.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

namespace eqforest {

namespace {

Crossing normalized(const Crossing& c) {
    Crossing out{make_edge(c.e1.first, c.e1.second), make_edge(c.e2.first, c.e2.second)};
    if (out.e2 < out.e1) std::swap(out.e1, out.e2);
    return out;
}

}  // namespace

std::vector<Cluster> clusters(const Drawing& d) {
    std::vector<Cluster> out;
    out.reserve(d.crossings.size());
    for (const auto& c : d.crossings) {
        Cluster m{c.e1.first, c.e1.second, c.e2.first, c.e2.second};
        std::sort(m.begin(), m.end());
        out.push_back(m);
    }
    return out;
}

std::vector<DrawingViolation> validate_one_plane(const Drawing& d) {
    std::vector<DrawingViolation> out;
    std::map<Edge, int> seen;  // edge -> first crossing index
    for (int i = 0; i < static_cast<int>(d.crossings.size()); ++i) {
        Crossing c = normalized(d.crossings[i]);
        for (Edge e : {c.e1, c.e2}) {
            bool in_range = e.first >= 0 && e.second < d.graph.order() && e.first != e.second;
            if (!in_range || !d.graph.has_edge(e.first, e.second)) {
                out.push_back({DrawingViolation::Kind::missing_edge, i, e});
                continue;
            }
            auto [it, fresh] = seen.emplace(e, i);
            if (!fresh) out.push_back({DrawingViolation::Kind::edge_reused, i, e});
        }
        std::set<int> ends{c.e1.first, c.e1.second, c.e2.first, c.e2.second};
        if (ends.size() != 4)
            out.push_back({DrawingViolation::Kind::shared_endpoint, i, c.e1});
    }
    return out;
}

bool is_ic(const Drawing& d) {
    std::vector<char> used(d.graph.order(), 0);
    for (const auto& m : clusters(d))
        for (int v : m) {
            if (v < 0 || v >= d.graph.order()) return false;
            if (used[v]) return false;
            used[v] = 1;
        }
    return true;
}

Graph planarize(const Drawing& d) {
    std::set<Edge> drop;
    for (const auto& c : d.crossings) {
        Crossing nc = normalized(c);
        drop.insert(nc.e1);  // deterministically the lexicographically smaller edge
    }
    std::vector<Edge> kept;
    kept.reserve(d.graph.edges().size());
    for (const auto& e : d.graph.edges())
        if (!drop.count(e)) kept.push_back(e);
    return Graph(d.graph.order(), std::move(kept));
}

bool is_planar(const Graph& g) {
    using BoostGraph =
        boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    BoostGraph bg(static_cast<size_t>(g.order()));
    for (const auto& [u, v] : g.edges()) boost::add_edge(u, v, bg);
    return boost::boyer_myrvold_planarity_test(bg);
}

Rational edge_bound(int n, int g) {
    if (g < 3) throw std::invalid_argument("girth parameter must be >= 3");
    return Rational(5 * g - 2, 4 * g - 8) * n - Rational(2 * g, g - 2);
}

int min_degree_bound(int g) {
    if (g < 3) throw std::invalid_argument("girth parameter must be >= 3");
    if (g == 3) return 6;
    if (g == 4) return 4;
    return 3;
}

int tree_coloring_threshold(int g) {
    if (g < 3) throw std::invalid_argument("girth parameter must be >= 3");
    if (g == 3) return 8;
    if (g == 4) return 6;
    if (g == 5) return 5;
    if (g < 26) return 4;
    return 3;
}

int tree_coloring_threshold(const Girth& g) {
    // a forest is in every girth class, so the best listed bound applies
    return g.is_infinite() ? 3 : tree_coloring_threshold(g.value);
}

DensityReport check_density(const Drawing& d) {
    const Graph& g = d.graph;
    DensityReport r;
    r.girth = girth(g);
    r.edge_count = g.size();
    r.crossing_count = static_cast<int>(d.crossings.size());
    r.crossing_limit = g.order() / 4;
    r.crossings_ok = r.crossing_count <= r.crossing_limit;

    if (!r.girth.is_infinite() && g.order() >= 3) {
        r.edge_limit = edge_bound(g.order(), r.girth.value);
        r.edges_ok = Rational(r.edge_count) <= *r.edge_limit;
    }
    int gb = r.girth.is_infinite() ? 5 : r.girth.value;  // forests fall in the g >= 5 bucket
    r.min_deg_limit = min_degree_bound(std::max(gb, 3));
    if (g.order() >= 1) {
        r.min_deg = min_degree(g);
        r.min_deg_ok = r.min_deg <= r.min_deg_limit;
    }
    r.pass = r.edges_ok && r.min_deg_ok && r.crossings_ok;
    return r;
}

}  // namespace eqforest
