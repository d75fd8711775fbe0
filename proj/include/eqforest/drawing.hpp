#pragma once

#include <array>
#include <optional>
#include <vector>

#include <boost/rational.hpp>

#include "eqforest/graph.hpp"

namespace eqforest {

using Rational = boost::rational<long long>;

/// Two mutually crossing edges of a 1-plane drawing. The four endpoints
/// must be pairwise distinct and both edges must exist in the graph.
struct Crossing {
    Edge e1;
    Edge e2;
    friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// The four end-vertices of a crossing, sorted ascending.
using Cluster = std::array<int, 4>;

/// A combinatorial 1-plane drawing: a graph plus its list of crossing
/// edge pairs. Geometric realizability is not certified; validation
/// enforces the necessary combinatorial conditions only.
struct Drawing {
    Graph graph;
    std::vector<Crossing> crossings;
};

struct DrawingViolation {
    enum class Kind {
        missing_edge,      // crossing references an edge not in the graph
        shared_endpoint,   // the two edges of a crossing share a vertex
        edge_reused,       // an edge appears in more than one crossing
    };
    Kind kind;
    int crossing_index;
    Edge edge;
    friend bool operator==(const DrawingViolation&, const DrawingViolation&) = default;
};

std::vector<Cluster> clusters(const Drawing& d);

// Empty result iff every crossing references existing edges, has four
// distinct endpoints, and no edge occurs in two crossings.
std::vector<DrawingViolation> validate_one_plane(const Drawing& d);

// True iff all clusters are pairwise disjoint (independent crossings).
bool is_ic(const Drawing& d);

// Removes the lexicographically smaller edge of each crossing pair.
Graph planarize(const Drawing& d);

bool is_planar(const Graph& g);

// Upper bound on the edge count of an IC drawing of order n with girth
// at least g: (5g-2)/(4g-8) * n - 2g/(g-2), exact. Requires g >= 3.
Rational edge_bound(int n, int g);

// Upper bound on the minimum degree of an IC drawing with girth >= g:
// 6 / 4 / 3 for g = 3 / 4 / >= 5. Requires g >= 3.
int min_degree_bound(int g);

// Least class count m0 such that every IC drawing with girth >= g has an
// equitable partition into m induced forests for all m >= m0.
// 8 / 6 / 5 / 4 / 3 for g = 3 / 4 / 5 / 6..25 / >= 26; girths between the
// known steps take the bound of the next smaller step (the girth classes
// are nested).
int tree_coloring_threshold(int g);
int tree_coloring_threshold(const Girth& g);

struct DensityReport {
    Girth girth;
    int edge_count = 0;
    std::optional<Rational> edge_limit;  // empty when vacuous (forest or n < 3)
    bool edges_ok = true;
    int min_deg = 0;        // 0 for the empty graph
    int min_deg_limit = 0;
    bool min_deg_ok = true;
    int crossing_count = 0;
    int crossing_limit = 0;  // floor(n / 4)
    bool crossings_ok = true;
    bool pass = true;
};

// Audits an IC drawing against the density bound, the min-degree bound
// and the crossing cap. Expects is_ic(d) to hold.
DensityReport check_density(const Drawing& d);

}  // namespace eqforest
