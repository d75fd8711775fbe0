#pragma once

#include <chrono>
#include <optional>
#include <utility>
#include <vector>

#include "eqforest/solver_exact.hpp"

namespace eqforest {

/// One step of the constructive solver. Place assigns a previously
/// unassigned vertex; transfer reassigns one; exchange marks the swap
/// step that fixes one class and hands the rest to a smaller instance
/// (the moves that follow it re-place those vertices).
struct Move {
    enum class Kind { place, transfer, exchange };

    Kind kind = Kind::place;
    int vertex = -1;  // place / transfer
    int from = 0;     // transfer source class
    int to = 0;       // place / transfer destination class
    int hub = -1;     // exchange: the vertex z leaving the fixed class
    int swap1 = -1;   // exchange: first vertex pulled into the fixed class
    int swap2 = -1;   // exchange: second, nonadjacent to the first
    int depth = 0;    // exchange nesting depth (0 = outermost)

    static Move place_move(int v, int cls);
    static Move transfer(int v, int from, int to);
    static Move exchange(int hub, int swap1, int swap2, int depth);
};

/// Replayable record of a solve. Moves apply to `working` (the input
/// graph plus `pad_count` trailing isolated vertices); replaying them
/// from the empty assignment reproduces the padded partition, and
/// dropping the pad vertices yields the partition the solver returned.
struct MoveTrace {
    Graph working;
    int pad_count = 0;
    int m = 0;
    std::vector<Move> moves;
};

// Applies the trace from the empty assignment. Throws std::logic_error
// on an inconsistent move sequence. With check_forests set, additionally
// asserts that every class induces a forest after every move.
Partition replay(const MoveTrace& trace, bool check_forests = false);

// Appends enough isolated vertices to make the order divisible by m.
std::pair<Graph, int> pad_to_multiple(const Graph& g, int m);

// Inverse of pad_to_multiple: drops the trailing `pad_count` vertices,
// which must all be isolated.
Graph strip_padding(const Graph& g, int pad_count);

// Restriction of a padded-graph partition back to the original vertices.
Partition strip_padding(const Partition& p, int pad_count);

/// The state the repair machinery works on: a graph, one distinguished
/// vertex awaiting (re)placement, and a partition of everything else
/// whose classes all induce forests. The pivot conceptually belongs to
/// `first_class`; its assignment entry stays 0. Vertices with entry 0
/// other than the pivot are outside the configuration (not yet colored).
struct Configuration {
    Graph graph;
    int pivot = -1;
    int pivot_anchor = -1;  // smallest-index neighbor of the pivot, -1 if none
    Partition partition;
    int first_class = 1;    // index of the class the pivot belongs to

    // Derived sets, refreshed after every move.
    std::vector<int> first_class_rest;  // the first class without the pivot
    std::vector<int> rest;              // colored vertices outside the first class
    std::vector<int> low_attachment;    // rest members with exactly two edges
                                        // into first_class_rest

    void refresh();
};

// Builds a configuration from a coloring of g minus `pivot`. The first
// class defaults to a minimum-size class (lowest index on ties).
Configuration make_configuration(const Graph& g, int pivot, Partition coloring_of_rest);

/// Exchange witness: hub is a first-class vertex with two nonadjacent
/// low-attachment neighbors.
struct ExchangeTriple {
    int hub;    // z
    int swap1;  // y1
    int swap2;  // y2
};

// Moves v to class `to` iff that class (pivot excluded) stays acyclic;
// records the move in `moves`. Returns whether the move was applied.
bool transfer_move(Configuration& cfg, int v, int to, std::vector<Move>* moves = nullptr);

// Scans for a first-class vertex with two nonadjacent neighbors in the
// low-attachment set (lexicographically first match).
std::optional<ExchangeTriple> find_exchange_vertex(const Configuration& cfg);

// Tries to place the pivot: first a minimum-size class with at most one
// pivot neighbor, then any minimum-size class that stays acyclic, then a
// depth-2 relay (move some u out of a donor class into a minimum-size
// class and put the pivot where u was). UNKNOWN(heuristic_failed) when
// nothing applies.
SolveOutcome reinsert_vertex(Configuration& cfg, std::vector<Move>* moves = nullptr);

// Combines the fixed class (first class minus hub, plus the two swap
// vertices) with a sub-coloring of the remaining graph into a full
// partition. `sub` colors the graph induced by rest + pivot + hub minus
// the swap pair; sub_vertex_map transports its vertex ids back. Throws
// std::logic_error if the preconditions do not hold.
Partition lift_coloring(const Configuration& cfg, const ExchangeTriple& triple,
                        const Partition& sub, std::span<const int> sub_vertex_map);

struct ConstructiveOptions {
    std::chrono::milliseconds budget = default_solve_budget;
    // Delegate to exact_solve when the derived moves do not apply (the
    // constructive machinery alone never proves UNSAT).
    bool exact_fallback = true;
};

struct ConstructiveResult {
    SolveOutcome outcome;
    MoveTrace trace;           // populated when the constructive path succeeded
    bool used_fallback = false;
};

// Pads the graph to a multiple of m, colors it by peeling minimum-degree
// vertices and reinserting them (direct placement, relay, or the
// exchange-and-recurse step at divisible orders), strips the padding,
// and verifies the result. Falls back to exact_solve with the remaining
// budget when enabled.
ConstructiveResult solve(const Graph& g, int m, const ConstructiveOptions& opts = {});

}  // namespace eqforest
