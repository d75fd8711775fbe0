#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "eqforest/coloring.hpp"

namespace eqforest {

enum class SolveStatus { sat, unsat, unknown };

enum class UnknownReason { timeout, heuristic_failed };

/// Three-valued solver result. UNSAT is only ever produced by an
/// exhaustive search; UNKNOWN distinguishes timeouts from heuristics
/// that simply did not apply.
struct SolveOutcome {
    SolveStatus status = SolveStatus::unknown;
    std::optional<Partition> partition;  // present iff sat; always verified
    UnknownReason reason = UnknownReason::heuristic_failed;

    bool is_sat() const { return status == SolveStatus::sat; }
    bool is_unsat() const { return status == SolveStatus::unsat; }
    bool is_unknown() const { return status == SolveStatus::unknown; }

    static SolveOutcome sat(Partition p);
    static SolveOutcome unsat();
    static SolveOutcome unknown(UnknownReason r);
};

inline constexpr std::chrono::milliseconds default_solve_budget{10000};

// Backtracking search for an equitable partition of g into m classes,
// each satisfying pred. Class sizes are fixed up front (n mod m classes
// of size ceil(n/m), the rest floor); class symmetry is broken by never
// opening more than one empty class of a given capacity. Returns UNSAT
// only after exhausting the space, UNKNOWN(timeout) past the budget.
SolveOutcome exact_solve(const Graph& g, int m, const ClassPredicate& pred,
                         std::chrono::milliseconds budget = default_solve_budget);

// Testing oracle: plain enumeration of assignments filtered through
// verify(). Refuses graphs with more than 10 vertices.
SolveOutcome brute_force_solve(const Graph& g, int m, const ClassPredicate& pred);

// Least m with exact_solve(g, m, pred) SAT. Empty if a needed solve
// timed out before the answer was determined.
std::optional<int> va_eq(const Graph& g, const ClassPredicate& pred,
                         std::chrono::milliseconds per_solve_budget = default_solve_budget);

// Least k such that exact_solve is SAT for every m in [k, n]. Well
// defined: m = n (all classes of size <= 1) is always SAT.
std::optional<int> va_eq_star(const Graph& g, const ClassPredicate& pred,
                              std::chrono::milliseconds per_solve_budget = default_solve_budget);

/// Per-graph feasibility record for m = 1..n.
struct ThresholdReport {
    std::optional<int> va_eq;
    std::optional<int> va_eq_star;
    std::vector<SolveStatus> per_m;  // index m-1
    std::optional<int> defect;       // set for defective-forest runs
};

ThresholdReport threshold_report(const Graph& g, const ClassPredicate& pred,
                                 std::chrono::milliseconds per_solve_budget = default_solve_budget);

}  // namespace eqforest
