#pragma once

#include <vector>

#include "eqforest/graph.hpp"

namespace eqforest {

/// Assignment of every vertex to a class index in 1..m. Classes may be
/// empty (relevant when m exceeds the vertex count).
struct Partition {
    int m = 1;
    std::vector<int> assignment;  // vertex -> class index

    std::vector<int> class_sizes() const;            // length m
    std::vector<int> class_members(int cls) const;   // ascending vertex ids
    friend bool operator==(const Partition&, const Partition&) = default;
};

struct ClassPredicate {
    enum class Kind { independent, forest, defective_forest };

    Kind kind = Kind::forest;
    int defect = 0;  // max degree inside a class; >= 1 iff defective_forest

    static ClassPredicate independent() { return {Kind::independent, 0}; }
    static ClassPredicate forest() { return {Kind::forest, 0}; }
    static ClassPredicate defective_forest(int d);  // requires d >= 1

    friend bool operator==(const ClassPredicate&, const ClassPredicate&) = default;
};

struct ClassViolation {
    enum class Reason {
        cycle,     // class induces a cycle
        degree,    // some vertex exceeds the defect bound inside its class
        adjacent,  // class contains an edge (independent mode)
    };
    int class_index;  // 1..m
    Reason reason;
    friend bool operator==(const ClassViolation&, const ClassViolation&) = default;
};

struct VerifyReport {
    bool equitable_ok = false;
    std::vector<ClassViolation> class_violations;
    int min_class_size = 0;
    int max_class_size = 0;

    bool ok() const { return equitable_ok && class_violations.empty(); }
};

// Sizes of any two classes differ by at most one (empty classes count).
bool is_equitable(const Partition& p);

// Checks equitability and the per-class predicate; reports every
// violation, not just the first. The assignment must cover exactly the
// vertices of g with classes in 1..m, otherwise std::invalid_argument.
VerifyReport verify(const Graph& g, const Partition& p, const ClassPredicate& pred);

}  // namespace eqforest
