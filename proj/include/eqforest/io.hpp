#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqforest/coloring.hpp"
#include "eqforest/drawing.hpp"
#include "eqforest/solver_exact.hpp"

namespace eqforest::io {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Drawing documents:
//   { "n": <int>, "edges": [[u,v],...], "crossings": [{"e1":[a,b],"e2":[c,d]},...] }
// 0-indexed, each edge smaller endpoint first, "crossings" optional.
// The writer emits one canonical byte form (sorted, normalized, 2-space
// indent); reading rejects range errors, self-loops and duplicate edges.
Drawing read_drawing(std::istream& in);
Drawing read_drawing(const std::string& text);
Drawing read_drawing_file(const std::filesystem::path& path);
void write_drawing(std::ostream& out, const Drawing& d);
void write_drawing_file(const std::filesystem::path& path, const Drawing& d);
std::string to_string(const Drawing& d);

struct DimacsResult {
    Graph graph;
    std::vector<std::string> warnings;  // e.g. header/edge-count mismatch
};

// DIMACS .col edge lists: "p edge n m" then "e u v" lines, 1-indexed.
DimacsResult read_dimacs_col(std::istream& in);
DimacsResult read_dimacs_col_file(const std::filesystem::path& path);

// Reads .col files through the DIMACS parser (crossings empty) and
// anything else as a drawing document.
Drawing read_graph_auto(const std::filesystem::path& path);

// Partition documents: { "m": <int>, "assignment": [c_0, ..., c_{n-1}] }
// with 1 <= c_i <= m.
Partition read_partition(std::istream& in);
Partition read_partition(const std::string& text);
Partition read_partition_file(const std::filesystem::path& path);
void write_partition(std::ostream& out, const Partition& p);
void write_partition_file(const std::filesystem::path& path, const Partition& p);
std::string to_string(const Partition& p);

/// One experiment row. The feasibility vector is anchored at m = 1:
/// '1' sat, '0' exhaustive unsat, '?' timed out, '-' not tested.
struct ReportRow {
    std::string graph_id;
    int n = 0;
    int e = 0;
    Girth girth;
    bool ic = false;
    std::string feasibility;
    std::optional<int> va_eq;
    std::optional<int> va_eq_star;
    std::string solver;
    long long elapsed_ms = 0;
};

std::string feasibility_string(const std::vector<SolveStatus>& per_m, int m_lo = 1);

// Comma-delimited with a header row; rows sorted by graph id.
void write_report(std::ostream& out, std::vector<ReportRow> rows);

}  // namespace eqforest::io
