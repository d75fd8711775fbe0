#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "eqforest/generator.hpp"
#include "eqforest/io.hpp"
#include "eqforest/solver_constructive.hpp"

namespace py = pybind11;
using namespace eqforest;

namespace {

std::chrono::milliseconds ms(long long v) { return std::chrono::milliseconds(v); }

py::object to_fraction(const Rational& r) {
    py::object Fraction = py::module_::import("fractions").attr("Fraction");
    return Fraction(r.numerator(), r.denominator());
}

py::object girth_value(const Girth& g) {
    if (g.is_infinite()) return py::none();
    return py::int_(g.value);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "equitable forest partitions of 1-plane graphs with independent crossings";

    py::class_<Graph>(m, "Graph")
        .def(py::init<>())
        .def(py::init<int>(), py::arg("n"))
        .def(py::init<int, std::vector<Edge>>(), py::arg("n"), py::arg("edges"))
        .def_property_readonly("n", &Graph::order)
        .def("order", &Graph::order)
        .def("size", &Graph::size)
        .def("edges", &Graph::edges)
        .def("degree", &Graph::degree, py::arg("v"))
        .def("has_edge", &Graph::has_edge, py::arg("u"), py::arg("v"))
        .def("neighbors",
             [](const Graph& g, int v) {
                 auto s = g.neighbors(v);
                 return std::vector<int>(s.begin(), s.end());
             },
             py::arg("v"))
        .def("__repr__", [](const Graph& g) {
            std::ostringstream out;
            out << "Graph(n=" << g.order() << ", e=" << g.size() << ")";
            return out.str();
        });

    py::class_<Girth>(m, "Girth")
        .def_readonly("raw", &Girth::value)
        .def("is_infinite", &Girth::is_infinite)
        .def_property_readonly("value", &girth_value)
        .def("__repr__", [](const Girth& g) { return "Girth(" + to_string(g) + ")"; });

    m.def("girth", &girth, py::arg("g"));
    m.def("min_degree", &min_degree);
    m.def("max_degree", &max_degree);
    m.def(
        "edges_between",
        [](const Graph& g, const std::vector<int>& s1, const std::vector<int>& s2) {
            return edges_between(g, s1, s2);
        },
        py::arg("g"), py::arg("s1"), py::arg("s2"));
    m.def(
        "induced_subgraph",
        [](const Graph& g, const std::vector<int>& s) {
            auto sub = induced_subgraph(g, s);
            return py::make_tuple(sub.graph, sub.vertex_map);
        },
        py::arg("g"), py::arg("s"), "returns (subgraph, vertex_map)");
    m.def("is_forest", &is_forest);
    m.def("degeneracy", &degeneracy);

    py::class_<Crossing>(m, "Crossing")
        .def(py::init([](Edge e1, Edge e2) { return Crossing{e1, e2}; }), py::arg("e1"),
             py::arg("e2"))
        .def_readwrite("e1", &Crossing::e1)
        .def_readwrite("e2", &Crossing::e2);

    py::class_<Drawing>(m, "Drawing")
        .def(py::init([](Graph g, std::vector<Crossing> crossings) {
                 return Drawing{std::move(g), std::move(crossings)};
             }),
             py::arg("graph"), py::arg("crossings") = std::vector<Crossing>{})
        .def_readwrite("graph", &Drawing::graph)
        .def_readwrite("crossings", &Drawing::crossings);

    py::enum_<DrawingViolation::Kind>(m, "ViolationKind")
        .value("missing_edge", DrawingViolation::Kind::missing_edge)
        .value("shared_endpoint", DrawingViolation::Kind::shared_endpoint)
        .value("edge_reused", DrawingViolation::Kind::edge_reused);

    py::class_<DrawingViolation>(m, "DrawingViolation")
        .def_readonly("kind", &DrawingViolation::kind)
        .def_readonly("crossing_index", &DrawingViolation::crossing_index)
        .def_readonly("edge", &DrawingViolation::edge);

    m.def("clusters", &clusters);
    m.def("validate_one_plane", &validate_one_plane);
    m.def("is_ic", &is_ic);
    m.def("planarize", &planarize);
    m.def("is_planar", &is_planar);
    m.def(
        "edge_bound", [](int n, int g) { return to_fraction(edge_bound(n, g)); }, py::arg("n"),
        py::arg("g"));
    m.def("min_degree_bound", &min_degree_bound, py::arg("g"));
    m.def(
        "tree_coloring_threshold",
        [](py::object g) {
            if (g.is_none()) return tree_coloring_threshold(Girth{});
            if (py::isinstance<Girth>(g)) return tree_coloring_threshold(g.cast<Girth>());
            return tree_coloring_threshold(g.cast<int>());
        },
        py::arg("g"), "threshold from a girth value, a Girth, or None (forest)");

    py::class_<DensityReport>(m, "DensityReport")
        .def_readonly("girth", &DensityReport::girth)
        .def_property_readonly("edge_limit",
                               [](const DensityReport& r) -> py::object {
                                   if (!r.edge_limit) return py::none();
                                   return to_fraction(*r.edge_limit);
                               })
        .def_readonly("edge_count", &DensityReport::edge_count)
        .def_readonly("edges_ok", &DensityReport::edges_ok)
        .def_readonly("min_deg", &DensityReport::min_deg)
        .def_readonly("min_deg_limit", &DensityReport::min_deg_limit)
        .def_readonly("min_deg_ok", &DensityReport::min_deg_ok)
        .def_readonly("crossing_count", &DensityReport::crossing_count)
        .def_readonly("crossing_limit", &DensityReport::crossing_limit)
        .def_readonly("crossings_ok", &DensityReport::crossings_ok)
        .def_readonly("passed", &DensityReport::pass);
    m.def("check_density", &check_density);

    py::class_<Partition>(m, "Partition")
        .def(py::init([](int m_, std::vector<int> assignment) {
                 return Partition{m_, std::move(assignment)};
             }),
             py::arg("m"), py::arg("assignment"))
        .def_readwrite("m", &Partition::m)
        .def_readwrite("assignment", &Partition::assignment)
        .def("class_sizes", &Partition::class_sizes)
        .def("class_members", &Partition::class_members, py::arg("cls"))
        .def("__eq__", [](const Partition& a, const Partition& b) { return a == b; });

    py::class_<ClassPredicate>(m, "ClassPredicate")
        .def_static("independent", &ClassPredicate::independent)
        .def_static("forest", &ClassPredicate::forest)
        .def_static("defective_forest", &ClassPredicate::defective_forest, py::arg("d"));

    py::enum_<ClassViolation::Reason>(m, "ViolationReason")
        .value("cycle", ClassViolation::Reason::cycle)
        .value("degree", ClassViolation::Reason::degree)
        .value("adjacent", ClassViolation::Reason::adjacent);

    py::class_<ClassViolation>(m, "ClassViolation")
        .def_readonly("class_index", &ClassViolation::class_index)
        .def_readonly("reason", &ClassViolation::reason);

    py::class_<VerifyReport>(m, "VerifyReport")
        .def_readonly("equitable_ok", &VerifyReport::equitable_ok)
        .def_readonly("class_violations", &VerifyReport::class_violations)
        .def_readonly("min_class_size", &VerifyReport::min_class_size)
        .def_readonly("max_class_size", &VerifyReport::max_class_size)
        .def("ok", &VerifyReport::ok);

    m.def("is_equitable", &is_equitable);
    m.def("verify", &verify, py::arg("g"), py::arg("p"), py::arg("pred"));

    py::enum_<SolveStatus>(m, "SolveStatus")
        .value("sat", SolveStatus::sat)
        .value("unsat", SolveStatus::unsat)
        .value("unknown", SolveStatus::unknown);

    py::enum_<UnknownReason>(m, "UnknownReason")
        .value("timeout", UnknownReason::timeout)
        .value("heuristic_failed", UnknownReason::heuristic_failed);

    py::class_<SolveOutcome>(m, "SolveOutcome")
        .def_readonly("status", &SolveOutcome::status)
        .def_property_readonly("partition",
                               [](const SolveOutcome& o) -> py::object {
                                   if (!o.partition) return py::none();
                                   return py::cast(*o.partition);
                               })
        .def_readonly("reason", &SolveOutcome::reason)
        .def("is_sat", &SolveOutcome::is_sat)
        .def("is_unsat", &SolveOutcome::is_unsat)
        .def("is_unknown", &SolveOutcome::is_unknown);

    m.def(
        "exact_solve",
        [](const Graph& g, int m_, const ClassPredicate& pred, long long budget_ms) {
            return exact_solve(g, m_, pred, ms(budget_ms));
        },
        py::arg("g"), py::arg("m"), py::arg("pred"), py::arg("budget_ms") = 10000);
    m.def("brute_force_solve", &brute_force_solve, py::arg("g"), py::arg("m"), py::arg("pred"));
    m.def(
        "va_eq",
        [](const Graph& g, const ClassPredicate& pred, long long budget_ms) {
            return va_eq(g, pred, ms(budget_ms));
        },
        py::arg("g"), py::arg("pred"), py::arg("budget_ms") = 10000);
    m.def(
        "va_eq_star",
        [](const Graph& g, const ClassPredicate& pred, long long budget_ms) {
            return va_eq_star(g, pred, ms(budget_ms));
        },
        py::arg("g"), py::arg("pred"), py::arg("budget_ms") = 10000);

    py::class_<ThresholdReport>(m, "ThresholdReport")
        .def_readonly("va_eq", &ThresholdReport::va_eq)
        .def_readonly("va_eq_star", &ThresholdReport::va_eq_star)
        .def_readonly("per_m", &ThresholdReport::per_m)
        .def_readonly("defect", &ThresholdReport::defect);
    m.def(
        "threshold_report",
        [](const Graph& g, const ClassPredicate& pred, long long budget_ms) {
            return threshold_report(g, pred, ms(budget_ms));
        },
        py::arg("g"), py::arg("pred"), py::arg("budget_ms") = 10000);

    py::enum_<Move::Kind>(m, "MoveKind")
        .value("place", Move::Kind::place)
        .value("transfer", Move::Kind::transfer)
        .value("exchange", Move::Kind::exchange);

    py::class_<Move>(m, "Move")
        .def_readonly("kind", &Move::kind)
        .def_readonly("vertex", &Move::vertex)
        .def_readonly("from_class", &Move::from)
        .def_readonly("to_class", &Move::to)
        .def_readonly("hub", &Move::hub)
        .def_readonly("swap1", &Move::swap1)
        .def_readonly("swap2", &Move::swap2)
        .def_readonly("depth", &Move::depth);

    py::class_<MoveTrace>(m, "MoveTrace")
        .def_readonly("working", &MoveTrace::working)
        .def_readonly("pad_count", &MoveTrace::pad_count)
        .def_readonly("m", &MoveTrace::m)
        .def_readonly("moves", &MoveTrace::moves);

    m.def("replay", &replay, py::arg("trace"), py::arg("check_forests") = false);
    m.def("pad_to_multiple", &pad_to_multiple, py::arg("g"), py::arg("m"));
    m.def("strip_graph_padding",
          py::overload_cast<const Graph&, int>(&strip_padding), py::arg("g"),
          py::arg("pad_count"));
    m.def("strip_partition_padding",
          py::overload_cast<const Partition&, int>(&strip_padding), py::arg("p"),
          py::arg("pad_count"));

    py::class_<ConstructiveResult>(m, "ConstructiveResult")
        .def_readonly("outcome", &ConstructiveResult::outcome)
        .def_readonly("trace", &ConstructiveResult::trace)
        .def_readonly("used_fallback", &ConstructiveResult::used_fallback);

    m.def(
        "solve",
        [](const Graph& g, int m_, long long budget_ms, bool exact_fallback) {
            ConstructiveOptions opts;
            opts.budget = ms(budget_ms);
            opts.exact_fallback = exact_fallback;
            return solve(g, m_, opts);
        },
        py::arg("g"), py::arg("m"), py::arg("budget_ms") = 10000,
        py::arg("exact_fallback") = true);

    m.def("random_planar", &random_planar, py::arg("n"), py::arg("min_girth"), py::arg("seed"),
          py::arg("target_edges") = -1);
    m.def("ic_augment", &ic_augment, py::arg("planar"), py::arg("max_crossings"), py::arg("seed"),
          py::arg("min_girth") = 3);
    m.def("sharpness_example", &sharpness_example, py::arg("k"), py::arg("t"));
    m.def("fan_example", &fan_example, py::arg("path_len"));
    m.def("star", &star, py::arg("delta"));
    m.def("cycle", &cycle, py::arg("n"));
    m.def("complete", &complete, py::arg("k"));
    m.def("subdivide", &subdivide, py::arg("g"), py::arg("r"));

    m.def("read_drawing", [](const std::string& text) { return io::read_drawing(text); },
          py::arg("text"));
    m.def("read_drawing_file",
          [](const std::string& path) { return io::read_drawing_file(path); }, py::arg("path"));
    m.def("write_drawing", [](const Drawing& d) { return io::to_string(d); }, py::arg("d"));
    m.def("write_drawing_file",
          [](const std::string& path, const Drawing& d) { io::write_drawing_file(path, d); },
          py::arg("path"), py::arg("d"));
    m.def("read_dimacs_col",
          [](const std::string& path) {
              auto res = io::read_dimacs_col_file(path);
              return py::make_tuple(res.graph, res.warnings);
          },
          py::arg("path"), "returns (graph, warnings)");
    m.def("read_partition", [](const std::string& text) { return io::read_partition(text); },
          py::arg("text"));
    m.def("read_partition_file",
          [](const std::string& path) { return io::read_partition_file(path); }, py::arg("path"));
    m.def("write_partition", [](const Partition& p) { return io::to_string(p); }, py::arg("p"));
    m.def("write_partition_file",
          [](const std::string& path, const Partition& p) { io::write_partition_file(path, p); },
          py::arg("path"), py::arg("p"));

    py::register_exception<io::ParseError>(m, "ParseError");
}
