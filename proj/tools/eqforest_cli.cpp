// eqforest: equitable forest partitions of graphs drawn with independent
// crossings. Subcommands: verify, solve, threshold, bounds, generate,
// experiment. Exit codes: 0 success/SAT, 1 UNSAT or verification failure
// or threshold contradiction, 2 input error, 4 timeout/unknown.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "eqforest/generator.hpp"
#include "eqforest/io.hpp"
#include "eqforest/solver_constructive.hpp"

namespace fs = std::filesystem;
using namespace eqforest;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitUnknown = 4;

std::string rational_str(const Rational& r) {
    std::ostringstream out;
    out << r.numerator();
    if (r.denominator() != 1) out << '/' << r.denominator();
    return out.str();
}

const char* reason_str(const SolveOutcome& o) {
    return o.reason == UnknownReason::timeout ? "timeout" : "heuristic-failed";
}

ClassPredicate predicate_from(int defect, bool independent) {
    if (independent) return ClassPredicate::independent();
    if (defect > 0) return ClassPredicate::defective_forest(defect);
    return ClassPredicate::forest();
}

void print_verify_report(const Graph& g, const Partition& p, const VerifyReport& r) {
    std::cout << "n=" << g.order() << " m=" << p.m << " sizes=[" << r.min_class_size << ".."
              << r.max_class_size << "]\n";
    std::cout << "equitable: " << (r.equitable_ok ? "ok" : "VIOLATED") << "\n";
    if (r.class_violations.empty()) {
        std::cout << "classes: all ok\n";
    } else {
        for (const auto& v : r.class_violations) {
            const char* why = v.reason == ClassViolation::Reason::cycle      ? "CYCLE"
                              : v.reason == ClassViolation::Reason::degree   ? "DEGREE"
                                                                             : "ADJACENT";
            std::cout << "class " << v.class_index << ": " << why << "\n";
        }
    }
    std::cout << "verdict: " << (r.ok() ? "valid" : "invalid") << "\n";
}

nlohmann::ordered_json trace_to_json(const ConstructiveResult& res) {
    nlohmann::ordered_json doc;
    doc["n"] = res.trace.working.order();
    doc["pad_count"] = res.trace.pad_count;
    doc["m"] = res.trace.m;
    doc["used_fallback"] = res.used_fallback;
    auto arr = nlohmann::ordered_json::array();
    for (const Move& mv : res.trace.moves) {
        nlohmann::ordered_json j;
        switch (mv.kind) {
            case Move::Kind::place:
                j["kind"] = "place";
                j["vertex"] = mv.vertex;
                j["to"] = mv.to;
                break;
            case Move::Kind::transfer:
                j["kind"] = "transfer";
                j["vertex"] = mv.vertex;
                j["from"] = mv.from;
                j["to"] = mv.to;
                break;
            case Move::Kind::exchange:
                j["kind"] = "exchange";
                j["hub"] = mv.hub;
                j["swap1"] = mv.swap1;
                j["swap2"] = mv.swap2;
                j["depth"] = mv.depth;
                break;
        }
        arr.push_back(std::move(j));
    }
    doc["moves"] = std::move(arr);
    return doc;
}

struct SolveRowResult {
    SolveStatus status = SolveStatus::unknown;
    std::string solver;
};

SolveRowResult run_solve(const Graph& g, int m, const std::string& method,
                         std::chrono::milliseconds budget) {
    SolveRowResult out;
    if (method == "exact") {
        out.status = exact_solve(g, m, ClassPredicate::forest(), budget).status;
        out.solver = "exact";
        return out;
    }
    ConstructiveOptions opts;
    opts.budget = budget;
    opts.exact_fallback = method != "constructive";
    ConstructiveResult res = solve(g, m, opts);
    out.status = res.outcome.status;
    out.solver = method == "constructive" ? "constructive"
                 : res.used_fallback      ? "exact-fallback"
                                          : "constructive";
    return out;
}

int parse_m_range(const std::string& text, int& lo, int& hi) {
    auto pos = text.find("..");
    try {
        if (pos == std::string::npos) {
            lo = hi = std::stoi(text);
        } else {
            lo = std::stoi(text.substr(0, pos));
            hi = std::stoi(text.substr(pos + 2));
        }
    } catch (const std::exception&) {
        return -1;
    }
    return (lo >= 1 && hi >= lo) ? 0 : -1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equitable forest partitions of 1-plane graphs with independent crossings"};
    app.require_subcommand(1);

    // ---- verify ----
    auto* cmd_verify = app.add_subcommand("verify", "check a coloring against a graph");
    std::string v_graph, v_coloring;
    int v_defect = 0;
    bool v_independent = false;
    cmd_verify->add_option("--graph", v_graph, "graph file (.json drawing or .col)")->required();
    cmd_verify->add_option("--coloring", v_coloring, "partition file")->required();
    cmd_verify->add_option("--defect", v_defect, "defective-forest bound d");
    cmd_verify->add_flag("--independent", v_independent, "independent-set classes");

    // ---- solve ----
    auto* cmd_solve = app.add_subcommand("solve", "find an equitable tree-coloring");
    std::string s_graph, s_method = "auto", s_trace, s_out;
    int s_m = 0;
    long long s_timeout = default_solve_budget.count();
    cmd_solve->add_option("--graph", s_graph)->required();
    cmd_solve->add_option("-m,--classes", s_m, "class count")->required();
    cmd_solve->add_option("--method", s_method)->check(CLI::IsMember({"constructive", "exact", "auto"}));
    cmd_solve->add_option("--timeout-ms", s_timeout);
    cmd_solve->add_option("--trace", s_trace, "write the move trace here");
    cmd_solve->add_option("-o,--output", s_out, "write the partition here");

    // ---- threshold ----
    auto* cmd_threshold = app.add_subcommand("threshold", "compute va_eq and va_eq*");
    std::string t_graph;
    int t_defect = 0;
    bool t_independent = false;
    long long t_timeout = default_solve_budget.count();
    cmd_threshold->add_option("--graph", t_graph)->required();
    cmd_threshold->add_option("--defect", t_defect);
    cmd_threshold->add_flag("--independent", t_independent);
    cmd_threshold->add_option("--timeout-ms", t_timeout, "per-solve budget");

    // ---- bounds ----
    auto* cmd_bounds = app.add_subcommand("bounds", "audit the density and degree bounds");
    std::string b_graph;
    cmd_bounds->add_option("--graph", b_graph)->required();

    // ---- generate ----
    auto* cmd_generate = app.add_subcommand("generate", "write test graphs");
    std::string g_family, g_out, g_base;
    std::uint32_t g_seed = 1;
    int g_count = 1, g_n = 12, g_min_girth = 3, g_max_crossings = -1, g_target_edges = -1;
    int g_k = 3, g_t = 3, g_path_len = 4, g_delta = 4, g_r = 1, g_cycle_n = 5;
    cmd_generate
        ->add_option("--family", g_family,
                     "planar | ic | sharpness | fan | star | cycle | complete | subdivide")
        ->required();
    cmd_generate->add_option("--seed", g_seed)->required();
    cmd_generate->add_option("-o,--output", g_out, "file, or directory with --count > 1")->required();
    cmd_generate->add_option("--count", g_count, "number of instances (seeds seed..seed+count-1)");
    cmd_generate->add_option("--n", g_n, "order (planar, ic, cycle, complete)");
    cmd_generate->add_option("--min-girth", g_min_girth);
    cmd_generate->add_option("--max-crossings", g_max_crossings, "ic family; default floor(n/4)");
    cmd_generate->add_option("--target-edges", g_target_edges);
    cmd_generate->add_option("--k", g_k, "sharpness clique size / complete order");
    cmd_generate->add_option("--t", g_t, "sharpness extra vertices");
    cmd_generate->add_option("--path-len", g_path_len, "fan path length");
    cmd_generate->add_option("--delta", g_delta, "star degree");
    cmd_generate->add_option("--r", g_r, "subdivision factor");
    cmd_generate->add_option("--base", g_base, "base graph file for subdivide");
    (void)g_cycle_n;

    // ---- experiment ----
    auto* cmd_experiment = app.add_subcommand("experiment", "solve a corpus and write a report");
    std::string e_corpus, e_report, e_mrange;
    int e_jobs = 1;
    long long e_timeout = default_solve_budget.count();
    cmd_experiment->add_option("--corpus", e_corpus, "directory of drawing files")->required();
    cmd_experiment->add_option("--report", e_report, "output csv")->required();
    cmd_experiment->add_option("--m-range", e_mrange, "a..b (default: F(girth)..F(girth)+4 per graph)");
    cmd_experiment->add_option("--jobs", e_jobs)->check(CLI::PositiveNumber);
    cmd_experiment->add_option("--timeout-ms", e_timeout, "per-solve budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (cmd_verify->parsed()) {
            Drawing d = io::read_graph_auto(v_graph);
            Partition p = io::read_partition_file(v_coloring);
            if (v_defect > 0 && v_independent)
                throw std::invalid_argument("--defect and --independent are exclusive");
            VerifyReport report;
            try {
                report = verify(d.graph, p, predicate_from(v_defect, v_independent));
            } catch (const std::invalid_argument& e) {
                std::cerr << "input error: " << e.what() << "\n";
                return kExitInput;
            }
            print_verify_report(d.graph, p, report);
            return report.ok() ? kExitOk : kExitFail;
        }

        if (cmd_solve->parsed()) {
            Drawing d = io::read_graph_auto(s_graph);
            if (s_m < 1) throw std::invalid_argument("class count must be >= 1");
            auto budget = std::chrono::milliseconds(s_timeout);
            if (s_method == "exact") {
                SolveOutcome o = exact_solve(d.graph, s_m, ClassPredicate::forest(), budget);
                if (o.is_sat()) {
                    if (!s_out.empty()) io::write_partition_file(s_out, *o.partition);
                    std::cout << "SAT\n";
                    return kExitOk;
                }
                std::cout << (o.is_unsat() ? "UNSAT\n" : std::string("UNKNOWN ") + reason_str(o) + "\n");
                return o.is_unsat() ? kExitFail : kExitUnknown;
            }
            ConstructiveOptions opts;
            opts.budget = budget;
            opts.exact_fallback = s_method != "constructive";
            ConstructiveResult res = solve(d.graph, s_m, opts);
            if (!s_trace.empty()) {
                std::ofstream out(s_trace);
                if (!out) throw std::invalid_argument("cannot open trace file " + s_trace);
                out << trace_to_json(res).dump(2) << "\n";
            }
            if (res.outcome.is_sat()) {
                if (!s_out.empty()) io::write_partition_file(s_out, *res.outcome.partition);
                std::cout << "SAT (" << (res.used_fallback ? "exact-fallback" : "constructive")
                          << ")\n";
                return kExitOk;
            }
            if (res.outcome.is_unsat()) {
                std::cout << "UNSAT (exact)\n";
                return kExitFail;
            }
            std::cout << "UNKNOWN " << reason_str(res.outcome) << "\n";
            return kExitUnknown;
        }

        if (cmd_threshold->parsed()) {
            Drawing d = io::read_graph_auto(t_graph);
            if (t_defect > 0 && t_independent)
                throw std::invalid_argument("--defect and --independent are exclusive");
            ThresholdReport r = threshold_report(d.graph, predicate_from(t_defect, t_independent),
                                                 std::chrono::milliseconds(t_timeout));
            std::cout << "va_eq=" << (r.va_eq ? std::to_string(*r.va_eq) : "?") << " va_eq_star="
                      << (r.va_eq_star ? std::to_string(*r.va_eq_star) : "?")
                      << " feasible=" << io::feasibility_string(r.per_m) << "\n";
            return (r.va_eq && r.va_eq_star) ? kExitOk : kExitUnknown;
        }

        if (cmd_bounds->parsed()) {
            Drawing d = io::read_graph_auto(b_graph);
            auto violations = validate_one_plane(d);
            bool ic = violations.empty() && is_ic(d);
            DensityReport r = check_density(d);
            std::cout << "n=" << d.graph.order() << " e=" << d.graph.size()
                      << " girth=" << to_string(r.girth) << "\n";
            std::cout << "one-plane violations: " << violations.size() << "\n";
            std::cout << "ic: " << (ic ? "yes" : "no") << "\n";
            if (r.edge_limit)
                std::cout << "edge bound: " << r.edge_count << " <= " << rational_str(*r.edge_limit)
                          << " : " << (r.edges_ok ? "PASS" : "FAIL") << "\n";
            else
                std::cout << "edge bound: vacuous PASS (no cycle)\n";
            std::cout << "min degree: " << r.min_deg << " <= " << r.min_deg_limit << " : "
                      << (r.min_deg_ok ? "PASS" : "FAIL") << "\n";
            std::cout << "crossings: " << r.crossing_count << " <= " << r.crossing_limit << " : "
                      << (r.crossings_ok ? "PASS" : "FAIL") << "\n";
            std::cout << "threshold: " << tree_coloring_threshold(r.girth) << "\n";
            bool ok = r.pass && violations.empty();
            std::cout << (ok ? "PASS" : "FAIL") << "\n";
            return ok ? kExitOk : kExitFail;
        }

        if (cmd_generate->parsed()) {
            auto make = [&](std::uint32_t seed) -> Drawing {
                if (g_family == "planar")
                    return {random_planar(g_n, g_min_girth, seed, g_target_edges), {}};
                if (g_family == "ic") {
                    int cap = g_max_crossings >= 0 ? g_max_crossings : g_n / 4;
                    Graph base = random_planar(g_n, g_min_girth, seed, g_target_edges);
                    return ic_augment(base, cap, seed ^ 0x9e3779b9u, g_min_girth);
                }
                if (g_family == "sharpness") return {sharpness_example(g_k, g_t), {}};
                if (g_family == "fan") return {fan_example(g_path_len), {}};
                if (g_family == "star") return {star(g_delta), {}};
                if (g_family == "cycle") return {cycle(g_n), {}};
                if (g_family == "complete") return {complete(g_k), {}};
                if (g_family == "subdivide") {
                    if (g_base.empty())
                        throw std::invalid_argument("subdivide needs --base");
                    return {subdivide(io::read_graph_auto(g_base).graph, g_r), {}};
                }
                throw std::invalid_argument("unknown family " + g_family);
            };

            if (g_count == 1) {
                io::write_drawing_file(g_out, make(g_seed));
                return kExitOk;
            }
            fs::create_directories(g_out);
            nlohmann::ordered_json manifest;
            manifest["family"] = g_family;
            manifest["seed"] = g_seed;
            manifest["count"] = g_count;
            manifest["rng"] = "mt19937-mod";
            manifest["params"] = {{"n", g_n},
                                  {"min_girth", g_min_girth},
                                  {"max_crossings", g_max_crossings},
                                  {"target_edges", g_target_edges},
                                  {"k", g_k},
                                  {"t", g_t},
                                  {"path_len", g_path_len},
                                  {"delta", g_delta},
                                  {"r", g_r}};
            for (int i = 0; i < g_count; ++i) {
                std::ostringstream name;
                name << g_family << "_" << std::setw(4) << std::setfill('0') << i << ".json";
                io::write_drawing_file(fs::path(g_out) / name.str(), make(g_seed + i));
            }
            std::ofstream mout(fs::path(g_out) / "manifest.json");
            mout << manifest.dump(2) << "\n";
            return kExitOk;
        }

        if (cmd_experiment->parsed()) {
            int range_lo = 0, range_hi = 0;
            bool has_range = !e_mrange.empty();
            if (has_range && parse_m_range(e_mrange, range_lo, range_hi) != 0)
                throw std::invalid_argument("bad --m-range, expected a..b");

            std::vector<fs::path> files;
            for (const auto& entry : fs::directory_iterator(e_corpus))
                if (entry.is_regular_file() && entry.path().extension() == ".json" &&
                    entry.path().filename() != "manifest.json")
                    files.push_back(entry.path());
            std::sort(files.begin(), files.end());

            struct Task {
                int file_idx;
                int m;
            };
            struct GraphCtx {
                Drawing drawing;
                Girth girth;
                bool ic = false;
                int m_lo = 1, m_hi = 0;
                std::vector<SolveStatus> status;
                std::vector<std::string> solver;
                std::atomic<long long> elapsed_ms{0};
            };
            std::vector<GraphCtx> ctx(files.size());
            std::vector<Task> tasks;
            for (size_t i = 0; i < files.size(); ++i) {
                ctx[i].drawing = io::read_drawing_file(files[i]);
                ctx[i].girth = girth(ctx[i].drawing.graph);
                ctx[i].ic = validate_one_plane(ctx[i].drawing).empty() && is_ic(ctx[i].drawing);
                int f = tree_coloring_threshold(ctx[i].girth);
                int n = ctx[i].drawing.graph.order();
                ctx[i].m_lo = has_range ? range_lo : f;
                ctx[i].m_hi = has_range ? range_hi : std::min(std::max(n, f), f + 4);
                ctx[i].status.assign(ctx[i].m_hi - ctx[i].m_lo + 1, SolveStatus::unknown);
                ctx[i].solver.assign(ctx[i].m_hi - ctx[i].m_lo + 1, "");
                for (int m = ctx[i].m_lo; m <= ctx[i].m_hi; ++m)
                    tasks.push_back({static_cast<int>(i), m});
            }

            std::atomic<size_t> next{0};
            auto budget = std::chrono::milliseconds(e_timeout);
            auto worker = [&]() {
                while (true) {
                    size_t idx = next.fetch_add(1);
                    if (idx >= tasks.size()) break;
                    const Task& task = tasks[idx];
                    GraphCtx& c = ctx[task.file_idx];
                    auto start = std::chrono::steady_clock::now();
                    SolveRowResult r = run_solve(c.drawing.graph, task.m, "auto", budget);
                    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
                    c.elapsed_ms += ms;
                    c.status[task.m - c.m_lo] = r.status;
                    c.solver[task.m - c.m_lo] = r.solver;
                }
            };
            int jobs = std::max(1, e_jobs);
            std::vector<std::thread> pool;
            for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
            worker();
            for (auto& th : pool) th.join();

            std::vector<io::ReportRow> rows;
            int contradictions = 0;
            for (size_t i = 0; i < files.size(); ++i) {
                const GraphCtx& c = ctx[i];
                io::ReportRow row;
                row.graph_id = files[i].stem().string();
                row.n = c.drawing.graph.order();
                row.e = c.drawing.graph.size();
                row.girth = c.girth;
                row.ic = c.ic;
                row.feasibility = io::feasibility_string(c.status, c.m_lo);
                std::string used = "constructive";
                for (const auto& s : c.solver)
                    if (s == "exact-fallback") used = "exact-fallback";
                row.solver = used;
                row.elapsed_ms = c.elapsed_ms.load();
                rows.push_back(std::move(row));

                int f = tree_coloring_threshold(c.girth);
                for (int m = c.m_lo; m <= c.m_hi; ++m) {
                    if (c.status[m - c.m_lo] != SolveStatus::unsat) continue;
                    std::cout << "note: " << files[i].stem().string() << " m=" << m
                              << " verified UNSAT\n";
                    if (c.ic && m >= f) {
                        std::cout << "threshold contradiction: " << files[i].stem().string()
                                  << " girth=" << to_string(c.girth) << " m=" << m << " >= " << f
                                  << "\n";
                        ++contradictions;
                    }
                }
            }
            std::ofstream out(e_report);
            if (!out) throw std::invalid_argument("cannot open report file " + e_report);
            io::write_report(out, std::move(rows));
            std::cout << "graphs=" << files.size() << " tasks=" << tasks.size()
                      << " contradictions=" << contradictions << "\n";
            return contradictions == 0 ? kExitOk : kExitFail;
        }
    } catch (const io::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
