// Acceptance suite: one pass/fail line per criterion, nonzero exit if
// any fails. Expected values and tolerances are pinned in code.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "eqforest/generator.hpp"
#include "eqforest/io.hpp"
#include "eqforest/solver_constructive.hpp"

using namespace eqforest;
using Clock = std::chrono::steady_clock;

namespace {

struct Runner {
    int failed = 0;

    void criterion(int id, const std::string& desc, double limit_s,
                   const std::function<bool(std::ostream&)>& fn) {
        std::ostringstream detail;
        auto start = Clock::now();
        bool ok = false;
        try {
            ok = fn(detail);
        } catch (const std::exception& e) {
            detail << "    exception: " << e.what() << "\n";
        }
        double secs = std::chrono::duration<double>(Clock::now() - start).count();
        if (limit_s > 0 && secs > limit_s) {
            detail << "    time limit exceeded: " << secs << "s > " << limit_s << "s\n";
            ok = false;
        }
        std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << "  " << desc << "  ["
                  << secs << "s]\n";
        std::cout << detail.str();
        if (!ok) ++failed;
    }
};

// ---- independent re-implementation of the verifier (criterion 1) ----

// cycle detection by component edge counting, not union-find
bool naive_class_acyclic(const Graph& g, const std::vector<int>& asg, int cls) {
    const int n = g.order();
    std::vector<char> seen(n, 0);
    for (int s = 0; s < n; ++s) {
        if (asg[s] != cls || seen[s]) continue;
        std::vector<int> queue{s};
        seen[s] = 1;
        int vertices = 0;
        long long half_edges = 0;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            ++vertices;
            for (int w : g.neighbors(u)) {
                if (asg[w] != cls) continue;
                ++half_edges;
                if (!seen[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
            }
        }
        if (half_edges / 2 >= vertices) return false;  // edges >= vertices: cycle
    }
    return true;
}

bool naive_valid(const Graph& g, const Partition& p) {
    std::vector<int> sizes(p.m, 0);
    for (int c : p.assignment) {
        if (c < 1 || c > p.m) return false;
        ++sizes[c - 1];
    }
    int lo = *std::min_element(sizes.begin(), sizes.end());
    int hi = *std::max_element(sizes.begin(), sizes.end());
    if (hi - lo > 1) return false;
    for (int cls = 1; cls <= p.m; ++cls)
        if (!naive_class_acyclic(g, p.assignment, cls)) return false;
    return true;
}

Graph random_graph(int n, int percent, std::mt19937& rng) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (static_cast<int>(rng() % 100) < percent) edges.push_back({u, v});
    return Graph(n, std::move(edges));
}

// ---- shared IC corpus (criteria 3, 4, 10) ----

struct CorpusEntry {
    int girth_class;
    std::uint32_t seed;
    Drawing drawing;
};

std::vector<CorpusEntry> build_corpus() {
    std::vector<CorpusEntry> corpus;
    std::uint32_t seed = 1000;
    for (int g : {3, 4, 5, 6}) {
        for (int i = 0; i < 76; ++i) {
            int n = 8 + (i * 7) % 53;  // spreads over 8..60
            Graph base = random_planar(n, g, seed);
            Drawing d = ic_augment(base, n / 4, seed + 500000, g);
            corpus.push_back({g, seed, std::move(d)});
            ++seed;
        }
    }
    return corpus;
}

// synthetic configuration with a guaranteed exchange triple (used to top
// up criterion 9 when randomly derived configurations are scarce)
struct BuiltConfig {
    Graph graph;
    int pivot;
    Partition rest;
};

BuiltConfig synthetic_config(int m, int t, std::mt19937& rng) {
    int n = m * t;
    // vertices 0..t-2: the deficient class (a path); y1, y2 attach to it
    std::vector<Edge> edges;
    for (int v = 0; v + 1 < t - 1; ++v) edges.push_back({v, v + 1});
    int y1 = t - 1, y2 = t, pivot = n - 1;
    edges.push_back({0, y1});
    edges.push_back({1, y1});
    edges.push_back({0, y2});
    edges.push_back({2, y2});
    edges.push_back({0, pivot});

    Partition rest{m, std::vector<int>(n, 0)};
    for (int v = 0; v < t - 1; ++v) rest.assignment[v] = 1;
    rest.assignment[y1] = 2;
    rest.assignment[y2] = 3;
    // fill the remaining classes round-robin, leaving the pivot out
    std::vector<int> fill(m + 1, 0);
    fill[1] = t - 1;
    fill[2] = 1;
    fill[3] = 1;
    for (int v = t + 1; v < n - 1; ++v)
        for (int c = 2; c <= m; ++c)
            if (fill[c] < t) {
                rest.assignment[v] = c;
                ++fill[c];
                break;
            }
    // sprinkle a few in-class path edges for variety; forests stay forests
    for (int c = 2; c <= m; ++c) {
        std::vector<int> members;
        for (int v = 0; v < n - 1; ++v)
            if (rest.assignment[v] == c && v != y1 && v != y2) members.push_back(v);
        for (size_t i = 0; i + 1 < members.size(); ++i)
            if (rng() % 2) edges.push_back(make_edge(members[i], members[i + 1]));
    }
    return {Graph(n, std::move(edges)), pivot, std::move(rest)};
}

}  // namespace

int main() {
    Runner runner;
    std::vector<CorpusEntry> corpus = build_corpus();

    runner.criterion(1, "verifier agrees with a naive re-implementation (500 pairs)", 5.0,
                     [&](std::ostream& out) {
                         std::mt19937 rng(11);
                         int checked = 0, valid_seen = 0;
                         for (int i = 0; i < 500; ++i) {
                             int n = 1 + static_cast<int>(rng() % 12);
                             Graph g = random_graph(n, 10 + static_cast<int>(rng() % 50), rng);
                             int m = 1 + static_cast<int>(rng() % n);
                             Partition p{m, std::vector<int>(n)};
                             if (i % 2) {
                                 for (int v = 0; v < n; ++v)
                                     p.assignment[v] = 1 + static_cast<int>(rng() % m);
                             } else {  // balanced, so valid cases occur often
                                 for (int v = 0; v < n; ++v) p.assignment[v] = 1 + v % m;
                             }
                             bool lib = verify(g, p, ClassPredicate::forest()).ok();
                             bool naive = naive_valid(g, p);
                             if (lib != naive) {
                                 out << "    disagreement at trial " << i << "\n";
                                 return false;
                             }
                             ++checked;
                             valid_seen += lib;
                         }
                         out << "    " << checked << " pairs, " << valid_seen << " valid\n";
                         return checked == 500 && valid_seen > 0;
                     });

    runner.criterion(2, "exact_solve matches brute force (200 graphs, n <= 8)", 60.0,
                     [&](std::ostream& out) {
                         std::mt19937 rng(22);
                         auto forest = ClassPredicate::forest();
                         int graphs = 0, solves = 0;
                         for (int i = 0; i < 200; ++i) {
                             int n = 1 + static_cast<int>(rng() % 8);
                             Graph g = random_graph(n, 15 + static_cast<int>(rng() % 60), rng);
                             ++graphs;
                             for (int m = 1; m <= n; ++m) {
                                 auto a = exact_solve(g, m, forest);
                                 auto b = brute_force_solve(g, m, forest);
                                 if (a.is_unknown() || a.status != b.status) {
                                     out << "    mismatch: graph " << i << " m=" << m << "\n";
                                     return false;
                                 }
                                 ++solves;
                             }
                         }
                         out << "    " << graphs << " graphs, " << solves << " solves agree\n";
                         return true;
                     });

    runner.criterion(3, "density/degree/crossing bounds hold on the IC corpus", 0.0,
                     [&](std::ostream& out) {
                         int checked = 0;
                         for (const auto& entry : corpus) {
                             const Drawing& d = entry.drawing;
                             if (!validate_one_plane(d).empty()) return false;
                             if (!is_ic(d)) return false;
                             auto r = check_density(d);
                             if (!r.pass) {
                                 out << "    bound violated at seed " << entry.seed << "\n";
                                 return false;
                             }
                             if (static_cast<int>(d.crossings.size()) > d.graph.order() / 4)
                                 return false;
                             if (girth(d.graph).value < entry.girth_class) return false;
                             ++checked;
                         }
                         out << "    " << checked << " instances, zero violations\n";
                         return checked >= 300;
                     });

    runner.criterion(
        4, "solve pipeline is SAT for all m in [F(girth), F(girth)+4] on the corpus", 0.0,
        [&](std::ostream& out) {
            int solves = 0, unsat = 0, unknown_small = 0, unknown_large = 0, fallbacks = 0;
            for (const auto& entry : corpus) {
                const Graph& g = entry.drawing.graph;
                int f = tree_coloring_threshold(girth(g));
                int hi = std::min(g.order(), f + 4);
                for (int m = f; m <= hi; ++m) {
                    ConstructiveResult res = solve(g, m, ConstructiveOptions{});
                    ++solves;
                    fallbacks += res.used_fallback;
                    if (res.outcome.is_sat()) {
                        if (!verify(g, *res.outcome.partition, ClassPredicate::forest()).ok())
                            return false;
                        continue;
                    }
                    if (res.outcome.is_unsat()) {
                        ++unsat;
                        out << "    UNSAT at seed " << entry.seed << " m=" << m << "\n";
                    } else if (g.order() <= 20) {
                        ++unknown_small;
                        out << "    UNKNOWN at n<=20, seed " << entry.seed << " m=" << m << "\n";
                    } else {
                        ++unknown_large;
                    }
                }
            }
            out << "    " << solves << " solves, " << fallbacks << " used the exact fallback, "
                << unknown_large << " unknown at n>20\n";
            return unsat == 0 && unknown_small == 0 && unknown_large == 0;
        });

    runner.criterion(5, "every planar graph splits into m >= 4 equitable forests (n <= 20)", 0.0,
                     [&](std::ostream& out) {
                         std::mt19937 rng(55);
                         int solves = 0;
                         for (int i = 0; i < 100; ++i) {
                             int n = 4 + static_cast<int>(rng() % 17);
                             Graph g = random_planar(n, 3, 9000 + i);
                             for (int m : {4, 5, 6}) {
                                 auto res = solve(g, m, ConstructiveOptions{});
                                 if (!res.outcome.is_sat()) {
                                     out << "    not SAT: instance " << i << " m=" << m << "\n";
                                     return false;
                                 }
                                 if (!verify(g, *res.outcome.partition, ClassPredicate::forest())
                                          .ok())
                                     return false;
                                 ++solves;
                             }
                         }
                         out << "    " << solves << " verified SAT\n";
                         return solves == 300;
                     });

    runner.criterion(
        6, "sharpness family: UNSAT at k-1 classes, SAT from k on (k in {3,4})", 120.0,
        [&](std::ostream& out) {
            auto forest = ClassPredicate::forest();
            for (int k : {3, 4}) {
                Graph g = sharpness_example(k, 2 * k - 3);
                auto refute = exact_solve(g, k - 1, forest);
                if (!refute.is_unsat()) {
                    out << "    expected UNSAT at k=" << k << " m=" << k - 1 << "\n";
                    return false;
                }
                for (int m = k; m <= g.order(); ++m) {
                    auto sat = exact_solve(g, m, forest);
                    if (!sat.is_sat()) {
                        out << "    expected SAT at k=" << k << " m=" << m << "\n";
                        return false;
                    }
                }
                out << "    k=" << k << ": m=" << k - 1 << " UNSAT, m in [" << k << ","
                    << g.order() << "] all SAT\n";
            }
            return true;
        });

    runner.criterion(7, "stars need ceil(d/2)+1 independent classes (d in 2..9)", 0.0,
                     [&](std::ostream& out) {
                         for (int delta = 2; delta <= 9; ++delta) {
                             auto v = va_eq(star(delta), ClassPredicate::independent());
                             int expected = (delta + 1) / 2 + 1;
                             if (!v || *v != expected) {
                                 out << "    delta=" << delta << " got "
                                     << (v ? std::to_string(*v) : "?") << " expected " << expected
                                     << "\n";
                                 return false;
                             }
                         }
                         return true;
                     });

    runner.criterion(
        8, "defective star audit is internally consistent (no formula asserted)", 0.0,
        [&](std::ostream& out) {
            out << "    delta d | va_eq^d va_eq*^d | ceil((delta+1)/d) matches\n";
            bool ok = true;
            for (int delta = 3; delta <= 8; ++delta) {
                int prev_va = -1, prev_star = -1;
                for (int d = 1; d <= 3; ++d) {
                    auto r = threshold_report(star(delta), ClassPredicate::defective_forest(d));
                    if (!r.va_eq || !r.va_eq_star) return false;
                    int formula = (delta + 1 + d - 1) / d;
                    out << "    " << delta << " " << d << " | " << *r.va_eq << " " << *r.va_eq_star
                        << " | " << formula << " "
                        << (*r.va_eq == formula && *r.va_eq_star == formula ? "yes" : "NO")
                        << "\n";
                    ok = ok && *r.va_eq <= *r.va_eq_star;
                    if (d > 1) {  // more defect allowed never raises the thresholds
                        ok = ok && *r.va_eq <= prev_va && *r.va_eq_star <= prev_star;
                    }
                    prev_va = *r.va_eq;
                    prev_star = *r.va_eq_star;
                }
            }
            return ok;
        });

    runner.criterion(
        9, "100 exchange-and-lift exercises produce verified balanced colorings", 0.0,
        [&](std::ostream& out) {
            std::mt19937 rng(99);
            int done = 0, derived = 0, synthetic = 0, attempts = 0;
            auto exercise = [&](const Graph& g, int pivot, Partition rest, int m, int t) {
                Configuration cfg = make_configuration(g, pivot, std::move(rest));
                auto triple = find_exchange_vertex(cfg);
                if (!triple) return false;
                std::vector<int> verts;
                for (int v : cfg.rest)
                    if (v != triple->swap1 && v != triple->swap2) verts.push_back(v);
                verts.push_back(cfg.pivot);
                verts.push_back(triple->hub);
                std::sort(verts.begin(), verts.end());
                auto sub = induced_subgraph(g, verts);
                auto sub_out = exact_solve(sub.graph, m - 1, ClassPredicate::forest());
                if (!sub_out.is_sat()) return false;
                Partition lifted =
                    lift_coloring(cfg, *triple, *sub_out.partition, sub.vertex_map);
                // from here on, anything wrong is a real failure, not a resample
                if (!verify(g, lifted, ClassPredicate::forest()).ok())
                    throw std::runtime_error("lifted partition failed verification");
                for (int s : lifted.class_sizes())
                    if (s != t) throw std::runtime_error("lifted class size differs from t");
                ++done;
                return true;
            };

            while (done < 100 && attempts < 4000) {
                ++attempts;
                int m = 3 + static_cast<int>(rng() % 2);
                int t = 3 + static_cast<int>(rng() % 3);
                int n = m * t;
                if (attempts % 2 == 0) {
                    // derive from a real graph via the exact solver
                    Graph g = random_planar(n, 3, 40000 + attempts);
                    int pivot = 0;
                    for (int v = 1; v < n; ++v)
                        if (g.degree(v) < g.degree(pivot)) pivot = v;
                    std::vector<int> others;
                    for (int v = 0; v < n; ++v)
                        if (v != pivot) others.push_back(v);
                    auto sub = induced_subgraph(g, others);
                    auto colored = exact_solve(sub.graph, m, ClassPredicate::forest());
                    if (!colored.is_sat()) continue;
                    Partition rest{m, std::vector<int>(n, 0)};
                    for (size_t i = 0; i < sub.vertex_map.size(); ++i)
                        rest.assignment[sub.vertex_map[i]] = colored.partition->assignment[i];
                    if (exercise(g, pivot, std::move(rest), m, t)) ++derived;
                } else {
                    if (t < 4) continue;  // the synthetic pattern needs a path of 3
                    BuiltConfig built = synthetic_config(m, t, rng);
                    if (exercise(built.graph, built.pivot, std::move(built.rest), m, t))
                        ++synthetic;
                }
            }
            out << "    " << done << " lifts verified (" << derived << " derived, " << synthetic
                << " synthetic) in " << attempts << " attempts\n";
            return done >= 100;
        });

    runner.criterion(10, "same seed reproduces corpus bytes; documents round-trip", 0.0,
                     [&](std::ostream& out) {
                         int roundtrips = 0;
                         for (size_t i = 0; i < corpus.size(); i += 7) {
                             const auto& entry = corpus[i];
                             int n = entry.drawing.graph.order();
                             Graph base2 = random_planar(n, entry.girth_class, entry.seed);
                             Drawing again =
                                 ic_augment(base2, n / 4, entry.seed + 500000, entry.girth_class);
                             if (io::to_string(again) != io::to_string(entry.drawing)) {
                                 out << "    regeneration differs at seed " << entry.seed << "\n";
                                 return false;
                             }
                         }
                         for (const auto& entry : corpus) {
                             std::string text = io::to_string(entry.drawing);
                             Drawing back = io::read_drawing(text);
                             if (io::to_string(back) != text) return false;
                             if (back.graph.edges() != entry.drawing.graph.edges()) return false;
                             ++roundtrips;
                         }
                         out << "    " << roundtrips << " round-trips byte-stable\n";
                         return true;
                     });

    std::cout << (runner.failed == 0 ? "ALL CRITERIA PASS\n"
                                     : std::to_string(runner.failed) + " CRITERIA FAILED\n");
    return runner.failed == 0 ? 0 : 1;
}
