#include <doctest.h>

#include <random>

#include "eqforest/generator.hpp"
#include "eqforest/solver_constructive.hpp"
#include "test_util.hpp"

using namespace eqforest;

namespace {

// direct placement of 9 fails in every class (two connected neighbors
// each); a single relay fixes it
Graph relay_instance() {
    return Graph(10, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {6, 7}, {7, 8},
                      {0, 9}, {2, 9}, {3, 9}, {5, 9}, {6, 9}, {8, 9}});
}

Partition relay_rest_coloring() { return Partition{3, {1, 1, 1, 2, 2, 2, 3, 3, 3, 0}}; }

// order 12, m = 3, t = 4: exactly one exchange triple (0, 3, 4)
Graph exchange_instance() {
    return Graph(12, {{0, 1}, {1, 2},          // first class path
                      {0, 3}, {1, 3},          // y1 = 3 attaches to 0 and 1
                      {0, 4}, {2, 4},          // y2 = 4 attaches to 0 and 2
                      {0, 11}});               // the pivot's anchor edge
}

Partition exchange_rest_coloring() {
    return Partition{3, {1, 1, 1, 2, 3, 2, 2, 2, 3, 3, 3, 0}};
}

}  // namespace

TEST_CASE("pad_to_multiple and strip_padding") {
    auto [g0, k0] = pad_to_multiple(Graph(10), 5);
    CHECK(k0 == 0);
    CHECK(g0.order() == 10);

    auto [g1, k1] = pad_to_multiple(testutil::path(9), 5);
    CHECK(k1 == 1);
    CHECK(g1.order() == 10);
    CHECK(g1.size() == 8);
    CHECK(strip_padding(g1, k1).order() == 9);

    auto [g2, k2] = pad_to_multiple(cycle(7), 3);
    CHECK(k2 == 2);
    CHECK(g2.order() == 9);

    CHECK_THROWS_AS(strip_padding(cycle(4), 1), std::invalid_argument);

    Partition p{2, {1, 2, 1, 2}};
    CHECK(strip_padding(p, 1).assignment == std::vector<int>{1, 2, 1});
}

TEST_CASE("configuration bookkeeping") {
    Graph g = exchange_instance();
    Configuration cfg = make_configuration(g, 11, exchange_rest_coloring());
    CHECK(cfg.pivot == 11);
    CHECK(cfg.pivot_anchor == 0);
    CHECK(cfg.first_class == 1);  // the deficient class
    CHECK(cfg.first_class_rest == std::vector<int>{0, 1, 2});
    CHECK(cfg.rest.size() == 8);
    CHECK(cfg.low_attachment == std::vector<int>{3, 4});

    CHECK_THROWS_AS(make_configuration(g, 0, exchange_rest_coloring()), std::invalid_argument);
}

TEST_CASE("reinsert_vertex: direct placement") {
    // isolated pivot lands in the smallest class (class 3, two members)
    Graph g(10, {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {7, 8}});
    Configuration cfg = make_configuration(g, 9, Partition{3, {1, 1, 1, 1, 2, 2, 2, 3, 3, 0}});
    std::vector<Move> moves;
    auto out = reinsert_vertex(cfg, &moves);
    REQUIRE(out.is_sat());
    CHECK(cfg.partition.assignment[9] == 3);
    REQUIRE(moves.size() == 1);
    CHECK(moves[0].kind == Move::Kind::place);

    // one neighbor in a smallest class: placed there directly
    Graph h(7, {{0, 1}, {2, 3}, {4, 5}, {0, 6}, {2, 6}, {3, 6}});
    Configuration cfg2 = make_configuration(h, 6, Partition{3, {1, 1, 2, 2, 3, 3, 0}});
    std::vector<Move> moves2;
    auto out2 = reinsert_vertex(cfg2, &moves2);
    REQUIRE(out2.is_sat());
    CHECK(cfg2.partition.assignment[6] == 1);  // one edge cannot close a cycle
    CHECK(moves2.size() == 1);
    CHECK(verify(h, cfg2.partition, ClassPredicate::forest()).ok());
}

TEST_CASE("reinsert_vertex: relay when direct placement fails") {
    Graph g = relay_instance();
    // the exact solver confirms the instance is satisfiable at m = 3
    REQUIRE(exact_solve(g, 3, ClassPredicate::forest()).is_sat());

    Configuration cfg = make_configuration(g, 9, relay_rest_coloring());
    std::vector<Move> moves;
    auto out = reinsert_vertex(cfg, &moves);
    REQUIRE(out.is_sat());
    REQUIRE(moves.size() == 2);  // one transfer plus one place
    CHECK(moves[0].kind == Move::Kind::transfer);
    CHECK(moves[1].kind == Move::Kind::place);
    CHECK(verify(g, cfg.partition, ClassPredicate::forest()).ok());
    CHECK(is_equitable(cfg.partition));
}

TEST_CASE("transfer_move guards") {
    Graph g(9, {{0, 1}, {1, 2}, {3, 4}, {5, 6}, {3, 7}, {4, 7}, {5, 8}});
    Configuration cfg = make_configuration(g, 2, Partition{3, {1, 1, 0, 2, 2, 3, 3, 3, 1}});
    // vertex 8 has no edge into class 2: trivially safe
    std::vector<Move> moves;
    CHECK(transfer_move(cfg, 8, 2, &moves));
    CHECK(cfg.partition.assignment[8] == 2);
    CHECK(moves.size() == 1);

    // vertex 7 touches 3 and 4, already connected inside class 2: refused
    CHECK(!transfer_move(cfg, 7, 2, &moves));
    CHECK(cfg.partition.assignment[7] == 3);

    // no edges into the destination: applied
    CHECK(transfer_move(cfg, 0, 3, &moves));
    CHECK(moves.size() == 2);
}

TEST_CASE("transfer_move accepts two edges into separate components") {
    // paper guard would refuse; the exact acyclicity check accepts
    Graph g(6, {{0, 1}, {2, 3}, {0, 4}, {2, 4}});
    Configuration cfg = make_configuration(g, 5, Partition{2, {1, 1, 1, 1, 2, 0}});
    CHECK(transfer_move(cfg, 4, 1, nullptr));
    CHECK(verify(g, Partition{2, {1, 1, 1, 1, 1, 2}},
                 ClassPredicate::forest())
              .class_violations.empty());
}

TEST_CASE("find_exchange_vertex") {
    Graph g = exchange_instance();
    Configuration cfg = make_configuration(g, 11, exchange_rest_coloring());
    auto triple = find_exchange_vertex(cfg);
    REQUIRE(triple.has_value());
    CHECK(triple->hub == 0);
    CHECK(triple->swap1 == 3);
    CHECK(triple->swap2 == 4);

    // exhaustive scan: that triple is the only one satisfying the definition
    int count = 0;
    for (int z : cfg.first_class_rest)
        for (size_t i = 0; i < cfg.low_attachment.size(); ++i)
            for (size_t j = i + 1; j < cfg.low_attachment.size(); ++j) {
                int y1 = cfg.low_attachment[i], y2 = cfg.low_attachment[j];
                if (g.has_edge(z, y1) && g.has_edge(z, y2) && !g.has_edge(y1, y2)) ++count;
            }
    CHECK(count == 1);
}

TEST_CASE("find_exchange_vertex: no candidates") {
    // empty low-attachment set
    Graph g(7, {{0, 1}, {2, 3}, {4, 5}});
    Configuration cfg = make_configuration(g, 6, Partition{3, {1, 1, 2, 2, 3, 3, 0}});
    CHECK(cfg.low_attachment.empty());
    CHECK(!find_exchange_vertex(cfg).has_value());

    // both attachments present but adjacent to each other
    Graph h = Graph(12, {{0, 1}, {1, 2}, {0, 3}, {1, 3}, {0, 4}, {1, 4}, {3, 4}, {0, 11}});
    Configuration cfg2 = make_configuration(h, 11, exchange_rest_coloring());
    CHECK(cfg2.low_attachment == std::vector<int>{3, 4});
    CHECK(!find_exchange_vertex(cfg2).has_value());

    // t = 1: the pruned first class is empty, so no hub can exist
    Graph tiny(3, {{0, 1}});
    Configuration cfg3 = make_configuration(tiny, 2, Partition{3, {1, 2, 0}});
    CHECK(cfg3.first_class_rest.empty());
    CHECK(!find_exchange_vertex(cfg3).has_value());
}

TEST_CASE("lift_coloring") {
    Graph g = exchange_instance();
    Configuration cfg = make_configuration(g, 11, exchange_rest_coloring());
    auto triple = find_exchange_vertex(cfg);
    REQUIRE(triple.has_value());

    // remainder graph: rest + pivot + hub minus the swap pair
    std::vector<int> verts;
    for (int v : cfg.rest)
        if (v != triple->swap1 && v != triple->swap2) verts.push_back(v);
    verts.push_back(cfg.pivot);
    verts.push_back(triple->hub);
    std::sort(verts.begin(), verts.end());
    REQUIRE(static_cast<int>(verts.size()) == 8);  // (m-1) * t

    auto sub = induced_subgraph(g, verts);
    auto sub_out = exact_solve(sub.graph, 2, ClassPredicate::forest());
    REQUIRE(sub_out.is_sat());

    Partition lifted = lift_coloring(cfg, *triple, *sub_out.partition, sub.vertex_map);
    CHECK(verify(g, lifted, ClassPredicate::forest()).ok());
    auto sizes = lifted.class_sizes();
    for (int s : sizes) CHECK(s == 4);  // every class has exactly t vertices
    // the fixed class is the first class minus the hub plus the swaps
    CHECK(lifted.assignment[1] == 1);
    CHECK(lifted.assignment[2] == 1);
    CHECK(lifted.assignment[3] == 1);
    CHECK(lifted.assignment[4] == 1);
    CHECK(lifted.assignment[0] != 1);

    // handing in a broken sub-coloring is an internal error
    Partition bogus = *sub_out.partition;
    for (auto& c : bogus.assignment) c = 1;
    CHECK_THROWS_AS(lift_coloring(cfg, *triple, bogus, sub.vertex_map), std::logic_error);
}

TEST_CASE("replay interprets the exchange move") {
    Graph g = exchange_instance();
    MoveTrace trace;
    trace.working = g;
    trace.pad_count = 0;
    trace.m = 3;
    // build the pre-exchange coloring, then exchange and re-place
    const Partition rest = exchange_rest_coloring();
    for (int v = 0; v < 11; ++v) trace.moves.push_back(Move::place_move(v, rest.assignment[v]));
    trace.moves.push_back(Move::exchange(0, 3, 4, 0));
    // remainder vertices in ascending order: 0,5,6,7,8,9,10,11 into classes 2/3
    int cls = 2;
    for (int v : {0, 5, 6, 7, 8, 9, 10, 11}) {
        trace.moves.push_back(Move::place_move(v, cls));
        cls = cls == 2 ? 3 : 2;
    }
    Partition final = replay(trace, true);
    CHECK(final.assignment[1] == 1);
    CHECK(final.assignment[3] == 1);
    CHECK(final.assignment[4] == 1);
    CHECK(final.assignment[0] == 2);
    auto sizes = final.class_sizes();
    CHECK(sizes == std::vector<int>{4, 4, 4});
    CHECK(verify(g, final, ClassPredicate::forest()).ok());
}

TEST_CASE("replay rejects inconsistent traces") {
    MoveTrace t;
    t.working = testutil::path(3);
    t.m = 2;
    t.moves.push_back(Move::place_move(0, 1));
    t.moves.push_back(Move::place_move(0, 2));  // already placed
    CHECK_THROWS_AS(replay(t), std::logic_error);

    MoveTrace t2;
    t2.working = testutil::path(3);
    t2.m = 2;
    t2.moves.push_back(Move::transfer(0, 1, 2));  // never placed
    CHECK_THROWS_AS(replay(t2), std::logic_error);
}

TEST_CASE("solve colors forests for every class count") {
    for (int m = 1; m <= 7; ++m) {
        ConstructiveOptions opts;
        opts.exact_fallback = false;
        auto res = solve(testutil::path(7), m, opts);
        REQUIRE(res.outcome.is_sat());
        CHECK(verify(testutil::path(7), *res.outcome.partition, ClassPredicate::forest()).ok());
    }
}

TEST_CASE("solve handles padding and reproduces its trace") {
    std::mt19937 rng(60601);
    int solved = 0;
    for (int trial = 0; trial < 40; ++trial) {
        int n = 5 + static_cast<int>(rng() % 14);
        Graph g = random_planar(n, 3, static_cast<std::uint32_t>(rng()));
        int m = 3 + static_cast<int>(rng() % 4);
        ConstructiveOptions opts;
        opts.exact_fallback = false;
        auto res = solve(g, m, opts);
        CHECK(!res.outcome.is_unsat());  // the moves alone never refute
        if (!res.outcome.is_sat()) continue;
        ++solved;
        CHECK(verify(g, *res.outcome.partition, ClassPredicate::forest()).ok());

        // replay the trace on the padded graph; every prefix stays a forest
        Partition replayed = replay(res.trace, true);
        CHECK(strip_padding(replayed, res.trace.pad_count) == *res.outcome.partition);
        CHECK((res.trace.working.order() - res.trace.pad_count) == g.order());
    }
    CHECK(solved >= 30);  // the constructive path should nearly always work here
}

TEST_CASE("solve never returns unsat without the fallback") {
    ConstructiveOptions opts;
    opts.exact_fallback = false;
    auto res = solve(sharpness_example(3, 3), 2, opts);
    CHECK(!res.outcome.is_unsat());

    std::mt19937 rng(31337);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + static_cast<int>(rng() % 9);
        Graph g = testutil::random_graph(n, 50, rng);
        int m = 1 + static_cast<int>(rng() % 3);
        auto out = solve(g, m, opts);
        CHECK(!out.outcome.is_unsat());
    }
}

TEST_CASE("solve delegates refutation to the exact fallback") {
    auto res = solve(sharpness_example(3, 3), 2, ConstructiveOptions{});
    CHECK(res.outcome.is_unsat());
    CHECK(res.used_fallback);

    auto res4 = solve(sharpness_example(4, 5), 3, ConstructiveOptions{});
    CHECK(res4.outcome.is_unsat());
}

TEST_CASE("solve reaches the exchange step on a dense instance") {
    // relay-proof instance found by search: the insert loop has to fix a
    // class via the exchange before it can finish
    Graph g(10, {{0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6}, {0, 7}, {0, 9}, {1, 2}, {1, 3},
                 {1, 4}, {1, 5}, {1, 6}, {1, 7}, {1, 8}, {1, 9}, {2, 3}, {2, 4}, {2, 5},
                 {2, 6}, {2, 7}, {2, 8}, {2, 9}, {3, 4}, {3, 6}, {3, 9}, {4, 5}, {4, 6},
                 {4, 7}, {4, 8}, {4, 9}, {5, 6}, {6, 7}, {7, 9}});
    REQUIRE(brute_force_solve(g, 3, ClassPredicate::forest()).is_sat());

    ConstructiveOptions opts;
    opts.exact_fallback = false;
    auto res = solve(g, 3, opts);
    REQUIRE(res.outcome.is_sat());
    CHECK(verify(g, *res.outcome.partition, ClassPredicate::forest()).ok());

    int exchange_moves = 0;
    for (const auto& mv : res.trace.moves)
        if (mv.kind == Move::Kind::exchange) ++exchange_moves;
    CHECK(exchange_moves >= 1);

    Partition replayed = replay(res.trace, true);
    CHECK(strip_padding(replayed, res.trace.pad_count) == *res.outcome.partition);
}

TEST_CASE("solve on an ic corpus instance at the guaranteed threshold") {
    Graph base = random_planar(24, 3, 77);
    Drawing d = ic_augment(base, 6, 78, 3);
    int f = tree_coloring_threshold(girth(d.graph));
    auto res = solve(d.graph, f, ConstructiveOptions{});
    REQUIRE(res.outcome.is_sat());
    CHECK(verify(d.graph, *res.outcome.partition, ClassPredicate::forest()).ok());
}
