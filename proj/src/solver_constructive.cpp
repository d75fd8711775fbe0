#include "eqforest/solver_constructive.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace eqforest {

namespace {

using Clock = std::chrono::steady_clock;

int count_in_class(const Graph& g, const std::vector<int>& asg, int v, int cls) {
    int k = 0;
    for (int w : g.neighbors(v))
        if (asg[w] == cls) ++k;
    return k;
}

// Would the class still induce a forest if `add` joined it and `skip`
// left it? (-1 = no such vertex). Exact check, not the one-edge
// sufficient condition.
bool class_stays_forest(const Graph& g, const std::vector<int>& asg, int cls, int add, int skip) {
    if (add >= 0) {
        int k = 0;
        for (int w : g.neighbors(add))
            if (asg[w] == cls && w != skip) ++k;
        if (k <= 1) {
            if (skip < 0) return true;  // the rest of the class was already a forest
        }
    }
    std::vector<int> local(g.order(), -1);
    std::vector<int> members;
    for (int v = 0; v < g.order(); ++v)
        if ((asg[v] == cls && v != skip) || v == add) {
            local[v] = static_cast<int>(members.size());
            members.push_back(v);
        }
    std::vector<int> parent(members.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int u : members)
        for (int w : g.neighbors(u)) {
            if (w <= u || local[w] == -1) continue;
            int ru = find(local[u]), rw = find(local[w]);
            if (ru == rw) return false;
            parent[ru] = rw;
        }
    return true;
}

bool all_classes_forests(const Graph& g, const std::vector<int>& asg, int m) {
    for (int cls = 1; cls <= m; ++cls)
        if (!class_stays_forest(g, asg, cls, -1, -1)) return false;
    return true;
}

// Mutable coloring state shared by the insert loop and the public ops.
struct WorkState {
    const Graph* g = nullptr;
    Partition part;
    std::vector<int> sizes;  // index by class, entry 0 unused
    int assigned = 0;

    WorkState(const Graph& graph, int m)
        : g(&graph), part{m, std::vector<int>(graph.order(), 0)}, sizes(m + 1, 0) {}

    WorkState(const Graph& graph, Partition p) : g(&graph), part(std::move(p)), sizes(part.m + 1, 0) {
        for (int c : part.assignment)
            if (c != 0) ++sizes[c], ++assigned;
    }

    void place(int v, int cls, std::vector<Move>& moves) {
        assert(part.assignment[v] == 0);
        part.assignment[v] = cls;
        ++sizes[cls];
        ++assigned;
        moves.push_back(Move::place_move(v, cls));
    }

    void transfer(int v, int to, std::vector<Move>& moves) {
        int from = part.assignment[v];
        assert(from != 0 && from != to);
        part.assignment[v] = to;
        --sizes[from];
        ++sizes[to];
        moves.push_back(Move::transfer(v, from, to));
    }

    int min_size() const {
        int lo = sizes[1];
        for (int c = 2; c <= part.m; ++c) lo = std::min(lo, sizes[c]);
        return lo;
    }
};

// Lemma-4 style placement of one pending vertex: a minimum-size class
// with at most one neighbor, then any minimum-size class that stays
// acyclic, then a depth-2 relay. Mutates the state only on success.
bool insert_pending(WorkState& st, int pivot, std::vector<Move>& moves) {
    const Graph& g = *st.g;
    const auto& asg = st.part.assignment;
    const int m = st.part.m;
    const int lo = st.min_size();

    for (int cls = 1; cls <= m; ++cls)  // one edge can never close a cycle
        if (st.sizes[cls] == lo && count_in_class(g, asg, pivot, cls) <= 1) {
            st.place(pivot, cls, moves);
            return true;
        }
    for (int cls = 1; cls <= m; ++cls)
        if (st.sizes[cls] == lo && class_stays_forest(g, asg, cls, pivot, -1)) {
            st.place(pivot, cls, moves);
            return true;
        }

    // relay: u moves from a donor class into a deficient one, the pivot
    // takes u's place
    for (int strict = 1; strict >= 0; --strict) {
        for (int dest = 1; dest <= m; ++dest) {
            if (st.sizes[dest] != lo) continue;
            for (int donor = 1; donor <= m; ++donor) {
                if (donor == dest) continue;
                for (int u = 0; u < g.order(); ++u) {
                    if (asg[u] != donor) continue;
                    if (strict) {
                        if (count_in_class(g, asg, u, dest) > 1) continue;
                        int piv_edges = 0;
                        for (int w : g.neighbors(pivot))
                            if (asg[w] == donor && w != u) ++piv_edges;
                        if (piv_edges > 1) continue;
                    } else {
                        if (!class_stays_forest(g, asg, dest, u, -1)) continue;
                        if (!class_stays_forest(g, asg, donor, pivot, u)) continue;
                    }
                    st.transfer(u, dest, moves);
                    st.place(pivot, donor, moves);
                    return true;
                }
            }
        }
    }
    return false;
}

}  // namespace

Move Move::place_move(int v, int cls) {
    Move m;
    m.kind = Kind::place;
    m.vertex = v;
    m.to = cls;
    return m;
}

Move Move::transfer(int v, int from, int to) {
    Move m;
    m.kind = Kind::transfer;
    m.vertex = v;
    m.from = from;
    m.to = to;
    return m;
}

Move Move::exchange(int hub, int swap1, int swap2, int depth) {
    Move m;
    m.kind = Kind::exchange;
    m.hub = hub;
    m.swap1 = swap1;
    m.swap2 = swap2;
    m.depth = depth;
    return m;
}

Partition replay(const MoveTrace& trace, bool check_forests) {
    const Graph& g = trace.working;
    const int m = trace.m;
    Partition part{m, std::vector<int>(g.order(), 0)};
    auto& asg = part.assignment;
    std::vector<std::pair<int, int>> frozen;  // (depth, class)

    auto in_range = [&](int v) { return v >= 0 && v < g.order(); };
    auto cls_ok = [&](int c) { return c >= 1 && c <= m; };

    for (const Move& mv : trace.moves) {
        switch (mv.kind) {
            case Move::Kind::place:
                if (!in_range(mv.vertex) || !cls_ok(mv.to) || asg[mv.vertex] != 0)
                    throw std::logic_error("replay: bad place move");
                asg[mv.vertex] = mv.to;
                break;
            case Move::Kind::transfer:
                if (!in_range(mv.vertex) || !cls_ok(mv.to) || asg[mv.vertex] != mv.from ||
                    mv.from == mv.to)
                    throw std::logic_error("replay: bad transfer move");
                asg[mv.vertex] = mv.to;
                break;
            case Move::Kind::exchange: {
                while (!frozen.empty() && frozen.back().first >= mv.depth) frozen.pop_back();
                if (static_cast<int>(frozen.size()) != mv.depth)
                    throw std::logic_error("replay: exchange depth mismatch");
                if (!in_range(mv.hub) || !in_range(mv.swap1) || !in_range(mv.swap2))
                    throw std::logic_error("replay: exchange vertex out of range");
                int cdef = asg[mv.hub];
                if (cdef == 0 || asg[mv.swap1] == 0 || asg[mv.swap1] == cdef ||
                    asg[mv.swap2] == 0 || asg[mv.swap2] == cdef || mv.swap1 == mv.swap2)
                    throw std::logic_error("replay: exchange state mismatch");
                std::vector<char> keep(m + 1, 0);
                keep[cdef] = 1;
                for (auto& [d, c] : frozen) keep[c] = 1;
                for (int v = 0; v < g.order(); ++v)
                    if (asg[v] != 0 && !keep[asg[v]]) asg[v] = 0;
                asg[mv.swap1] = cdef;
                asg[mv.swap2] = cdef;
                asg[mv.hub] = 0;
                frozen.emplace_back(mv.depth, cdef);
                break;
            }
        }
        if (check_forests && !all_classes_forests(g, asg, m))
            throw std::logic_error("replay: a class lost acyclicity");
    }
    return part;
}

std::pair<Graph, int> pad_to_multiple(const Graph& g, int m) {
    if (m < 1) throw std::invalid_argument("class count must be >= 1");
    int k = (m - g.order() % m) % m;
    if (k == 0) return {g, 0};
    return {Graph(g.order() + k, g.edges()), k};
}

Graph strip_padding(const Graph& g, int pad_count) {
    if (pad_count < 0 || pad_count > g.order())
        throw std::invalid_argument("bad pad count");
    int n = g.order() - pad_count;
    for (const auto& [u, v] : g.edges())
        if (v >= n) throw std::invalid_argument("pad vertices must be isolated");
    return Graph(n, g.edges());
}

Partition strip_padding(const Partition& p, int pad_count) {
    if (pad_count < 0 || pad_count > static_cast<int>(p.assignment.size()))
        throw std::invalid_argument("bad pad count");
    Partition out{p.m, std::vector<int>(p.assignment.begin(), p.assignment.end() - pad_count)};
    return out;
}

void Configuration::refresh() {
    first_class_rest.clear();
    rest.clear();
    low_attachment.clear();
    const auto& asg = partition.assignment;
    for (int v = 0; v < graph.order(); ++v) {
        if (v == pivot || asg[v] == 0) continue;
        if (asg[v] == first_class)
            first_class_rest.push_back(v);
        else
            rest.push_back(v);
    }
    for (int v : rest) {
        int k = 0;
        for (int w : graph.neighbors(v))
            if (w != pivot && asg[w] == first_class) ++k;
        if (k == 2) low_attachment.push_back(v);
    }
}

Configuration make_configuration(const Graph& g, int pivot, Partition coloring_of_rest) {
    if (pivot < 0 || pivot >= g.order()) throw std::invalid_argument("pivot out of range");
    if (static_cast<int>(coloring_of_rest.assignment.size()) != g.order())
        throw std::invalid_argument("assignment does not cover the graph");
    if (coloring_of_rest.assignment[pivot] != 0)
        throw std::invalid_argument("pivot must be unassigned");

    Configuration cfg;
    cfg.graph = g;
    cfg.pivot = pivot;
    cfg.pivot_anchor = g.degree(pivot) > 0 ? g.neighbors(pivot)[0] : -1;
    cfg.partition = std::move(coloring_of_rest);

    std::vector<int> sizes(cfg.partition.m + 1, 0);
    for (int c : cfg.partition.assignment)
        if (c != 0) ++sizes[c];
    cfg.first_class = 1;
    for (int c = 2; c <= cfg.partition.m; ++c)
        if (sizes[c] < sizes[cfg.first_class]) cfg.first_class = c;
    cfg.refresh();
    return cfg;
}

bool transfer_move(Configuration& cfg, int v, int to, std::vector<Move>* moves) {
    const auto& asg = cfg.partition.assignment;
    if (v < 0 || v >= cfg.graph.order() || v == cfg.pivot) return false;
    if (to < 1 || to > cfg.partition.m) return false;
    int from = asg[v];
    if (from == 0 || from == to) return false;
    if (!class_stays_forest(cfg.graph, asg, to, v, -1)) return false;
    cfg.partition.assignment[v] = to;
    if (moves) moves->push_back(Move::transfer(v, from, to));
    cfg.refresh();
    return true;
}

std::optional<ExchangeTriple> find_exchange_vertex(const Configuration& cfg) {
    std::vector<char> low(cfg.graph.order(), 0);
    for (int v : cfg.low_attachment) low[v] = 1;
    for (int z : cfg.first_class_rest) {
        std::vector<int> cands;
        for (int w : cfg.graph.neighbors(z))
            if (low[w]) cands.push_back(w);
        for (size_t i = 0; i < cands.size(); ++i)
            for (size_t j = i + 1; j < cands.size(); ++j)
                if (!cfg.graph.has_edge(cands[i], cands[j]))
                    return ExchangeTriple{z, cands[i], cands[j]};
    }
    return std::nullopt;
}

SolveOutcome reinsert_vertex(Configuration& cfg, std::vector<Move>* moves) {
    WorkState st(cfg.graph, cfg.partition);
    std::vector<Move> local;
    if (!insert_pending(st, cfg.pivot, local))
        return SolveOutcome::unknown(UnknownReason::heuristic_failed);
    cfg.partition = st.part;
    cfg.refresh();
    if (moves) moves->insert(moves->end(), local.begin(), local.end());
    return SolveOutcome::sat(cfg.partition);
}

Partition lift_coloring(const Configuration& cfg, const ExchangeTriple& triple,
                        const Partition& sub, std::span<const int> sub_vertex_map) {
    const Graph& g = cfg.graph;
    const int m = cfg.partition.m;

    // the fixed class: first class minus the hub, plus the swap pair
    std::vector<int> fixed;
    for (int v : cfg.first_class_rest)
        if (v != triple.hub) fixed.push_back(v);
    fixed.push_back(triple.swap1);
    fixed.push_back(triple.swap2);
    std::sort(fixed.begin(), fixed.end());
    if (static_cast<int>(fixed.size()) != static_cast<int>(cfg.first_class_rest.size()) + 1)
        throw std::logic_error("lift: swap pair not disjoint from the first class");
    if (!is_forest(induced_subgraph(g, fixed).graph))
        throw std::logic_error("lift: fixed class is not a forest");

    if (sub.m != m - 1 || sub.assignment.size() != sub_vertex_map.size())
        throw std::logic_error("lift: sub-coloring shape mismatch");
    auto sub_graph = induced_subgraph(g, sub_vertex_map).graph;
    if (!verify(sub_graph, sub, ClassPredicate::forest()).ok())
        throw std::logic_error("lift: sub-coloring is not a verified tree-coloring");

    std::vector<int> actives;  // global indices of the classes the sub-coloring fills
    for (int c = 1; c <= m; ++c)
        if (c != cfg.first_class) actives.push_back(c);

    Partition out = cfg.partition;
    for (int v : fixed) out.assignment[v] = cfg.first_class;
    for (size_t i = 0; i < sub_vertex_map.size(); ++i)
        out.assignment[sub_vertex_map[i]] = actives[sub.assignment[i] - 1];
    return out;
}

namespace {

struct CoreResult {
    SolveOutcome outcome;
    std::vector<Move> moves;
};

CoreResult solve_core(const Graph& g, int m, Clock::time_point deadline, int depth,
                      int real_order);

// The exchange-and-recurse step: fix one class by swapping in two
// nonadjacent low-attachment vertices, recolor the remainder with one
// class fewer, and splice the results together.
enum class ExchangeResult { applied, not_applicable, timed_out };

ExchangeResult try_exchange(WorkState& st, int pivot, int depth, Clock::time_point deadline,
                            std::vector<Move>& moves) {
    const Graph& g = *st.g;
    const int m = st.part.m;
    if (m < 3) return ExchangeResult::not_applicable;

    int t = (st.assigned + 1) / m;
    if (t < 2) return ExchangeResult::not_applicable;

    int cdef = -1;
    for (int c = 1; c <= m; ++c)
        if (st.sizes[c] == t - 1) {
            cdef = c;
            break;
        }
    if (cdef == -1) return ExchangeResult::not_applicable;

    Configuration cfg;
    cfg.graph = g;
    cfg.pivot = pivot;
    cfg.pivot_anchor = g.degree(pivot) > 0 ? g.neighbors(pivot)[0] : -1;
    cfg.partition = st.part;
    cfg.first_class = cdef;
    cfg.refresh();

    auto triple = find_exchange_vertex(cfg);
    if (!triple) return ExchangeResult::not_applicable;

    // remainder: everything colored outside the first class, plus the
    // pivot and the hub, minus the swap pair
    std::vector<int> verts;
    for (int v : cfg.rest)
        if (v != triple->swap1 && v != triple->swap2) verts.push_back(v);
    verts.push_back(pivot);
    verts.push_back(triple->hub);
    std::sort(verts.begin(), verts.end());

    auto sub = induced_subgraph(g, verts);
    CoreResult inner = solve_core(sub.graph, m - 1, deadline, depth + 1, sub.graph.order());
    if (!inner.outcome.is_sat()) {
        bool timeout = inner.outcome.is_unknown() && inner.outcome.reason == UnknownReason::timeout;
        return timeout ? ExchangeResult::timed_out : ExchangeResult::not_applicable;
    }

    Partition lifted = lift_coloring(cfg, *triple, *inner.outcome.partition, sub.vertex_map);

    std::vector<int> actives;
    for (int c = 1; c <= m; ++c)
        if (c != cdef) actives.push_back(c);

    moves.push_back(Move::exchange(triple->hub, triple->swap1, triple->swap2, depth));
    for (Move mv : inner.moves) {
        if (mv.vertex >= 0) mv.vertex = sub.vertex_map[mv.vertex];
        if (mv.hub >= 0) mv.hub = sub.vertex_map[mv.hub];
        if (mv.swap1 >= 0) mv.swap1 = sub.vertex_map[mv.swap1];
        if (mv.swap2 >= 0) mv.swap2 = sub.vertex_map[mv.swap2];
        if (mv.from > 0) mv.from = actives[mv.from - 1];
        if (mv.to > 0) mv.to = actives[mv.to - 1];
        moves.push_back(mv);
    }

    st.part = std::move(lifted);
    std::fill(st.sizes.begin(), st.sizes.end(), 0);
    st.assigned = 0;
    for (int c : st.part.assignment)
        if (c != 0) ++st.sizes[c], ++st.assigned;
    for (int c = 1; c <= m; ++c)
        if (st.sizes[c] != t) throw std::logic_error("exchange left unbalanced classes");
    return ExchangeResult::applied;
}

// Colors a graph whose order is a multiple of m by peeling minimum
// degree vertices and reinserting them. Vertices beyond real_order are
// padding: they peel first (so they are reinserted last, one per
// deficient class) and never take part in an exchange.
CoreResult solve_core(const Graph& g, int m, Clock::time_point deadline, int depth,
                      int real_order) {
    const int n = g.order();
    CoreResult res;
    WorkState st(g, m);

    if (n <= m) {
        for (int v = 0; v < n; ++v) st.place(v, v + 1, res.moves);
        res.outcome = SolveOutcome::sat(st.part);
        return res;
    }

    std::vector<int> deg(n);
    std::vector<char> alive(n, 1);
    for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
    std::vector<int> pending;  // peel order; reinserted back to front
    int alive_count = n;
    while (alive_count > m) {
        int pick = -1;
        auto better = [&](int a, int b) {  // pads win ties so they reinsert last
            if (deg[a] != deg[b]) return deg[a] < deg[b];
            bool pad_a = a >= real_order, pad_b = b >= real_order;
            if (pad_a != pad_b) return pad_a;
            return a < b;
        };
        for (int v = 0; v < n; ++v)
            if (alive[v] && (pick == -1 || better(v, pick))) pick = v;
        pending.push_back(pick);
        alive[pick] = 0;
        --alive_count;
        for (int w : g.neighbors(pick))
            if (alive[w]) --deg[w];
    }

    int cls = 1;
    for (int v = 0; v < n; ++v)
        if (alive[v]) st.place(v, cls++, res.moves);

    while (!pending.empty()) {
        if (Clock::now() >= deadline) {
            res.outcome = SolveOutcome::unknown(UnknownReason::timeout);
            return res;
        }
        int v = pending.back();
        pending.pop_back();
        if (insert_pending(st, v, res.moves)) continue;
        if ((st.assigned + 1) % m == 0) {
            ExchangeResult ex = try_exchange(st, v, depth, deadline, res.moves);
            if (ex == ExchangeResult::applied) continue;
            if (ex == ExchangeResult::timed_out) {
                res.outcome = SolveOutcome::unknown(UnknownReason::timeout);
                return res;
            }
        }
        res.outcome = SolveOutcome::unknown(UnknownReason::heuristic_failed);
        return res;
    }
    res.outcome = SolveOutcome::sat(st.part);
    return res;
}

}  // namespace

ConstructiveResult solve(const Graph& g, int m, const ConstructiveOptions& opts) {
    if (m < 1) throw std::invalid_argument("class count must be >= 1");
    auto start = Clock::now();
    auto constructive_deadline = start + opts.budget * 7 / 10;
    auto final_deadline = start + opts.budget;

    auto [padded, pad_count] = pad_to_multiple(g, m);
    CoreResult core = solve_core(padded, m, constructive_deadline, 0, g.order());

    ConstructiveResult result;
    if (core.outcome.is_sat()) {
        Partition stripped = strip_padding(*core.outcome.partition, pad_count);
        if (!verify(g, stripped, ClassPredicate::forest()).ok())
            throw std::logic_error("constructive solver produced an invalid partition");
        result.outcome = SolveOutcome::sat(std::move(stripped));
        result.trace = MoveTrace{padded, pad_count, m, std::move(core.moves)};
        return result;
    }

    if (!opts.exact_fallback) {
        result.outcome = core.outcome;
        return result;
    }
    auto now = Clock::now();
    if (now >= final_deadline) {
        result.outcome = SolveOutcome::unknown(UnknownReason::timeout);
        return result;
    }
    auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(final_deadline - now);
    result.outcome = exact_solve(g, m, ClassPredicate::forest(), remaining);
    result.used_fallback = true;
    return result;
}

}  // namespace eqforest
