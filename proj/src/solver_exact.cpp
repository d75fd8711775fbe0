#include "eqforest/solver_exact.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace eqforest {

SolveOutcome SolveOutcome::sat(Partition p) {
    SolveOutcome o;
    o.status = SolveStatus::sat;
    o.partition = std::move(p);
    return o;
}

SolveOutcome SolveOutcome::unsat() {
    SolveOutcome o;
    o.status = SolveStatus::unsat;
    return o;
}

SolveOutcome SolveOutcome::unknown(UnknownReason r) {
    SolveOutcome o;
    o.status = SolveStatus::unknown;
    o.reason = r;
    return o;
}

namespace {

using Clock = std::chrono::steady_clock;

// Union-find without path compression so unions can be rolled back.
class RollbackForest {
public:
    explicit RollbackForest(int n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) const {
        while (parent_[x] != x) x = parent_[x];
        return x;
    }

    // roots must differ
    void join(int ra, int rb) {
        if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
        log_.push_back({rb, rank_[ra]});
        parent_[rb] = ra;
        if (rank_[ra] == rank_[rb]) ++rank_[ra];
    }

    size_t mark() const { return log_.size(); }

    void rollback(size_t mark) {
        while (log_.size() > mark) {
            auto [child, parent_rank] = log_.back();
            log_.pop_back();
            rank_[parent_[child]] = parent_rank;
            parent_[child] = child;
        }
    }

private:
    mutable std::vector<int> parent_;
    std::vector<int> rank_;
    std::vector<std::pair<int, int>> log_;  // (re-rooted child, old parent rank)
};

class ExactSearcher {
public:
    ExactSearcher(const Graph& g, int m, const ClassPredicate& pred, Clock::time_point deadline)
        : g_(g), m_(m), pred_(pred), deadline_(deadline), forest_(g.order() * std::max(m, 1)),
          assignment_(g.order(), 0), class_size_(m + 1, 0), capacity_(m + 1, 0),
          internal_deg_(g.order(), 0) {
        const int n = g.order();
        int base = n / m, extra = n % m;
        for (int c = 1; c <= m; ++c) capacity_[c] = base + (c <= extra ? 1 : 0);
        // fail-first: branch on high-degree vertices early
        order_.resize(n);
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int a, int b) { return g.degree(a) > g.degree(b); });
    }

    SolveOutcome run() {
        if (g_.order() == 0) return SolveOutcome::sat(Partition{m_, {}});
        timed_out_ = false;
        bool found = descend(0);
        if (found) {
            Partition p{m_, assignment_};
            if (!verify(g_, p, pred_).ok())
                throw std::logic_error("exact solver produced an invalid partition");
            return SolveOutcome::sat(std::move(p));
        }
        if (timed_out_) return SolveOutcome::unknown(UnknownReason::timeout);
        return SolveOutcome::unsat();
    }

private:
    // per-class union-find cell
    int cell(int v, int cls) const { return (cls - 1) * g_.order() + v; }

    bool deadline_hit() {
        if (ticks_++ % 1024 != 0) return timed_out_;
        if (Clock::now() >= deadline_) timed_out_ = true;
        return timed_out_;
    }

    // checks the predicate for v joining cls and applies the union-find
    // updates; returns false (with rollback) when the class would break
    bool try_place(int v, int cls) {
        int nbrs_inside = 0;
        for (int w : g_.neighbors(v))
            if (assignment_[w] == cls) ++nbrs_inside;

        switch (pred_.kind) {
            case ClassPredicate::Kind::independent:
                return nbrs_inside == 0 ? (assignment_[v] = cls, ++class_size_[cls], true) : false;
            case ClassPredicate::Kind::defective_forest:
                if (nbrs_inside > pred_.defect) return false;
                for (int w : g_.neighbors(v))
                    if (assignment_[w] == cls && internal_deg_[w] + 1 > pred_.defect) return false;
                break;
            case ClassPredicate::Kind::forest:
                break;
        }

        size_t mark = forest_.mark();
        for (int w : g_.neighbors(v)) {
            if (assignment_[w] != cls) continue;
            int rv = forest_.find(cell(v, cls));
            int rw = forest_.find(cell(w, cls));
            if (rv == rw) {  // two neighbors already connected inside the class
                forest_.rollback(mark);
                return false;
            }
            forest_.join(rv, rw);
        }
        assignment_[v] = cls;
        ++class_size_[cls];
        if (pred_.kind == ClassPredicate::Kind::defective_forest) {
            for (int w : g_.neighbors(v))
                if (assignment_[w] == cls && w != v) ++internal_deg_[w];
            internal_deg_[v] = nbrs_inside;
        }
        marks_.push_back(mark);
        return true;
    }

    void unplace(int v) {
        int cls = assignment_[v];
        if (pred_.kind == ClassPredicate::Kind::defective_forest) {
            for (int w : g_.neighbors(v))
                if (assignment_[w] == cls && w != v) --internal_deg_[w];
            internal_deg_[v] = 0;
        }
        if (pred_.kind != ClassPredicate::Kind::independent) {
            forest_.rollback(marks_.back());
            marks_.pop_back();
        }
        assignment_[v] = 0;
        --class_size_[cls];
    }

    bool descend(int idx) {
        if (idx == g_.order()) return true;
        if (deadline_hit()) return false;
        int v = order_[idx];
        bool opened_fresh_of_cap[2] = {false, false};  // capacities take two values
        for (int cls = 1; cls <= m_; ++cls) {
            if (class_size_[cls] >= capacity_[cls]) continue;
            if (class_size_[cls] == 0) {
                // among empty classes of equal capacity only the first is tried
                int bucket = capacity_[cls] == capacity_[1] ? 0 : 1;
                if (opened_fresh_of_cap[bucket]) continue;
                opened_fresh_of_cap[bucket] = true;
            }
            if (!try_place(v, cls)) continue;
            if (descend(idx + 1)) return true;
            unplace(v);
            if (timed_out_) return false;
        }
        return false;
    }

    const Graph& g_;
    int m_;
    ClassPredicate pred_;
    Clock::time_point deadline_;
    RollbackForest forest_;
    std::vector<int> assignment_;
    std::vector<int> class_size_;
    std::vector<int> capacity_;
    std::vector<int> internal_deg_;
    std::vector<int> order_;
    std::vector<size_t> marks_;
    long ticks_ = 0;
    bool timed_out_ = false;
};

}  // namespace

SolveOutcome exact_solve(const Graph& g, int m, const ClassPredicate& pred,
                         std::chrono::milliseconds budget) {
    if (m < 1) throw std::invalid_argument("class count must be >= 1");
    ExactSearcher searcher(g, m, pred, Clock::now() + budget);
    return searcher.run();
}

namespace {

bool brute_descend(const Graph& g, int m, const ClassPredicate& pred, int max_size,
                   std::vector<int>& assignment, std::vector<int>& sizes, int v) {
    if (v == g.order()) {
        Partition p{m, assignment};
        return verify(g, p, pred).ok();
    }
    for (int cls = 1; cls <= m; ++cls) {
        if (sizes[cls] == max_size) continue;  // any completion is inequitable
        assignment[v] = cls;
        ++sizes[cls];
        if (brute_descend(g, m, pred, max_size, assignment, sizes, v + 1)) return true;
        --sizes[cls];
        assignment[v] = 0;
    }
    return false;
}

}  // namespace

SolveOutcome brute_force_solve(const Graph& g, int m, const ClassPredicate& pred) {
    if (m < 1) throw std::invalid_argument("class count must be >= 1");
    if (g.order() > 10) throw std::invalid_argument("brute force is limited to n <= 10");
    if (g.order() == 0) return SolveOutcome::sat(Partition{m, {}});
    std::vector<int> assignment(g.order(), 0), sizes(m + 1, 0);
    int max_size = (g.order() + m - 1) / m;
    if (brute_descend(g, m, pred, max_size, assignment, sizes, 0))
        return SolveOutcome::sat(Partition{m, assignment});
    return SolveOutcome::unsat();
}

std::optional<int> va_eq(const Graph& g, const ClassPredicate& pred,
                         std::chrono::milliseconds per_solve_budget) {
    int limit = std::max(g.order(), 1);
    for (int m = 1; m <= limit; ++m) {
        SolveOutcome o = exact_solve(g, m, pred, per_solve_budget);
        if (o.is_sat()) return m;
        if (o.is_unknown()) return std::nullopt;
    }
    return std::nullopt;  // unreachable: m = n is always satisfiable
}

std::optional<int> va_eq_star(const Graph& g, const ClassPredicate& pred,
                              std::chrono::milliseconds per_solve_budget) {
    ThresholdReport r = threshold_report(g, pred, per_solve_budget);
    return r.va_eq_star;
}

ThresholdReport threshold_report(const Graph& g, const ClassPredicate& pred,
                                 std::chrono::milliseconds per_solve_budget) {
    ThresholdReport report;
    if (pred.kind == ClassPredicate::Kind::defective_forest) report.defect = pred.defect;
    const int n = g.order();
    if (n == 0) {
        report.va_eq = 1;
        report.va_eq_star = 1;
        return report;
    }
    report.per_m.resize(n, SolveStatus::unknown);
    for (int m = 1; m <= n; ++m)
        report.per_m[m - 1] = exact_solve(g, m, pred, per_solve_budget).status;

    for (int m = 1; m <= n; ++m) {
        if (report.per_m[m - 1] == SolveStatus::sat) {
            report.va_eq = m;
            break;
        }
        if (report.per_m[m - 1] == SolveStatus::unknown) break;  // blocked
    }
    int star = -1;
    for (int m = n; m >= 1; --m) {
        if (report.per_m[m - 1] != SolveStatus::sat) break;
        star = m;
    }
    bool blocked = star > 1 && report.per_m[star - 2] == SolveStatus::unknown;
    if (star != -1 && !blocked) report.va_eq_star = star;
    return report;
}

}  // namespace eqforest
