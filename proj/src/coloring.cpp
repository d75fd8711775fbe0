#include "eqforest/coloring.hpp"

#include <algorithm>
#include <stdexcept>

namespace eqforest {

std::vector<int> Partition::class_sizes() const {
    std::vector<int> sizes(static_cast<size_t>(std::max(m, 0)), 0);
    for (int c : assignment) {
        if (c < 1 || c > m) throw std::invalid_argument("class index out of range");
        ++sizes[c - 1];
    }
    return sizes;
}

std::vector<int> Partition::class_members(int cls) const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(assignment.size()); ++v)
        if (assignment[v] == cls) out.push_back(v);
    return out;
}

ClassPredicate ClassPredicate::defective_forest(int d) {
    if (d < 1) throw std::invalid_argument("defect must be >= 1");
    return {Kind::defective_forest, d};
}

bool is_equitable(const Partition& p) {
    if (p.m < 1) throw std::invalid_argument("class count must be >= 1");
    auto sizes = p.class_sizes();
    auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    return *hi - *lo <= 1;
}

namespace {

// acyclicity of the subgraph induced by one class, by union-find
bool class_is_forest(const Graph& g, const std::vector<int>& assignment, int cls) {
    std::vector<int> parent(g.order());
    for (int v = 0; v < g.order(); ++v) parent[v] = v;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [u, v] : g.edges()) {
        if (assignment[u] != cls || assignment[v] != cls) continue;
        int ru = find(u), rv = find(v);
        if (ru == rv) return false;
        parent[ru] = rv;
    }
    return true;
}

}  // namespace

VerifyReport verify(const Graph& g, const Partition& p, const ClassPredicate& pred) {
    if (static_cast<int>(p.assignment.size()) != g.order())
        throw std::invalid_argument("assignment does not cover the graph");
    if (p.m < 1) throw std::invalid_argument("class count must be >= 1");

    VerifyReport report;
    auto sizes = p.class_sizes();  // also range-checks every entry
    auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    report.min_class_size = *lo;
    report.max_class_size = *hi;
    report.equitable_ok = *hi - *lo <= 1;

    std::vector<int> internal_deg(g.order(), 0);
    std::vector<char> has_internal_edge(p.m + 1, 0);
    for (const auto& [u, v] : g.edges()) {
        if (p.assignment[u] != p.assignment[v]) continue;
        has_internal_edge[p.assignment[u]] = 1;
        ++internal_deg[u];
        ++internal_deg[v];
    }

    for (int cls = 1; cls <= p.m; ++cls) {
        switch (pred.kind) {
            case ClassPredicate::Kind::independent:
                if (has_internal_edge[cls])
                    report.class_violations.push_back({cls, ClassViolation::Reason::adjacent});
                break;
            case ClassPredicate::Kind::forest:
                if (has_internal_edge[cls] && !class_is_forest(g, p.assignment, cls))
                    report.class_violations.push_back({cls, ClassViolation::Reason::cycle});
                break;
            case ClassPredicate::Kind::defective_forest:
                if (has_internal_edge[cls] && !class_is_forest(g, p.assignment, cls))
                    report.class_violations.push_back({cls, ClassViolation::Reason::cycle});
                break;
        }
    }
    if (pred.kind == ClassPredicate::Kind::defective_forest) {
        std::vector<char> flagged(p.m + 1, 0);
        for (int v = 0; v < g.order(); ++v)
            if (internal_deg[v] > pred.defect) flagged[p.assignment[v]] = 1;
        for (int cls = 1; cls <= p.m; ++cls)
            if (flagged[cls])
                report.class_violations.push_back({cls, ClassViolation::Reason::degree});
    }
    return report;
}

}  // namespace eqforest
