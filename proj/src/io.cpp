#include "eqforest/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace eqforest::io {

namespace {

using nlohmann::json;

json parse(std::istream& in) {
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
}

int require_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw ParseError(std::string("missing or non-integer \"") + key + "\"");
    return j[key].get<int>();
}

Edge parse_edge(const json& j, int n) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw ParseError("edge must be a pair of integers");
    int u = j[0].get<int>(), v = j[1].get<int>();
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError("edge endpoint out of range");
    if (u == v) throw ParseError("self-loop");
    return make_edge(u, v);
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path.string() + " for writing");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return in;
}

}  // namespace

Drawing read_drawing(std::istream& in) {
    json doc = parse(in);
    int n = require_int(doc, "n");
    if (n < 0) throw ParseError("vertex count must be non-negative");

    std::vector<Edge> edges;
    if (doc.contains("edges")) {
        if (!doc["edges"].is_array()) throw ParseError("\"edges\" must be an array");
        for (const auto& e : doc["edges"]) edges.push_back(parse_edge(e, n));
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw ParseError("duplicate edge");

    Drawing d{Graph(n, std::move(edges)), {}};
    if (doc.contains("crossings")) {
        if (!doc["crossings"].is_array()) throw ParseError("\"crossings\" must be an array");
        for (const auto& c : doc["crossings"]) {
            if (!c.is_object() || !c.contains("e1") || !c.contains("e2"))
                throw ParseError("crossing must carry \"e1\" and \"e2\"");
            d.crossings.push_back({parse_edge(c["e1"], n), parse_edge(c["e2"], n)});
        }
    }
    return d;
}

Drawing read_drawing(const std::string& text) {
    std::istringstream in(text);
    return read_drawing(in);
}

Drawing read_drawing_file(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_drawing(in);
}

void write_drawing(std::ostream& out, const Drawing& d) {
    // one fixed byte form so corpora diff and hash stably
    out << "{\n  \"n\": " << d.graph.order() << ",\n  \"edges\": [";
    const auto& edges = d.graph.edges();
    for (size_t i = 0; i < edges.size(); ++i) {
        out << (i == 0 ? "\n" : ",\n");
        out << "    [" << edges[i].first << ", " << edges[i].second << "]";
    }
    out << (edges.empty() ? "],\n" : "\n  ],\n");

    std::vector<Crossing> crossings = d.crossings;
    for (auto& c : crossings) {
        c.e1 = make_edge(c.e1.first, c.e1.second);
        c.e2 = make_edge(c.e2.first, c.e2.second);
        if (c.e2 < c.e1) std::swap(c.e1, c.e2);
    }
    std::sort(crossings.begin(), crossings.end(), [](const Crossing& a, const Crossing& b) {
        return std::tie(a.e1, a.e2) < std::tie(b.e1, b.e2);
    });
    out << "  \"crossings\": [";
    for (size_t i = 0; i < crossings.size(); ++i) {
        const auto& c = crossings[i];
        out << (i == 0 ? "\n" : ",\n");
        out << "    {\"e1\": [" << c.e1.first << ", " << c.e1.second << "], \"e2\": ["
            << c.e2.first << ", " << c.e2.second << "]}";
    }
    out << (crossings.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

void write_drawing_file(const std::filesystem::path& path, const Drawing& d) {
    auto out = open_out(path);
    write_drawing(out, d);
}

std::string to_string(const Drawing& d) {
    std::ostringstream out;
    write_drawing(out, d);
    return out.str();
}

DimacsResult read_dimacs_col(std::istream& in) {
    DimacsResult result;
    std::string line;
    int n = -1;
    long long declared_edges = -1;
    std::vector<Edge> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;  // blank line
        if (tag == "c") continue;    // comment
        if (tag == "p") {
            std::string fmt;
            if (!(ls >> fmt >> n >> declared_edges) || fmt != "edge" || n < 0)
                throw ParseError("line " + std::to_string(lineno) + ": malformed problem line");
            continue;
        }
        if (tag == "e") {
            if (n < 0) throw ParseError("edge line before problem line");
            int u, v;
            if (!(ls >> u >> v))
                throw ParseError("line " + std::to_string(lineno) + ": malformed edge line");
            if (u < 1 || v < 1 || u > n || v > n)
                throw ParseError("line " + std::to_string(lineno) +
                                 ": vertex out of range (file is 1-indexed)");
            if (u == v)
                throw ParseError("line " + std::to_string(lineno) + ": self-loop");
            edges.push_back(make_edge(u - 1, v - 1));
            continue;
        }
        throw ParseError("line " + std::to_string(lineno) + ": unknown record \"" + tag + "\"");
    }
    if (n < 0) throw ParseError("missing problem line");

    std::sort(edges.begin(), edges.end());
    size_t before = edges.size();
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (edges.size() != before)
        result.warnings.push_back("duplicate edges collapsed: " +
                                  std::to_string(before - edges.size()));
    if (declared_edges >= 0 && declared_edges != static_cast<long long>(before))
        result.warnings.push_back("header declares " + std::to_string(declared_edges) +
                                  " edges, file has " + std::to_string(before));
    result.graph = Graph(n, std::move(edges));
    return result;
}

DimacsResult read_dimacs_col_file(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_dimacs_col(in);
}

Drawing read_graph_auto(const std::filesystem::path& path) {
    if (path.extension() == ".col") {
        auto res = read_dimacs_col_file(path);
        return Drawing{std::move(res.graph), {}};
    }
    return read_drawing_file(path);
}

Partition read_partition(std::istream& in) {
    json doc = parse(in);
    int m = require_int(doc, "m");
    if (m < 1) throw ParseError("class count must be >= 1");
    if (!doc.contains("assignment") || !doc["assignment"].is_array())
        throw ParseError("missing \"assignment\" array");
    Partition p{m, {}};
    for (const auto& c : doc["assignment"]) {
        if (!c.is_number_integer()) throw ParseError("class index must be an integer");
        int cls = c.get<int>();
        if (cls < 1 || cls > m) throw ParseError("class index out of range");
        p.assignment.push_back(cls);
    }
    return p;
}

Partition read_partition(const std::string& text) {
    std::istringstream in(text);
    return read_partition(in);
}

Partition read_partition_file(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_partition(in);
}

void write_partition(std::ostream& out, const Partition& p) {
    out << "{\n  \"m\": " << p.m << ",\n  \"assignment\": [";
    for (size_t i = 0; i < p.assignment.size(); ++i)
        out << (i ? ", " : "") << p.assignment[i];
    out << "]\n}\n";
}

void write_partition_file(const std::filesystem::path& path, const Partition& p) {
    auto out = open_out(path);
    write_partition(out, p);
}

std::string to_string(const Partition& p) {
    std::ostringstream out;
    write_partition(out, p);
    return out.str();
}

std::string feasibility_string(const std::vector<SolveStatus>& per_m, int m_lo) {
    std::string s(m_lo - 1, '-');
    for (SolveStatus st : per_m) {
        switch (st) {
            case SolveStatus::sat: s += '1'; break;
            case SolveStatus::unsat: s += '0'; break;
            case SolveStatus::unknown: s += '?'; break;
        }
    }
    return s;
}

void write_report(std::ostream& out, std::vector<ReportRow> rows) {
    std::sort(rows.begin(), rows.end(),
              [](const ReportRow& a, const ReportRow& b) { return a.graph_id < b.graph_id; });
    out << "graph_id,n,e,girth,ic,feasibility,va_eq,va_eq_star,solver,elapsed_ms\n";
    for (const auto& r : rows) {
        out << r.graph_id << ',' << r.n << ',' << r.e << ',' << eqforest::to_string(r.girth) << ','
            << (r.ic ? 1 : 0) << ',' << r.feasibility << ','
            << (r.va_eq ? std::to_string(*r.va_eq) : std::string("-")) << ','
            << (r.va_eq_star ? std::to_string(*r.va_eq_star) : std::string("-")) << ','
            << r.solver << ',' << r.elapsed_ms << '\n';
    }
}

}  // namespace eqforest::io
