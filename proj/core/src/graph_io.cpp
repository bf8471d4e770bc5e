#include "cograph/graph_io.hpp"

#include <fstream>
#include <sstream>

namespace cograph {
namespace {

std::string strip_comment(const std::string& line) {
    const auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return in;
}

}  // namespace

Graph read_graph(std::istream& in) {
    std::string line;
    int line_no = 0;
    long long n = -1, m = -1;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(strip_comment(line));
        if (ls >> n) {
            if (!(ls >> m)) throw ParseError(line_no, "header needs two numbers: n m");
            std::string extra;
            if (ls >> extra) throw ParseError(line_no, "unexpected token '" + extra + "' after header");
            break;
        }
    }
    if (n < 0 || m < 0) throw ParseError(line_no, "missing header line \"n m\"");
    if (m > n * (n - 1) / 2) throw ParseError(line_no, "edge count exceeds simple-graph maximum");

    PairSet edges;
    long long read = 0;
    while (read < m && std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(strip_comment(line));
        long long u, v;
        if (!(ls >> u)) continue;  // blank or comment-only line
        if (!(ls >> v)) throw ParseError(line_no, "edge line needs two endpoints");
        std::string extra;
        if (ls >> extra) throw ParseError(line_no, "unexpected token '" + extra + "' on edge line");
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw ParseError(line_no, "endpoint out of range [0, n)");
        if (u >= v) throw ParseError(line_no, "edges must satisfy u < v");
        if (edges.contains(static_cast<Vertex>(u), static_cast<Vertex>(v)))
            throw ParseError(line_no, "duplicate edge");
        edges.add(static_cast<Vertex>(u), static_cast<Vertex>(v));
        ++read;
    }
    if (read < m) throw ParseError(line_no, "file ends before all edges are read");
    // anything left must be blank or comments
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(strip_comment(line));
        std::string extra;
        if (ls >> extra) throw ParseError(line_no, "trailing content after the edge list");
    }
    return Graph::from_edges(static_cast<int>(n), edges);
}

Graph read_graph_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& p : g.edges()) out << p.u << ' ' << p.v << '\n';
}

PairSet read_pairs(std::istream& in) {
    PairSet out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(strip_comment(line));
        long long u, v;
        if (!(ls >> u)) continue;
        if (!(ls >> v)) throw ParseError(line_no, "pair line needs two endpoints");
        std::string marker;
        if (ls >> marker && marker != "+" && marker != "-")
            throw ParseError(line_no, "unexpected token '" + marker + "' on pair line");
        if (u < 0 || v < 0 || u == v) throw ParseError(line_no, "invalid pair");
        out.add(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    return out;
}

PairSet read_pairs_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_pairs(in);
}

void write_certificate(std::ostream& out, const Graph& g, const PairSet& f, Mode mode) {
    for (const auto& p : f) {
        out << p.u << ' ' << p.v;
        if (mode == Mode::editing) out << (g.has_edge(p.u, p.v) ? " -" : " +");
        out << '\n';
    }
}

}  // namespace cograph
