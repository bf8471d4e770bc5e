#include "cograph/graph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace cograph {

const char* to_string(Mode mode) {
    return mode == Mode::deletion ? "deletion" : "editing";
}

VertexPair::VertexPair(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {
    if (a == b) throw std::invalid_argument("vertex pair with equal endpoints");
    if (a < 0 || b < 0) throw std::invalid_argument("negative vertex id in pair");
}

PairSet::PairSet(std::vector<VertexPair> pairs) : pairs_(std::move(pairs)) { normalize(); }

PairSet::PairSet(std::initializer_list<std::pair<Vertex, Vertex>> pairs) {
    pairs_.reserve(pairs.size());
    for (const auto& [u, v] : pairs) pairs_.emplace_back(u, v);
    normalize();
}

void PairSet::normalize() {
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

void PairSet::add(Vertex u, Vertex v) {
    VertexPair p(u, v);
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p);
    if (it != pairs_.end() && *it == p) return;
    pairs_.insert(it, p);
}

bool PairSet::contains(Vertex u, Vertex v) const {
    return std::binary_search(pairs_.begin(), pairs_.end(), VertexPair(u, v));
}

bool PairSet::subset_of(const PairSet& other) const {
    return std::includes(other.pairs_.begin(), other.pairs_.end(), pairs_.begin(), pairs_.end());
}

Vertex PairSet::max_vertex() const {
    Vertex m = -1;
    for (const auto& p : pairs_) m = std::max(m, p.v);
    return m;
}

Graph Graph::from_edges(int n, const PairSet& edges) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    Graph g;
    g.n_ = n;
    g.words_ = (n + 63) / 64;
    g.bits_.assign(static_cast<std::size_t>(n) * g.words_, 0);
    for (const auto& p : edges) {
        if (p.v >= n) {
            throw std::invalid_argument("edge endpoint " + std::to_string(p.v) +
                                        " out of range for n=" + std::to_string(n));
        }
        g.set_edge(p.u, p.v);
    }
    g.edge_count_ = edges.size();
    return g;
}

Graph Graph::from_edges(int n, std::initializer_list<std::pair<Vertex, Vertex>> edges) {
    return from_edges(n, PairSet(edges));
}

void Graph::check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("vertex id out of range");
}

void Graph::set_edge(Vertex u, Vertex v) {
    bits_[static_cast<std::size_t>(u) * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
    bits_[static_cast<std::size_t>(v) * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
}

void Graph::clear_edge(Vertex u, Vertex v) {
    bits_[static_cast<std::size_t>(u) * words_ + v / 64] &= ~(std::uint64_t{1} << (v % 64));
    bits_[static_cast<std::size_t>(v) * words_ + u / 64] &= ~(std::uint64_t{1} << (u % 64));
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) return false;
    return bits_[static_cast<std::size_t>(u) * words_ + v / 64] >> (v % 64) & 1;
}

int Graph::degree(Vertex v) const {
    check_vertex(v);
    int d = 0;
    for (auto w : row(v)) d += std::popcount(w);
    return d;
}

std::vector<Vertex> Graph::neighbors(Vertex v) const {
    check_vertex(v);
    std::vector<Vertex> out;
    auto r = row(v);
    for (int w = 0; w < words_; ++w) {
        std::uint64_t bitsw = r[w];
        while (bitsw) {
            int b = std::countr_zero(bitsw);
            out.push_back(w * 64 + b);
            bitsw &= bitsw - 1;
        }
    }
    return out;
}

PairSet Graph::edges() const {
    std::vector<VertexPair> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : neighbors(u))
            if (v > u) out.emplace_back(u, v);
    return PairSet(std::move(out));
}

std::span<const std::uint64_t> Graph::row(Vertex v) const {
    return {bits_.data() + static_cast<std::size_t>(v) * words_, static_cast<std::size_t>(words_)};
}

Graph Graph::complement() const {
    Graph g;
    g.n_ = n_;
    g.words_ = words_;
    g.bits_.assign(bits_.size(), 0);
    for (Vertex v = 0; v < n_; ++v) {
        auto src = row(v);
        auto* dst = g.bits_.data() + static_cast<std::size_t>(v) * words_;
        for (int w = 0; w < words_; ++w) dst[w] = ~src[w];
        // mask out self loop and bits past n
        dst[v / 64] &= ~(std::uint64_t{1} << (v % 64));
        if (n_ % 64 != 0) dst[words_ - 1] &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }
    g.edge_count_ = static_cast<std::size_t>(n_) * (n_ - 1) / 2 - edge_count_;
    return g;
}

std::pair<Graph, std::vector<Vertex>> Graph::induced(std::span<const Vertex> x) const {
    std::vector<Vertex> map(x.begin(), x.end());
    std::sort(map.begin(), map.end());
    map.erase(std::unique(map.begin(), map.end()), map.end());
    for (Vertex v : map) check_vertex(v);

    const int m = static_cast<int>(map.size());
    PairSet es;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (has_edge(map[i], map[j])) es.add(i, j);
    return {from_edges(m, es), std::move(map)};
}

Graph Graph::apply(const PairSet& f, Mode mode) const {
    Graph g = *this;
    for (const auto& p : f) {
        check_vertex(p.u);
        check_vertex(p.v);
        if (has_edge(p.u, p.v)) {
            g.clear_edge(p.u, p.v);
            --g.edge_count_;
        } else {
            if (mode == Mode::deletion)
                throw std::invalid_argument("deletion set contains a non-edge");
            g.set_edge(p.u, p.v);
            ++g.edge_count_;
        }
    }
    return g;
}

std::vector<std::vector<Vertex>> Graph::components() const {
    std::vector<std::vector<Vertex>> out;
    std::vector<char> seen(n_, 0);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n_; ++s) {
        if (seen[s]) continue;
        std::vector<Vertex> comp;
        stack.push_back(s);
        seen[s] = 1;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (Vertex w : neighbors(v)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;  // starts are ascending, so order is by smallest member
}

Graph path_graph(int n) {
    PairSet es;
    for (int i = 0; i + 1 < n; ++i) es.add(i, i + 1);
    return Graph::from_edges(n, es);
}

Graph cycle_graph(int n) {
    PairSet es;
    for (int i = 0; i + 1 < n; ++i) es.add(i, i + 1);
    if (n >= 3) es.add(n - 1, 0);
    return Graph::from_edges(n, es);
}

Graph complete_graph(int n) {
    PairSet es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.add(i, j);
    return Graph::from_edges(n, es);
}

Graph empty_graph(int n) { return Graph::from_edges(n, PairSet{}); }

Graph disjoint_union(const Graph& a, const Graph& b) {
    PairSet es = a.edges();
    const int na = a.vertex_count();
    for (const auto& p : b.edges()) es.add(p.u + na, p.v + na);
    return Graph::from_edges(na + b.vertex_count(), es);
}

}  // namespace cograph
