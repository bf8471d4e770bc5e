#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace cograph {

using Vertex = int;

enum class Mode { deletion, editing };

const char* to_string(Mode mode);

/// Unordered vertex pair, stored normalized with u < v.
struct VertexPair {
    Vertex u;
    Vertex v;

    VertexPair(Vertex a, Vertex b);

    friend bool operator==(const VertexPair&, const VertexPair&) = default;
    friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

/// Set of unordered vertex pairs. Holds the edges of a modification set
/// (F in G-F / G^F) or of a graph. Sorted, duplicate free.
class PairSet {
public:
    PairSet() = default;
    explicit PairSet(std::vector<VertexPair> pairs);
    PairSet(std::initializer_list<std::pair<Vertex, Vertex>> pairs);

    void add(Vertex u, Vertex v);

    bool contains(Vertex u, Vertex v) const;
    bool subset_of(const PairSet& other) const;
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }
    const std::vector<VertexPair>& pairs() const { return pairs_; }

    auto begin() const { return pairs_.begin(); }
    auto end() const { return pairs_.end(); }

    /// Largest vertex id referenced, or -1 when empty.
    Vertex max_vertex() const;

    friend bool operator==(const PairSet&, const PairSet&) = default;
    friend auto operator<=>(const PairSet&, const PairSet&) = default;

private:
    std::vector<VertexPair> pairs_;  // sorted, unique
    void normalize();
};

/// Immutable simple undirected graph on vertices 0..n-1 with bit-set
/// adjacency rows. All modifying operations return a new graph.
class Graph {
public:
    Graph() = default;

    /// Builds a graph with exactly the given edges. Duplicate pairs are
    /// tolerated; an endpoint >= n throws std::invalid_argument.
    static Graph from_edges(int n, const PairSet& edges);
    static Graph from_edges(int n, std::initializer_list<std::pair<Vertex, Vertex>> edges);

    int vertex_count() const { return n_; }
    std::size_t edge_count() const { return edge_count_; }

    bool has_edge(Vertex u, Vertex v) const;
    int degree(Vertex v) const;
    std::vector<Vertex> neighbors(Vertex v) const;
    PairSet edges() const;

    /// Raw adjacency row of v, n bits packed in 64-bit words.
    std::span<const std::uint64_t> row(Vertex v) const;
    int words_per_row() const { return words_; }

    Graph complement() const;

    /// Induced subgraph on X together with the relabel map: entry i of the
    /// returned vector is the original id of new vertex i (X sorted
    /// ascending, so the map is deterministic).
    std::pair<Graph, std::vector<Vertex>> induced(std::span<const Vertex> x) const;

    /// G-F (deletion; every pair of F must be an edge) or G^F (editing,
    /// symmetric difference).
    Graph apply(const PairSet& f, Mode mode) const;

    /// Maximal connected vertex sets, each sorted, ordered by smallest member.
    std::vector<std::vector<Vertex>> components() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    int n_ = 0;
    int words_ = 0;
    std::size_t edge_count_ = 0;
    std::vector<std::uint64_t> bits_;  // row-major, words_ per vertex

    void set_edge(Vertex u, Vertex v);
    void clear_edge(Vertex u, Vertex v);
    void check_vertex(Vertex v) const;
};

/// Convenience builders used across tests and tools.
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph empty_graph(int n);

/// Disjoint union; vertices of b are shifted past those of a.
Graph disjoint_union(const Graph& a, const Graph& b);

}  // namespace cograph
