#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cograph/graph.hpp"

namespace cograph {

/// Induced path a-b-c-d: edges ab, bc, cd present, ac, ad, bd absent.
/// Normalized with a < d.
struct P4Witness {
    Vertex a, b, c, d;

    std::array<Vertex, 4> path() const { return {a, b, c, d}; }
    std::vector<Vertex> vertex_set() const;  // sorted

    friend bool operator==(const P4Witness&, const P4Witness&) = default;
};

/// Classification of the remaining vertices around a fixed induced P4 on A:
/// i_set has no neighbor in A, t_set all four, p_mid exactly the two internal
/// path vertices, p_other the rest of the vertices with 1..3 neighbors in A.
struct P4Context {
    P4Witness witness;
    std::vector<Vertex> i_set;
    std::vector<Vertex> t_set;
    std::vector<Vertex> p_mid;
    std::vector<Vertex> p_other;

    std::vector<Vertex> p_all() const;  // p_mid + p_other, sorted
};

/// Lexicographically smallest witness tuple (a,b,c,d) with a < d, or nullopt
/// when the graph is a cograph.
std::optional<P4Witness> find_induced_p4(const Graph& g);

bool is_cograph(const Graph& g);

bool is_valid_p4(const Graph& g, const P4Witness& w);

P4Context p4_context(const Graph& g, const P4Witness& w);

/// All induced P4s, each normalized, in lexicographic tuple order.
std::vector<P4Witness> all_induced_p4s(const Graph& g);

/// Witness maximizing |P(A)| = |p_mid| + |p_other|, ties broken by smallest
/// tuple. Throws std::invalid_argument when the graph is a cograph.
P4Witness choose_p4_max_p(const Graph& g);

/// Every 5-vertex subset induces at most one P4.
bool is_p4_sparse(const Graph& g);

}  // namespace cograph
