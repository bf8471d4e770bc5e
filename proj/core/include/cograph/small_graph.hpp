#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cograph/graph.hpp"

namespace cograph {

/// Total-order key identifying an isomorphism class of graphs with at most
/// 8 vertices: vertex count in the high bits, minimum edge mask over all
/// vertex relabelings in the low bits.
struct CanonicalCode {
    std::uint64_t value = 0;
    friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
    friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

/// Compact graph on n <= 11 vertices: one bit per unordered pair.
/// Pair (i,j), i < j, sits at slot i*(2n-i-1)/2 + (j-i-1).
/// Canonical codes are only defined for n <= 8.
struct SmallGraph {
    static constexpr int kMaxVertices = 11;

    int n = 0;
    std::uint64_t mask = 0;

    static int pair_slot(int n, int i, int j);
    static int pair_count(int n) { return n * (n - 1) / 2; }

    bool has_edge(int i, int j) const { return mask >> pair_slot(n, i, j) & 1; }
    SmallGraph with_toggled(int i, int j) const {
        return {n, mask ^ (std::uint64_t{1} << pair_slot(n, i, j))};
    }
    int edge_count() const;

    friend bool operator==(const SmallGraph&, const SmallGraph&) = default;
};

SmallGraph to_small(const Graph& g);  // throws when g has > 11 vertices
Graph to_graph(const SmallGraph& g);
VertexPair slot_to_pair(int n, int slot);

bool small_is_cograph(const SmallGraph& g);

/// Pair slots of every 4-subset of [0,n), six per subset in local order
/// (01,02,03,12,13,23). Shared by the incremental P4 counters.
std::span<const std::array<std::uint8_t, 6>> four_subset_slots(int n);

/// Whether a local 6-bit adjacency pattern on four vertices is an induced P4.
bool is_p4_pattern(int local_mask);

/// First 4-subset (ascending) inducing a P4, returned in path order.
std::optional<std::array<int, 4>> small_first_p4(const SmallGraph& g);

/// Number of induced P4s.
int small_p4_count(const SmallGraph& g);

struct CanonicalForm {
    CanonicalCode code;
    std::array<std::uint8_t, 8> perm{};  // original vertex -> canonical position
};

CanonicalForm canonical_form(const SmallGraph& g);
CanonicalCode canonical_code(const SmallGraph& g);
CanonicalCode canonical_code(const Graph& g);
SmallGraph canonical_graph(const CanonicalCode& code);

}  // namespace cograph
