#include "cograph/small_graph.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace cograph {
namespace {

// Local pair order inside a 4-subset: (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
constexpr int kLocalSlot[4][4] = {
    {-1, 0, 1, 2},
    {0, -1, 3, 4},
    {1, 3, -1, 5},
    {2, 4, 5, -1},
};

struct P4Table {
    std::array<std::uint8_t, 64> is_p4{};
    std::array<std::array<std::uint8_t, 4>, 64> order{};

    P4Table() {
        int perm[4] = {0, 1, 2, 3};
        do {
            if (perm[0] > perm[3]) continue;  // normalize path direction
            int m = (1 << kLocalSlot[perm[0]][perm[1]]) |
                    (1 << kLocalSlot[perm[1]][perm[2]]) |
                    (1 << kLocalSlot[perm[2]][perm[3]]);
            is_p4[m] = 1;
            for (int i = 0; i < 4; ++i) order[m][i] = static_cast<std::uint8_t>(perm[i]);
        } while (std::next_permutation(perm, perm + 4));
    }
};

const P4Table& p4_table() {
    static const P4Table table;
    return table;
}

// All 4-subsets of [0,n) with, per subset, the 6 global pair slots.
struct SubsetTable {
    struct Entry {
        std::array<std::uint8_t, 4> verts;
        std::array<std::uint8_t, 6> slots;
    };
    std::vector<Entry> entries;
    std::vector<std::array<std::uint8_t, 6>> slot_rows;

    explicit SubsetTable(int n) {
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c)
                    for (int d = c + 1; d < n; ++d) {
                        Entry e;
                        e.verts = {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                                   static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)};
                        int v[4] = {a, b, c, d};
                        int k = 0;
                        for (int i = 0; i < 4; ++i)
                            for (int j = i + 1; j < 4; ++j)
                                e.slots[k++] =
                                    static_cast<std::uint8_t>(SmallGraph::pair_slot(n, v[i], v[j]));
                        entries.push_back(e);
                        slot_rows.push_back(e.slots);
                    }
    }
};

const SubsetTable& subset_table(int n) {
    static const std::array<SubsetTable, SmallGraph::kMaxVertices + 1> tables = {
        SubsetTable(0), SubsetTable(1), SubsetTable(2),  SubsetTable(3),
        SubsetTable(4), SubsetTable(5), SubsetTable(6),  SubsetTable(7),
        SubsetTable(8), SubsetTable(9), SubsetTable(10), SubsetTable(11)};
    return tables[n];
}

int local_mask(std::uint64_t mask, const std::array<std::uint8_t, 6>& slots) {
    int m = 0;
    for (int k = 0; k < 6; ++k) m |= static_cast<int>(mask >> slots[k] & 1) << k;
    return m;
}

// All permutations of [0,n), n <= 8, with per-permutation pair-slot remaps.
struct PermTable {
    struct Entry {
        std::array<std::uint8_t, 8> perm;
        std::array<std::uint8_t, 28> slot_map;
    };
    std::vector<Entry> entries;

    explicit PermTable(int n) {
        std::array<int, 8> p{};
        for (int i = 0; i < n; ++i) p[i] = i;
        do {
            Entry e{};
            for (int i = 0; i < n; ++i) e.perm[i] = static_cast<std::uint8_t>(p[i]);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    e.slot_map[SmallGraph::pair_slot(n, i, j)] =
                        static_cast<std::uint8_t>(SmallGraph::pair_slot(n, p[i], p[j]));
            entries.push_back(e);
        } while (std::next_permutation(p.begin(), p.begin() + n));
    }
};

const PermTable& perm_table(int n) {
    static const std::array<PermTable, 9> tables = {PermTable(0), PermTable(1), PermTable(2),
                                                    PermTable(3), PermTable(4), PermTable(5),
                                                    PermTable(6), PermTable(7), PermTable(8)};
    return tables[n];
}

std::uint64_t apply_perm(std::uint64_t mask, const PermTable::Entry& e) {
    std::uint64_t out = 0;
    while (mask) {
        int slot = std::countr_zero(mask);
        out |= std::uint64_t{1} << e.slot_map[slot];
        mask &= mask - 1;
    }
    return out;
}

struct CodeCache {
    std::mutex mu;
    std::unordered_map<std::uint64_t, CanonicalForm> map;
};

CodeCache& code_cache() {
    static CodeCache cache;
    return cache;
}

}  // namespace

int SmallGraph::pair_slot(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

int SmallGraph::edge_count() const { return std::popcount(mask); }

SmallGraph to_small(const Graph& g) {
    const int n = g.vertex_count();
    if (n > SmallGraph::kMaxVertices)
        throw std::invalid_argument("graph too large for small-graph machinery");
    SmallGraph s{n, 0};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (g.has_edge(i, j)) s.mask |= std::uint64_t{1} << SmallGraph::pair_slot(n, i, j);
    return s;
}

Graph to_graph(const SmallGraph& g) {
    PairSet es;
    std::uint64_t m = g.mask;
    while (m) {
        int slot = std::countr_zero(m);
        auto p = slot_to_pair(g.n, slot);
        es.add(p.u, p.v);
        m &= m - 1;
    }
    return Graph::from_edges(g.n, es);
}

VertexPair slot_to_pair(int n, int slot) {
    for (int i = 0; i < n; ++i) {
        int rowlen = n - i - 1;
        if (slot < rowlen) return VertexPair(i, i + 1 + slot);
        slot -= rowlen;
    }
    throw std::invalid_argument("pair slot out of range");
}

bool small_is_cograph(const SmallGraph& g) {
    if (g.n < 4) return true;
    const auto& table = p4_table();
    for (const auto& e : subset_table(g.n).entries)
        if (table.is_p4[local_mask(g.mask, e.slots)]) return false;
    return true;
}

std::span<const std::array<std::uint8_t, 6>> four_subset_slots(int n) {
    const auto& rows = subset_table(n).slot_rows;
    return {rows.data(), rows.size()};
}

bool is_p4_pattern(int local_mask_bits) { return p4_table().is_p4[local_mask_bits & 63]; }

std::optional<std::array<int, 4>> small_first_p4(const SmallGraph& g) {
    if (g.n < 4) return std::nullopt;
    const auto& table = p4_table();
    for (const auto& e : subset_table(g.n).entries) {
        int m = local_mask(g.mask, e.slots);
        if (table.is_p4[m]) {
            const auto& ord = table.order[m];
            return std::array<int, 4>{e.verts[ord[0]], e.verts[ord[1]], e.verts[ord[2]],
                                      e.verts[ord[3]]};
        }
    }
    return std::nullopt;
}

int small_p4_count(const SmallGraph& g) {
    if (g.n < 4) return 0;
    const auto& table = p4_table();
    int count = 0;
    for (const auto& e : subset_table(g.n).entries)
        count += table.is_p4[local_mask(g.mask, e.slots)];
    return count;
}

CanonicalForm canonical_form(const SmallGraph& g) {
    if (g.n > 8) throw std::invalid_argument("canonical form needs n <= 8");
    const std::uint64_t key = (std::uint64_t{g.mask} << 4) | static_cast<unsigned>(g.n);
    {
        auto& cache = code_cache();
        std::lock_guard lock(cache.mu);
        auto it = cache.map.find(key);
        if (it != cache.map.end()) return it->second;
    }
    CanonicalForm best;
    std::uint64_t best_mask = ~std::uint64_t{0};
    for (const auto& e : perm_table(g.n).entries) {
        std::uint64_t m = apply_perm(g.mask, e);
        if (m < best_mask) {
            best_mask = m;
            best.perm = e.perm;
        }
    }
    best.code.value = (static_cast<std::uint64_t>(g.n) << 32) | best_mask;
    {
        auto& cache = code_cache();
        std::lock_guard lock(cache.mu);
        cache.map.emplace(key, best);
    }
    return best;
}

CanonicalCode canonical_code(const SmallGraph& g) { return canonical_form(g).code; }

CanonicalCode canonical_code(const Graph& g) {
    if (g.vertex_count() > 8) throw std::invalid_argument("canonical code needs n <= 8");
    return canonical_code(to_small(g));
}

SmallGraph canonical_graph(const CanonicalCode& code) {
    return {static_cast<int>(code.value >> 32),
            static_cast<std::uint64_t>(code.value & 0xFFFFFFFF)};
}

}  // namespace cograph
