#include "cograph/oracle.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cograph/p4.hpp"
#include "cograph/small_graph.hpp"

namespace cograph {
namespace {

PairSet mask_to_pairs(std::uint64_t mask, int n) {
    PairSet out;
    while (mask) {
        const int slot = std::countr_zero(mask);
        const auto p = slot_to_pair(n, slot);
        out.add(p.u, p.v);
        mask &= mask - 1;
    }
    return out;
}

// First size-s subset of slots (ascending combination order) whose
// application yields a cograph.
std::optional<std::uint64_t> first_fixing_subset(const SmallGraph& s,
                                                 const std::vector<int>& slots, int size) {
    const int m = static_cast<int>(slots.size());
    if (size > m) return std::nullopt;
    if (size == 0)
        return small_is_cograph(s) ? std::optional<std::uint64_t>(0) : std::nullopt;
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
        std::uint64_t f = 0;
        for (int i : idx) f |= std::uint64_t{1} << slots[i];
        if (small_is_cograph({s.n, s.mask ^ f})) return f;
        int i = size - 1;
        while (i >= 0 && idx[i] == m - size + i) --i;
        if (i < 0) return std::nullopt;
        ++idx[i];
        for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::pair<int, PairSet> brute_force_small(const SmallGraph& s, Mode mode) {
    std::vector<int> slots;
    if (mode == Mode::deletion) {
        std::uint64_t m = s.mask;
        while (m) {
            slots.push_back(std::countr_zero(m));
            m &= m - 1;
        }
    } else {
        for (int i = 0; i < SmallGraph::pair_count(s.n); ++i) slots.push_back(i);
    }
    for (int size = 0; size <= static_cast<int>(slots.size()); ++size)
        if (auto f = first_fixing_subset(s, slots, size)) return {size, mask_to_pairs(*f, s.n)};
    throw std::logic_error("subset enumeration exhausted without reaching a cograph");
}

// Fallback for deletion instances that fit the edge budget but not the
// small-graph width (only possible with many isolated vertices).
std::pair<int, PairSet> brute_force_general_deletion(const Graph& g) {
    const auto edge_list = g.edges().pairs();
    const int m = static_cast<int>(edge_list.size());
    for (int size = 0; size <= m; ++size) {
        std::vector<int> idx(size);
        for (int i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            PairSet f;
            for (int i : idx) f.add(edge_list[i].u, edge_list[i].v);
            if (is_cograph(g.apply(f, Mode::deletion))) return {size, f};
            int i = size - 1;
            while (i >= 0 && idx[i] == m - size + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    throw std::logic_error("subset enumeration exhausted without reaching a cograph");
}

// Depth-bounded search branching on the pairs of the first induced P4;
// never touches a pair twice along a path.
bool simple_branch_small(const SmallGraph& s, Mode mode, std::uint64_t touched, int budget,
                         std::uint64_t& out) {
    const auto p4 = small_first_p4(s);
    if (!p4) {
        out = 0;
        return true;
    }
    if (budget == 0) return false;
    const auto& [a, b, c, d] = *p4;
    int slots[6];
    int count = 0;
    slots[count++] = SmallGraph::pair_slot(s.n, a, b);
    slots[count++] = SmallGraph::pair_slot(s.n, b, c);
    slots[count++] = SmallGraph::pair_slot(s.n, c, d);
    if (mode == Mode::editing) {
        slots[count++] = SmallGraph::pair_slot(s.n, a, c);
        slots[count++] = SmallGraph::pair_slot(s.n, a, d);
        slots[count++] = SmallGraph::pair_slot(s.n, b, d);
    }
    std::sort(slots, slots + count);
    for (int i = 0; i < count; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << slots[i];
        if (touched & bit) continue;
        std::uint64_t sub;
        if (simple_branch_small({s.n, s.mask ^ bit}, mode, touched | bit, budget - 1, sub)) {
            out = sub | bit;
            return true;
        }
    }
    return false;
}

bool simple_branch_general(const Graph& g, Mode mode, const PairSet& touched, int budget,
                           PairSet& out) {
    const auto p4 = find_induced_p4(g);
    if (!p4) {
        out = PairSet{};
        return true;
    }
    if (budget == 0) return false;
    std::vector<VertexPair> pairs = {{p4->a, p4->b}, {p4->b, p4->c}, {p4->c, p4->d}};
    if (mode == Mode::editing) {
        pairs.emplace_back(p4->a, p4->c);
        pairs.emplace_back(p4->a, p4->d);
        pairs.emplace_back(p4->b, p4->d);
    }
    std::sort(pairs.begin(), pairs.end());
    for (const auto& p : pairs) {
        if (touched.contains(p.u, p.v)) continue;
        PairSet step;
        step.add(p.u, p.v);
        PairSet next_touched = touched;
        next_touched.add(p.u, p.v);
        PairSet sub;
        if (simple_branch_general(g.apply(step, mode), mode, next_touched, budget - 1, sub)) {
            sub.add(p.u, p.v);
            out = sub;
            return true;
        }
    }
    return false;
}

}  // namespace

std::pair<int, PairSet> brute_force_min(const Graph& g, Mode mode) {
    if (mode == Mode::deletion) {
        if (g.edge_count() > 20)
            throw std::invalid_argument("brute_force_min deletion budget is 20 edges");
        if (g.vertex_count() <= SmallGraph::kMaxVertices)
            return brute_force_small(to_small(g), mode);
        return brute_force_general_deletion(g);
    }
    if (g.vertex_count() > 7)
        throw std::invalid_argument("brute_force_min editing budget is 7 vertices");
    return brute_force_small(to_small(g), mode);
}

std::pair<int, PairSet> simple_branch_min(const Graph& g, Mode mode) {
    const int limit = mode == Mode::deletion
                          ? static_cast<int>(g.edge_count())
                          : g.vertex_count() * (g.vertex_count() - 1) / 2;
    if (g.vertex_count() <= SmallGraph::kMaxVertices) {
        const auto s = to_small(g);
        for (int budget = 0; budget <= limit; ++budget) {
            std::uint64_t f = 0;
            if (simple_branch_small(s, mode, 0, budget, f)) return {budget, mask_to_pairs(f, s.n)};
        }
    } else {
        for (int budget = 0; budget <= limit; ++budget) {
            PairSet cert;
            if (simple_branch_general(g, mode, PairSet{}, budget, cert)) return {budget, cert};
        }
    }
    throw std::logic_error("simple branching exhausted its budget");
}

bool verify_certificate(const Graph& g, const PairSet& f, Mode mode) {
    return is_cograph(g.apply(f, mode));
}

}  // namespace cograph
