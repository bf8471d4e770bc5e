#include "cograph/branch_catalog.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <unordered_set>

namespace cograph {
namespace {

constexpr double kTieTolerance = 1e-9;
constexpr int kMaxHostVertices = 8;

SmallGraph to_small_host(const Graph& h) {
    if (h.vertex_count() > kMaxHostVertices)
        throw std::invalid_argument("branch catalog host graphs are limited to 8 vertices");
    return to_small(h);
}

std::vector<int> candidate_slots(const SmallGraph& s, Mode mode) {
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
    return slots;
}

void sort_masks(std::vector<std::uint64_t>& masks) {
    std::sort(masks.begin(), masks.end(), [](std::uint64_t x, std::uint64_t y) {
        const int px = std::popcount(x), py = std::popcount(y);
        return px != py ? px < py : x < y;
    });
}

// Sweep of the whole pair-subset lattice in Gray-code order, keeping the
// count of P4-inducing 4-subsets incrementally; one bit per subset records
// whether it is a modification set, then minimality falls out of the
// immediate-predecessor lookups.
std::vector<std::uint64_t> lattice_minimal_sets(const SmallGraph& s,
                                                const std::vector<int>& slots) {
    const int p = static_cast<int>(slots.size());
    const auto subs = four_subset_slots(s.n);

    std::array<int, 64> universe_of{};
    universe_of.fill(-1);
    for (int i = 0; i < p; ++i) universe_of[slots[i]] = i;
    std::vector<std::vector<int>> touched(p);
    for (int si = 0; si < static_cast<int>(subs.size()); ++si)
        for (int k = 0; k < 6; ++k) {
            const int u = universe_of[subs[si][k]];
            if (u >= 0) touched[u].push_back(si);
        }

    std::uint64_t cur = s.mask;
    const auto local6 = [&](int si) {
        int m = 0;
        for (int k = 0; k < 6; ++k) m |= static_cast<int>(cur >> subs[si][k] & 1) << k;
        return m;
    };
    std::vector<char> flags(subs.size());
    int p4_count = 0;
    for (int si = 0; si < static_cast<int>(subs.size()); ++si) {
        flags[si] = is_p4_pattern(local6(si));
        p4_count += flags[si];
    }

    std::vector<bool> is_mod(std::size_t{1} << p);
    is_mod[0] = (p4_count == 0);
    std::uint64_t gray = 0;
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << p); ++i) {
        const int bit = std::countr_zero(i);
        gray ^= std::uint64_t{1} << bit;
        cur ^= std::uint64_t{1} << slots[bit];
        for (int si : touched[bit]) {
            const char f = is_p4_pattern(local6(si));
            p4_count += f - flags[si];
            flags[si] = f;
        }
        is_mod[gray] = (p4_count == 0);
    }

    std::vector<std::uint64_t> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << p); ++m) {
        if (!is_mod[m]) continue;
        bool minimal = true;
        for (std::uint64_t rest = m; rest && minimal; rest &= rest - 1)
            if (is_mod[m ^ (rest & -rest)]) minimal = false;
        if (!minimal) continue;
        std::uint64_t f = 0;
        for (std::uint64_t rest = m; rest; rest &= rest - 1)
            f |= std::uint64_t{1} << slots[std::countr_zero(rest)];
        out.push_back(f);
    }
    sort_masks(out);
    return out;
}

// Output-sensitive path for universes past the lattice budget: branch on
// the pairs that can fix the first induced P4; every minimal set must touch
// one of them, so the leaves cover the whole family. Non-minimal leaves are
// filtered. Returns nullopt when the state space exceeds the cap (dense
// inputs), in which case the caller sweeps the full lattice instead.
std::optional<std::vector<std::uint64_t>> branching_minimal_sets(const SmallGraph& s,
                                                                 Mode mode) {
    constexpr std::size_t kStateCap = 1u << 21;
    std::vector<std::uint64_t> leaves;
    std::unordered_set<std::uint64_t> visited{0};
    std::vector<std::uint64_t> stack{0};

    while (!stack.empty()) {
        const std::uint64_t f = stack.back();
        stack.pop_back();
        const SmallGraph cur{s.n, s.mask ^ f};
        const auto p4 = small_first_p4(cur);
        if (!p4) {
            leaves.push_back(f);
            continue;
        }
        const auto& [a, b, c, d] = *p4;
        int slots[6];
        int count = 0;
        if (mode == Mode::deletion) {
            slots[count++] = SmallGraph::pair_slot(s.n, a, b);
            slots[count++] = SmallGraph::pair_slot(s.n, b, c);
            slots[count++] = SmallGraph::pair_slot(s.n, c, d);
        } else {
            const int vs[4] = {a, b, c, d};
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) slots[count++] = SmallGraph::pair_slot(s.n, vs[i], vs[j]);
        }
        for (int i = 0; i < count; ++i) {
            const std::uint64_t bit = std::uint64_t{1} << slots[i];
            if (f & bit) continue;  // a pair is never touched twice
            const std::uint64_t nf = f | bit;
            if (!visited.insert(nf).second) continue;
            if (visited.size() > kStateCap) return std::nullopt;
            bool dominated = false;
            for (std::uint64_t leaf : leaves) {
                if ((leaf & nf) == leaf && leaf != nf) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) stack.push_back(nf);
        }
    }

    sort_masks(leaves);
    std::vector<std::uint64_t> minimal;
    for (std::uint64_t f : leaves) {
        bool keep = true;
        for (std::uint64_t m : minimal) {
            if ((m & f) == m) {
                keep = false;
                break;
            }
        }
        if (keep) minimal.push_back(f);
    }
    return minimal;
}

// Lattice budget: up to 24 pair slots the full sweep is fast. Larger
// universes (8-vertex editing) first try the output-sensitive branching
// enumeration, which handles the sparse shapes coming from the rules; dense
// inputs trip its state cap and take the full sweep after all.
constexpr int kLatticeBudgetBits = 24;

std::vector<std::uint64_t> enumerate_minimal_sets(const SmallGraph& s, Mode mode) {
    const auto slots = candidate_slots(s, mode);
    if (static_cast<int>(slots.size()) <= kLatticeBudgetBits)
        return lattice_minimal_sets(s, slots);
    if (auto fast = branching_minimal_sets(s, mode)) return std::move(*fast);
    return lattice_minimal_sets(s, slots);
}

std::uint64_t map_mask(std::uint64_t mask, int n, const std::array<std::uint8_t, 8>& perm) {
    std::uint64_t out = 0;
    while (mask) {
        const int slot = std::countr_zero(mask);
        const auto p = slot_to_pair(n, slot);
        out |= std::uint64_t{1} << SmallGraph::pair_slot(n, perm[p.u], perm[p.v]);
        mask &= mask - 1;
    }
    return out;
}

std::uint64_t unmap_mask(std::uint64_t mask, int n, const std::array<std::uint8_t, 8>& perm) {
    std::array<std::uint8_t, 8> inv{};
    for (int i = 0; i < n; ++i) inv[perm[i]] = static_cast<std::uint8_t>(i);
    return map_mask(mask, n, inv);
}

// Family of s in its own labeling, via the cache when one is given.
std::vector<std::uint64_t> family_for(const SmallGraph& s, Mode mode, CatalogCache* cache) {
    if (!cache) return enumerate_minimal_sets(s, mode);
    const auto form = canonical_form(s);
    if (auto hit = cache->find(form.code, mode)) {
        std::vector<std::uint64_t> own;
        own.reserve(hit->size());
        for (std::uint64_t m : *hit) own.push_back(unmap_mask(m, s.n, form.perm));
        std::sort(own.begin(), own.end(), [](std::uint64_t x, std::uint64_t y) {
            const int px = std::popcount(x), py = std::popcount(y);
            return px != py ? px < py : x < y;
        });
        return own;
    }
    auto own = enumerate_minimal_sets(s, mode);
    CatalogCache::Family canon;
    canon.reserve(own.size());
    for (std::uint64_t m : own) canon.push_back(map_mask(m, s.n, form.perm));
    std::sort(canon.begin(), canon.end());
    cache->insert(form.code, mode, std::move(canon));
    return own;
}

std::vector<PairSet> masks_to_pairsets(const std::vector<std::uint64_t>& masks, int n,
                                       const std::vector<Vertex>& to_host) {
    std::vector<PairSet> out;
    out.reserve(masks.size());
    for (std::uint64_t m : masks) {
        PairSet f;
        std::uint64_t rest = m;
        while (rest) {
            const int slot = std::countr_zero(rest);
            const auto p = slot_to_pair(n, slot);
            f.add(to_host[p.u], to_host[p.v]);
            rest &= rest - 1;
        }
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), [](const PairSet& x, const PairSet& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    return out;
}

SmallGraph induced_small(const SmallGraph& s, std::uint64_t vertex_mask,
                         std::vector<Vertex>& verts) {
    verts.clear();
    for (int v = 0; v < s.n; ++v)
        if (vertex_mask >> v & 1) verts.push_back(v);
    SmallGraph sub{static_cast<int>(verts.size()), 0};
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (s.has_edge(verts[i], verts[j]))
                sub.mask |= std::uint64_t{1}
                            << SmallGraph::pair_slot(sub.n, static_cast<int>(i), static_cast<int>(j));
    return sub;
}

BranchCatalog make_catalog(const Graph& h, Mode mode, const std::vector<Vertex>& chosen,
                           const SmallGraph& sub, CatalogCache* cache) {
    BranchCatalog cat;
    cat.host = h;
    cat.mode = mode;
    cat.chosen_subgraph = chosen;
    const auto family = family_for(sub, mode, cache);
    cat.options = masks_to_pairsets(family, sub.n, chosen);
    for (const auto& f : cat.options) cat.branch_vector.push_back(static_cast<int>(f.size()));
    std::sort(cat.branch_vector.begin(), cat.branch_vector.end());
    cat.number = branching_number(cat.branch_vector);
    return cat;
}

}  // namespace

double branching_number(const std::vector<int>& branch_vector) {
    if (branch_vector.empty()) throw std::invalid_argument("empty branching vector");
    for (int b : branch_vector)
        if (b <= 0) throw std::invalid_argument("branching vector entries must be positive");
    if (branch_vector.size() == 1) return 1.0;

    const auto value = [&](double t) {
        double sum = 0.0;
        for (int b : branch_vector) sum += std::pow(t, -b);
        return sum - 1.0;
    };
    double lo = 1.0, hi = static_cast<double>(branch_vector.size());
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (value(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<PairSet> minimal_deletion_sets(const Graph& h) {
    const auto s = to_small_host(h);
    std::vector<Vertex> identity(s.n);
    for (int i = 0; i < s.n; ++i) identity[i] = i;
    return masks_to_pairsets(enumerate_minimal_sets(s, Mode::deletion), s.n, identity);
}

std::vector<PairSet> minimal_editing_sets(const Graph& h) {
    const auto s = to_small_host(h);
    std::vector<Vertex> identity(s.n);
    for (int i = 0; i < s.n; ++i) identity[i] = i;
    return masks_to_pairsets(enumerate_minimal_sets(s, Mode::editing), s.n, identity);
}

std::shared_ptr<const CatalogCache::Family> CatalogCache::find(CanonicalCode code,
                                                               Mode mode) const {
    std::lock_guard lock(mu_);
    const auto it = map_.find(code.value << 1 | (mode == Mode::editing));
    return it == map_.end() ? nullptr : it->second;
}

std::shared_ptr<const CatalogCache::Family> CatalogCache::insert(CanonicalCode code, Mode mode,
                                                                 Family family) {
    auto value = std::make_shared<const Family>(std::move(family));
    std::lock_guard lock(mu_);
    const auto [it, inserted] = map_.emplace(code.value << 1 | (mode == Mode::editing), value);
    return it->second;  // first writer wins; values are idempotent
}

void CatalogCache::clear() {
    std::lock_guard lock(mu_);
    map_.clear();
}

std::size_t CatalogCache::size() const {
    std::lock_guard lock(mu_);
    return map_.size();
}

CatalogCache& global_catalog_cache() {
    static CatalogCache cache;
    return cache;
}

BranchCatalog fmin(const Graph& h, Mode mode, CatalogCache* cache) {
    const auto s = to_small_host(h);
    if (!small_first_p4(s)) throw std::invalid_argument("fmin host contains no induced P4");

    std::vector<Vertex> verts, best_verts;
    SmallGraph best_sub;
    double best_number = 0.0;
    bool have_best = false;

    for (std::uint64_t vm = 0; vm < (std::uint64_t{1} << s.n); ++vm) {
        if (std::popcount(vm) < 4) continue;
        const SmallGraph sub = induced_small(s, vm, verts);
        if (!small_first_p4(sub)) continue;
        const auto family = family_for(sub, mode, cache);
        std::vector<int> vec;
        vec.reserve(family.size());
        for (std::uint64_t m : family) vec.push_back(std::popcount(m));
        std::sort(vec.begin(), vec.end());
        const double num = branching_number(vec);

        bool better = false;
        if (!have_best || num < best_number - kTieTolerance) {
            better = true;
        } else if (num < best_number + kTieTolerance) {
            if (verts.size() > best_verts.size())
                better = true;
            else if (verts.size() == best_verts.size() && verts < best_verts)
                better = true;
        }
        if (better) {
            have_best = true;
            best_number = num;
            best_verts = verts;
            best_sub = sub;
        }
    }
    return make_catalog(h, mode, best_verts, best_sub, cache);
}

BranchCatalog whole_graph_catalog(const Graph& h, Mode mode, CatalogCache* cache) {
    const auto s = to_small_host(h);
    std::vector<Vertex> all(s.n);
    for (int i = 0; i < s.n; ++i) all[i] = i;
    return make_catalog(h, mode, all, s, cache);
}

}  // namespace cograph
