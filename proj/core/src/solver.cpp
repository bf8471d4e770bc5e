#include "cograph/solver.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <thread>

#include "cograph/p4.hpp"

namespace cograph {
namespace {

struct SearchContext {
    Mode mode;
    const ExceptionCatalog* exceptions;
    CatalogCache* cache;
    int top_level_threads = 1;
};

std::optional<std::pair<int, PairSet>> search(const Graph& g, int cap, int depth,
                                              const SearchContext& ctx, SearchStats& stats);

// Branch on every catalog option; children are independent (pruned only by
// the budget), so parallel evaluation explores exactly the sequential tree.
std::optional<std::pair<int, PairSet>> branch(const Graph& g, const RuleMatch& match, int cap,
                                              int depth, const SearchContext& ctx,
                                              SearchStats& stats) {
    const auto& options = match.catalog.options;
    const int count = static_cast<int>(options.size());

    std::vector<std::optional<std::pair<int, PairSet>>> results(count);
    std::vector<SearchStats> child_stats(count);

    const bool parallel = depth == 0 && ctx.top_level_threads != 1 && count > 1;
    if (parallel) {
        const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        const int workers = std::min<int>(
            count, ctx.top_level_threads == 0 ? static_cast<int>(hw) : ctx.top_level_threads);
        std::atomic<int> next{0};
        auto work = [&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                const int size = static_cast<int>(options[i].size());
                if (size > cap) continue;  // options are size-sorted, kept for identical stats
                results[i] = search(g.apply(options[i], ctx.mode), cap - size, depth + 1, ctx,
                                    child_stats[i]);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    } else {
        for (int i = 0; i < count; ++i) {
            const int size = static_cast<int>(options[i].size());
            if (size > cap) break;  // ascending sizes: nothing later fits either
            results[i] = search(g.apply(options[i], ctx.mode), cap - size, depth + 1, ctx,
                                child_stats[i]);
        }
    }

    std::optional<std::pair<int, PairSet>> best;
    for (int i = 0; i < count; ++i) {
        const int size = static_cast<int>(options[i].size());
        if (size > cap) break;
        stats.merge(child_stats[i]);
        if (!results[i]) continue;
        const int total = size + results[i]->first;
        if (!best || total < best->first) {
            PairSet cert = options[i];
            for (const auto& p : results[i]->second) cert.add(p.u, p.v);
            best = std::make_pair(total, std::move(cert));
        }
    }
    return best;
}

std::optional<std::pair<int, PairSet>> search(const Graph& g, int cap, int depth,
                                              const SearchContext& ctx, SearchStats& stats) {
    if (cap < 0) return std::nullopt;
    ++stats.nodes;

    const auto parts = g.components();
    if (parts.size() >= 2) {
        int total = 0;
        PairSet cert;
        for (const auto& part : parts) {
            const auto [sub, map] = g.induced(part);
            auto r = search(sub, cap - total, depth, ctx, stats);
            if (!r) return std::nullopt;
            total += r->first;
            for (const auto& p : r->second) cert.add(map[p.u], map[p.v]);
        }
        return std::make_pair(total, std::move(cert));
    }

    if (const auto match = find_rule_application(g, ctx.mode, *ctx.exceptions, ctx.cache)) {
        ++stats.rule_fires[to_string(match->rule)];
        stats.max_depth = std::max(stats.max_depth, static_cast<std::uint64_t>(depth + 1));
        return branch(g, *match, cap, depth, ctx, stats);
    }

    const PartHandler fallthrough = [&](const Graph& part,
                                        int part_cap) -> std::optional<std::pair<int, PairSet>> {
        return search(part, part_cap, depth, ctx, stats);
    };
    return solve_by_decomposition(g, ctx.mode, cap, fallthrough);
}

SolveResult run(const Graph& g, int k, Mode mode, const SolveOptions& options) {
    SearchContext ctx{mode, options.exceptions ? options.exceptions : &ExceptionCatalog::builtin(),
                      options.cache, options.threads};
    SolveResult result;
    auto r = search(g, k, 0, ctx, result.stats);
    if (r) {
        result.feasible = true;
        result.k_used = r->first;
        result.certificate = std::move(r->second);
        if (static_cast<int>(result.certificate.size()) != result.k_used ||
            !verify_certificate(g, result.certificate, mode))
            throw std::logic_error("solver produced an invalid certificate");
    }
    return result;
}

}  // namespace

void SearchStats::merge(const SearchStats& other) {
    nodes += other.nodes;
    max_depth = std::max(max_depth, other.max_depth);
    for (const auto& [rule, count] : other.rule_fires) rule_fires[rule] += count;
}

SolveResult solve(const Graph& g, int k, Mode mode, const SolveOptions& options) {
    if (k < 0) throw std::invalid_argument("budget k must be non-negative");
    return run(g, k, mode, options);
}

SolveResult solve_min(const Graph& g, Mode mode, const SolveOptions& options) {
    const int upper = mode == Mode::deletion
                          ? static_cast<int>(g.edge_count())
                          : g.vertex_count() * (g.vertex_count() - 1) / 2;
    SearchStats total;
    for (int k = 0; k <= upper; ++k) {
        SolveResult r = run(g, k, mode, options);
        total.merge(r.stats);
        if (r.feasible) {
            r.stats = total;
            return r;
        }
    }
    throw std::logic_error("minimum search exceeded the trivial upper bound");
}

}  // namespace cograph
