#include "cograph/decomposition.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "cograph/oracle.hpp"
#include "cograph/p4.hpp"

namespace cograph {
namespace {

// Shipped calibration values (q = 2..5), reproduced at first use by the
// branching oracle on the head graphs. See core/data/spider_head_costs.txt.
struct ExpectedHeadCost {
    SpiderKind kind;
    Mode mode;
    int cost[4];  // q = 2, 3, 4, 5
};
constexpr ExpectedHeadCost kExpectedHeadCosts[] = {
    {SpiderKind::thin, Mode::deletion, {1, 2, 3, 4}},
    {SpiderKind::thick, Mode::deletion, {1, 3, 6, 10}},
    {SpiderKind::thin, Mode::editing, {1, 2, 3, 4}},
    {SpiderKind::thick, Mode::editing, {1, 2, 3, 4}},
};

std::optional<SpiderPartition> recognize_thin(const Graph& g) {
    const int n = g.vertex_count();
    SpiderPartition sp;
    sp.kind = SpiderKind::thin;
    for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) == 1) sp.s.push_back(v);
    if (sp.s.size() < 2) return std::nullopt;
    for (Vertex s : sp.s) sp.k.push_back(g.neighbors(s).front());
    std::vector<Vertex> k_sorted = sp.k;
    std::sort(k_sorted.begin(), k_sorted.end());
    if (std::adjacent_find(k_sorted.begin(), k_sorted.end()) != k_sorted.end())
        return std::nullopt;  // phi must be injective
    for (Vertex v = 0; v < n; ++v) {
        if (std::binary_search(sp.s.begin(), sp.s.end(), v)) continue;
        if (std::binary_search(k_sorted.begin(), k_sorted.end(), v)) continue;
        sp.r.push_back(v);
    }
    if (!is_valid_spider_partition(g, sp)) return std::nullopt;
    return sp;
}

PairSet lift_pairs(const PairSet& f, const std::vector<Vertex>& map) {
    PairSet out;
    for (const auto& p : f) out.add(map[p.u], map[p.v]);
    return out;
}

std::pair<int, PairSet> tiny_optimum(const Graph& g, Mode mode) { return brute_force_min(g, mode); }

struct Calibration {
    std::once_flag once;
    HeadCostCalibration table;
};

Calibration& calibration_singleton() {
    static Calibration c;
    return c;
}

}  // namespace

const char* to_string(SpiderKind kind) { return kind == SpiderKind::thin ? "thin" : "thick"; }

const char* to_string(RuleFreeTag tag) {
    switch (tag) {
        case RuleFreeTag::disconnected: return "disconnected";
        case RuleFreeTag::co_disconnected: return "co-disconnected";
        case RuleFreeTag::spider: return "spider";
        case RuleFreeTag::bipartite_special: return "bipartite-special";
        case RuleFreeTag::tiny: return "tiny";
        case RuleFreeTag::not_rule_free: return "not-rule-free";
    }
    return "?";
}

bool is_valid_spider_partition(const Graph& g, const SpiderPartition& sp) {
    const int q = sp.q();
    if (q < 2 || static_cast<int>(sp.k.size()) != q) return false;
    const int n = g.vertex_count();
    if (q * 2 + static_cast<int>(sp.r.size()) != n) return false;

    std::vector<char> role(n, 0);  // 1 = s, 2 = k, 3 = r
    for (Vertex v : sp.s) {
        if (v < 0 || v >= n || role[v]) return false;
        role[v] = 1;
    }
    for (Vertex v : sp.k) {
        if (v < 0 || v >= n || role[v]) return false;
        role[v] = 2;
    }
    for (Vertex v : sp.r) {
        if (v < 0 || v >= n || role[v]) return false;
        role[v] = 3;
    }

    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j) {
            if (g.has_edge(sp.s[i], sp.s[j])) return false;  // s independent
            if (!g.has_edge(sp.k[i], sp.k[j])) return false;  // k clique
        }
    for (Vertex r : sp.r) {
        for (Vertex k : sp.k)
            if (!g.has_edge(r, k)) return false;
        for (Vertex s : sp.s)
            if (g.has_edge(r, s)) return false;
    }
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            const bool edge = g.has_edge(sp.s[i], sp.k[j]);
            const bool partner = (i == j);
            if (sp.kind == SpiderKind::thin ? edge != partner : edge == partner) return false;
        }
    return true;
}

std::optional<SpiderPartition> recognize_spider(const Graph& g) {
    if (g.vertex_count() < 4) return std::nullopt;
    if (auto thin = recognize_thin(g)) return thin;
    if (auto co_thin = recognize_thin(g.complement())) {
        // complementing swaps the roles of s and k and flips the legs
        SpiderPartition sp;
        sp.kind = SpiderKind::thick;
        sp.s = co_thin->k;
        sp.k = co_thin->s;
        sp.r = co_thin->r;
        // re-align so that sp.s ascends and k[i] is the missing partner
        std::vector<std::pair<Vertex, Vertex>> legs;
        for (int i = 0; i < sp.q(); ++i) legs.emplace_back(sp.s[i], sp.k[i]);
        std::sort(legs.begin(), legs.end());
        for (int i = 0; i < sp.q(); ++i) {
            sp.s[i] = legs[i].first;
            sp.k[i] = legs[i].second;
        }
        if (is_valid_spider_partition(g, sp)) return sp;
        return std::nullopt;
    }
    return std::nullopt;
}

Graph spider_head_graph(int q, SpiderKind kind) {
    if (q < 2) throw std::invalid_argument("spider heads need q >= 2");
    PairSet es;
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j) es.add(q + i, q + j);  // clique
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            const bool partner = (i == j);
            if (kind == SpiderKind::thin ? partner : !partner) es.add(i, q + j);
        }
    return Graph::from_edges(2 * q, es);
}

int HeadCostCalibration::cost(int q, SpiderKind kind, Mode mode) const {
    for (const auto& e : entries)
        if (e.q == q && e.kind == kind && e.mode == mode) return e.cost;
    throw std::out_of_range("no calibration entry for q=" + std::to_string(q));
}

std::string HeadCostCalibration::to_text() const {
    std::ostringstream out;
    out << "# Optimal modification costs of spider heads G[S u K], |S| = |K| = q.\n";
    out << "# Measured by the independent bounded branching oracle on the head\n";
    out << "# graphs; loaded values are re-measured and checked at first use.\n";
    out << "# columns: q kind mode cost\n";
    for (const auto& e : entries)
        out << e.q << ' ' << to_string(e.kind) << ' ' << to_string(e.mode) << ' ' << e.cost
            << '\n';
    return out.str();
}

const HeadCostCalibration& head_cost_calibration() {
    auto& c = calibration_singleton();
    std::call_once(c.once, [&] {
        for (int q = 2; q <= 5; ++q) {
            for (SpiderKind kind : {SpiderKind::thin, SpiderKind::thick}) {
                for (Mode mode : {Mode::deletion, Mode::editing}) {
                    const auto [cost, cert] = simple_branch_min(spider_head_graph(q, kind), mode);
                    for (const auto& expect : kExpectedHeadCosts) {
                        if (expect.kind == kind && expect.mode == mode &&
                            expect.cost[q - 2] != cost) {
                            throw std::logic_error(
                                "spider head calibration mismatch: q=" + std::to_string(q) + " " +
                                to_string(kind) + " " + to_string(mode) + " measured " +
                                std::to_string(cost) + " expected " +
                                std::to_string(expect.cost[q - 2]));
                        }
                    }
                    c.table.entries.push_back({q, kind, mode, cost});
                }
            }
        }
    });
    return c.table;
}

int spider_head_cost(int q, SpiderKind kind, Mode mode) {
    if (q < 2) throw std::invalid_argument("spider heads need q >= 2");
    const auto& table = head_cost_calibration();
    if (q <= 5) return table.cost(q, kind, mode);
    // fit the closed form on the calibrated range
    const auto linear = [](int qq) { return qq - 1; };
    const auto quadratic = [](int qq) { return qq * (qq - 1) / 2; };
    bool linear_fits = true, quadratic_fits = true;
    for (int qq = 2; qq <= 5; ++qq) {
        const int measured = table.cost(qq, kind, mode);
        linear_fits = linear_fits && measured == linear(qq);
        quadratic_fits = quadratic_fits && measured == quadratic(qq);
    }
    if (linear_fits) return linear(q);
    if (quadratic_fits) return quadratic(q);
    throw std::logic_error("no closed form matches the spider head calibration");
}

PairSet spider_head_certificate(const Graph& g, const SpiderPartition& sp, Mode mode) {
    const int q = sp.q();
    const int cost = spider_head_cost(q, sp.kind, mode);
    PairSet f;
    if (mode == Mode::deletion && sp.kind == SpiderKind::thin) {
        for (int i = 1; i < q; ++i) f.add(sp.s[i], sp.k[i]);  // keep one leg
    } else if (mode == Mode::deletion && sp.kind == SpiderKind::thick) {
        for (int i = 0; i < q; ++i)
            for (int j = i + 1; j < q; ++j) f.add(sp.s[i], sp.k[j]);  // staircase
    } else if (sp.kind == SpiderKind::thin) {
        for (int i = 1; i < q; ++i) f.add(sp.s[i], sp.k[i]);
    } else {
        for (int i = 1; i < q; ++i) f.add(sp.s[i], sp.k[i]);  // add the missing partners
    }

    std::vector<Vertex> head = sp.s;
    head.insert(head.end(), sp.k.begin(), sp.k.end());
    std::sort(head.begin(), head.end());
    const auto [head_graph, map] = g.induced(head);
    std::vector<Vertex> inverse(g.vertex_count(), -1);
    for (std::size_t i = 0; i < map.size(); ++i) inverse[map[i]] = static_cast<Vertex>(i);
    PairSet local;
    for (const auto& p : f) local.add(inverse[p.u], inverse[p.v]);

    if (static_cast<int>(f.size()) == cost && verify_certificate(head_graph, local, mode))
        return f;

    // closed-form shape did not apply; fall back to an exact search
    const auto [found_cost, found] = simple_branch_min(head_graph, mode);
    if (found_cost != cost)
        throw std::logic_error("spider head certificate does not meet the calibrated cost");
    return lift_pairs(found, map);
}

RuleFreeClass classify_rule_free(const Graph& g, Mode mode) {
    RuleFreeClass out;
    const int n = g.vertex_count();

    auto parts = g.components();
    if (parts.size() >= 2) {
        out.tag = RuleFreeTag::disconnected;
        out.parts = std::move(parts);
        return out;
    }
    auto co_parts = g.complement().components();
    if (co_parts.size() >= 2) {
        out.tag = RuleFreeTag::co_disconnected;
        out.parts = std::move(co_parts);
        return out;
    }
    if (auto sp = recognize_spider(g)) {
        out.tag = RuleFreeTag::spider;
        out.spider = std::move(sp);
        return out;
    }
    if (mode == Mode::deletion) {
        // bipartite with parts X = {x1,x2} and Y, one y seeing exactly one of
        // X, every other Y vertex seeing both
        for (Vertex x1 = 0; x1 < n; ++x1) {
            for (Vertex x2 = x1 + 1; x2 < n; ++x2) {
                if (g.has_edge(x1, x2)) continue;
                Vertex special = -1;
                bool ok = n >= 4;
                for (Vertex y = 0; y < n && ok; ++y) {
                    if (y == x1 || y == x2) continue;
                    const int deg = g.degree(y);
                    const int into_x = int(g.has_edge(y, x1)) + int(g.has_edge(y, x2));
                    if (deg != into_x) ok = false;  // y must only see X
                    else if (into_x == 2) continue;
                    else if (into_x == 1 && special == -1) special = y;
                    else ok = false;
                }
                if (ok && special != -1) {
                    out.tag = RuleFreeTag::bipartite_special;
                    out.bipartite_x = {x1, x2};
                    out.bipartite_y = special;
                    return out;
                }
            }
        }
    }
    const int tiny_limit = mode == Mode::deletion ? 6 : 5;
    if (n <= tiny_limit) {
        out.tag = RuleFreeTag::tiny;
        return out;
    }
    out.tag = RuleFreeTag::not_rule_free;
    return out;
}

std::optional<std::pair<int, PairSet>> solve_by_decomposition(const Graph& g, Mode mode, int cap,
                                                              const PartHandler& handler) {
    if (cap < 0) return std::nullopt;
    const auto cls = classify_rule_free(g, mode);
    switch (cls.tag) {
        case RuleFreeTag::tiny: {
            auto [cost, cert] = tiny_optimum(g, mode);
            if (cost > cap) return std::nullopt;
            return std::make_pair(cost, std::move(cert));
        }
        case RuleFreeTag::bipartite_special: {
            if (cap < 1) return std::nullopt;
            PairSet cert;
            const Vertex y = cls.bipartite_y;
            cert.add(y, g.has_edge(y, cls.bipartite_x[0]) ? cls.bipartite_x[0]
                                                          : cls.bipartite_x[1]);
            return std::make_pair(1, std::move(cert));
        }
        case RuleFreeTag::disconnected:
        case RuleFreeTag::co_disconnected: {
            int total = 0;
            PairSet cert;
            for (const auto& part : cls.parts) {
                const auto [sub, map] = g.induced(part);
                auto r = solve_by_decomposition(sub, mode, cap - total, handler);
                if (!r) return std::nullopt;
                total += r->first;
                for (const auto& p : r->second) cert.add(map[p.u], map[p.v]);
            }
            return std::make_pair(total, std::move(cert));
        }
        case RuleFreeTag::spider: {
            const auto& sp = *cls.spider;
            const int head = spider_head_cost(sp.q(), sp.kind, mode);
            if (head > cap) return std::nullopt;
            PairSet cert = spider_head_certificate(g, sp, mode);
            const auto [sub, map] = g.induced(sp.r);
            auto rest = solve_by_decomposition(sub, mode, cap - head, handler);
            if (!rest) return std::nullopt;
            for (const auto& p : rest->second) cert.add(map[p.u], map[p.v]);
            return std::make_pair(head + rest->first, std::move(cert));
        }
        case RuleFreeTag::not_rule_free: return handler(g, cap);
    }
    return std::nullopt;
}

std::pair<int, PairSet> alpha_rule_free(const Graph& g) {
    const PartHandler reject = [](const Graph& part,
                                  int) -> std::optional<std::pair<int, PairSet>> {
        throw std::invalid_argument("rule-free precondition violated: a part with " +
                                    std::to_string(part.vertex_count()) +
                                    " vertices does not classify");
    };
    auto r = solve_by_decomposition(g, Mode::deletion, std::numeric_limits<int>::max(), reject);
    return *r;
}

std::pair<int, PairSet> editing_cost_rule_free(const Graph& g) {
    const PartHandler reject = [](const Graph& part,
                                  int) -> std::optional<std::pair<int, PairSet>> {
        throw std::invalid_argument("rule-free precondition violated: a part with " +
                                    std::to_string(part.vertex_count()) +
                                    " vertices does not classify");
    };
    auto r = solve_by_decomposition(g, Mode::editing, std::numeric_limits<int>::max(), reject);
    return *r;
}

}  // namespace cograph
